//! Dense univariate polynomials, generic over the coefficient ring.

mod modp;
mod quartic;
mod resultant;
mod roots;
mod sturm;

pub use modp::{factor_mod_p, factor_mod_p_seeded, factor_pattern, FactorPattern, ModPolynomial};
pub use quartic::{quartic_galois_group, QuarticGroup};
pub use resultant::{discriminant, formal_discriminant, resultant, sylvester_resultant};
pub use roots::{rational_roots, RationalRoot};
pub use sturm::{sturm_count, Bound};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, IntegralDomain, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    /// Coefficients in ascending degree order; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| T::from_i64(c).expect("coefficient")).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `X - r`
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * T::from_usize(i).expect("index")).collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// `f(g(X))` by Horner.
    pub fn compose(&self, g: &Poly<T>) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `f(aX + b)`
    pub fn compose_affine(&self, a: &T, b: &T) -> Self {
        self.compose(&Poly::new(vec![b.clone(), a.clone()]))
    }

    /// `X^d f(1/X)` for a formal degree `d >= deg f`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.is_zero() || self.deg() <= d, "reverse below degree");
        let mut v = vec![T::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Poly::new(v)
    }

    /// Exponent of the largest power of X dividing `f`.
    pub fn x_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `lc(g)^(deg f - deg g + 1) * f mod g`.
    pub fn pseudo_rem(&self, g: &Poly<T>) -> Self {
        assert!(!g.is_zero(), "pseudo remainder by zero");
        let dg = g.deg();
        if self.is_zero() || self.deg() < dg {
            return self.clone();
        }
        let lg = g.lc();
        let mut r = self.coeffs.clone();
        let mut e = self.deg() - dg + 1;
        while r.len() > dg && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            for c in r.iter_mut() {
                *c = c.clone() * lg.clone();
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                let idx = k - dg + i;
                r[idx] = r[idx].clone() - lr.clone() * gc.clone();
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            e -= 1;
        }
        let mut out = Poly::new(r);
        for _ in 0..e {
            out = out.scale(&lg);
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: IntegralDomain> Poly<T> {
    /// Exact quotient `self / g` when `g` divides `self` with exact coefficient division.
    pub fn div_exact_poly(&self, g: &Poly<T>) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dg = g.deg();
        if self.deg() < dg {
            return None;
        }
        let lg = g.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); self.deg() - dg + 1];
        for k in (dg..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].checked_quotient(&lg)?;
            for (i, gc) in g.coeffs.iter().enumerate() {
                let idx = k - dg + i;
                r[idx] = r[idx].clone() - c.clone() * gc.clone();
            }
            q[k - dg] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }
}

impl<T: Field> Poly<T> {
    pub fn div_rem(&self, g: &Poly<T>) -> (Self, Self) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let dg = g.deg();
        if self.is_zero() || self.deg() < dg {
            return (Poly::zero(), self.clone());
        }
        let inv = T::one() / g.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); self.deg() - dg + 1];
        for k in (dg..r.len()).rev() {
            let c = r[k].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                let idx = k - dg + i;
                r[idx] = r[idx].clone() - c.clone() * gc.clone();
            }
            q[k - dg] = c;
        }
        r.truncate(dg);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, g: &Poly<T>) -> Self {
        self.div_rem(g).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = T::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic gcd.
    pub fn gcd(&self, g: &Poly<T>) -> Self {
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl Poly<BigInt> {
    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.map(|a| a / &c)
    }

    pub fn to_rat(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Divides all coefficients by `p^k` (exactly).
    pub fn div_scalar(&self, d: &BigInt) -> Self {
        self.map(|c| c.div_exact(d))
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.to_rat().eval(x)
    }
}

impl Poly<BigRational> {
    /// `f = content * primitive` with a primitive integer polynomial
    /// of positive leading coefficient.
    pub fn normalize_content(&self) -> (Poly<BigInt>, BigRational) {
        if self.is_zero() {
            return (Poly::zero(), BigRational::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Poly<BigInt> = self.map(|c| (c * BigRational::from_integer(den.clone())).to_integer());
        let prim = ints.primitive_part();
        let content = self.lc() / BigRational::from_integer(prim.lc());
        (prim, content)
    }

    /// `f(aX + b)` with exact rational coefficients.
    pub fn substitute_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        assert!(!a.is_zero(), "affine substitution with a = 0");
        self.compose_affine(a, b)
    }
}

/// Parse helper for tests and data: integer coefficients, ascending.
pub fn int_poly(cs: &[i64]) -> Poly<BigInt> {
    Poly::from_i64(cs)
}

impl<'a, T: Ring> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a, T: Ring> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a, T: Ring> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<'a, T: Ring> Neg for &'a Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.map(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == "1";
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !unit {
                        let wrap = mag.contains('/');
                        if wrap {
                            out.push_str(&format!("({mag})*"));
                        } else {
                            out.push_str(&format!("{mag}*"));
                        }
                    }
                    out.push('X');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn rp(cs: &[(i64, i64)]) -> Poly<BigRational> {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn arithmetic() {
        let f = int_poly(&[-1, 0, 1]);
        let g = int_poly(&[1, 1]);
        assert_eq!(&f * &g, int_poly(&[-1, -1, 1, 1]));
        assert_eq!(&f - &f, Poly::zero());
        assert_eq!(f.derivative(), int_poly(&[0, 2]));
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(8));
        assert_eq!(f.div_exact_poly(&g), Some(int_poly(&[-1, 1])));
        assert_eq!(f.div_exact_poly(&int_poly(&[2, 1])), None);
        assert_eq!(int_poly(&[0, 0, 3, 1]).x_adic_valuation(), 2);
    }

    #[test]
    fn affine_examples() {
        let f = rp(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(f.substitute_affine(&rat(2, 1), &rat(1, 1)), rp(&[(1, 1), (4, 1), (4, 1)]));
    }

    #[test]
    fn content_normalization() {
        let f = rp(&[(1, 2), (-3, 4), (3, 2)]);
        let (p, c) = f.normalize_content();
        assert_eq!(p, int_poly(&[2, -3, 6]));
        assert_eq!(c, rat(1, 4));
        assert_eq!(p.to_rat().scale(&c), f);
        let (p, c) = rp(&[(4, 1), (-6, 1)]).normalize_content();
        assert_eq!(p, int_poly(&[-2, 3]));
        assert_eq!(c, rat(-2, 1));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let f = int_poly(&[3, -2, 0, 5, 7]);
        let g = int_poly(&[1, 0, 3]);
        let r = f.pseudo_rem(&g);
        // 3^3 f - r is divisible by g
        let lhs = &f.scale(&BigInt::from(27)) - &r;
        assert!(lhs.div_exact_poly(&g).is_some());
        assert!(r.deg() < 2);
    }

    #[test]
    fn field_gcd() {
        let a = rp(&[(-1, 1), (0, 1), (1, 1)]);
        let b = rp(&[(-1, 1), (1, 1)]);
        assert_eq!(a.gcd(&b), b);
        let sq = &a * &a;
        assert_eq!(sq.squarefree_part(), a);
    }

    #[test]
    fn display() {
        assert_eq!(int_poly(&[1600, 0, -172, 0, 3]).to_string(), "3*X^4 - 172*X^2 + 1600");
        assert_eq!(int_poly(&[-1, 1]).to_string(), "X - 1");
        assert_eq!(rp(&[(1, 2), (-1, 1)]).to_string(), "-X + 1/2");
    }

    #[test]
    fn reverse_roundtrip() {
        let f = int_poly(&[0, 2, 3]);
        assert_eq!(f.reverse(3), int_poly(&[0, 3, 2]));
        assert_eq!(f.reverse(2).reverse(2), int_poly(&[0, 2, 3]).reverse(2).reverse(2));
    }
}
