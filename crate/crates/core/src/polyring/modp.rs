use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{mod_inverse, symmetric_mod};

/// Polynomial over the prime field F_p, coefficients in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModPolynomial {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPolynomial {
    pub fn new(p: &BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(p)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ModPolynomial { p: p.clone(), coeffs }
    }

    pub fn from_int(f: &Poly<BigInt>, p: &BigInt) -> Self {
        ModPolynomial::new(p, f.coeffs().to_vec())
    }

    pub fn from_u64(p: u64, cs: &[i64]) -> Self {
        ModPolynomial::new(&BigInt::from(p), cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn raw(&self, coeffs: Vec<BigInt>) -> Self {
        ModPolynomial::new(&self.p, coeffs)
    }

    pub fn zero(p: &BigInt) -> Self {
        ModPolynomial { p: p.clone(), coeffs: Vec::new() }
    }

    pub fn one(p: &BigInt) -> Self {
        ModPolynomial::new(p, vec![BigInt::one()])
    }

    pub fn x(p: &BigInt) -> Self {
        ModPolynomial::new(p, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Lift to integers with symmetric residues in `(-p/2, p/2]`.
    pub fn to_symmetric_int(&self) -> Poly<BigInt> {
        Poly::new(self.coeffs.iter().map(|c| symmetric_mod(c, &self.p)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.p);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.raw((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.raw((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPolynomial::zero(&self.p);
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        self.raw(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.raw(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        self.raw(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(&self.lc(), &self.p).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn div_rem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let dg = g.deg();
        if self.is_zero() || self.deg() < dg {
            return (ModPolynomial::zero(&self.p), self.clone());
        }
        let inv = mod_inverse(&g.lc(), &self.p).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dg + 1];
        for k in (dg..r.len()).rev() {
            let c = (&r[k] * &inv).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                let idx = k - dg + i;
                r[idx] = (&r[idx] - &c * gc).mod_floor(&self.p);
            }
            q[k - dg] = c;
        }
        r.truncate(dg);
        (self.raw(q), self.raw(r))
    }

    pub fn rem(&self, g: &Self) -> Self {
        self.div_rem(g).1
    }

    /// Monic gcd.
    pub fn gcd(&self, g: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        let base = self.rem(m);
        let mut acc = ModPolynomial::one(&self.p).rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        let d = self.deg();
        if d == 0 {
            return false;
        }
        let f = self.monic();
        let x = ModPolynomial::x(&self.p);
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = h.pow_mod(&self.p, &f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_symmetric_int())
    }
}

/// Output of [`factor_mod_p`]: `unit * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub unit: BigInt,
    pub factors: Vec<(ModPolynomial, usize)>,
}

impl ModFactorization {
    pub fn product(&self, p: &BigInt) -> ModPolynomial {
        let mut acc = ModPolynomial::new(p, vec![self.unit.clone()]);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    pub fn pattern(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.factors.iter().map(|(g, m)| (g.deg(), *m)).collect();
        v.sort();
        v
    }
}

/// Complete factorization into monic irreducibles: squarefree decomposition,
/// distinct-degree, then Cantor-Zassenhaus equal-degree splitting.
pub fn factor_mod_p<R: Rng>(f: &ModPolynomial, rng: &mut R) -> ModFactorization {
    assert!(!f.is_zero(), "factor_mod_p of zero");
    let unit = f.lc();
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, rng) {
                factors.push((h, m));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| {
                let ka: Vec<_> = a.coeffs.iter().rev().collect();
                let kb: Vec<_> = b.coeffs.iter().rev().collect();
                ka.cmp(&kb)
            })
            .then(ma.cmp(mb))
    });
    ModFactorization { unit, factors }
}

pub fn factor_mod_p_seeded(f: &ModPolynomial, seed: u64) -> ModFactorization {
    factor_mod_p(f, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn squarefree_decomposition(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let p = f.p.clone();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() && !w.is_zero() && w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // c is a p-th power: take the p-th root coefficientwise.
        let pu: usize = (&p).try_into().expect("p-th power only occurs for small p");
        let root: Vec<BigInt> = c.coeffs.iter().step_by(pu).cloned().collect();
        let r = ModPolynomial::new(&p, root);
        for (g, m) in squarefree_decomposition(&r.monic()) {
            out.push((g, m * pu));
        }
    }
    // merge equal factors arising from both branches
    out.sort_by_key(|(g, m)| (*m, g.deg()));
    out
}

fn distinct_degree(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let p = f.p.clone();
    let x = ModPolynomial::x(&p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest.monic(), d));
    }
    out
}

fn equal_degree<R: Rng>(f: &ModPolynomial, d: usize, rng: &mut R) -> Vec<ModPolynomial> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p.clone();
    let two = BigInt::from(2);
    loop {
        let a = ModPolynomial::new(&p, (0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), &p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == two {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (p.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&ModPolynomial::one(&p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let q = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&q, d, rng));
            return out;
        }
    }
}

/// Degrees and multiplicities of the irreducible factors mod p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPattern {
    pub parts: Vec<(usize, usize)>,
    pub separable: bool,
}

impl FactorPattern {
    pub fn from_parts(mut parts: Vec<(usize, usize)>) -> Self {
        parts.sort();
        let separable = parts.iter().all(|&(_, m)| m == 1);
        FactorPattern { parts, separable }
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&(d, m)| d * m).sum()
    }

    /// Factor degrees, descending; the cycle type of Frobenius when separable.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.iter().flat_map(|&(d, m)| std::iter::repeat(d).take(m)).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_irreducible(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].1 == 1
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.parts.iter().map(|&(d, m)| if m == 1 { format!("{d}") } else { format!("{d}^{m}") }).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Mod-p factor pattern of the primitive part of `f`.
pub fn factor_pattern(f: &Poly<BigInt>, p: &BigInt) -> Result<FactorPattern> {
    let g = f.primitive_part();
    if (g.lc() % p).is_zero() {
        return Err(Error::LeadingDrop { p: p.to_string() });
    }
    let fm = ModPolynomial::from_int(&g, p);
    if fm.deg() == 0 {
        return Ok(FactorPattern::from_parts(Vec::new()));
    }
    Ok(FactorPattern::from_parts(factor_mod_p_seeded(&fm, 0).pattern()))
}
