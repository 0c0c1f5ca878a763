use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use super::perm::{Parity, Permutation};
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// `a + b*sqrt(2)` over a coefficient field `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt2Ext<Q> {
    pub a: Q,
    pub b: Q,
}

pub type QSqrt2 = Sqrt2Ext<BigRational>;

impl<Q: Ring> Sqrt2Ext<Q> {
    pub fn new(a: Q, b: Q) -> Self {
        Sqrt2Ext { a, b }
    }

    pub fn sqrt2() -> Self {
        Sqrt2Ext { a: Q::zero(), b: Q::one() }
    }

    pub fn conj(&self) -> Self {
        Sqrt2Ext { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a^2 - 2 b^2`
    pub fn norm(&self) -> Q {
        self.a.clone() * self.a.clone() - Q::from_u8(2).unwrap() * self.b.clone() * self.b.clone()
    }
}

impl<Q: Field> Sqrt2Ext<Q> {
    /// Division by `sqrt(2)`.
    pub fn div_sqrt2(&self) -> Self {
        Sqrt2Ext { a: self.b.clone(), b: self.a.clone() / Q::from_u8(2).unwrap() }
    }
}

impl<Q: Ring> Add for Sqrt2Ext<Q> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Sqrt2Ext { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<Q: Ring> Sub for Sqrt2Ext<Q> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Sqrt2Ext { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<Q: Ring> Mul for Sqrt2Ext<Q> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Q::from_u8(2).unwrap();
        Sqrt2Ext {
            a: self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl<Q: Ring> Neg for Sqrt2Ext<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt2Ext { a: -self.a, b: -self.b }
    }
}

impl<Q: Ring> Zero for Sqrt2Ext<Q> {
    fn zero() -> Self {
        Sqrt2Ext { a: Q::zero(), b: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<Q: Ring> One for Sqrt2Ext<Q> {
    fn one() -> Self {
        Sqrt2Ext { a: Q::one(), b: Q::zero() }
    }
}

impl<Q: Ring> FromPrimitive for Sqrt2Ext<Q> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Sqrt2Ext { a: Q::from_i64(n)?, b: Q::zero() })
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Sqrt2Ext { a: Q::from_u64(n)?, b: Q::zero() })
    }
}

/// Sparse element of the Clifford algebra with `e_i^2 = 1`, blades as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector<C> {
    n: usize,
    terms: BTreeMap<u64, C>,
}

// Sign of e_A e_B after reordering into e_(A xor B).
fn blade_sign(a: u64, b: u64) -> bool {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    swaps % 2 == 1
}

impl<C: Ring> Multivector<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n < 64, "at most 63 generators");
        Multivector { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: C) -> Self {
        let mut m = Multivector::zero(n);
        if !c.is_zero() {
            m.terms.insert(0, c);
        }
        m
    }

    pub fn one(n: usize) -> Self {
        Multivector::scalar(n, C::one())
    }

    /// Basis vector `e_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n);
        let mut m = Multivector::zero(n);
        m.terms.insert(1 << (i - 1), C::one());
        m
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut m = Multivector::zero(n);
        for (k, c) in terms {
            m.accumulate(k, c);
        }
        m
    }

    fn accumulate(&mut self, k: u64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u64, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self, c: &C) -> bool {
        if c.is_zero() {
            return self.is_zero();
        }
        self.terms.len() == 1 && self.terms.get(&0) == Some(c)
    }

    pub fn scale(&self, c: &C) -> Self {
        Multivector::from_terms(self.n, self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(u64, &C) -> D) -> Multivector<D> {
        Multivector::from_terms(self.n, self.terms.iter().map(|(k, v)| (*k, f(*k, v))))
    }

    /// Geometric product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = Multivector::zero(self.n);
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let v = va.clone() * vb.clone();
                out.accumulate(ka ^ kb, if blade_sign(*ka, *kb) { -v } else { v });
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.accumulate(*k, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|_, v| -v.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Reversion: reverses the order of vector factors in each blade.
    pub fn reverse(&self) -> Self {
        self.map(|k, v| {
            let g = k.count_ones();
            if (g * (g.saturating_sub(1)) / 2) % 2 == 1 {
                -v.clone()
            } else {
                v.clone()
            }
        })
    }

    /// Grade involution: negates odd blades.
    pub fn grade_involution(&self) -> Self {
        self.map(|k, v| if k.count_ones() % 2 == 1 { -v.clone() } else { v.clone() })
    }

    /// Parity when all blades share the grade parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|k| k.count_ones() % 2);
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(if first == 0 { Parity::Even } else { Parity::Odd })
        } else {
            None
        }
    }

    /// Right multiplication by `e_i` (0-based index); only moves coefficients.
    fn mul_basis_right(&self, i: usize) -> Self {
        let bit = 1u64 << i;
        Multivector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let s = (k >> (i + 1)).count_ones() % 2 == 1;
                    (k ^ bit, if s { -v.clone() } else { v.clone() })
                })
                .collect(),
        }
    }

    /// Left multiplication by `e_i` (0-based index).
    fn mul_basis_left(&self, i: usize) -> Self {
        let bit = 1u64 << i;
        Multivector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let s = (k & (bit - 1)).count_ones() % 2 == 1;
                    (k ^ bit, if s { -v.clone() } else { v.clone() })
                })
                .collect(),
        }
    }
}

/// The lift of the transposition `(a, b)`: `(e_a - e_b) / sqrt(2)`.
pub fn generator(n: usize, a: usize, b: usize) -> Multivector<QSqrt2> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Multivector::from_terms(
        n,
        [
            (1u64 << (a - 1), Sqrt2Ext::new(BigRational::zero(), half.clone())),
            (1u64 << (b - 1), Sqrt2Ext::new(BigRational::zero(), -half)),
        ],
    )
}

// Canonical decomposition: each cycle (a1,...,ak) as (a1,a2)(a2,a3)...(a_{k-1},a_k).
fn transpositions(s: &Permutation) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c in s.cycles() {
        for w in c.windows(2) {
            out.push((w[0], w[1]));
        }
    }
    out
}

/// Section of the projection, as a product of generators.
pub fn lift(s: &Permutation) -> Multivector<QSqrt2> {
    let n = s.degree();
    let ts = transpositions(s);
    // integer product of (e_a - e_b), rescaled by 2^(-k/2) at the end
    let mut acc: Multivector<i64> = Multivector::one(n);
    for &(a, b) in &ts {
        let v = Multivector::from_terms(n, [(1u64 << (a - 1), 1i64), (1u64 << (b - 1), -1i64)]);
        acc = acc.mul(&v);
    }
    let k = ts.len() as u32;
    let den = BigInt::one() << (k.div_ceil(2));
    acc.map(|_, &c| {
        let q = BigRational::new(BigInt::from(c), den.clone());
        if k % 2 == 0 {
            Sqrt2Ext::new(q, BigRational::zero())
        } else {
            Sqrt2Ext::new(BigRational::zero(), q)
        }
    })
}

/// `x * lift(s)`, multiplying generator by generator.
pub fn mul_by_lift(x: &Multivector<QSqrt2>, s: &Permutation) -> Multivector<QSqrt2> {
    let mut acc = x.clone();
    for (a, b) in transpositions(s) {
        let sum = acc.mul_basis_right(a - 1).sub(&acc.mul_basis_right(b - 1));
        acc = sum.map(|_, v| v.div_sqrt2());
    }
    acc
}

/// Permutation induced by twisted conjugation `v -> grade(x) v x^-1` on the
/// span of `e_1..e_n`.
pub fn project(x: &Multivector<QSqrt2>) -> Result<Permutation> {
    let n = x.n();
    let parity = x.parity().ok_or_else(|| Error::NotGroupElement("mixed parity".into()))?;
    let ax = if parity == Parity::Odd { x.neg() } else { x.clone() };
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for i in 0..n {
        // find j with e_j x = grade(x) e_i
        let y = ax.mul_basis_right(i);
        let (kb, vb) = y.terms.iter().next().ok_or_else(|| Error::NotGroupElement("zero".into()))?;
        let mut found = None;
        for j in 0..n {
            if used[j] {
                continue;
            }
            let bit = 1u64 << j;
            let src = kb ^ bit;
            if let Some(c) = x.terms.get(&src) {
                let s = (src & (bit - 1)).count_ones() % 2 == 1;
                let cand = if s { -c.clone() } else { c.clone() };
                if &cand == vb && x.mul_basis_left(j) == y {
                    found = Some(j);
                    break;
                }
            }
        }
        let j = found.ok_or_else(|| Error::NotGroupElement(format!("no image for e_{}", i + 1)))?;
        used[j] = true;
        images.push(j);
    }
    Ok(Permutation::from_zero_based(images))
}

/// Homogeneous parity, `x * rev(x) = 1`, and a well-defined projection.
pub fn is_group_element(x: &Multivector<QSqrt2>) -> bool {
    x.parity().is_some() && x.mul(&x.reverse()).is_scalar(&QSqrt2::one()) && project(x).is_ok()
}

fn require_group(x: &Multivector<QSqrt2>) -> Result<()> {
    if is_group_element(x) {
        Ok(())
    } else {
        Err(Error::NotGroupElement("fails the unit-norm product check".into()))
    }
}

pub fn clifford_inverse(x: &Multivector<QSqrt2>) -> Result<Multivector<QSqrt2>> {
    require_group(x)?;
    Ok(x.reverse())
}

/// Multiplicative order, bounded by `4 n!`.
pub fn clifford_order(x: &Multivector<QSqrt2>) -> Result<usize> {
    require_group(x)?;
    let n = x.n();
    let bound: usize = 4 * (1..=n).product::<usize>().max(1);
    let one = QSqrt2::one();
    let mut y = x.clone();
    let mut k = 1;
    while !y.is_scalar(&one) {
        y = y.mul(x);
        k += 1;
        if k > bound {
            return Err(Error::NotGroupElement("order exceeds 4 n!".into()));
        }
    }
    Ok(k)
}

/// `x^-1 y^-1 x y`
pub fn clifford_commutator(x: &Multivector<QSqrt2>, y: &Multivector<QSqrt2>) -> Result<Multivector<QSqrt2>> {
    let xi = clifford_inverse(x)?;
    let yi = clifford_inverse(y)?;
    Ok(xi.mul(&yi).mul(x).mul(y))
}
