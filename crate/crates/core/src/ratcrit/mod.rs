//! Rational functions with rational critical data: discriminant forms,
//! fixed primes, unramified seeds and the quadratic-residue parity test.

mod forms;
mod parity;
mod seed;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factorize, squarefree_part, PrimeFactorization};
use crate::polyring::{discriminant, quartic_galois_group, rational_roots, QuarticGroup};
use crate::{ser, IntPolynomial};

pub use forms::{
    fixed_prime_divisors, homogenized_discriminant, transformed_forms, AffineForm, HomogenizedDiscriminant,
};
pub use parity::{
    parity_check, prime_witness_search, search_seed, verify_seed, ParityFactor, ParityRecord, SeedOptions, SeedReport,
};
pub use seed::{unramified_seed_search, verify_unramified_seed, SearchBounds, SeedAtPrime, UnramifiedSeed};

/// `g / h` with coprime integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionQ {
    pub g: IntPolynomial,
    pub h: IntPolynomial,
}

impl RationalFunctionQ {
    pub fn new(g: IntPolynomial, h: IntPolynomial) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if g.is_zero() {
            return Err(Error::InvalidInput("zero numerator".into()));
        }
        if g.to_rat().gcd(&h.to_rat()).deg() > 0 {
            return Err(Error::InvalidInput("numerator and denominator share a factor".into()));
        }
        Ok(RationalFunctionQ { g, h })
    }

    /// Parses ascending decimal coefficient strings.
    pub fn from_decimal(numerator: &[String], denominator: &[String]) -> Result<Self> {
        let parse = |cs: &[String]| -> Result<IntPolynomial> {
            cs.iter()
                .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad integer {s:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(IntPolynomial::new)
        };
        RationalFunctionQ::new(parse(numerator)?, parse(denominator)?)
    }

    pub fn degree(&self) -> usize {
        self.g.deg().max(self.h.deg())
    }

    /// `s g - t h`
    pub fn pencil(&self, t: &BigInt, s: &BigInt) -> IntPolynomial {
        &self.g.scale(s) - &self.h.scale(t)
    }

    /// Numerator of the derivative, `g' h - g h'`.
    pub fn wronskian(&self) -> IntPolynomial {
        &(&self.g.derivative() * &self.h) - &(&self.g * &self.h.derivative())
    }
}

/// A critical value `alpha / beta` (`beta = 0` for infinity) with its
/// unique double preimage.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "ser::big")]
    pub alpha: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub beta: BigInt,
    /// `None` for the point at infinity.
    #[serde(serialize_with = "ser::rat_opt")]
    pub eta: Option<BigRational>,
    #[serde(serialize_with = "poly_str")]
    pub q: IntPolynomial,
    #[serde(serialize_with = "ser::big")]
    pub delta: BigInt,
    pub delta_factorization: PrimeFactorization,
    /// Galois group of `q` when it is a quartic.
    pub residue_group: Option<QuarticGroup>,
}

fn poly_str<S: serde::Serializer>(p: &IntPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl CriticalPoint {
    pub fn gamma(&self) -> Option<BigRational> {
        if self.beta.is_zero() {
            None
        } else {
            Some(BigRational::new(self.alpha.clone(), self.beta.clone()))
        }
    }

    pub fn gamma_string(&self) -> String {
        match self.gamma() {
            Some(g) => g.to_string(),
            None => "infinity".into(),
        }
    }

    /// The form `beta T - alpha S`.
    pub fn form(&self) -> AffineForm {
        AffineForm::new(self.beta.clone(), -self.alpha.clone(), BigInt::zero())
    }
}

fn projective(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}

/// Critical points and values, requiring `2n - 2` distinct rational critical
/// values each with a single simple critical point above it.
pub fn critical_data(f: &RationalFunctionQ) -> Result<Vec<CriticalPoint>> {
    let n = f.degree();
    if n < 4 {
        return Err(Error::NotGeneric(format!("degree {n} is below 4")));
    }
    let w = f.wronskian();
    if w.is_zero() {
        return Err(Error::NotGeneric("constant function".into()));
    }
    let roots = rational_roots(&w)?;
    let finite: usize = roots.iter().map(|r| r.multiplicity).sum();
    if finite < w.deg() {
        return Err(Error::NotGeneric("irrational critical points".into()));
    }
    if let Some(r) = roots.iter().find(|r| r.multiplicity > 1) {
        return Err(Error::NotGeneric(format!("critical point {} of multiplicity {}", r.value, r.multiplicity)));
    }
    let at_inf = 2 * n - 2 - w.deg();
    if at_inf > 1 {
        return Err(Error::NotGeneric(format!("critical point at infinity of multiplicity {at_inf}")));
    }
    let mut out = Vec::with_capacity(2 * n - 2);
    for r in &roots {
        let eta = &r.value;
        let gv = f.g.eval_rat(eta);
        let hv = f.h.eval_rat(eta);
        let (alpha, beta) = if hv.is_zero() { (BigInt::one(), BigInt::zero()) } else { projective(&(gv / hv)) };
        let p = f.pencil(&alpha, &beta);
        let (u, v) = projective(eta);
        let lin = IntPolynomial::new(vec![-u, v]);
        let sq = &lin * &lin;
        let q = p.div_exact_poly(&sq).ok_or_else(|| Error::NotGeneric(format!("no double root at {eta}")))?;
        out.push(finish(alpha, beta, Some(eta.clone()), q, n)?);
    }
    if at_inf == 1 {
        // f(infinity) from leading terms
        let (alpha, beta) = match f.g.deg().cmp(&f.h.deg()) {
            std::cmp::Ordering::Greater => (BigInt::one(), BigInt::zero()),
            std::cmp::Ordering::Less => (BigInt::zero(), BigInt::one()),
            std::cmp::Ordering::Equal => projective(&BigRational::new(f.g.lc(), f.h.lc())),
        };
        let q = f.pencil(&alpha, &beta);
        if q.deg() != n - 2 {
            return Err(Error::NotGeneric("infinity is not a simple critical point".into()));
        }
        out.push(finish(alpha, beta, None, q, n)?);
    }
    out.sort_by(|a, b| {
        let key = |c: &CriticalPoint| (c.beta.is_zero(), c.beta.clone(), c.alpha.abs(), c.alpha.is_negative());
        key(a).cmp(&key(b))
    });
    for w in out.windows(2) {
        if w[0].alpha == w[1].alpha && w[0].beta == w[1].beta {
            return Err(Error::NotGeneric(format!("critical value {} has two double preimages", w[0].gamma_string())));
        }
    }
    Ok(out)
}

fn finish(alpha: BigInt, beta: BigInt, eta: Option<BigRational>, q: IntPolynomial, n: usize) -> Result<CriticalPoint> {
    let q = q.primitive_part();
    if q.deg() != n - 2 {
        return Err(Error::NotGeneric(format!("residue polynomial of degree {}", q.deg())));
    }
    if let Some(e) = &eta {
        if q.eval_rat(e).is_zero() {
            return Err(Error::NotGeneric(format!("triple preimage at {e}")));
        }
    }
    let d = discriminant(&q);
    if d.is_zero() {
        return Err(Error::NotGeneric("residue polynomial is not separable".into()));
    }
    let delta = squarefree_part(&d)?;
    let delta_factorization = factorize(&delta)?;
    let residue_group = if q.deg() == 4 { quartic_galois_group(&q).ok() } else { None };
    let g = alpha.gcd(&beta);
    Ok(CriticalPoint { alpha: &alpha / &g, beta: &beta / &g, eta, q, delta, delta_factorization, residue_group })
}

/// The degree-6 function with ten rational critical values.
pub fn sextic() -> RationalFunctionQ {
    use crate::polyring::int_poly;
    RationalFunctionQ::new(int_poly(&[62208, 0, -5940, 0, 53, 0, 1]), int_poly(&[0, 1600, 0, -172, 0, 3])).unwrap()
}

/// The degree-5 function with eight rational critical values.
pub fn quintic() -> RationalFunctionQ {
    use crate::polyring::int_poly;
    RationalFunctionQ::new(int_poly(&[0, 0, -15, -31, 11, 11]), int_poly(&[33, -143, -309, 171])).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int_poly;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sextic_critical_values() {
        let cps = critical_data(&sextic()).unwrap();
        let got: Vec<String> = cps.iter().map(|c| c.gamma_string()).collect();
        assert_eq!(
            got,
            ["7", "-7", "79/8", "-79/8", "189/22", "-189/22", "918/59", "-918/59", "1733/250", "-1733/250"]
        );
        let etas: Vec<String> = cps.iter().map(|c| c.eta.as_ref().unwrap().to_string()).collect();
        assert_eq!(etas, ["8", "-8", "4", "-4", "6", "-6", "3", "-3", "10", "-10"]);
        assert_eq!(cps[0].delta, b(17 * 23 * 43 * 101));
        let d9: Vec<i64> = cps[8].delta_factorization.primes().iter().map(|p| p.try_into().unwrap()).collect();
        assert_eq!(d9, [7, 17, 23, 29, 43, 53, 109, 151, 1733, 2281]);
        assert!(cps.iter().all(|c| c.residue_group == Some(QuarticGroup::S4)));
    }

    #[test]
    fn quintic_has_infinity() {
        let cps = critical_data(&quintic()).unwrap();
        assert_eq!(cps.len(), 8);
        let inf = cps.last().unwrap();
        assert!(inf.beta.is_zero() && inf.eta.is_none());
        assert_eq!(inf.q.deg(), 3);
    }

    #[test]
    fn degenerate() {
        let f = RationalFunctionQ::new(int_poly(&[0, 0, 1]), int_poly(&[1])).unwrap();
        assert!(matches!(critical_data(&f), Err(Error::NotGeneric(_))));
        // x^4 + 1 has irrational critical points of 1/(x^4+1)... use a quartic polynomial
        let f = RationalFunctionQ::new(int_poly(&[0, 1, 0, 0, 1]), int_poly(&[1])).unwrap();
        assert!(matches!(critical_data(&f), Err(Error::NotGeneric(_))));
        assert!(RationalFunctionQ::new(int_poly(&[-1, 0, 1]), int_poly(&[1, 1])).is_err());
    }
}
