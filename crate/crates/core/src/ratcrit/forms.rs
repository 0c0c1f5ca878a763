use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{CriticalPoint, RationalFunctionQ};
use crate::error::{Error, Result};
use crate::exactnum::{factorize, primes_below};
use crate::polyring::formal_discriminant;
use crate::ser;

/// `u T + v S + w`, carrying the constant divisor `nu` removed from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    #[serde(serialize_with = "ser::big")]
    pub u: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub v: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub w: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub nu: BigInt,
}

impl AffineForm {
    pub fn new(u: BigInt, v: BigInt, w: BigInt) -> Self {
        AffineForm { u, v, w, nu: BigInt::one() }
    }

    pub fn from_i64(u: i64, v: i64, w: i64) -> Self {
        AffineForm::new(u.into(), v.into(), w.into())
    }

    pub fn eval(&self, t: &BigInt, s: &BigInt) -> BigInt {
        &self.u * t + &self.v * s + &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero() && self.w.is_zero()
    }

    /// Determinant of the linear parts; zero iff the pair is affinely dependent.
    pub fn cross(&self, o: &AffineForm) -> BigInt {
        &self.u * &o.v - &self.v * &o.u
    }

    pub fn content(&self) -> BigInt {
        self.u.gcd(&self.v).gcd(&self.w)
    }
}

impl std::fmt::Display for AffineForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for (c, name) in [(&self.u, "T"), (&self.v, "S"), (&self.w, "")] {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (name.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => name.to_string(),
                (false, false) => format!("{mag}{name}"),
            };
            if out.is_empty() {
                out = if c.is_negative() { format!("-{body}") } else { body };
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogenizedDiscriminant {
    #[serde(serialize_with = "ser::big")]
    pub content: BigInt,
    pub forms: Vec<AffineForm>,
    /// Number of sample points at which the product formula was checked.
    pub verified_points: usize,
}

impl HomogenizedDiscriminant {
    pub fn eval(&self, t: &BigInt, s: &BigInt) -> BigInt {
        self.forms.iter().fold(self.content.clone(), |acc, l| acc * l.eval(t, s))
    }
}

/// `disc_X(S g - T h)` at a point, formal in degree `n`.
pub fn pencil_discriminant(f: &RationalFunctionQ, t: &BigInt, s: &BigInt) -> BigInt {
    formal_discriminant(&f.pencil(t, s), f.degree())
}

/// Writes `disc(S g - T h)` as an integer times the product of the
/// critical-value forms `beta T - alpha S`.
pub fn homogenized_discriminant(f: &RationalFunctionQ, cps: &[CriticalPoint]) -> Result<HomogenizedDiscriminant> {
    let forms: Vec<AffineForm> = cps.iter().map(|c| c.form()).collect();
    let prod = |t: &BigInt, s: &BigInt| forms.iter().fold(BigInt::one(), |acc, l| acc * l.eval(t, s));
    // 2n-1 points with pairwise distinct ratios t/s determine a form of degree 2n-2
    let need = forms.len() + 1;
    let mut content: Option<BigInt> = None;
    let mut checked = 0;
    let mut k = 0i64;
    while checked < need {
        let (t, s) = (BigInt::from(k), BigInt::one());
        k += 1;
        let p = prod(&t, &s);
        let d = pencil_discriminant(f, &t, &s);
        if p.is_zero() {
            if !d.is_zero() {
                return Err(Error::NotGeneric(format!("discriminant nonzero at critical value {t}")));
            }
            continue;
        }
        let (q, r) = d.div_rem(&p);
        if !r.is_zero() {
            return Err(Error::NotGeneric("discriminant is not a multiple of the form product".into()));
        }
        match &content {
            None => content = Some(q),
            Some(c) if *c == q => {}
            Some(_) => return Err(Error::NotGeneric("discriminant differs from the form product".into())),
        }
        checked += 1;
    }
    let content = content.expect("points checked");
    // the point at infinity of the pencil, (t, s) = (1, 0)
    let (one, zero) = (BigInt::one(), BigInt::zero());
    if pencil_discriminant(f, &one, &zero) != &content * prod(&one, &zero) {
        return Err(Error::NotGeneric("discriminant differs from the form product at (1, 0)".into()));
    }
    Ok(HomogenizedDiscriminant { content, forms, verified_points: checked + 1 })
}

/// Primes dividing every value of `content * prod(forms)` on `Z^2`.
pub fn fixed_prime_divisors(content: &BigInt, forms: &[AffineForm]) -> Result<Vec<BigInt>> {
    let mut cand: BTreeSet<BigInt> = BTreeSet::new();
    if content.is_zero() {
        return Err(Error::InvalidInput("zero content".into()));
    }
    cand.extend(factorize(content)?.primes());
    for (i, a) in forms.iter().enumerate() {
        if a.u.is_zero() && a.v.is_zero() {
            if !a.w.is_zero() {
                cand.extend(factorize(&a.w)?.primes());
            }
        } else {
            cand.extend(factorize(&a.u.gcd(&a.v))?.primes());
        }
        for b in &forms[i + 1..] {
            let c = a.cross(b);
            if !c.is_zero() {
                cand.extend(factorize(&c)?.primes());
            }
        }
    }
    // k lines cannot cover F_p^2 minus a point once p > k
    cand.extend(primes_below(forms.len() as u64 + 1).into_iter().map(BigInt::from));
    let mut out = Vec::new();
    for p in cand {
        if is_fixed(content, forms, &p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn is_fixed(content: &BigInt, forms: &[AffineForm], p: &BigInt) -> bool {
    if content.is_multiple_of(p) {
        return true;
    }
    let pu: u64 = p.try_into().expect("candidate primes are small");
    for t in 0..pu {
        for s in 0..pu {
            let (t, s) = (BigInt::from(t), BigInt::from(s));
            if forms.iter().all(|l| !l.eval(&t, &s).is_multiple_of(p)) {
                return false;
            }
        }
    }
    true
}

/// `lambda(N T + t0, N S + s0) / nu` for each form, `nu` the content of the
/// substituted form; `nu` is checked to be the whole `N`-part of every value.
pub fn transformed_forms(forms: &[AffineForm], n: &BigInt, t0: &BigInt, s0: &BigInt) -> Result<Vec<AffineForm>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("N = 0".into()));
    }
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate().skip(i + 1) {
            if a.cross(b).is_zero() {
                return Err(Error::DependentForms(i, j));
            }
        }
    }
    let primes = if n.abs().is_one() { Vec::new() } else { factorize(n)?.primes() };
    let mut out = Vec::with_capacity(forms.len());
    for (i, l) in forms.iter().enumerate() {
        let u = &l.u * n;
        let v = &l.v * n;
        let w = &l.u * t0 + &l.v * s0 + &l.w;
        let nu = u.gcd(&v).gcd(&w);
        if nu.is_zero() {
            return Err(Error::InvalidInput(format!("form {i} vanishes identically")));
        }
        let f = AffineForm { u: &u / &nu, v: &v / &nu, w: &w / &nu, nu: &nu * &l.nu };
        for p in &primes {
            // constant p-part: the cofactor is = w mod p
            if f.w.is_multiple_of(p) || !f.u.is_multiple_of(p) || !f.v.is_multiple_of(p) {
                return Err(Error::PreconditionUnmet(format!(
                    "form {i}: {p}-adic valuation is not constant on the progression"
                )));
            }
        }
        out.push(f);
    }
    Ok(out)
}
