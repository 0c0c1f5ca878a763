use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{HomogenizedDiscriminant, RationalFunctionQ};
use crate::error::{Error, Result};
use crate::exactnum::{crt, mod_inverse, valuation};
use crate::localarith::{certify_neighborhood, LocalCertificate};
use crate::ser;

#[derive(Clone, Debug)]
pub struct SearchBounds {
    /// Candidate centers `0 <= t < max_t` at each prime.
    pub max_t: u64,
    /// Exponents tried above the minimal one forced by the form valuations.
    pub extra_exponents: u32,
    /// Refinement depth of the neighbourhood certificate.
    pub depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_t: 64, extra_exponents: 3, depth: 12 }
    }
}

/// An open p-adic disc of parameters over which the splitting field is unramified.
#[derive(Clone, Debug, Serialize)]
pub struct SeedAtPrime {
    #[serde(serialize_with = "ser::big")]
    pub prime: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub center: BigInt,
    pub exponent: u32,
    #[serde(serialize_with = "ser::big")]
    pub modulus: BigInt,
    /// `v_p` of each critical-value form at the center.
    pub form_valuations: Vec<u32>,
    pub disc_valuation: u32,
    pub certified: bool,
    pub reason: Option<String>,
    pub certificate: Option<LocalCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnramifiedSeed {
    pub seeds: Vec<SeedAtPrime>,
    /// Parameters `(N t + a) / (N s + b)`.
    #[serde(serialize_with = "ser::big")]
    pub a: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub b: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub n: BigInt,
    pub certified: bool,
}

fn seed_at(
    f: &RationalFunctionQ,
    hd: &HomogenizedDiscriminant,
    p: &BigInt,
    a: &BigInt,
    b: &BigInt,
    e: u32,
    depth: usize,
) -> SeedAtPrime {
    let modulus = p.pow(e);
    let mut out = SeedAtPrime {
        prime: p.clone(),
        center: BigInt::zero(),
        exponent: e,
        modulus: modulus.clone(),
        form_valuations: Vec::new(),
        disc_valuation: 0,
        certified: false,
        reason: None,
        certificate: None,
    };
    let Some(binv) = mod_inverse(b, &modulus) else {
        out.reason = Some(format!("{b} is not a unit at {p}"));
        return out;
    };
    out.center = (a * binv).mod_floor(&modulus);
    let mut vals = Vec::with_capacity(hd.forms.len());
    for l in &hd.forms {
        let v = l.eval(a, b);
        if v.is_zero() {
            out.reason = Some("center is a critical value".into());
            return out;
        }
        vals.push(valuation(&v, p));
    }
    out.disc_valuation = valuation(&hd.content, p) + vals.iter().sum::<u32>();
    let worst = vals.iter().copied().max().unwrap_or(0);
    out.form_valuations = vals;
    if worst >= e {
        out.reason = Some(format!("form valuation {worst} is not below the exponent {e}"));
        return out;
    }
    let center_poly = f.pencil(&out.center, &BigInt::one());
    let step = f.pencil(&modulus, &BigInt::zero());
    let cert = certify_neighborhood(&center_poly, &step, p, depth, Some(out.disc_valuation));
    out.certified = cert.verdict.is_unramified();
    if !out.certified {
        out.reason = Some(format!("{:?}", cert.verdict));
    }
    out.certificate = Some(cert);
    out
}

/// For each fixed prime, finds a center and exponent whose whole disc is
/// certified unramified with constant form valuations; combines by CRT.
pub fn unramified_seed_search(
    f: &RationalFunctionQ,
    hd: &HomogenizedDiscriminant,
    fixed: &[BigInt],
    bounds: &SearchBounds,
) -> Result<UnramifiedSeed> {
    let mut seeds = Vec::new();
    let one = BigInt::one();
    for p in fixed {
        let mut transcript = Vec::new();
        let mut found = None;
        'search: for t in 0..bounds.max_t {
            let t = BigInt::from(t);
            let mut min_e = 1;
            for l in &hd.forms {
                let v = l.eval(&t, &one);
                if v.is_zero() {
                    transcript.push(format!("t = {t}: critical value"));
                    continue 'search;
                }
                min_e = min_e.max(valuation(&v, p) + 1);
            }
            for e in min_e..=min_e + bounds.extra_exponents {
                let s = seed_at(f, hd, p, &t, &one, e, bounds.depth);
                if s.certified {
                    found = Some(s);
                    break 'search;
                }
                if transcript.len() < 64 {
                    transcript.push(format!("t = {t} mod {p}^{e}: {}", s.reason.unwrap_or_default()));
                }
            }
        }
        match found {
            Some(s) => seeds.push(s),
            None => return Err(Error::SearchExhausted { prime: p.to_string(), transcript }),
        }
    }
    let congr: Vec<(BigInt, BigInt)> = seeds.iter().map(|s| (s.center.clone(), s.modulus.clone())).collect();
    let (a, n) = crt(&congr)?;
    Ok(UnramifiedSeed { seeds, a, b: one, n, certified: true })
}

/// Checks a given progression `(N t + a) / (N s + b)` at every fixed prime.
pub fn verify_unramified_seed(
    f: &RationalFunctionQ,
    hd: &HomogenizedDiscriminant,
    fixed: &[BigInt],
    a: &BigInt,
    b: &BigInt,
    n: &BigInt,
    depth: usize,
) -> Result<UnramifiedSeed> {
    if n.is_zero() {
        return Err(Error::InvalidInput("N = 0".into()));
    }
    let mut seeds = Vec::new();
    for p in fixed {
        let e = valuation(n, p);
        if e == 0 {
            return Err(Error::PreconditionUnmet(format!("N is not divisible by the fixed prime {p}")));
        }
        seeds.push(seed_at(f, hd, p, a, b, e, depth));
    }
    let certified = seeds.iter().all(|s| s.certified);
    Ok(UnramifiedSeed { seeds, a: a.clone(), b: b.clone(), n: n.clone(), certified })
}

#[cfg(test)]
mod tests {
    use super::super::{critical_data, fixed_prime_divisors, homogenized_discriminant, sextic};
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn pinned_progression() {
        let f = sextic();
        let hd = homogenized_discriminant(&f, &critical_data(&f).unwrap()).unwrap();
        let fixed = fixed_prime_divisors(&hd.content, &hd.forms).unwrap();
        let s = verify_unramified_seed(&f, &hd, &fixed, &b(385), &b(1), &b(23328), 12).unwrap();
        assert!(s.certified, "{:#?}", s.seeds.iter().map(|x| &x.reason).collect::<Vec<_>>());
        let three = &s.seeds[1];
        assert_eq!(three.disc_valuation % 2, 0);
        let cert = three.certificate.as_ref().unwrap();
        assert!(cert.has_pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 4)]));
        assert!(cert.has_pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 2)]));
        let weak = verify_unramified_seed(&f, &hd, &fixed, &b(385), &b(1), &b(16 * 729), 12).unwrap();
        assert!(!weak.certified);
    }

    #[test]
    fn search_finds_a_progression() {
        let f = sextic();
        let hd = homogenized_discriminant(&f, &critical_data(&f).unwrap()).unwrap();
        let s = unramified_seed_search(&f, &hd, &[b(2), b(3)], &SearchBounds::default()).unwrap();
        assert!(s.certified);
        for seed in &s.seeds {
            assert_eq!((&s.a - &seed.center).mod_floor(&seed.modulus), BigInt::zero());
        }
        let none = unramified_seed_search(&f, &hd, &[], &SearchBounds::default()).unwrap();
        assert_eq!((none.a, none.n), (b(0), b(1)));
        let tiny = SearchBounds { max_t: 1, extra_exponents: 0, depth: 1 };
        assert!(matches!(unramified_seed_search(&f, &hd, &[b(2)], &tiny), Err(Error::SearchExhausted { .. })));
    }
}
