use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::exactnum::{is_prime_u64, is_square, primes_below};
use crate::polyring::{discriminant, factor_pattern, FactorPattern};
use crate::IntPolynomial;

pub const DEFAULT_PRIME_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnEvidence {
    pub prime: u64,
    pub pattern: FactorPattern,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SnVerdict {
    Certified { degree: usize, evidence: Vec<SnEvidence> },
    Inconclusive { reason: String, primes_tried: usize },
}

impl SnVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, SnVerdict::Certified { .. })
    }
}

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in parts {
        for i in (d..=n).rev() {
            if s[i - d] {
                s[i] = true;
            }
        }
    }
    s
}

fn is_odd_pattern(c: &[usize]) -> bool {
    c.iter().filter(|&&l| l % 2 == 0).count() % 2 == 1
}

/// Certifies the full symmetric group from Frobenius cycle types at good
/// primes: transitivity from subset sums, primitivity from a prime cycle
/// longer than `n/2`, then Jordan's theorem or a transposition power.
pub fn certify_sn(f: &IntPolynomial, prime_budget: usize) -> SnVerdict {
    let n = f.deg();
    let disc = discriminant(f);
    if disc.is_zero() {
        return SnVerdict::Inconclusive { reason: "polynomial is not squarefree".into(), primes_tried: 0 };
    }
    if n <= 1 {
        return SnVerdict::Certified { degree: n, evidence: Vec::new() };
    }
    let bad = &disc * f.lc();
    let disc_square = is_square(&disc);
    let mut sums = vec![true; n + 1];
    let mut transitive: Option<SnEvidence> = None;
    let mut long_prime: Option<SnEvidence> = None;
    let mut jordan: Option<SnEvidence> = None;
    let mut transposition: Option<SnEvidence> = None;
    let mut odd: Option<SnEvidence> = None;
    let mut trail: Vec<SnEvidence> = Vec::new();
    let mut tried = 0;
    let candidates = primes_below(1 << 20);
    for &p in &candidates {
        if tried >= prime_budget {
            break;
        }
        let pb = BigInt::from(p);
        if bad.is_multiple_of(&pb) {
            continue;
        }
        tried += 1;
        let pat = match factor_pattern(f, &pb) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let cyc = pat.cycle_lengths();
        let ev = |role: &str| SnEvidence { prime: p, pattern: pat.clone(), role: role.into() };
        if transitive.is_none() {
            let s = subset_sums(&cyc, n);
            for i in 0..=n {
                sums[i] &= s[i];
            }
            trail.push(ev("orbit constraint"));
            if (1..n).all(|i| !sums[i]) {
                transitive = Some(ev("transitivity"));
            }
        }
        let big_prime = cyc.iter().copied().find(|&l| 2 * l > n && is_prime_u64(l as u64));
        if let Some(q) = big_prime {
            if long_prime.is_none() {
                long_prime = Some(ev("prime cycle longer than n/2"));
            }
            if jordan.is_none() && q + 3 <= n {
                jordan = Some(ev("Jordan prime cycle"));
            }
        }
        if transposition.is_none()
            && cyc.iter().filter(|&&l| l == 2).count() == 1
            && cyc.iter().all(|&l| l == 2 || l % 2 == 1)
        {
            transposition = Some(ev("transposition power"));
        }
        if odd.is_none() && is_odd_pattern(&cyc) {
            odd = Some(ev("odd permutation"));
        }
        let done = match (&transitive, n) {
            (Some(_), 2) => true,
            (Some(_), 3) => !disc_square,
            (Some(_), _) => {
                long_prime.is_some()
                    && (transposition.is_some() || (jordan.is_some() && (odd.is_some() || !disc_square)))
            }
            _ => false,
        };
        if done {
            let mut evidence: Vec<SnEvidence> = Vec::new();
            if n > 3 {
                evidence.extend(trail.iter().filter(|e| e.prime != transitive.as_ref().unwrap().prime).cloned());
            }
            evidence.extend(transitive.clone());
            if n > 3 {
                evidence.extend(long_prime.clone());
                if let Some(t) = &transposition {
                    evidence.push(t.clone());
                } else {
                    evidence.extend(jordan.clone());
                    evidence.extend(odd.clone());
                }
            }
            let mut seen = BTreeSet::new();
            evidence.retain(|e| seen.insert((e.prime, e.role.clone())));
            return SnVerdict::Certified { degree: n, evidence };
        }
    }
    let reason = if transitive.is_none() {
        "no transitivity evidence".to_string()
    } else if long_prime.is_none() {
        "no prime cycle longer than n/2".to_string()
    } else {
        "no transposition, or Jordan cycle with odd evidence".to_string()
    };
    SnVerdict::Inconclusive { reason, primes_tried: tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int_poly;

    #[test]
    fn cyclotomic_like_inconclusive() {
        assert!(!certify_sn(&int_poly(&[-1, 0, 0, 0, 0, 1]), 200).is_certified());
        assert!(!certify_sn(&int_poly(&[1, 0, 0, 0, 1]), 200).is_certified());
        // A5 quintic: x^5 + 20x + 16 has square discriminant
        assert!(!certify_sn(&int_poly(&[16, 20, 0, 0, 0, 1]), 200).is_certified());
    }

    #[test]
    fn generic_polynomials() {
        assert!(certify_sn(&int_poly(&[-1, -1, 0, 0, 0, 1]), 200).is_certified());
        assert!(certify_sn(&int_poly(&[-1, -1, 0, 0, 0, 0, 0, 1]), 200).is_certified());
        assert!(certify_sn(&int_poly(&[-2, 0, 1]), 200).is_certified());
        assert!(certify_sn(&int_poly(&[-2, 0, 0, 1]), 200).is_certified());
        assert!(certify_sn(&int_poly(&[-1, -1, 0, 1]), 200).is_certified());
    }
}
