use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::primes::{is_prime, small_primes};
use crate::error::{Error, Result};

/// Effort limits for [`factorize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    pub trial_bound: u64,
    pub rho_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { trial_bound: 1_000_000, rho_budget: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    #[serde(serialize_with = "sign_ser")]
    pub sign: Sign,
    #[serde(serialize_with = "factors_ser")]
    pub factors: Vec<(BigInt, u32)>,
}

fn sign_ser<S: serde::Serializer>(s: &Sign, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_i8(if *s == Sign::Minus { -1 } else { 1 })
}

fn factors_ser<S: serde::Serializer>(f: &[(BigInt, u32)], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), *e))?;
    }
    seq.end()
}

impl PrimeFactorization {
    pub fn product(&self) -> BigInt {
        let mut n = BigInt::one();
        for (p, e) in &self.factors {
            n *= p.pow(*e);
        }
        if self.sign == Sign::Minus {
            -n
        } else {
            n
        }
    }

    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }
}

impl std::fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factorize(n: &BigInt) -> Result<PrimeFactorization> {
    factorize_with(n, &FactorConfig::default())
}

/// Trial division, then Pollard-Brent rho under a step budget.
pub fn factorize_with(n: &BigInt, cfg: &FactorConfig) -> Result<PrimeFactorization> {
    assert!(!n.is_zero(), "factorize(0)");
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    let mut m = n.abs();
    let mut found: Vec<BigInt> = Vec::new();

    for &p in small_primes() {
        if p as u64 >= cfg.trial_bound {
            break;
        }
        let pb = p as u64;
        if let Some(mv) = m.to_u64() {
            if pb * pb > mv {
                break;
            }
        }
        while (&m % pb).is_zero() {
            m /= pb;
            found.push(BigInt::from(pb));
        }
        if m.is_one() {
            break;
        }
    }

    if !m.is_one() {
        let mut budget = cfg.rho_budget;
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                found.push(c);
                continue;
            }
            if let Some(r) = perfect_power_root(&c) {
                let k = power_of(&c, &r);
                for _ in 0..k {
                    stack.push(r.clone());
                }
                continue;
            }
            match brent(&c, &mut budget) {
                Some(d) => {
                    let e = &c / &d;
                    stack.push(d);
                    stack.push(e);
                }
                None => return Err(Error::FactorizationBudgetExceeded { cofactor: c.to_string() }),
            }
        }
    }

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PrimeFactorization { sign, factors })
}

fn power_of(n: &BigInt, r: &BigInt) -> u32 {
    let mut k = 0;
    let mut m = n.clone();
    while (&m % r).is_zero() {
        m /= r;
        k += 1;
    }
    k
}

// Finds r with n = r^k, k >= 2, if one exists.
fn perfect_power_root(n: &BigInt) -> Option<BigInt> {
    let bits = n.bits() as u32;
    for k in 2..=bits {
        let r = n.nth_root(k);
        if r <= BigInt::one() {
            break;
        }
        if &r.pow(k) == n {
            return perfect_power_root(&r).or(Some(r));
        }
    }
    None
}

// Brent's cycle-finding variant with batched gcds. Tries successive constants.
fn brent(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    *budget = 0;
                    return None;
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
