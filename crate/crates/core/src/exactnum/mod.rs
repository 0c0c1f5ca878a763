//! Elementary number theory over arbitrary-precision integers.

mod factor;
mod jacobi;
mod primes;

pub use factor::{factorize, factorize_with, FactorConfig, PrimeFactorization};
pub use jacobi::{jacobi, jacobi_i64};
pub use primes::{is_prime, is_prime_u64, next_prime, primes_below, small_primes};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest `e` with `p^e | n`. Panics on `n = 0`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    assert!(p > &BigInt::one(), "valuation base must exceed 1");
    let mut e = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// Valuation with `None` standing for +infinity at zero.
pub fn valuation_or_inf(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        None
    } else {
        Some(valuation(n, p))
    }
}

/// Signed product of the primes dividing `n` to an odd power.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    squarefree_part_with(n, &FactorConfig::default())
}

pub fn squarefree_part_with(n: &BigInt, cfg: &FactorConfig) -> Result<BigInt> {
    assert!(!n.is_zero(), "squarefree part of zero");
    let f = factorize_with(n, cfg)?;
    let mut out = BigInt::one();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            out *= p;
        }
    }
    if f.sign == Sign::Minus {
        out = -out;
    }
    Ok(out)
}

/// Solves a system of congruences with pairwise coprime moduli.
/// Returns the residue in `[0, M)` and `M`.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (a, n) in congruences {
        assert!(n.is_positive(), "crt modulus must be positive");
        let g = m.extended_gcd(n);
        if !g.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(m.to_string(), n.to_string()));
        }
        // r + m*k = a (mod n)  =>  k = (a - r) * m^{-1} (mod n)
        let k = ((a - &r) * &g.x).mod_floor(n);
        r += &m * k;
        m *= n;
        r = r.mod_floor(&m);
    }
    Ok((r, m))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// Exact integer square root test.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&b(23328), &b(2)), 5);
        assert_eq!(valuation(&b(23328), &b(3)), 6);
        assert_eq!(valuation(&b(7), &b(7)), 1);
        assert_eq!(valuation(&b(54), &b(3)), 3);
        assert_eq!(valuation(&b(-54), &b(5)), 0);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&b(18)).unwrap(), b(2));
        assert_eq!(squarefree_part(&b(-75)).unwrap(), b(-3));
        assert_eq!(squarefree_part(&b(1)).unwrap(), b(1));
        assert_eq!(squarefree_part(&b(-1)).unwrap(), b(-1));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(b(1), b(2)), (b(2), b(3))]).unwrap(), (b(5), b(6)));
        assert_eq!(crt(&[(b(385 % 32), b(32)), (b(385 % 729), b(729))]).unwrap(), (b(385), b(23328)));
        assert_eq!(crt(&[(b(0), b(5))]).unwrap(), (b(0), b(5)));
        assert_eq!(crt(&[]).unwrap(), (b(0), b(1)));
        assert!(matches!(crt(&[(b(1), b(4)), (b(1), b(6))]), Err(Error::NonCoprimeModuli(..))));
    }

    #[test]
    fn symmetric_residues() {
        assert_eq!(symmetric_mod(&b(2), &b(3)), b(-1));
        assert_eq!(symmetric_mod(&b(-4), &b(3)), b(-1));
        assert_eq!(symmetric_mod(&b(1), &b(2)), b(1));
        assert_eq!(symmetric_mod(&b(5), &b(10)), b(5));
    }

    #[test]
    fn squares() {
        assert!(is_square(&b(0)));
        assert!(is_square(&b(144)));
        assert!(!is_square(&b(145)));
        assert!(!is_square(&b(-4)));
    }
}
