use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SIEVE_LIMIT: usize = 1_000_000;

static SMALL: OnceLock<Vec<u32>> = OnceLock::new();

/// Primes below 10^6, computed once.
pub fn small_primes() -> &'static [u32] {
    SMALL.get_or_init(|| primes_below(SIEVE_LIMIT as u64).into_iter().map(|p| p as u32).collect())
}

/// Sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut comp = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic for all u64 (first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigInt, a: u64) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigInt::from(a).modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

// Valid up to 3.317e24 with the first thirteen prime bases.
fn mr_bound() -> BigInt {
    "3317044064679887385961981".parse().unwrap()
}

/// Deterministic primality: Miller-Rabin below 3.3e24, BPSW above.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n < &mr_bound() {
        return [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41].iter().all(|&a| strong_probable_prime(n, a));
    }
    strong_probable_prime(n, 2) && strong_lucas(n)
}

fn jacobi_small(d: i64, n: &BigInt) -> i8 {
    super::jacobi(&BigInt::from(d), n)
}

// Strong Lucas probable prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    let r = n.sqrt();
    if &(&r * &r) == n {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        let j = jacobi_small(d, n);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let p = BigInt::one();
    let q = BigInt::from((1 - d) / 4);
    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    let m = |x: BigInt| x.mod_floor(n);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + n } else { x };
        (x >> 1u32).mod_floor(n)
    };
    let dd = BigInt::from(d);
    let (mut u, mut v, mut qk) = (BigInt::one(), p.clone(), m(q.clone()));
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = m(&u * &v);
        v = m(&v * &v - 2 * &qk);
        qk = m(&qk * &qk);
        if k.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&dd * &u + &p * &v);
            u = nu;
            v = nv;
            qk = m(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = m(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = m(&qk * &qk);
    }
    false
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c <= BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_prime(&c) {
        c += 2;
    }
    c
}
