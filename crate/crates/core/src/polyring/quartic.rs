use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{discriminant, factor_pattern, rational_roots, Poly};
use crate::error::{Error, Result};
use crate::exactnum::{factorize, is_square, primes_below};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticGroup {
    S4,
    A4,
    D4,
    V4,
    C4,
}

impl QuarticGroup {
    pub fn order(self) -> usize {
        match self {
            QuarticGroup::S4 => 24,
            QuarticGroup::A4 => 12,
            QuarticGroup::D4 => 8,
            QuarticGroup::V4 | QuarticGroup::C4 => 4,
        }
    }
}

// x^4 + b x^3 + c x^2 + d x + e with roots a * (roots of f).
fn monic_model(f: &Poly<BigInt>) -> [BigInt; 4] {
    let a = f.lc();
    [f.coeff(3), f.coeff(2) * &a, f.coeff(1) * &a * &a, f.coeff(0) * &a * &a * &a]
}

fn has_quadratic_factor(m: &[BigInt; 4]) -> Result<bool> {
    let [b, c, d, e] = m;
    if e.is_zero() {
        return Ok(true);
    }
    let ds = {
        let f = factorize(e)?;
        let mut ds = vec![BigInt::one()];
        for (p, k) in &f.factors {
            let mut next = Vec::new();
            for x in &ds {
                let mut pk = BigInt::one();
                for _ in 0..=*k {
                    next.push(x * &pk);
                    pk *= p;
                }
            }
            ds = next;
        }
        ds
    };
    // (x^2 + u x + v)(x^2 + u' x + v') with v v' = e
    for d0 in &ds {
        for v in [d0.clone(), -d0.clone()] {
            let w = e / &v;
            let s = c - &v - &w; // u u'
            let disc = b * b - 4 * &s;
            if !is_square(&disc) {
                continue;
            }
            let r = disc.sqrt();
            for root in [&r, &(-&r)] {
                let twice_u = b + root;
                if twice_u.is_odd() {
                    continue;
                }
                let u = &twice_u / 2;
                let u2 = b - &u;
                if &(&u * &w + &u2 * &v) == d {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn irreducible_over_q(f: &Poly<BigInt>) -> Result<bool> {
    if !rational_roots(f)?.is_empty() {
        return Ok(false);
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return Ok(false);
    }
    // A cubic or quartic factor mod a good prime rules out a 2+2 splitting.
    for p in primes_below(200) {
        let p = BigInt::from(p);
        if (f.lc() % &p).is_zero() || (&disc % &p).is_zero() {
            continue;
        }
        let pat = factor_pattern(f, &p)?;
        if pat.parts.iter().any(|&(d, _)| d >= 3) {
            return Ok(true);
        }
    }
    Ok(!has_quadratic_factor(&monic_model(f))?)
}

fn square_or_disc_square(x: &BigInt, disc: &BigInt) -> bool {
    x.is_zero() || is_square(x) || is_square(&(x * disc))
}

/// Galois group of an irreducible quartic via the resolvent cubic.
pub fn quartic_galois_group(f: &Poly<BigInt>) -> Result<QuarticGroup> {
    if f.deg() != 4 {
        return Err(Error::InvalidInput(format!("degree {} is not 4", f.deg())));
    }
    let f = f.primitive_part();
    if !irreducible_over_q(&f)? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let [b, c, d, e] = monic_model(&f);
    let g = Poly::new(vec![e.clone(), d.clone(), c.clone(), b.clone(), BigInt::one()]);
    let disc = discriminant(&g);
    let k0: BigInt = &b * &b * &e - 4 * &c * &e + &d * &d;
    let cubic = Poly::new(vec![-k0, &b * &d - 4 * &e, -c.clone(), BigInt::one()]);
    let roots = rational_roots(&cubic)?;
    Ok(match roots.len() {
        0 => {
            if is_square(&disc) {
                QuarticGroup::A4
            } else {
                QuarticGroup::S4
            }
        }
        1 => {
            let r = roots[0].value.to_integer();
            debug_assert!(roots[0].value.is_integer());
            let k1 = &r * &r - 4 * &e;
            let k2 = &b * &b - 4 * (&c - &r);
            if square_or_disc_square(&k1, &disc) && square_or_disc_square(&k2, &disc) {
                QuarticGroup::C4
            } else {
                QuarticGroup::D4
            }
        }
        _ => QuarticGroup::V4,
    })
}
