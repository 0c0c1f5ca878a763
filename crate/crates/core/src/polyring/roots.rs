use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::error::Result;
use crate::exactnum::{factorize, PrimeFactorization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoot {
    pub value: BigRational,
    pub multiplicity: usize,
}

fn divisors(f: &PrimeFactorization) -> Vec<BigInt> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(ds.len() * (*e as usize + 1));
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

// Homogeneous evaluation: sum a_i u^i v^(d-i).
fn vanishes_at(f: &Poly<BigInt>, u: &BigInt, v: &BigInt) -> bool {
    let d = f.deg();
    let mut acc = BigInt::zero();
    let mut vp = BigInt::one();
    let coeffs = f.coeffs();
    // Horner in u with weights of v: ((a_d u + a_{d-1} v) u + a_{d-2} v^2) ...
    for i in (0..=d).rev() {
        acc = acc * u + &coeffs[i] * &vp;
        vp *= v;
    }
    acc.is_zero()
}

/// All rational roots with multiplicity, ascending, by the rational root test.
pub fn rational_roots(f: &Poly<BigInt>) -> Result<Vec<RationalRoot>> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut out = Vec::new();
    let k = f.x_adic_valuation();
    let g = Poly::new(f.coeffs()[k..].to_vec());
    if k > 0 {
        out.push(RationalRoot { value: BigRational::zero(), multiplicity: k });
    }
    if g.deg() == 0 {
        return Ok(out);
    }
    // squarefree part over Q, cleared to a primitive integer polynomial
    let sf = g.to_rat().squarefree_part().normalize_content().0;
    let lead = divisors(&factorize(&sf.lc())?);
    let tail = divisors(&factorize(&sf.coeff(0))?);
    let mut found: Vec<BigRational> = Vec::new();
    for v in &lead {
        for u in &tail {
            for s in [1i32, -1] {
                let uu = if s < 0 { -u } else { u.clone() };
                let r = BigRational::new(uu.clone(), v.clone());
                if r.denom() != v || r.numer().abs() != *u {
                    continue;
                }
                if vanishes_at(&sf, &uu, v) {
                    found.push(r);
                }
            }
        }
    }
    for r in found {
        let lin = Poly::new(vec![-r.numer().clone(), r.denom().clone()]);
        let mut m = 0;
        let mut h = g.clone();
        while let Some(q) = h.div_exact_poly(&lin) {
            h = q;
            m += 1;
        }
        out.push(RationalRoot { value: r, multiplicity: m });
    }
    out.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int_poly;
    use crate::scalar::rat;

    #[test]
    fn simple_roots() {
        // (2X - 1)(X + 3)^2 X
        let f = &(&int_poly(&[-1, 2]) * &int_poly(&[9, 6, 1])) * &int_poly(&[0, 1]);
        let r = rational_roots(&f).unwrap();
        assert_eq!(
            r,
            vec![
                RationalRoot { value: rat(-3, 1), multiplicity: 2 },
                RationalRoot { value: rat(0, 1), multiplicity: 1 },
                RationalRoot { value: rat(1, 2), multiplicity: 1 },
            ]
        );
        assert!(rational_roots(&int_poly(&[1, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&int_poly(&[-2, 0, 1])).unwrap().is_empty());
    }
}
