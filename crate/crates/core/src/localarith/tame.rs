use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::certify::{LocalCertificate, LocalVerdict};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, jacobi, valuation};
use crate::polyring::{discriminant, factor_mod_p_seeded, FactorPattern, ModPolynomial};
use crate::IntPolynomial;

fn cert(q: &BigInt, verdict: LocalVerdict, v: Option<u32>) -> LocalCertificate {
    LocalCertificate {
        prime: q.clone(),
        verdict,
        disc_valuation: v,
        depth: 0,
        transcript: Vec::new(),
        notes: Vec::new(),
    }
}

/// Certifies a transposition inertia group at an odd prime from a single
/// double root mod q and discriminant valuation 1.
pub fn tame_inertia_cycle_type(f: &IntPolynomial, q: &BigInt) -> LocalCertificate {
    let f = f.primitive_part();
    let disc = discriminant(&f);
    if disc.is_zero() {
        return cert(q, LocalVerdict::Unknown { reason: "polynomial is not squarefree".into() }, None);
    }
    tame_inertia_with_disc(&f, q, valuation(&disc, q))
}

/// As [`tame_inertia_cycle_type`] with a precomputed `v_q(disc f)`.
pub fn tame_inertia_with_disc(f: &IntPolynomial, q: &BigInt, disc_valuation: u32) -> LocalCertificate {
    assert!(q.is_odd(), "tame inertia needs an odd prime");
    assert!(!(f.lc() % q).is_zero(), "q divides the leading coefficient");
    let v = Some(disc_valuation);
    let red = ModPolynomial::from_int(f, q);
    let fac = factor_mod_p_seeded(&red, 0);
    let pattern = FactorPattern::from_parts(fac.pattern());
    if pattern.separable {
        return cert(q, LocalVerdict::UnramifiedCertified, v);
    }
    let repeated: Vec<_> = fac.factors.iter().filter(|(_, m)| *m > 1).collect();
    let single_double = repeated.len() == 1 && repeated[0].1 == 2 && repeated[0].0.deg() == 1;
    if single_double && disc_valuation == 1 {
        let cofactor: Vec<(usize, usize)> =
            fac.factors.iter().filter(|(_, m)| *m == 1).map(|(g, _)| (g.deg(), 1)).collect();
        let mut inertia = vec![2];
        inertia.extend(std::iter::repeat(1).take(f.deg() - 2));
        let witness = fac
            .factors
            .iter()
            .map(|(g, m)| if *m == 1 { format!("({g})") } else { format!("({g})^{m}") })
            .collect::<Vec<_>>()
            .join("*");
        return cert(
            q,
            LocalVerdict::RamifiedTame { inertia, frobenius: Some(FactorPattern::from_parts(cofactor)), witness },
            v,
        );
    }
    cert(
        q,
        LocalVerdict::Unknown { reason: format!("pattern {pattern} with discriminant valuation {disc_valuation}") },
        v,
    )
}

/// Legendre symbol `(delta / q)`: +1 means even Frobenius on the
/// quadratic residue extension of discriminant `delta`.
pub fn frobenius_parity(delta: &BigInt, q: &BigInt) -> i8 {
    jacobi(delta, q)
}

/// Whether `X^(p-1) - 2^((p+1)/2)` has only odd-degree factors' lcm over F_p.
pub fn residue_degree_odd_at_n(p: &BigInt) -> Result<bool> {
    if !is_prime(p) || (p % 4u32) != BigInt::from(3) {
        return Err(Error::PreconditionUnmet(format!("{p} is not a prime congruent to 3 mod 4")));
    }
    let pu: usize = p.try_into().map_err(|_| Error::PreconditionUnmet("prime too large".into()))?;
    let c = BigInt::from(2).modpow(&((p + 1u32) / 2u32), p);
    let mut cs = vec![BigInt::zero(); pu];
    cs[0] = -c;
    cs[pu - 1] = BigInt::from(1);
    let fac = factor_mod_p_seeded(&ModPolynomial::new(p, cs), 0);
    let l = fac.factors.iter().fold(1usize, |acc, (g, _)| acc.lcm(&g.deg()));
    Ok(l % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int_poly;

    #[test]
    fn residue_degree_examples() {
        for p in [3, 11, 19] {
            assert!(residue_degree_odd_at_n(&BigInt::from(p)).unwrap(), "{p}");
        }
        assert!(residue_degree_odd_at_n(&BigInt::from(13)).is_err());
        assert!(residue_degree_odd_at_n(&BigInt::from(15)).is_err());
    }

    #[test]
    fn tame_examples() {
        // X^2 - 3 at 3: double root, v(disc = 12) = 1
        let c = tame_inertia_cycle_type(&int_poly(&[-3, 0, 1]), &BigInt::from(3));
        assert!(matches!(c.verdict, LocalVerdict::RamifiedTame { .. }));
        let c = tame_inertia_cycle_type(&int_poly(&[-2, 0, 1]), &BigInt::from(5));
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
        // X^2 - 9*2: v_3(disc) = 2
        let c = tame_inertia_cycle_type(&int_poly(&[-18, 0, 1]), &BigInt::from(3));
        assert!(c.verdict.is_unknown());
        // (X^2 - 3)(X - 5) has a transposition with fixed cofactor
        let f = &int_poly(&[-3, 0, 1]) * &int_poly(&[-5, 1]);
        let c = tame_inertia_cycle_type(&f, &BigInt::from(3));
        match c.verdict {
            LocalVerdict::RamifiedTame { inertia, frobenius, .. } => {
                assert_eq!(inertia, vec![2, 1]);
                assert_eq!(frobenius.unwrap().parts, vec![(1, 1)]);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(frobenius_parity(&BigInt::from(9), &BigInt::from(7)), 1);
        assert_eq!(frobenius_parity(&BigInt::from(21), &BigInt::from(7)), 0);
        let d1 = BigInt::from(17 * 23 * 43 * 101);
        assert_eq!(frobenius_parity(&d1, &BigInt::from(13)), crate::exactnum::jacobi_i64(17 * 23 * 43 * 101, 13));
    }
}
