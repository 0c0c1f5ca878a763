use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use unrx_core::exactnum::{is_prime, jacobi, primes_below, valuation};
use unrx_core::polyring::{discriminant, formal_discriminant};
use unrx_core::ratcrit::{
    critical_data, fixed_prime_divisors, homogenized_discriminant, prime_witness_search, quintic, sextic,
    transformed_forms, RationalFunctionQ,
};
use unrx_core::IntPolynomial;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn check_critical_points(f: &RationalFunctionQ) {
    let n = f.degree();
    let cps = critical_data(f).unwrap();
    assert_eq!(cps.len(), 2 * n - 2);
    for c in &cps {
        let p = f.pencil(&c.alpha, &c.beta);
        assert!(!discriminant(&c.q).is_zero());
        assert_eq!(c.q.deg(), n - 2);
        match &c.eta {
            Some(eta) => {
                assert!(p.eval_rat(eta).is_zero());
                assert!(p.derivative().eval_rat(eta).is_zero());
                assert!(!p.derivative().derivative().eval_rat(eta).is_zero());
                assert!(!c.q.eval_rat(eta).is_zero());
                let lin = IntPolynomial::new(vec![-eta.numer().clone(), eta.denom().clone()]);
                let quot = p.div_exact_poly(&(&lin * &lin)).unwrap();
                assert_eq!(quot.primitive_part(), c.q);
            }
            None => assert_eq!(p.deg(), n - 2),
        }
    }
}

#[test]
fn critical_points_are_simple_double_roots() {
    check_critical_points(&sextic());
    check_critical_points(&quintic());
}

fn brute_fixed(f: &RationalFunctionQ) -> Vec<BigInt> {
    let cps = critical_data(f).unwrap();
    let hd = homogenized_discriminant(f, &cps).unwrap();
    primes_below(100)
        .into_iter()
        .map(BigInt::from)
        .filter(|p| {
            let pu: i64 = p.try_into().unwrap();
            (0..pu).all(|t| (0..pu).all(|s| hd.eval(&b(t), &b(s)).is_multiple_of(p)))
        })
        .collect()
}

#[test]
fn fixed_primes_match_brute_force() {
    for (f, want) in [(sextic(), vec![b(2), b(3)]), (quintic(), vec![b(2), b(7), b(11)])] {
        let cps = critical_data(&f).unwrap();
        let hd = homogenized_discriminant(&f, &cps).unwrap();
        let got = fixed_prime_divisors(&hd.content, &hd.forms).unwrap();
        assert_eq!(got, brute_fixed(&f));
        assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn homogenized_discriminant_at_random_points(t in -10_000i64..10_000, s in -10_000i64..10_000) {
        for f in [sextic(), quintic()] {
            let cps = critical_data(&f).unwrap();
            let hd = homogenized_discriminant(&f, &cps).unwrap();
            let (t, s) = (b(t), b(s));
            prop_assert_eq!(formal_discriminant(&f.pencil(&t, &s), f.degree()), hd.eval(&t, &s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transformed_forms_on_the_lattice(t in -100_000i64..100_000, s in -100_000i64..100_000) {
        let f = sextic();
        let cps = critical_data(&f).unwrap();
        let hd = homogenized_discriminant(&f, &cps).unwrap();
        let (a, bb, n) = (b(385), b(1), b(23328));
        let tf = transformed_forms(&hd.forms, &n, &a, &bb).unwrap();
        let (t, s) = (b(t), b(s));
        for (l, m) in hd.forms.iter().zip(&tf) {
            let full = l.eval(&(&n * &t + &a), &(&n * &s + &bb));
            let part = m.eval(&t, &s);
            prop_assert_eq!(&m.nu * &part, full);
            for p in [b(2), b(3)] {
                prop_assert_eq!(valuation(&part, &p), 0);
            }
        }
    }

    #[test]
    fn witness_is_least_admissible_prime(
        delta in prop::sample::select(vec![-7i64, -3, 5, 13, 17 * 23, -101, 2 * 43]),
        m in 1i64..60,
        r in 0i64..60,
    ) {
        let (delta, m, r) = (b(delta), b(m), b(r));
        let bound = b(20_000);
        let avoid = b(30);
        let got = prime_witness_search(&r, &delta, &m, &bound, &avoid);
        let brute = if r.gcd(&m).is_one() || m.is_one() {
            let mut l = r.mod_floor(&m);
            if l.is_zero() {
                l = m.clone();
            }
            let mut found = None;
            while l <= bound {
                if l.is_odd() && l.gcd(&avoid).is_one() && is_prime(&l) && jacobi(&delta, &l) == 1 {
                    found = Some(l.clone());
                    break;
                }
                l += &m;
            }
            found
        } else {
            None
        };
        prop_assert_eq!(got.clone(), brute);
        if let Some(l) = got {
            prop_assert_eq!((&l - &r).mod_floor(&m), BigInt::zero());
            prop_assert_eq!(jacobi(&delta, &l), 1);
            prop_assert!(BigInt::one() < l);
        }
    }
}
