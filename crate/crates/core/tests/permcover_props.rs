use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unrx_core::permcover::{
    check_condition_i, clifford_commutator, closure, cover_selftest, lift, project, random_permutation, Multivector,
    Permutation, QSqrt2, DEFAULT_CLOSURE_BOUND, EXHAUSTIVE_DEGREE,
};

#[test]
fn laws_exhaustive_up_to_eight() {
    for n in 2..=EXHAUSTIVE_DEGREE {
        let r = cover_selftest(n, 1, 2000).unwrap();
        assert!(r.passed, "n = {n}: {:#?}", r.checks);
        if n >= 4 {
            assert!(r.checks.iter().filter(|c| c.exhaustive).all(|c| c.cases > 0));
        }
    }
}

#[test]
fn laws_sampled_at_nine_and_ten() {
    for n in [9, 10] {
        let r = cover_selftest(n, 2, 300).unwrap();
        assert!(r.passed, "n = {n}: {:#?}", r.checks);
    }
}

fn permutation_on(n: usize, points: &[usize], rng: &mut impl Rng) -> Permutation {
    let mut shuffled = points.to_vec();
    shuffled.shuffle(rng);
    let mut images: Vec<usize> = (1..=n).collect();
    for (&from, &to) in points.iter().zip(&shuffled) {
        images[from - 1] = to;
    }
    Permutation::from_images(&images).unwrap()
}

#[test]
fn condition_i_is_commutation_in_the_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut trues, mut falses) = (0, 0);
    for _ in 0..400 {
        let n = rng.gen_range(4..=7);
        let mut pts: Vec<usize> = (1..=n).collect();
        pts.shuffle(&mut rng);
        let (a, b) = (pts[0], pts[1]);
        let inertia = Permutation::transposition(n, a, b);
        let mut gens = vec![inertia.clone(), permutation_on(n, &pts[2..], &mut rng)];
        // a generator off the stabilizer usually generates all of S_n; keep n small
        let leaves_pair = n <= 5 && rng.gen_bool(0.3);
        if leaves_pair {
            gens.push(random_permutation(n, &mut rng));
        }
        let cond = check_condition_i(&inertia, &gens, n).unwrap();
        let x = lift(&inertia);
        let one = Multivector::one(n);
        let minus_one = Multivector::scalar(n, -<QSqrt2 as num_traits::One>::one());
        let mut all_commute = true;
        let mut all_central = true;
        for g in closure(&gens, DEFAULT_CLOSURE_BOUND).unwrap() {
            let c = clifford_commutator(&x, &lift(&g)).unwrap();
            all_commute &= c == one;
            all_central &= c == one || c == minus_one;
            assert!(project(&c).is_ok());
        }
        if cond {
            assert!(all_commute, "condition i holds but the preimage is not abelian");
            trues += 1;
        } else {
            // inside the stabilizer of {a, b}, failure is an odd element on the complement
            if !leaves_pair || all_central {
                assert!(!all_commute);
            }
            falses += 1;
        }
    }
    assert!(trues > 50 && falses > 50, "{trues} {falses}");
}

#[test]
fn minus_one_is_central() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 3..=7 {
        let m: Multivector<QSqrt2> = Multivector::scalar(n, -<QSqrt2 as num_traits::One>::one());
        for _ in 0..20 {
            let x = lift(&random_permutation(n, &mut rng));
            assert_eq!(x.mul(&m), m.mul(&x));
        }
    }
}
