use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{clifford_commutator, clifford_order, lift, mul_by_lift, project, Multivector, Permutation, QSqrt2};
use crate::error::{Error, Result};
use num_traits::One;

pub const MAX_SELFTEST_DEGREE: usize = 10;
pub const EXHAUSTIVE_DEGREE: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub exhaustive: bool,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawCheck {
    fn new(law: &str, exhaustive: bool) -> Self {
        LawCheck { law: law.into(), exhaustive, cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<LawCheck>,
    pub passed: bool,
}

/// Calls `visit` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&Permutation)) {
    let mut a: Vec<usize> = (1..=n).collect();
    loop {
        visit(&Permutation::from_images(&a).expect("valid images"));
        let Some(i) = (1..n).rev().find(|&i| a[i - 1] < a[i]) else { return };
        let j = (i..n).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
        a.swap(i - 1, j);
        a[i..].reverse();
    }
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut a: Vec<usize> = (1..=n).collect();
    a.shuffle(rng);
    Permutation::from_images(&a).expect("valid images")
}

/// A product of `d` disjoint transpositions on random points.
pub fn random_involution(n: usize, d: usize, rng: &mut impl Rng) -> Permutation {
    let mut a: Vec<usize> = (1..=n).collect();
    a.shuffle(rng);
    let pairs: Vec<[usize; 2]> = (0..d).map(|k| [a[2 * k], a[2 * k + 1]]).collect();
    let cycles: Vec<&[usize]> = pairs.iter().map(|p| &p[..]).collect();
    Permutation::from_cycles(n, &cycles)
}

fn up_to_sign(x: &Multivector<QSqrt2>, y: &Multivector<QSqrt2>) -> bool {
    x == y || *x == y.neg()
}

fn expected_order(d: usize) -> usize {
    if d % 4 <= 1 {
        2
    } else {
        4
    }
}

/// Checks the group laws of the double cover: exhaustively for
/// `n <= 8`, on `samples` random elements above that.
pub fn cover_selftest(n: usize, seed: u64, samples: usize) -> Result<SelftestReport> {
    if !(2..=MAX_SELFTEST_DEGREE).contains(&n) {
        return Err(Error::InvalidInput(format!("degree {n} outside 2..={MAX_SELFTEST_DEGREE}")));
    }
    let exhaustive = n <= EXHAUSTIVE_DEGREE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut proj = LawCheck::new("projection of lift is the identity", exhaustive);
    let mut order = LawCheck::new("involution lifts have order 2 iff d = 0, 1 mod 4", exhaustive);
    let check_perm = |s: &Permutation, proj: &mut LawCheck, order: &mut LawCheck| {
        let x = lift(s);
        proj.record(project(&x).map(|p| &p == s).unwrap_or(false), || format!("{s:?}"));
        if s.is_involution() && !s.is_identity() {
            let d = s.transposition_count();
            order.record(clifford_order(&x).ok() == Some(expected_order(d)), || format!("{s:?}, d = {d}"));
        }
    };
    if exhaustive {
        for_each_permutation(n, |s| check_perm(s, &mut proj, &mut order));
    } else {
        for _ in 0..samples {
            let s = random_permutation(n, &mut rng);
            check_perm(&s, &mut proj, &mut order);
            let d = rng.gen_range(1..=n / 2);
            let inv = random_involution(n, d, &mut rng);
            check_perm(&inv, &mut proj, &mut order);
        }
    }

    let mut section = LawCheck::new("lift(s) lift(t) = +-lift(s t)", false);
    let mut product = LawCheck::new("generator-wise product equals the geometric product", false);
    for k in 0..samples {
        let s = random_permutation(n, &mut rng);
        let t = random_permutation(n, &mut rng);
        let x = mul_by_lift(&lift(&s), &t);
        if k < samples.div_ceil(50) {
            product.record(x == lift(&s).mul(&lift(&t)), || format!("{s:?} {t:?}"));
        }
        section.record(up_to_sign(&x, &lift(&s.compose(&t))), || format!("{s:?} {t:?}"));
    }

    let minus_one = Multivector::scalar(n, -QSqrt2::one());
    // unordered pairs suffice: the commutator of the swapped pair is the inverse
    let mut comm = LawCheck::new("lifts of disjoint transpositions commute to -1", true);
    for a in 1..=n {
        for b in a + 1..=n {
            for c in 1..=n {
                for e in c + 1..=n {
                    if [a, b].contains(&c) || [a, b].contains(&e) || (a, b) > (c, e) {
                        continue;
                    }
                    let x = lift(&Permutation::transposition(n, a, b));
                    let y = lift(&Permutation::transposition(n, c, e));
                    let ok = clifford_commutator(&x, &y).map(|z| z == minus_one).unwrap_or(false);
                    comm.record(ok, || format!("({a} {b}) ({c} {e})"));
                }
            }
        }
    }

    let mut center = LawCheck::new("-1 is central of order 2", exhaustive);
    let order_ok = clifford_order(&minus_one).ok() == Some(2);
    center.record(order_ok, || "order of -1".into());
    let gens: Vec<Multivector<QSqrt2>> = (1..n).map(|a| lift(&Permutation::transposition(n, a, a + 1))).collect();
    for (k, g) in gens.iter().enumerate() {
        center.record(g.mul(&minus_one) == minus_one.mul(g), || format!("generator {}", k + 1));
    }

    let checks = vec![proj, order, section, product, comm, center];
    let passed = checks.iter().all(|c| c.passed() || (c.cases == 0 && n < 4));
    Ok(SelftestReport { n, seed, checks, passed })
}
