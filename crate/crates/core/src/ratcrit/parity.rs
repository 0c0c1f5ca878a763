use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{
    critical_data, fixed_prime_divisors, homogenized_discriminant, transformed_forms, unramified_seed_search,
    verify_unramified_seed, AffineForm, CriticalPoint, RationalFunctionQ, SearchBounds, UnramifiedSeed,
};
use crate::error::{Error, Result};
use crate::exactnum::{factorize, is_prime, jacobi, valuation};
use crate::polyring::{sturm_count, Bound};
use crate::ser;

/// One reciprocity factor of `(Delta / D)`: `-1` and `2` use the
/// supplementary laws, an odd prime `p` gives `(D / p)` times `sign`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityFactor {
    #[serde(serialize_with = "ser::big")]
    pub prime: BigInt,
    pub sign: i8,
    pub symbol: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityRecord {
    pub index: usize,
    pub gamma: String,
    pub form: String,
    #[serde(serialize_with = "ser::big")]
    pub value: BigInt,
    /// Sign of the transformed form at the seed.
    pub sign: i8,
    /// Sign of `beta t - alpha s` at the untransformed point.
    pub original_sign: i8,
    pub same_sign: bool,
    #[serde(serialize_with = "ser::big")]
    pub d: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub delta: BigInt,
    pub factors: Vec<ParityFactor>,
    pub product: i8,
    pub direct_jacobi: i8,
    pub passes: bool,
    #[serde(serialize_with = "ser::big_opt")]
    pub witness: Option<BigInt>,
    #[serde(serialize_with = "ser::big_opt")]
    pub class_witness: Option<BigInt>,
    pub witness_jacobi: Option<i8>,
}

fn prime_to(n: &BigInt, primes: &[BigInt]) -> BigInt {
    let mut d = n.abs();
    for p in primes {
        while !d.is_zero() && d.is_multiple_of(p) {
            d /= p;
        }
    }
    d
}

fn neg_one_pow(e: &BigInt) -> i8 {
    if e.is_even() {
        1
    } else {
        -1
    }
}

fn reciprocity_factors(delta: &BigInt, d: &BigInt) -> Result<Vec<ParityFactor>> {
    let mut out = Vec::new();
    let one = BigInt::one();
    let half = (d - &one) / 2;
    if delta.is_negative() {
        out.push(ParityFactor { prime: -&one, sign: 1, symbol: neg_one_pow(&half) });
    }
    let a = delta.abs();
    if a.is_one() {
        return Ok(out);
    }
    let fac = factorize(&a)?;
    for p in fac.primes() {
        if fac.exponent(&p) % 2 == 0 {
            continue;
        }
        if p == BigInt::from(2) {
            out.push(ParityFactor { prime: p, sign: 1, symbol: neg_one_pow(&((d * d - &one) / 8)) });
        } else {
            let sign = neg_one_pow(&(((&p - &one) / 2) * &half));
            out.push(ParityFactor { symbol: jacobi(d, &p), sign, prime: p });
        }
    }
    Ok(out)
}

/// Signed Jacobi products `(Delta_i / D_i)` at the seed, `D_i` the prime-to-`fixed`
/// part of `|form_i(t0, s0)|`.
pub fn parity_check(
    forms: &[AffineForm],
    deltas: &[BigInt],
    t0: &BigInt,
    s0: &BigInt,
    fixed: &[BigInt],
) -> Result<Vec<ParityRecord>> {
    if forms.len() != deltas.len() {
        return Err(Error::InvalidInput("one discriminant per form is required".into()));
    }
    let all: BigInt = deltas.iter().fold(BigInt::from(2), |acc, d| acc * d);
    let mut out = Vec::with_capacity(forms.len());
    for (i, (l, delta)) in forms.iter().zip(deltas).enumerate() {
        let value = l.eval(t0, s0);
        if value.is_zero() {
            return Err(Error::PreconditionUnmet(format!("form {i} vanishes at the seed")));
        }
        let d = prime_to(&value, fixed);
        let g = d.gcd(&all);
        if !g.is_one() {
            let prime = factorize(&g)?.primes()[0].clone();
            return Err(Error::NotCoprime {
                what: format!("D_{} = {d}", i + 1),
                with: "2 prod Delta_j".into(),
                prime: prime.to_string(),
            });
        }
        let factors = reciprocity_factors(delta, &d)?;
        let product = factors.iter().map(|f| f.sign * f.symbol).product::<i8>();
        let direct_jacobi = jacobi(delta, &d);
        let sign = if value.is_positive() { 1 } else { -1 };
        out.push(ParityRecord {
            index: i,
            gamma: String::new(),
            form: l.to_string(),
            value,
            sign,
            original_sign: sign,
            same_sign: true,
            d,
            delta: delta.clone(),
            factors,
            product,
            direct_jacobi,
            passes: product == 1,
            witness: None,
            class_witness: None,
            witness_jacobi: None,
        });
    }
    Ok(out)
}

/// Least prime `l <= bound`, `l = residue mod modulus`, coprime to `avoid`,
/// with `(delta / l) = +1`.
pub fn prime_witness_search(
    residue: &BigInt,
    delta: &BigInt,
    modulus: &BigInt,
    bound: &BigInt,
    avoid: &BigInt,
) -> Option<BigInt> {
    if modulus.is_zero() {
        return None;
    }
    let m = modulus.abs();
    let mut l = residue.mod_floor(&m);
    if !l.gcd(&m).is_one() && !m.is_one() {
        return None;
    }
    let four_delta = delta.abs() * 4;
    if !delta.is_zero() && m.is_multiple_of(&four_delta) && l.is_odd() && jacobi(delta, &l) == -1 {
        // the character of delta is constant on the class
        return None;
    }
    if l.is_zero() {
        l = m.clone();
    }
    while &l <= bound {
        if l.is_odd() && l.gcd(avoid).is_one() && is_prime(&l) && jacobi(delta, &l) == 1 {
            return Some(l);
        }
        l += &m;
    }
    None
}

#[derive(Clone, Debug)]
pub struct SeedOptions {
    /// Fixed progression `(a, b, N)`; searched for when absent.
    pub progression: Option<(BigInt, BigInt, BigInt)>,
    pub bounds: SearchBounds,
    /// Upper bound for witness primes; zero skips the search.
    pub witness_bound: BigInt,
}

impl Default for SeedOptions {
    fn default() -> Self {
        SeedOptions { progression: None, bounds: SearchBounds::default(), witness_bound: BigInt::from(100_000_000u64) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedReport {
    pub degree: usize,
    pub critical_points: Vec<CriticalPoint>,
    #[serde(serialize_with = "ser::big")]
    pub content: BigInt,
    pub forms: Vec<String>,
    #[serde(serialize_with = "ser::big_vec")]
    pub fixed_primes: Vec<BigInt>,
    pub seed: UnramifiedSeed,
    pub transformed_forms: Vec<AffineForm>,
    #[serde(serialize_with = "ser::big")]
    pub t0: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub s0: BigInt,
    /// The specialization point `(N t0 + a, N s0 + b)`.
    #[serde(serialize_with = "ser::big")]
    pub t: BigInt,
    #[serde(serialize_with = "ser::big")]
    pub s: BigInt,
    pub coprime_point: bool,
    pub critical_point: bool,
    pub parity: Vec<ParityRecord>,
    pub parity_error: Option<String>,
    /// Forms constant `3 mod 4` on the progression.
    pub twist_forms: Vec<usize>,
    pub real_roots: usize,
    pub totally_real: bool,
    pub assumption_a: bool,
    pub assumption_b: bool,
    pub verdict: bool,
    pub notes: Vec<String>,
}

/// Checks whether `(t0, s0)` on an unramified progression satisfies both
/// hypotheses of the specialization criterion.
pub fn verify_seed(f: &RationalFunctionQ, t0: &BigInt, s0: &BigInt, opts: &SeedOptions) -> Result<SeedReport> {
    let cps = critical_data(f)?;
    let hd = homogenized_discriminant(f, &cps)?;
    let fixed = fixed_prime_divisors(&hd.content, &hd.forms)?;
    let seed = match &opts.progression {
        Some((a, b, n)) => verify_unramified_seed(f, &hd, &fixed, a, b, n, opts.bounds.depth)?,
        None => unramified_seed_search(f, &hd, &fixed, &opts.bounds)?,
    };
    let forms_t = transformed_forms(&hd.forms, &seed.n, &seed.a, &seed.b)?;
    let t = &seed.n * t0 + &seed.a;
    let s = &seed.n * s0 + &seed.b;
    let coprime_point = t.gcd(&s).is_one();
    let critical_point = hd.forms.iter().any(|l| l.eval(&t, &s).is_zero());
    let deltas: Vec<BigInt> = cps.iter().map(|c| c.delta.clone()).collect();
    let mut notes = Vec::new();
    let (parity, parity_error) = if critical_point {
        (Vec::new(), Some("seed is a critical value".to_string()))
    } else {
        match parity_check(&forms_t, &deltas, t0, s0, &fixed) {
            Ok(r) => (r, None),
            Err(e @ Error::NotCoprime { .. }) => (Vec::new(), Some(e.to_string())),
            Err(e) => return Err(e),
        }
    };
    let all_delta: BigInt = deltas.iter().fold(BigInt::one(), |acc, d| acc * d.abs());
    let avoid = &all_delta * 2;
    let mut parity = parity;
    for r in &mut parity {
        let i = r.index;
        r.gamma = cps[i].gamma_string();
        let orig = hd.forms[i].eval(&t, &s);
        r.original_sign = if orig.is_positive() { 1 } else { -1 };
        r.same_sign = r.original_sign == r.sign;
        if r.passes && opts.witness_bound.is_positive() {
            r.witness = prime_witness_search(&r.d, &r.delta, &(&all_delta * 4), &opts.witness_bound, &avoid);
            r.class_witness = prime_witness_search(&r.d, &r.delta, &(r.delta.abs() * 4), &opts.witness_bound, &avoid);
            if let Some(l) = r.witness.as_ref().or(r.class_witness.as_ref()) {
                r.witness_jacobi = Some(jacobi(&r.delta, l));
            }
        }
    }
    if parity.iter().any(|r| r.product != r.direct_jacobi) {
        notes.push("reciprocity product disagrees with the direct Jacobi symbol".into());
    }
    let four = BigInt::from(4);
    let twist_forms: Vec<usize> = forms_t
        .iter()
        .enumerate()
        .filter(|(_, l)| {
            l.u.is_multiple_of(&four) && l.v.is_multiple_of(&four) && l.w.mod_floor(&four) == BigInt::from(3)
        })
        .map(|(i, _)| i)
        .collect();
    let fiber = f.pencil(&t, &s);
    let real_roots = sturm_count(&fiber.to_rat(), &Bound::NegInf, &Bound::PosInf);
    let assumption_a = seed.certified;
    let assumption_b = parity_error.is_none()
        && !parity.is_empty()
        && parity.iter().all(|r| r.passes && r.same_sign && r.product == r.direct_jacobi);
    for p in &fixed {
        if valuation(&seed.n, p) == 0 {
            notes.push(format!("N is prime to the fixed prime {p}"));
        }
    }
    let verdict = assumption_a && assumption_b && coprime_point && !critical_point;
    Ok(SeedReport {
        degree: f.degree(),
        forms: hd.forms.iter().map(|l| l.to_string()).collect(),
        content: hd.content,
        critical_points: cps,
        fixed_primes: fixed,
        seed,
        transformed_forms: forms_t,
        t0: t0.clone(),
        s0: s0.clone(),
        t,
        s,
        coprime_point,
        critical_point,
        parity,
        parity_error,
        twist_forms,
        real_roots,
        totally_real: real_roots == fiber.deg(),
        assumption_a,
        assumption_b,
        verdict,
        notes,
    })
}

/// Scans `(t0, s0)` by height on an unramified progression and returns the
/// first seed whose full report has a true verdict.
pub fn search_seed(f: &RationalFunctionQ, opts: &SeedOptions, max_height: u64) -> Result<Option<SeedReport>> {
    let cps = critical_data(f)?;
    let hd = homogenized_discriminant(f, &cps)?;
    let fixed = fixed_prime_divisors(&hd.content, &hd.forms)?;
    let seed = match &opts.progression {
        Some((a, b, n)) => verify_unramified_seed(f, &hd, &fixed, a, b, n, opts.bounds.depth)?,
        None => unramified_seed_search(f, &hd, &fixed, &opts.bounds)?,
    };
    if !seed.certified {
        return Ok(None);
    }
    let forms_t = transformed_forms(&hd.forms, &seed.n, &seed.a, &seed.b)?;
    let deltas: Vec<BigInt> = cps.iter().map(|c| c.delta.clone()).collect();
    let fixed_opts =
        SeedOptions { progression: Some((seed.a.clone(), seed.b.clone(), seed.n.clone())), ..opts.clone() };
    for h in 0..=max_height as i64 {
        for s0 in 0..=h {
            for t0 in -h..=h {
                if t0.abs().max(s0) != h {
                    continue;
                }
                let (t0, s0) = (BigInt::from(t0), BigInt::from(s0));
                let t = &seed.n * &t0 + &seed.a;
                let s = &seed.n * &s0 + &seed.b;
                if !t.gcd(&s).is_one() || hd.forms.iter().any(|l| l.eval(&t, &s).is_zero()) {
                    continue;
                }
                let ok = parity_check(&forms_t, &deltas, &t0, &s0, &fixed)
                    .map(|rs| rs.iter().all(|r| r.passes))
                    .unwrap_or(false);
                if ok {
                    let report = verify_seed(f, &t0, &s0, &fixed_opts)?;
                    if report.verdict {
                        return Ok(Some(report));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::sextic;
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pinned_options() -> SeedOptions {
        SeedOptions { progression: Some((b(385), b(1), b(23328))), ..SeedOptions::default() }
    }

    #[test]
    fn pinned_seed() {
        let r = verify_seed(&sextic(), &b(783), &b(17), &pinned_options()).unwrap();
        assert_eq!(r.fixed_primes, vec![b(2), b(3)]);
        let first = &r.parity[0];
        assert_eq!(first.value, b(286855));
        assert_eq!(first.form, "432T - 3024S + 7");
        let odd: Vec<(BigInt, i8)> =
            first.factors.iter().filter(|f| f.prime > b(2)).map(|f| (f.prime.clone(), f.symbol)).collect();
        assert_eq!(odd, vec![(b(17), -1), (b(23), -1), (b(43), -1), (b(101), -1)]);
        assert_eq!(first.product, 1);
        assert!(r.parity.iter().all(|p| p.product == p.direct_jacobi));
        assert!(r.verdict, "{:?} {:?}", r.parity_error, r.notes);
        for p in &r.parity {
            if let (Some(l), Some(j)) = (p.witness.as_ref().or(p.class_witness.as_ref()), p.witness_jacobi) {
                assert!(is_prime(l));
                assert_eq!(j, 1);
            }
        }
    }

    #[test]
    fn shared_factor_is_reported() {
        // 17 | Delta_1; pick t0 with 17 | the value of some form
        let opts = pinned_options();
        let mut hit = None;
        for t0 in 0..200 {
            let r = verify_seed(&sextic(), &b(t0), &b(1), &opts).unwrap();
            if let Some(e) = &r.parity_error {
                assert!(e.contains("shares the prime"));
                assert!(!r.verdict);
                hit = Some(t0);
                break;
            }
        }
        assert!(hit.is_some());
    }

    #[test]
    fn search_finds_a_seed() {
        let opts = pinned_options();
        assert!(search_seed(&sextic(), &opts, 40).unwrap().is_none());
        let r = search_seed(&sextic(), &opts, 120).unwrap().expect("a seed of small height");
        assert!(r.verdict);
        assert_eq!((r.t0, r.s0), (b(-102), b(9)));
    }

    #[test]
    fn witness_examples() {
        let avoid = b(2);
        let l = prime_witness_search(&b(1), &b(2), &b(8), &b(10_000), &avoid).unwrap();
        assert_eq!(jacobi(&b(2), &l), 1);
        assert_eq!(l, b(17));
        assert_eq!(prime_witness_search(&b(2), &b(3), &b(4), &b(10), &avoid), None);
        assert_eq!(prime_witness_search(&b(3), &b(2), &b(8), &b(100_000_000), &avoid), None);
        let d1 = b(17 * 23 * 43 * 101);
        let l = prime_witness_search(&b(286855), &d1, &(&d1 * 4), &b(100_000_000), &(&d1 * 2)).unwrap();
        assert_eq!(jacobi(&d1, &l), 1);
    }

    #[test]
    fn square_delta_is_trivial() {
        let forms = vec![AffineForm::from_i64(1, 0, 0)];
        let r = parity_check(&forms, &[b(1)], &b(35), &b(1), &[]).unwrap();
        assert_eq!(r[0].product, 1);
        assert!(r[0].factors.is_empty());
        let e = parity_check(&forms, &[b(5)], &b(35), &b(1), &[]).unwrap_err();
        assert!(matches!(e, Error::NotCoprime { .. }));
    }
}
