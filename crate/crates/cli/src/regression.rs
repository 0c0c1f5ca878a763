//! Recomputes the embedded degree-6 dataset and compares with pinned numbers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};
use unrx_core::families::{self, residue_square_class, Family};
use unrx_core::localarith::newton_polygon;
use unrx_core::polyring::discriminant;
use unrx_core::ratcrit::{critical_data, quintic, sextic, verify_seed, SeedOptions};
use unrx_core::IntPolynomial;

use crate::commands::SEXTIC_PROGRESSION;
use crate::report::{tag, Provenance, Verdict};

const CRITICAL_VALUES: [&str; 10] =
    ["7", "-7", "79/8", "-79/8", "189/22", "-189/22", "918/59", "-918/59", "1733/250", "-1733/250"];

const DELTA_PRIMES: [&[u64]; 5] = [
    &[17, 23, 43, 101],
    &[7, 13, 23, 79, 109, 113, 2683],
    &[11, 13, 23, 29, 43, 67, 113, 2281],
    &[17, 43, 53, 59, 67, 101, 151, 2683],
    &[7, 17, 23, 29, 43, 53, 109, 151, 1733, 2281],
];

struct Check {
    name: String,
    expected: Value,
    computed: Value,
}

impl Check {
    fn new(name: impl Into<String>, expected: Value, computed: Value) -> Self {
        Check { name: name.into(), expected, computed }
    }

    fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    json!(xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn residue_disc(n: u32) -> BigInt {
    let cs: Vec<i64> = (0..=n as i64 - 2).map(|i| i + 1).collect();
    discriminant(&IntPolynomial::new(cs.into_iter().map(BigInt::from).collect()))
}

fn residue_disc_formula(n: u32) -> BigInt {
    let sign = if n.div_ceil(2) % 2 == 0 { 1 } else { -1 };
    let n = BigInt::from(n);
    let m = &n - 1u32;
    BigInt::from(2 * sign) * n.pow(n_exp(&n, 3)) * m.pow(n_exp(&n, 4))
}

fn n_exp(n: &BigInt, k: u32) -> u32 {
    u32::try_from(n).expect("small degree") - k
}

fn checks() -> Vec<Check> {
    let mut out = Vec::new();
    let f = sextic();
    let cps = critical_data(&f).expect("embedded sextic is generic");
    out.push(Check::new("critical values", strings(CRITICAL_VALUES), strings(cps.iter().map(|c| c.gamma_string()))));
    let deltas: Vec<String> = DELTA_PRIMES
        .iter()
        .flat_map(|ps| {
            let d: BigInt = ps.iter().map(|&p| BigInt::from(p)).product();
            [d.to_string(), d.to_string()]
        })
        .collect();
    out.push(Check::new("residue discriminants", json!(deltas), strings(cps.iter().map(|c| &c.delta))));
    out.push(Check::new(
        "residue Galois groups",
        json!(vec!["S4"; 10]),
        json!(cps.iter().map(|c| c.residue_group.map_or("none".into(), |g| format!("{g:?}"))).collect::<Vec<_>>()),
    ));

    let (a, b, n) = SEXTIC_PROGRESSION;
    let opts = SeedOptions { progression: Some((big(a), big(b), big(n))), ..SeedOptions::default() };
    let r = verify_seed(&f, &big(783), &big(17), &opts).expect("embedded seed runs");
    out.push(Check::new("fixed primes", strings([2, 3]), strings(&r.fixed_primes)));
    out.push(Check::new("progression modulus 32 * 729", json!((32 * 729).to_string()), json!(r.seed.n.to_string())));
    out.push(Check::new("unramified at 2 and 3 along 385 + N t", json!(true), json!(r.seed.certified)));
    let three = r.seed.seeds.iter().find(|s| s.prime == big(3)).and_then(|s| s.certificate.as_ref());
    let pattern = |p: &[(&str, usize)]| three.is_some_and(|c| c.has_pattern(p));
    out.push(Check::new(
        "mod-3 patterns X(X-1)(X+1)^4 and X(X-1)(X+1)^2",
        json!([true, true]),
        json!([pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 4)]), pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 2)])]),
    ));
    let v3 = three.and_then(|c| c.disc_valuation);
    out.push(Check::new("3-adic discriminant valuation even", json!(true), json!(v3.is_some_and(|v| v % 2 == 0))));
    let first = r.transformed_forms.first().expect("ten forms");
    out.push(Check::new(
        "first transformed form and divisor",
        json!(["432T - 3024S + 7", "54"]),
        json!([first.to_string(), first.nu.to_string()]),
    ));
    match r.parity.first() {
        Some(p) => {
            out.push(Check::new("first form at (783, 17)", json!("286855"), json!(p.value.to_string())));
            let odd: Vec<_> = p.factors.iter().filter(|x| x.prime > big(2)).collect();
            out.push(Check::new("Legendre primes", strings([17, 23, 43, 101]), strings(odd.iter().map(|x| &x.prime))));
            out.push(Check::new(
                "Legendre symbols",
                json!([-1, -1, -1, -1]),
                json!(odd.iter().map(|x| x.symbol).collect::<Vec<_>>()),
            ));
            out.push(Check::new(
                "reciprocity signs",
                json!([1, -1, -1, 1]),
                json!(odd.iter().map(|x| x.sign).collect::<Vec<_>>()),
            ));
            out.push(Check::new("signed product", json!(1), json!(p.product)));
        }
        None => out.push(Check::new("first form at (783, 17)", json!("286855"), json!(r.parity_error))),
    }
    out.push(Check::new(
        "all ten values positive",
        json!(vec![1; 10]),
        json!(r.parity.iter().map(|p| p.sign).collect::<Vec<_>>()),
    ));
    out.push(Check::new("seed verdict", json!(true), json!(r.verdict)));
    out.push(Check::new("totally real fiber", json!(6), json!(r.real_roots)));
    out.push(Check::new("some form constant 3 mod 4", json!(true), json!(!r.twist_forms.is_empty())));

    let q = critical_data(&quintic()).map(|c| c.len()).unwrap_or(0);
    out.push(Check::new("degree-5 function critical values", json!(8), json!(q)));

    let ns = [7u32, 11, 15, 19, 23, 27, 31];
    out.push(Check::new("disc of sum (i+1) X^i", strings(ns.map(residue_disc_formula)), strings(ns.map(residue_disc))));
    out.push(Check::new("square class for n = 11", json!("5"), json!(residue_square_class(11).to_string())));
    let np = families::build(Family::Tech1, 11, &big(3))
        .map(|inst| newton_polygon(&inst.poly, &big(11)))
        .map(|np| np.segments.iter().map(|s| (s.slope.to_string(), s.length)).collect::<Vec<_>>());
    out.push(Check::new(
        "tech1 n = 11 Newton polygon at 11",
        json!([["-1/2", 10], ["0", 1]]),
        json!(np.unwrap_or_default()),
    ));
    out
}

pub fn run() -> (Verdict, Value, String) {
    let checks = checks();
    let mut summary = String::new();
    let mut rows = Vec::new();
    for c in &checks {
        let ok = c.matches();
        let _ = writeln!(summary, "  {} {}", if ok { "ok  " } else { "DIFF" }, c.name);
        rows.push(json!({
            "name": c.name,
            "expected": tag(c.expected.clone(), Provenance::PaperTarget),
            "computed": tag(c.computed.clone(), Provenance::Computed),
            "match": ok,
        }));
    }
    let failed = checks.iter().filter(|c| !c.matches()).count();
    let verdict = if failed == 0 { Verdict::Certified } else { Verdict::Refuted };
    let _ = writeln!(summary, "{} checks, {failed} differences", checks.len());
    (verdict, json!({ "checks": rows }), summary)
}
