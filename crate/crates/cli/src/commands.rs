use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use unrx_core::families::{self, Family, FamilyOptions, FamilyReport, Status};
use unrx_core::localarith::LocalVerdict;
use unrx_core::permcover::{cover_selftest, MAX_SELFTEST_DEGREE};
use unrx_core::ratcrit::{
    critical_data, fixed_prime_divisors, homogenized_discriminant, quintic, search_seed, sextic, verify_seed,
    RationalFunctionQ, SeedOptions, SeedReport,
};
use unrx_core::Error;

use crate::report::{tag, to_value, Document, Provenance, Verdict};
use crate::{Builtin, Cli, Command, CoverCommand, FamilyArgs, FamilyName, InputArgs, ProgressionArgs, RatfctCommand};

/// Progression pinned with the embedded sextic.
pub const SEXTIC_PROGRESSION: (i64, i64, i64) = (385, 1, 23328);

type Outcome = Result<(Document, String), String>;

pub fn run(cli: &Cli, argv: String) -> Outcome {
    if cli.depth == Some(0) {
        return Err("--depth must be positive".into());
    }
    if let Some(w) = &cli.witness_bound {
        if w.sign() != num_bigint::Sign::Plus {
            return Err("--witness-bound must be positive".into());
        }
    }
    let (command, result) = match &cli.command {
        Command::Family(args) => ("family", run_family(cli, args)?),
        Command::Ratfct { action: RatfctCommand::Analyze(input) } => ("ratfct analyze", run_analyze(input)?),
        Command::Ratfct { action: RatfctCommand::VerifySeed { input, t0, s0, progression } } => {
            ("ratfct verify-seed", run_verify_seed(cli, input, t0, s0, progression)?)
        }
        Command::Cover { action: CoverCommand::Selftest { n, samples } } => {
            ("cover selftest", run_selftest(cli, *n, *samples)?)
        }
        Command::Search(args) => ("search", run_search(cli, &args.input, &args.progression, args.height)?),
        Command::PaperRegression => ("paper-regression", crate::regression::run()),
    };
    let (verdict, value, summary) = result;
    Ok((Document { command: command.into(), argv, verdict, result: value }, summary))
}

type Run = Result<(Verdict, Value, String), String>;

fn status_verdict(s: Status) -> Verdict {
    match s {
        Status::Certified => Verdict::Certified,
        Status::Refuted => Verdict::Refuted,
        Status::Unknown | Status::NotApplicable => Verdict::Unknown,
    }
}

/// Core errors after successful parsing: malformed input is a usage error,
/// failed hypotheses refute, exhausted budgets leave the question open.
fn error_verdict(e: &Error) -> Option<Verdict> {
    match e {
        Error::InvalidInput(_) | Error::BadCongruence { .. } => None,
        Error::NotGeneric(_) | Error::DependentForms(..) | Error::PreconditionUnmet(_) | Error::NotCoprime { .. } => {
            Some(Verdict::Refuted)
        }
        _ => Some(Verdict::Unknown),
    }
}

fn error_result(e: Error) -> Run {
    match error_verdict(&e) {
        None => Err(e.to_string()),
        Some(v) => {
            let detail = match &e {
                Error::SearchExhausted { prime, transcript } => json!({ "prime": prime, "transcript": transcript }),
                _ => Value::Null,
            };
            let summary = format!("{v}: {e}\n");
            Ok((v, json!({ "error": e.to_string(), "detail": detail }), summary))
        }
    }
}

fn family_line(r: &FamilyReport) -> String {
    format!(
        "{} n={} t={}: {} (i {:?}, ii {:?}, iii {:?}, Sn {}, real roots {})\n",
        r.family,
        r.n,
        r.t,
        status_verdict(r.verdict),
        r.clause_i.status,
        r.clause_ii.status,
        r.clause_iii.status,
        if r.galois.is_certified() { "certified" } else { "inconclusive" },
        r.archimedean.real_roots,
    )
}

fn run_family(cli: &Cli, args: &FamilyArgs) -> Run {
    let family = match args.family {
        FamilyName::Tech1 => Family::Tech1,
        FamilyName::Tech2 => Family::Tech2,
    };
    let mut opts = FamilyOptions { seed: cli.seed, ..FamilyOptions::default() };
    if let Some(d) = cli.depth {
        opts.depth = d;
    }
    if let Some(b) = args.prime_budget {
        if b == 0 {
            return Err("--prime-budget must be positive".into());
        }
        opts.prime_budget = b;
    }
    if let Some(t) = &args.t {
        let inst = families::build(family, args.n, t).map_err(|e| e.to_string())?;
        let r = families::verify(&inst, &opts);
        return Ok((status_verdict(r.verdict), to_value(&r), family_line(&r)));
    }
    let (Some(lo), Some(hi)) = (&args.t_min, &args.t_max) else {
        return Err("give --t or both --t-min and --t-max".into());
    };
    if lo > hi {
        return Err("--t-min exceeds --t-max".into());
    }
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut summary = String::new();
    let mut t = lo.clone();
    while &t <= hi {
        match families::build(family, args.n, &t) {
            Ok(inst) => {
                let r = families::verify(&inst, &opts);
                summary.push_str(&family_line(&r));
                reports.push(r);
            }
            Err(e @ Error::BadCongruence { .. }) => return Err(e.to_string()),
            Err(e) => skipped.push(json!({ "t": t.to_string(), "reason": e.to_string() })),
        }
        t += 1;
    }
    if reports.is_empty() {
        return Err("no admissible t in the range".into());
    }
    let verdict = Verdict::combine(reports.iter().map(|r| status_verdict(r.verdict)));
    let verdicts: Vec<Value> =
        reports.iter().map(|r| json!({ "t": r.t.to_string(), "verdict": status_verdict(r.verdict) })).collect();
    let _ = writeln!(summary, "{} admissible, {} skipped: {verdict}", reports.len(), skipped.len());
    Ok((verdict, json!({ "verdicts": verdicts, "reports": to_value(&reports), "skipped": skipped }), summary))
}

#[derive(Deserialize)]
struct InputFile {
    numerator: Vec<String>,
    denominator: Vec<String>,
}

fn load(input: &InputArgs) -> Result<(RationalFunctionQ, String), String> {
    match &input.input {
        Some(path) => Ok((read_input(path)?, path.display().to_string())),
        None => Ok(match input.builtin {
            Builtin::Sextic => (sextic(), "builtin sextic".into()),
            Builtin::Quintic => (quintic(), "builtin quintic".into()),
        }),
    }
}

pub fn read_input(path: &Path) -> Result<RationalFunctionQ, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let f: InputFile = serde_json::from_str(&text).map_err(|e| format!("malformed input {}: {e}", path.display()))?;
    RationalFunctionQ::from_decimal(&f.numerator, &f.denominator).map_err(|e| e.to_string())
}

fn run_analyze(input: &InputArgs) -> Run {
    let (f, source) = load(input)?;
    let analysis = (|| {
        let cps = critical_data(&f)?;
        let hd = homogenized_discriminant(&f, &cps)?;
        let fixed = fixed_prime_divisors(&hd.content, &hd.forms)?;
        Ok::<_, Error>((cps, hd, fixed))
    })();
    let (cps, hd, fixed) = match analysis {
        Ok(x) => x,
        Err(e) => return error_result(e),
    };
    let mut summary = format!("{source}: degree {}, {} critical values\n", f.degree(), cps.len());
    for c in &cps {
        let eta = c.eta.as_ref().map_or("infinity".to_string(), |e| e.to_string());
        let _ = writeln!(summary, "  gamma {:>12}  eta {:>6}  Delta {}", c.gamma_string(), eta, c.delta);
    }
    let primes: Vec<String> = fixed.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(summary, "  content {}, fixed primes {{{}}}", hd.content, primes.join(", "));
    let value = json!({
        "source": source,
        "degree": f.degree(),
        "critical_values": cps.iter().map(|c| c.gamma_string()).collect::<Vec<_>>(),
        "critical_points": to_value(&cps),
        "content": hd.content.to_string(),
        "forms": hd.forms.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "fixed_primes": primes,
    });
    Ok((Verdict::Certified, value, summary))
}

fn seed_options(cli: &Cli, f: &RationalFunctionQ, p: &ProgressionArgs) -> (SeedOptions, Option<&'static str>) {
    let mut opts = SeedOptions::default();
    if let Some(d) = cli.depth {
        opts.bounds.depth = d;
    }
    if let Some(m) = p.max_t {
        opts.bounds.max_t = m;
    }
    if let Some(w) = &cli.witness_bound {
        opts.witness_bound = w.clone();
    }
    let mut source = None;
    match (&p.a, &p.modulus) {
        (a, Some(n)) => {
            let a = a.clone().unwrap_or_default();
            let b = p.b.clone().unwrap_or_else(|| BigInt::from(1));
            opts.progression = Some((a, b, n.clone()));
        }
        _ if *f == sextic() => {
            let (a, b, n) = SEXTIC_PROGRESSION;
            opts.progression = Some((a.into(), b.into(), n.into()));
            source = Some("embedded dataset");
        }
        _ => {}
    }
    (opts, source)
}

fn seed_verdict(r: &SeedReport) -> Verdict {
    if r.verdict {
        return Verdict::Certified;
    }
    let local = r.seed.seeds.iter().filter_map(|s| s.certificate.as_ref().map(|c| &c.verdict));
    let ramified =
        local.clone().any(|v| matches!(v, LocalVerdict::Ramified { .. } | LocalVerdict::RamifiedTame { .. }));
    if !r.seed.certified && !ramified {
        Verdict::Unknown
    } else {
        Verdict::Refuted
    }
}

fn seed_summary(r: &SeedReport) -> String {
    let mut s = format!(
        "progression ({} t + {}) / ({} s + {}), seed ({}, {}) -> ({}, {})\n",
        r.seed.n, r.seed.a, r.seed.n, r.seed.b, r.t0, r.s0, r.t, r.s
    );
    for p in &r.parity {
        let _ = writeln!(s, "  {:>10}  {}  value {}  product {:+}", p.gamma, p.form, p.value, p.product);
    }
    if let Some(e) = &r.parity_error {
        let _ = writeln!(s, "  {e}");
    }
    let _ = writeln!(
        s,
        "unramified at fixed primes: {}, parity: {}, verdict {}",
        r.assumption_a,
        r.assumption_b,
        seed_verdict(r)
    );
    s
}

fn progression_echo(opts: &SeedOptions, source: Option<&str>) -> Value {
    match (&opts.progression, source) {
        (Some((a, b, n)), Some(src)) => json!({
            "source": src,
            "a": tag(json!(a.to_string()), Provenance::PaperTarget),
            "b": tag(json!(b.to_string()), Provenance::PaperTarget),
            "modulus": tag(json!(n.to_string()), Provenance::PaperTarget),
        }),
        (Some((a, b, n)), None) => {
            json!({ "source": "command line", "a": a.to_string(), "b": b.to_string(), "modulus": n.to_string() })
        }
        (None, _) => json!({ "source": "search" }),
    }
}

fn run_verify_seed(cli: &Cli, input: &InputArgs, t0: &BigInt, s0: &BigInt, p: &ProgressionArgs) -> Run {
    let (f, _) = load(input)?;
    let (opts, source) = seed_options(cli, &f, p);
    match verify_seed(&f, t0, s0, &opts) {
        Ok(r) => {
            let v = json!({ "progression": progression_echo(&opts, source), "report": to_value(&r) });
            Ok((seed_verdict(&r), v, seed_summary(&r)))
        }
        Err(e) => error_result(e),
    }
}

fn run_search(cli: &Cli, input: &InputArgs, p: &ProgressionArgs, height: u64) -> Run {
    let (f, _) = load(input)?;
    let (opts, source) = seed_options(cli, &f, p);
    match search_seed(&f, &opts, height) {
        Ok(Some(r)) => {
            let v = json!({ "progression": progression_echo(&opts, source), "height": height, "report": to_value(&r) });
            Ok((Verdict::Certified, v, seed_summary(&r)))
        }
        Ok(None) => {
            let v = json!({ "progression": progression_echo(&opts, source), "height": height, "report": Value::Null });
            Ok((Verdict::Unknown, v, format!("no seed of height <= {height}\n")))
        }
        Err(e) => error_result(e),
    }
}

fn run_selftest(cli: &Cli, n: usize, samples: usize) -> Run {
    if !(2..=MAX_SELFTEST_DEGREE).contains(&n) {
        return Err(format!("--n must lie in 2..={MAX_SELFTEST_DEGREE}"));
    }
    if samples == 0 {
        return Err("--samples must be positive".into());
    }
    let r = cover_selftest(n, cli.seed, samples).map_err(|e| e.to_string())?;
    let mut summary = String::new();
    for c in &r.checks {
        let mode = if c.exhaustive { "exhaustive" } else { "sampled" };
        let _ = writeln!(summary, "  {:<55} {:>6} cases, {} failures ({mode})", c.law, c.cases, c.failures);
    }
    let verdict = if r.passed { Verdict::Certified } else { Verdict::Refuted };
    let _ = writeln!(summary, "n = {n}: {}", if r.passed { "pass" } else { "FAIL" });
    Ok((verdict, to_value(&r), summary))
}
