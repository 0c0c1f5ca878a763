mod commands;
mod regression;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use report::Document;

#[derive(Parser, Debug)]
#[command(name = "unrx", version, about = "Exact certificates for unramified specializations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for randomized factorization and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refinement depth of local certificates.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Upper bound for witness primes.
    #[arg(long, global = true, value_name = "N", value_parser = parse_big)]
    pub witness_bound: Option<BigInt>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a specialization of one of the two polynomial families.
    Family(FamilyArgs),
    /// Rational functions with rational critical values.
    Ratfct {
        #[command(subcommand)]
        action: RatfctCommand,
    },
    /// Double cover checks.
    Cover {
        #[command(subcommand)]
        action: CoverCommand,
    },
    /// Search a progression and a seed of small height.
    Search(SearchArgs),
    /// Recompute the embedded dataset and compare with the published numbers.
    PaperRegression,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    Tech1,
    Tech2,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_big, conflicts_with_all = ["t_min", "t_max"])]
    pub t: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_big, requires = "t_max")]
    pub t_min: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_big, requires = "t_min")]
    pub t_max: Option<BigInt>,
    /// Primes tried for the full symmetric group certificate.
    #[arg(long)]
    pub prime_budget: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Builtin {
    Sextic,
    Quintic,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// JSON file {"numerator": [...], "denominator": [...]}, ascending degree.
    #[arg(long, conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Embedded function used when no input file is given.
    #[arg(long, value_enum, default_value = "sextic")]
    pub builtin: Builtin,
}

#[derive(Args, Debug)]
pub struct ProgressionArgs {
    /// Progression numerator offset: parameters (N t + a) / (N s + b).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_big, requires = "modulus")]
    pub a: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_big, requires = "modulus")]
    pub b: Option<BigInt>,
    #[arg(long, value_parser = parse_big)]
    pub modulus: Option<BigInt>,
    /// Centers tried per prime in the progression search.
    #[arg(long)]
    pub max_t: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum RatfctCommand {
    /// Critical data, discriminant forms and fixed primes.
    Analyze(InputArgs),
    /// Check both specialization hypotheses at one seed.
    VerifySeed {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        t0: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        s0: BigInt,
        #[command(flatten)]
        progression: ProgressionArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Group laws of the double cover, exhaustive up to degree 8.
    Selftest {
        #[arg(long)]
        n: usize,
        /// Random samples for the sampled laws.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub progression: ProgressionArgs,
    /// Largest height max(|t0|, s0) scanned.
    #[arg(long, default_value_t = 200)]
    pub height: u64,
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("not an integer: {s:?}"))
}

fn emit(cli: &Cli, doc: &Document) -> Result<(), String> {
    if let Some(path) = &cli.out {
        doc.write(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if cli.json {
        print!("{}", doc.render());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(&cli, argv) {
        Ok((doc, summary)) => {
            if !cli.json {
                print!("{summary}");
            }
            if let Err(e) = emit(&cli, &doc) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            ExitCode::from(doc.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
