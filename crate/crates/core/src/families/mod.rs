//! The two one-parameter trinomial-type families and their clause verifiers.

mod clauses;
mod sn;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{factorize, FactorConfig, PrimeFactorization};
use crate::localarith::LocalCertificate;
use crate::polyring::{discriminant, sturm_count, Bound};
use crate::{ser, IntPolynomial, RatPolynomial};

pub use clauses::{
    residue_square_class, verify_clause_i, verify_clause_ii, verify_clause_iii, ClauseVerdict, PrimeCheck, ResidueTable,
};
pub use sn::{certify_sn, SnEvidence, SnVerdict, DEFAULT_PRIME_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tech1,
    Tech2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tech1 => "tech1",
            Family::Tech2 => "tech2",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tech1" => Ok(Family::Tech1),
            "tech2" => Ok(Family::Tech2),
            _ => Err(Error::InvalidInput(format!("unknown family {s}"))),
        }
    }
}

/// Tri-state outcome; `NotApplicable` is ignored when combining.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    Unknown,
    Refuted,
    NotApplicable,
}

impl Status {
    /// Refuted beats Unknown beats Certified.
    pub fn and(self, o: Status) -> Status {
        use Status::*;
        match (self, o) {
            (NotApplicable, x) | (x, NotApplicable) => x,
            (Refuted, _) | (_, Refuted) => Refuted,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Certified,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Status>) -> Status {
        it.into_iter().fold(Status::NotApplicable, Status::and)
    }
}

/// A specialization `f_t` together with an integral model used for local work.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: Family,
    pub n: u32,
    pub t: BigInt,
    /// `X^(n-1) (X - 1) + c`
    pub poly: RatPolynomial,
    /// `poly` with denominators cleared, primitive.
    pub primitive: IntPolynomial,
    /// Monic integral polynomial with the same splitting field.
    pub model: IntPolynomial,
    /// How a root of `model` relates to a root `x` of `poly`.
    pub model_substitution: String,
    /// The constant `c`, i.e. the specialization value of the base parameter.
    pub specialization: BigRational,
    /// The finite nonzero branch point `(n-1)^(n-1) / n^n`.
    pub branch_point: BigRational,
}

fn big(n: u32) -> BigInt {
    BigInt::from(n)
}

fn ratio(a: BigInt, b: BigInt) -> BigRational {
    BigRational::new(a, b)
}

/// Builds `f_t` for the given family.
pub fn build(family: Family, n: u32, t: &BigInt) -> Result<FamilyInstance> {
    let congruent = match family {
        Family::Tech1 => n % 4 == 3,
        Family::Tech2 => n % 4 == 2,
    };
    if !congruent {
        return Err(Error::BadCongruence { n, family: family.to_string() });
    }
    let min = match family {
        Family::Tech1 => 7,
        Family::Tech2 => 6,
    };
    if n < min {
        return Err(Error::InvalidInput(format!("{family} needs n >= {min}")));
    }
    let nn = big(n) * big(n - 1);
    for p in factorize(&nn)?.primes() {
        if t.is_multiple_of(&p) {
            return Err(Error::NotCoprime { what: format!("t = {t}"), with: "n(n-1)".into(), prime: p.to_string() });
        }
    }
    let nu = n as usize;
    let (c, model, subst) = match family {
        Family::Tech1 => {
            let m = big((n - 1) / 2);
            let c = ratio(big(n).pow((n - 1) / 2) * t.pow(n - 1), m.pow(n));
            let mut cs = vec![BigInt::zero(); nu + 1];
            cs[nu] = BigInt::one();
            cs[nu - 1] = -m.clone();
            cs[0] = big(n).pow((n - 1) / 2) * t.pow(n - 1);
            (c, IntPolynomial::new(cs), format!("X = {m}*x"))
        }
        Family::Tech2 => {
            let b = big(n - 1).pow(n / 2);
            let c = ratio(big(n / 2).pow(n - 1), b.clone() * t.pow(n));
            let mut cs = vec![BigInt::zero(); nu + 1];
            cs[nu] = BigInt::one();
            cs[1] = -(&b * t);
            cs[0] = &b * big(n / 2);
            (c, IntPolynomial::new(cs), format!("X = {n}/(2*{t}*x)"))
        }
    };
    let mut cs = vec![BigRational::zero(); nu + 1];
    cs[nu] = BigRational::one();
    cs[nu - 1] = -BigRational::one();
    cs[0] = c.clone();
    let poly = RatPolynomial::new(cs);
    let (primitive, _) = poly.normalize_content();
    Ok(FamilyInstance {
        family,
        n,
        t: t.clone(),
        poly,
        primitive,
        model,
        model_substitution: subst,
        specialization: c,
        branch_point: ratio(big(n - 1).pow(n - 1), big(n).pow(n)),
    })
}

impl FamilyInstance {
    /// Primes excluded from clause ii.
    pub fn excluded(&self, p: &BigInt) -> bool {
        (big(self.n) * big(self.n - 1)).is_multiple_of(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Archimedean {
    pub real_roots: usize,
    /// Transpositions in complex conjugation, `(n - r) / 2`.
    pub conjugation_transpositions: usize,
    pub imaginary_quadratic_subfield: bool,
    pub disc_negative: bool,
    /// Sign of the discriminant agrees with the parity of conjugation.
    pub consistent: bool,
}

/// Real root count and the sign of the quadratic subfield.
pub fn archimedean_check(f: &RatPolynomial) -> Archimedean {
    let n = f.deg();
    let r = sturm_count(f, &Bound::NegInf, &Bound::PosInf);
    let k = (n - r) / 2;
    let d = discriminant(f);
    let disc_negative = d.is_negative();
    Archimedean {
        real_roots: r,
        conjugation_transpositions: k,
        imaginary_quadratic_subfield: k % 2 == 1,
        disc_negative,
        consistent: disc_negative == (k % 2 == 1),
    }
}

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    pub depth: usize,
    pub factor: FactorConfig,
    pub prime_budget: usize,
    /// Seed for the randomized mod-p factorizations.
    pub seed: u64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { depth: 8, factor: FactorConfig::default(), prime_budget: DEFAULT_PRIME_BUDGET, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub n: u32,
    #[serde(serialize_with = "ser::big")]
    pub t: BigInt,
    pub polynomial: String,
    pub model: String,
    pub model_substitution: String,
    #[serde(serialize_with = "ser::rat")]
    pub specialization: BigRational,
    #[serde(serialize_with = "ser::rat")]
    pub branch_point: BigRational,
    pub model_disc_factorization: Option<PrimeFactorization>,
    pub clause_i: ClauseVerdict,
    pub clause_ii: ClauseVerdict,
    pub clause_iii: ClauseVerdict,
    pub galois: SnVerdict,
    pub archimedean: Archimedean,
    /// Real root count expected for large `|t|`.
    pub expected_real_roots: usize,
    pub verdict: Status,
    pub notes: Vec<String>,
}

impl FamilyReport {
    /// Every certificate across the three clauses.
    pub fn certificates(&self) -> impl Iterator<Item = &LocalCertificate> {
        [&self.clause_i, &self.clause_ii, &self.clause_iii]
            .into_iter()
            .flat_map(|c| c.checks.iter().filter_map(|k| k.certificate.as_ref()))
    }
}

/// Runs every clause, the Galois certification and the archimedean check.
pub fn verify(inst: &FamilyInstance, opts: &FamilyOptions) -> FamilyReport {
    let clause_i = verify_clause_i(inst, opts);
    let clause_ii = verify_clause_ii(inst, opts);
    let clause_iii = match verify_clause_iii(inst, opts) {
        Ok(c) => c,
        Err(e) => ClauseVerdict::not_applicable("iii", e.to_string()),
    };
    let galois = certify_sn(&inst.model, opts.prime_budget);
    let archimedean = archimedean_check(&inst.poly);
    let galois_status = if galois.is_certified() { Status::Certified } else { Status::Unknown };
    let verdict = Status::all([clause_i.status, clause_ii.status, clause_iii.status, galois_status]);
    let mut notes = vec!["the family statement is read as holding for infinitely many admissible t".to_string()];
    if !archimedean.consistent {
        notes.push("discriminant sign disagrees with conjugation parity".into());
    }
    FamilyReport {
        family: inst.family,
        n: inst.n,
        t: inst.t.clone(),
        polynomial: inst.poly.to_string(),
        model: inst.model.to_string(),
        model_substitution: inst.model_substitution.clone(),
        specialization: inst.specialization.clone(),
        branch_point: inst.branch_point.clone(),
        model_disc_factorization: clause_ii.disc_factorization.clone(),
        expected_real_roots: match inst.family {
            Family::Tech1 => 1,
            Family::Tech2 => 0,
        },
        clause_i,
        clause_ii,
        clause_iii,
        galois,
        archimedean,
        verdict,
        notes,
    }
}
