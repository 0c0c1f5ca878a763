use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Family, FamilyInstance, FamilyOptions, Status};
use crate::error::{Error, Result};
use crate::exactnum::{factorize, factorize_with, is_prime, jacobi, mod_inverse, squarefree_part, PrimeFactorization};
use crate::localarith::{
    certify_unramified, newton_polygon, residue_degree_odd_at_n, tame_inertia_with_disc, LocalCertificate,
    LocalVerdict, NewtonPolygon,
};
use crate::permcover::{check_condition_i, check_condition_ii, Parity, Permutation};
use crate::polyring::{discriminant, factor_mod_p_seeded, FactorPattern, ModPolynomial};
use crate::{ser, IntPolynomial};

/// Result of one local check inside a clause.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeCheck {
    #[serde(serialize_with = "ser::big")]
    pub prime: BigInt,
    pub status: Status,
    /// Non-fatal: even multiplicity, not certified.
    pub deferred: bool,
    pub certificate: Option<LocalCertificate>,
    /// Reduction of the rescaled model mod the prime.
    pub reduction: Option<String>,
    /// Whether the reduction equals the expected closed form.
    pub reduction_matches: Option<bool>,
    pub expected_reduction: Option<String>,
    /// Legendre symbol of the split square class.
    pub split_symbol: Option<i8>,
    pub frobenius: Option<FactorPattern>,
    pub frobenius_parity: Option<Parity>,
    pub condition_i: Option<bool>,
    pub notes: Vec<String>,
}

impl PrimeCheck {
    fn new(prime: &BigInt) -> Self {
        PrimeCheck {
            prime: prime.clone(),
            status: Status::Unknown,
            deferred: false,
            certificate: None,
            reduction: None,
            reduction_matches: None,
            expected_reduction: None,
            split_symbol: None,
            frobenius: None,
            frobenius_parity: None,
            condition_i: None,
            notes: Vec::new(),
        }
    }
}

/// Root counts of a residue polynomial over `F_(p^d)`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueTable {
    #[serde(serialize_with = "ser::big")]
    pub alpha: BigInt,
    pub polynomial: String,
    pub separable: bool,
    /// `(d, roots in F_(p^d))`
    pub roots: Vec<(u32, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseVerdict {
    pub clause: String,
    pub status: Status,
    pub checks: Vec<PrimeCheck>,
    pub newton_polygon: Option<NewtonPolygon>,
    pub residue_degree_odd: Option<bool>,
    pub residue_tables: Vec<ResidueTable>,
    /// Cycle type of the local inertia generator, when determined.
    pub inertia: Option<Vec<usize>>,
    /// Whether every involution of the local decomposition group has
    /// `0 or 1 mod 4` transpositions.
    pub involution_rule: Option<bool>,
    #[serde(serialize_with = "ser::big_opt")]
    pub split_class: Option<BigInt>,
    pub disc_factorization: Option<PrimeFactorization>,
    pub notes: Vec<String>,
}

impl ClauseVerdict {
    fn new(clause: &str) -> Self {
        ClauseVerdict {
            clause: clause.into(),
            status: Status::Unknown,
            checks: Vec::new(),
            newton_polygon: None,
            residue_degree_odd: None,
            residue_tables: Vec::new(),
            inertia: None,
            involution_rule: None,
            split_class: None,
            disc_factorization: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn not_applicable(clause: &str, why: String) -> Self {
        let mut c = ClauseVerdict::new(clause);
        c.status = Status::NotApplicable;
        c.notes.push(why);
        c
    }

    fn close(mut self) -> Self {
        self.status = self
            .checks
            .iter()
            .map(|c| if c.deferred { Status::NotApplicable } else { c.status })
            .fold(self.status_seed(), Status::and);
        self
    }

    fn status_seed(&self) -> Status {
        if self.checks.iter().all(|c| c.deferred) {
            Status::Certified
        } else {
            Status::NotApplicable
        }
    }
}

fn big(n: u32) -> BigInt {
    BigInt::from(n)
}

fn status_of(cert: &LocalCertificate) -> Status {
    match cert.verdict {
        LocalVerdict::UnramifiedCertified => Status::Certified,
        LocalVerdict::Unknown { .. } => Status::Unknown,
        _ => Status::Refuted,
    }
}

fn mod_string(f: &ModPolynomial) -> String {
    f.to_string()
}

/// Unramified at every prime of `n - 1` (tech1) or of `n` (tech2), via a
/// monic model whose reduction is separable.
pub fn verify_clause_i(inst: &FamilyInstance, opts: &FamilyOptions) -> ClauseVerdict {
    let mut out = ClauseVerdict::new("i");
    let n = inst.n;
    let nu = n as usize;
    let base = match inst.family {
        Family::Tech1 => big(n - 1),
        Family::Tech2 => big(n),
    };
    let primes = factorize(&base).expect("small").primes();
    for p in primes {
        let mut chk = PrimeCheck::new(&p);
        let red = ModPolynomial::from_int(&inst.model, &p);
        // closed forms of the reduction
        let mut cs = vec![BigInt::zero(); nu + 1];
        cs[nu] = BigInt::one();
        let two = BigInt::from(2);
        match (inst.family, p == two) {
            (Family::Tech1, false) => cs[0] = inst.t.pow(n - 1),
            (Family::Tech1, true) => {
                cs[nu - 1] = BigInt::one();
                cs[0] = BigInt::one();
            }
            (Family::Tech2, false) => cs[1] = -(big(n - 1).pow(n / 2) * &inst.t),
            (Family::Tech2, true) => {
                cs[1] = BigInt::one();
                cs[0] = BigInt::one();
            }
        }
        let expected = ModPolynomial::new(&p, cs);
        chk.reduction = Some(mod_string(&red));
        chk.expected_reduction = Some(mod_string(&expected));
        chk.reduction_matches = Some(red == expected);
        let cert = certify_unramified(&inst.model, &p, opts.depth);
        chk.status = status_of(&cert);
        chk.certificate = Some(cert);
        out.checks.push(chk);
    }
    out.close()
}

/// The square class governing Frobenius parity on the residue extension:
/// the squarefree part of `disc(sum (i+1) X^i, i < n-1)`.
pub fn residue_square_class(n: u32) -> BigInt {
    let g = IntPolynomial::new((1..n).map(BigInt::from).collect());
    squarefree_part(&discriminant(&g)).expect("factorable")
}

/// Every ramified prime outside `n(n-1)` has transposition inertia and
/// even Frobenius on the complement.
pub fn verify_clause_ii(inst: &FamilyInstance, opts: &FamilyOptions) -> ClauseVerdict {
    let mut out = ClauseVerdict::new("ii");
    let n = inst.n as usize;
    let class = residue_square_class(inst.n);
    out.split_class = Some(class.clone());
    if inst.family == Family::Tech1 {
        let halved = squarefree_part(&big((inst.n - 1) / 2)).expect("small");
        if halved != class {
            out.notes.push(format!("residue class {class} differs from the (n-1)/2 class {halved}"));
        }
    }
    let disc = discriminant(&inst.model);
    let fac = match factorize_with(&disc, &opts.factor) {
        Ok(f) => f,
        Err(e) => {
            out.status = Status::Unknown;
            out.notes.push(e.to_string());
            return out;
        }
    };
    out.disc_factorization = Some(fac.clone());
    for (q, v) in &fac.factors {
        if inst.excluded(q) {
            continue;
        }
        let mut chk = PrimeCheck::new(q);
        let cert = if *v == 1 {
            tame_inertia_with_disc(&inst.model, q, 1)
        } else {
            certify_unramified(&inst.model, q, opts.depth)
        };
        match &cert.verdict {
            LocalVerdict::UnramifiedCertified => chk.status = Status::Certified,
            LocalVerdict::RamifiedTame { inertia, .. } if inertia.iter().filter(|&&c| c == 2).count() == 1 => {
                transposition_check(inst, q, &class, n, opts.seed, &mut chk);
            }
            LocalVerdict::Unknown { reason } if v % 2 == 0 => {
                chk.deferred = true;
                chk.notes.push(format!("even multiplicity, certification deferred: {reason}"));
            }
            LocalVerdict::Unknown { .. } => chk.status = Status::Unknown,
            _ => {
                chk.status = Status::Unknown;
                chk.notes.push("ramified without a transposition certificate".into());
            }
        }
        chk.certificate = Some(cert);
        out.checks.push(chk);
    }
    out.close()
}

fn transposition_check(inst: &FamilyInstance, q: &BigInt, class: &BigInt, n: usize, seed: u64, chk: &mut PrimeCheck) {
    let fac = factor_mod_p_seeded(&ModPolynomial::from_int(&inst.model, q), seed);
    let doubles: Vec<_> = fac.factors.iter().filter(|(_, m)| *m > 1).collect();
    if doubles.len() != 1 || doubles[0].1 != 2 || doubles[0].0.deg() != 1 {
        chk.status = Status::Unknown;
        chk.notes.push("reduction does not have a single double root".into());
        return;
    }
    let cofactor: Vec<usize> = fac.factors.iter().filter(|(_, m)| *m == 1).map(|(g, _)| g.deg()).collect();
    // decomposition group model: <(1,2)> x <sigma> with sigma on 3..n
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut next = 3;
    for d in &cofactor {
        cycles.push((next..next + d).collect());
        next += d;
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    let sigma = Permutation::from_cycles(n, &refs);
    let tau = Permutation::transposition(n, 1, 2);
    let parity = sigma.parity();
    let split = jacobi(class, q);
    let cond = check_condition_i(&tau, &[tau.clone(), sigma], n).expect("transposition");
    chk.frobenius = Some(FactorPattern::from_parts(cofactor.iter().map(|&d| (d, 1)).collect()));
    chk.frobenius_parity = Some(parity);
    chk.split_symbol = Some(split);
    chk.condition_i = Some(cond);
    if (split == 1) != (parity == Parity::Even) {
        chk.status = Status::Unknown;
        chk.notes.push("Legendre symbol and Frobenius parity disagree".into());
    } else {
        chk.status = if cond { Status::Certified } else { Status::Refuted };
    }
}

fn involution(n: usize, pairs: usize) -> Permutation {
    let cycles: Vec<Vec<usize>> = (0..pairs).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(n, &refs)
}

/// Local structure at the primes of `n` (tech1, `n` prime) or of `n - 1`
/// (tech2, `n - 1` prime or square).
pub fn verify_clause_iii(inst: &FamilyInstance, opts: &FamilyOptions) -> Result<ClauseVerdict> {
    match inst.family {
        Family::Tech1 => clause_iii_tech1(inst),
        Family::Tech2 => clause_iii_tech2(inst, opts),
    }
}

fn clause_iii_tech1(inst: &FamilyInstance) -> Result<ClauseVerdict> {
    let n = inst.n;
    let p = big(n);
    if !is_prime(&p) {
        return Err(Error::PreconditionUnmet(format!("n = {n} is not prime")));
    }
    let mut out = ClauseVerdict::new("iii");
    let poly = newton_polygon(&inst.poly, &p);
    let shape: Vec<(String, usize)> = poly.segments.iter().map(|s| (s.slope.to_string(), s.length)).collect();
    let polygon_ok = shape == vec![("-1/2".to_string(), (n - 1) as usize), ("0".to_string(), 1)];
    out.newton_polygon = Some(poly);
    if !polygon_ok {
        out.notes.push("Newton polygon differs from [(-1/2, n-1), (0, 1)]".into());
    }
    let odd = residue_degree_odd_at_n(&p)?;
    out.residue_degree_odd = Some(odd);

    // reduction of the rescaled polynomial over the ramified quadratic extension
    let h = (n - 1) / 2;
    let pm = |x: BigInt| x.mod_floor(&p);
    let lead = pm(-BigInt::from(-2).pow(h));
    let cst = mod_inverse(&big(h).pow(n), &p).expect("unit");
    let mut cs = vec![BigInt::zero(); (n - 1) as usize + 1];
    cs[0] = cst;
    cs[(n - 1) as usize] = lead;
    let residue = ModPolynomial::new(&p, cs).monic();
    let mut ecs = vec![BigInt::zero(); (n - 1) as usize + 1];
    ecs[0] = pm(-BigInt::from(2).pow(h + 1));
    ecs[(n - 1) as usize] = BigInt::one();
    let expected = ModPolynomial::new(&p, ecs);
    let separable = residue.gcd(&residue.derivative()).deg() == 0;
    let mut chk = PrimeCheck::new(&p);
    chk.reduction = Some(residue.to_string());
    chk.expected_reduction = Some(expected.to_string());
    chk.reduction_matches = Some(residue == expected);
    chk.status =
        if polygon_ok && odd && separable && residue == expected { Status::Certified } else { Status::Refuted };
    out.checks.push(chk);

    // one fixed point, (n-1)/2 transpositions; all involutions of the local
    // group are conjugate since the odd part is normal of index 2
    let iota = involution(n as usize, h as usize);
    out.inertia = Some(iota.cycle_type().0);
    out.involution_rule = Some(check_condition_ii(&iota, &[iota.clone()])?);
    Ok(out.close())
}

fn roots_over_extension(f: &ModPolynomial, d: u32) -> usize {
    let p = f.prime().clone();
    let x = ModPolynomial::x(&p);
    let frob = x.pow_mod(&p.pow(d), f);
    f.gcd(&frob.sub(&x)).deg()
}

fn clause_iii_tech2(inst: &FamilyInstance, opts: &FamilyOptions) -> Result<ClauseVerdict> {
    let n = inst.n;
    let m = big(n - 1);
    let mut out = ClauseVerdict::new("iii");
    if is_prime(&m) {
        let p = m;
        let poly = newton_polygon(&inst.poly, &p);
        let half = poly.root_valuations().iter().all(|v| v.denom() == &big(2));
        out.newton_polygon = Some(poly);
        let mut chk = PrimeCheck::new(&p);
        let nonresidue = (2u32..).map(big).find(|a| jacobi(a, &p) == -1).expect("exists");
        let mut ok = half;
        for alpha in [BigInt::one(), nonresidue] {
            // 1 + alpha^((p+1)/2) (n/2)^p X^(p+1), made monic
            let mut cs = vec![BigInt::zero(); n as usize + 1];
            cs[0] = BigInt::one();
            cs[n as usize] = (alpha.pow(n / 2) * big(n / 2).pow(n - 1)).mod_floor(&p);
            let residue = ModPolynomial::new(&p, cs).monic();
            let mut ecs = vec![BigInt::zero(); n as usize + 1];
            ecs[0] = (mod_inverse(&alpha.pow(n / 2), &p).expect("unit") * BigInt::from(2).pow(n - 1)).mod_floor(&p);
            ecs[n as usize] = BigInt::one();
            let expected = ModPolynomial::new(&p, ecs);
            let separable = residue.gcd(&residue.derivative()).deg() == 0;
            let roots: Vec<(u32, usize)> = (1..=4).map(|d| (d, roots_over_extension(&residue, d))).collect();
            let counts_ok =
                roots.iter().all(|&(d, r)| if d % 2 == 1 { r == 0 || r == 2 } else { r == 0 || r == n as usize });
            ok &= separable && counts_ok && residue == expected;
            chk.notes.push(format!("alpha = {alpha}: residue {residue}, expected {expected}"));
            out.residue_tables.push(ResidueTable { alpha, polynomial: residue.to_string(), separable, roots });
        }
        chk.status = if ok { Status::Certified } else { Status::Refuted };
        out.checks.push(chk);
        let iota = involution(n as usize, (n / 2) as usize);
        out.inertia = Some(iota.cycle_type().0);
        out.involution_rule = Some(check_condition_ii(&iota, &[iota.clone()])?);
        return Ok(out.close());
    }
    let r = m.sqrt();
    if &r * &r == m {
        // Y^(n-1) (Y - r t) + (n/2)^(n-1), roots r t x
        let nu = n as usize;
        let mut cs = vec![BigInt::zero(); nu + 1];
        cs[nu] = BigInt::one();
        cs[nu - 1] = -(&r * &inst.t);
        cs[0] = big(n / 2).pow(n - 1);
        let model = IntPolynomial::new(cs);
        for p in factorize(&r).expect("small").primes() {
            let mut chk = PrimeCheck::new(&p);
            let red = ModPolynomial::from_int(&model, &p);
            let mut ecs = vec![BigInt::zero(); nu + 1];
            ecs[nu] = BigInt::one();
            ecs[0] = big(n / 2).pow(n - 1);
            let expected = ModPolynomial::new(&p, ecs);
            chk.reduction = Some(red.to_string());
            chk.expected_reduction = Some(expected.to_string());
            chk.reduction_matches = Some(red == expected);
            let cert = certify_unramified(&model, &p, opts.depth);
            chk.status = status_of(&cert);
            chk.certificate = Some(cert);
            out.checks.push(chk);
        }
        out.notes.push(format!("model {model} with X = {r}*{}*x", inst.t));
        return Ok(out.close());
    }
    Err(Error::PreconditionUnmet(format!("n - 1 = {m} is neither prime nor a square")))
}

#[cfg(test)]
mod tests {
    use super::super::{build, Family, FamilyOptions};
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn clause_i_tech1() {
        let inst = build(Family::Tech1, 11, &b(3)).unwrap();
        let c = verify_clause_i(&inst, &FamilyOptions::default());
        assert_eq!(c.status, Status::Certified);
        let primes: Vec<_> = c.checks.iter().map(|k| k.prime.clone()).collect();
        assert_eq!(primes, vec![b(2), b(5)]);
        assert!(c.checks.iter().all(|k| k.reduction_matches == Some(true)));
    }

    #[test]
    fn clause_i_tech2() {
        let inst = build(Family::Tech2, 10, &b(7)).unwrap();
        let c = verify_clause_i(&inst, &FamilyOptions::default());
        assert_eq!(c.status, Status::Certified);
        assert_eq!(c.checks.len(), 2);
        assert!(c.checks.iter().all(|k| k.reduction_matches == Some(true)));
    }

    #[test]
    fn residue_class() {
        assert_eq!(residue_square_class(11), b(5));
        assert_eq!(residue_square_class(7), b(3));
    }

    #[test]
    fn clause_ii_tech1_small() {
        let inst = build(Family::Tech1, 11, &b(3)).unwrap();
        let c = verify_clause_ii(&inst, &FamilyOptions::default());
        assert_eq!(c.status, Status::Certified, "{:#?}", c.checks);
        for k in c.checks.iter().filter(|k| k.condition_i.is_some()) {
            assert_eq!(k.split_symbol, Some(1));
            assert_eq!(jacobi(&b(5), &k.prime), 1);
        }
    }

    #[test]
    fn clause_iii_tech1() {
        let inst = build(Family::Tech1, 11, &b(3)).unwrap();
        let c = verify_clause_iii(&inst, &FamilyOptions::default()).unwrap();
        assert_eq!(c.status, Status::Certified, "{c:#?}");
        assert_eq!(c.residue_degree_odd, Some(true));
        assert_eq!(c.inertia, Some(vec![2, 2, 2, 2, 2, 1]));
        assert_eq!(c.involution_rule, Some(true));
        let inst = build(Family::Tech1, 15, &b(1)).unwrap();
        assert!(matches!(verify_clause_iii(&inst, &FamilyOptions::default()), Err(Error::PreconditionUnmet(_))));
    }

    #[test]
    fn clause_iii_tech2_square_and_prime() {
        let inst = build(Family::Tech2, 10, &b(7)).unwrap();
        let c = verify_clause_iii(&inst, &FamilyOptions::default()).unwrap();
        assert_eq!(c.status, Status::Certified);
        assert_eq!(c.checks[0].prime, b(3));
        let inst = build(Family::Tech2, 14, &b(1)).unwrap();
        let c = verify_clause_iii(&inst, &FamilyOptions::default()).unwrap();
        assert_eq!(c.status, Status::Certified, "{c:#?}");
        assert_eq!(c.inertia, Some(vec![2; 7]));
        for t in &c.residue_tables {
            assert!(t.roots.iter().all(|&(d, r)| if d % 2 == 1 { r <= 2 } else { r == 0 || r == 14 }));
        }
        let inst = build(Family::Tech2, 22, &b(1)).unwrap();
        assert!(verify_clause_iii(&inst, &FamilyOptions::default()).is_err());
    }
}
