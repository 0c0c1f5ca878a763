use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::exactnum::{symmetric_mod, valuation};
use crate::polyring::{discriminant, factor_mod_p_seeded, FactorPattern, ModPolynomial};
use crate::ser;
use crate::IntPolynomial;

pub const DEFAULT_DEPTH: usize = 3;
const NODE_BUDGET: usize = 20_000;
const TRANSCRIPT_CAP: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LocalVerdict {
    UnramifiedCertified,
    /// Tame ramification with the given inertia cycle type.
    RamifiedTame {
        inertia: Vec<usize>,
        frobenius: Option<FactorPattern>,
        witness: String,
    },
    /// Ramification is certain but its inertia structure is not determined.
    Ramified {
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

impl LocalVerdict {
    pub fn is_unramified(&self) -> bool {
        matches!(self, LocalVerdict::UnramifiedCertified)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, LocalVerdict::Unknown { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptStep {
    pub level: usize,
    pub coordinate: String,
    pub content_valuation: u32,
    pub reduction: String,
    pub factors: Vec<(String, usize)>,
    pub pattern: FactorPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCertificate {
    #[serde(serialize_with = "ser::big")]
    pub prime: BigInt,
    pub verdict: LocalVerdict,
    pub disc_valuation: Option<u32>,
    pub depth: usize,
    pub transcript: Vec<TranscriptStep>,
    pub notes: Vec<String>,
}

impl LocalCertificate {
    pub fn has_pattern(&self, factors: &[(&str, usize)]) -> bool {
        let mut want: Vec<(String, usize)> = factors.iter().map(|(s, m)| (s.to_string(), *m)).collect();
        want.sort();
        self.transcript.iter().any(|st| {
            let mut got = st.factors.clone();
            got.sort();
            got == want
        })
    }
}

// Summary of a subtree for one admissible residue class of the parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
enum State {
    Unram,
    // exactly one unresolved cluster of size 2
    Open2,
    // a ramified pair of roots, everything else in this subtree unramified
    Tame2(String),
    Ram(String),
    Unk(String),
}

fn join(a: &State, b: &State) -> State {
    use State::*;
    match (a, b) {
        (Unk(r), _) | (_, Unk(r)) => Unk(r.clone()),
        (Ram(r), _) | (_, Ram(r)) => Ram(r.clone()),
        (Unram, x) | (x, Unram) => x.clone(),
        (Tame2(r), Tame2(_)) => Ram(format!("two ramified pairs: {r}")),
        (Tame2(_), Open2) | (Open2, Tame2(_)) => Unk("ramified pair next to an open cluster".into()),
        (Open2, Open2) => Unk("more than one open cluster".into()),
    }
}

fn cross(a: &[State], b: &[State]) -> Vec<State> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let s = join(x, y);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn union(mut a: Vec<State>, b: Vec<State>) -> Vec<State> {
    for s in b {
        if !a.contains(&s) {
            a.push(s);
        }
    }
    a
}

fn p_content(f: &IntPolynomial, p: &BigInt) -> Option<u32> {
    if f.is_zero() {
        None
    } else {
        Some(valuation(&f.content(), p))
    }
}

struct Walker<'a> {
    p: &'a BigInt,
    depth: usize,
    nodes: usize,
    transcript: Vec<TranscriptStep>,
    truncated: bool,
}

impl<'a> Walker<'a> {
    fn record(&mut self, step: TranscriptStep) {
        if self.transcript.len() < TRANSCRIPT_CAP {
            self.transcript.push(step);
        } else {
            self.truncated = true;
        }
    }

    // Roots of `a + k b` (k in Z_p) with nonnegative valuation form a cluster of
    // size `m` (or all roots when `top`, with formal degree `m`).
    fn node(
        &mut self,
        a: &IntPolynomial,
        b: &IntPolynomial,
        m: usize,
        level: usize,
        coord: &str,
        top: bool,
    ) -> Vec<State> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return vec![State::Unk("node budget exhausted".into())];
        }
        let p = self.p;
        let ca = p_content(a, p).expect("zero polynomial in cluster walk");
        if let Some(cb) = p_content(b, p) {
            if cb <= ca {
                // split the parameter by its residue mod p
                let pb = b.scale(p);
                let mut out = Vec::new();
                let pu = p.to_u64().expect("branching prime fits u64");
                for k in 0..pu {
                    let ak = a + &b.scale(&BigInt::from(k));
                    let sub = self.node(&ak, &pb, m, level, &format!("{coord} [k={k} mod {p}]"), top);
                    out = union(out, sub);
                }
                return out;
            }
        }
        let pe = p.pow(ca);
        let a1 = a.div_scalar(&pe);
        let b1 = if b.is_zero() { b.clone() } else { b.div_scalar(&pe) };
        let red = ModPolynomial::from_int(&a1, p);
        let fac = factor_mod_p_seeded(&red, 0);
        let factors: Vec<(String, usize)> = fac.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect();
        self.record(TranscriptStep {
            level,
            coordinate: coord.to_string(),
            content_valuation: ca,
            reduction: red.to_string(),
            factors,
            pattern: FactorPattern::from_parts(fac.pattern()),
        });
        let dr = red.deg();
        let mut states = vec![State::Unram];
        if top {
            if dr < m {
                let s = m - dr;
                if s >= 2 {
                    let ra = a1.reverse(m);
                    let rb = if b1.is_zero() { b1.clone() } else { b1.reverse(m) };
                    let sub = self.cluster(&ra, &rb, &BigInt::zero(), s, level, &format!("{coord}; X = 1/Z"));
                    states = cross(&states, &sub);
                }
            }
        } else if dr < m {
            let pair = m == 2;
            let why = format!("fractional root valuation in cluster of size {m} at {coord}");
            return vec![if pair && !(p == &BigInt::from(2)) { State::Tame2(why) } else { State::Ram(why) }];
        }
        for (g, e) in &fac.factors {
            if *e == 1 {
                continue;
            }
            if g.deg() > 1 {
                return vec![State::Unk(format!("repeated factor of degree {} at {coord}", g.deg()))];
            }
            let c = symmetric_mod(&(-g.coeff(0)), p);
            let sub = self.cluster(&a1, &b1, &c, *e, level, coord);
            states = cross(&states, &sub);
        }
        states
    }

    fn cluster(
        &mut self,
        a: &IntPolynomial,
        b: &IntPolynomial,
        c: &BigInt,
        m: usize,
        level: usize,
        coord: &str,
    ) -> Vec<State> {
        if level >= self.depth {
            return vec![if m == 2 {
                State::Open2
            } else {
                State::Unk(format!("open cluster of size {m} at depth limit"))
            }];
        }
        let p = self.p;
        let sa = a.compose_affine(p, c);
        let sb = if b.is_zero() { b.clone() } else { b.compose_affine(p, c) };
        let coord = if c.is_zero() { format!("{coord}; X = {p}*Y") } else { format!("{coord}; X = {c} + {p}*Y") };
        self.node(&sa, &sb, m, level + 1, &coord, false)
    }
}

fn run(
    a: &IntPolynomial,
    b: &IntPolynomial,
    p: &BigInt,
    depth: usize,
    disc_valuation: Option<u32>,
    single: bool,
) -> LocalCertificate {
    let mut w = Walker { p, depth, nodes: 0, transcript: Vec::new(), truncated: false };
    let d = a.deg().max(b.deg());
    let states = w.node(a, b, d, 0, "X", true);
    let mut notes = Vec::new();
    if w.truncated {
        notes.push(format!("transcript truncated at {TRANSCRIPT_CAP} steps"));
    }
    let odd_p = p != &BigInt::from(2);
    let parity = disc_valuation.map(|v| v % 2);
    let mut resolved = Vec::new();
    for s in states {
        let s = match (s, parity) {
            (State::Open2, Some(0)) if odd_p => {
                notes.push("open pair resolved by even discriminant valuation".into());
                State::Unram
            }
            (State::Open2, Some(1)) if odd_p => State::Tame2("odd discriminant valuation at an open pair".into()),
            (s, _) => s,
        };
        if !resolved.contains(&s) {
            resolved.push(s);
        }
    }
    let transposition = |n: usize| {
        let mut t = vec![2];
        t.extend(std::iter::repeat(1).take(n.saturating_sub(2)));
        t
    };
    let verdict = if resolved == vec![State::Unram] {
        LocalVerdict::UnramifiedCertified
    } else if !single {
        let why: Vec<String> = resolved.iter().filter(|s| **s != State::Unram).map(|s| format!("{s:?}")).collect();
        LocalVerdict::Unknown { reason: format!("not uniform on the neighbourhood: {}", why.join("; ")) }
    } else {
        match resolved.into_iter().next().unwrap() {
            State::Tame2(why) if odd_p => {
                LocalVerdict::RamifiedTame { inertia: transposition(d), frobenius: None, witness: why }
            }
            State::Tame2(why) | State::Ram(why) => LocalVerdict::Ramified { reason: why },
            State::Open2 => LocalVerdict::Unknown { reason: "open pair; parity step unavailable".into() },
            State::Unk(why) => LocalVerdict::Unknown { reason: why },
            State::Unram => unreachable!(),
        }
    };
    let verdict = match (&verdict, parity) {
        (LocalVerdict::UnramifiedCertified, Some(1)) => {
            debug_assert!(false, "soundness guard: unramified with odd discriminant valuation");
            LocalVerdict::Unknown { reason: "soundness guard tripped".into() }
        }
        _ => verdict,
    };
    LocalCertificate { prime: p.clone(), verdict, disc_valuation, depth, transcript: w.transcript, notes }
}

/// Certifies that the splitting field of `f` is unramified at `p` by
/// successive refinement of root clusters, or reports ramification.
pub fn certify_unramified(f: &IntPolynomial, p: &BigInt, depth: usize) -> LocalCertificate {
    let f = f.primitive_part();
    assert!(f.deg() >= 1, "certify_unramified of a constant");
    let disc = discriminant(&f);
    if disc.is_zero() {
        return LocalCertificate {
            prime: p.clone(),
            verdict: LocalVerdict::Unknown { reason: "polynomial is not squarefree".into() },
            disc_valuation: None,
            depth,
            transcript: Vec::new(),
            notes: Vec::new(),
        };
    }
    let v = valuation(&disc, p);
    run(&f, &IntPolynomial::zero(), p, depth, Some(v), true)
}

/// Certifies unramifiedness simultaneously for every `a + k b`, `k` a p-adic
/// integer. `disc_valuation` must be constant on the family when supplied.
pub fn certify_neighborhood(
    a: &IntPolynomial,
    b: &IntPolynomial,
    p: &BigInt,
    depth: usize,
    disc_valuation: Option<u32>,
) -> LocalCertificate {
    if b.is_zero() {
        return run(a, b, p, depth, disc_valuation, true);
    }
    let g = a.content().gcd_with(&b.content());
    let (a, b) = (a.div_scalar(&g), b.div_scalar(&g));
    run(&a, &b, p, depth, disc_valuation, false)
}

trait GcdWith {
    fn gcd_with(&self, o: &Self) -> Self;
}

impl GcdWith for BigInt {
    fn gcd_with(&self, o: &Self) -> Self {
        use num_integer::Integer;
        let g = self.gcd(o);
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int_poly;

    fn sextic_at(tau: i64) -> IntPolynomial {
        let g = int_poly(&[62208, 0, -5940, 0, 53, 0, 1]);
        let h = int_poly(&[0, 1600, 0, -172, 0, 3]);
        &g - &h.scale(&BigInt::from(tau))
    }

    #[test]
    fn separable_base_case() {
        let c = certify_unramified(&int_poly(&[-2, 0, 1]), &BigInt::from(5), 3);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
    }

    #[test]
    fn eisenstein_quadratic() {
        let c = certify_unramified(&int_poly(&[-5, 0, 1]), &BigInt::from(5), 0);
        assert!(matches!(c.verdict, LocalVerdict::RamifiedTame { ref inertia, .. } if inertia == &vec![2]));
        let c = certify_unramified(&int_poly(&[-5, 0, 1]), &BigInt::from(5), 3);
        assert!(matches!(c.verdict, LocalVerdict::RamifiedTame { .. }));
    }

    #[test]
    fn wild_quadratic() {
        let c = certify_unramified(&int_poly(&[-2, 0, 1]), &BigInt::from(2), 3);
        assert!(matches!(c.verdict, LocalVerdict::Ramified { .. }));
        // X^2 + X + 1 is unramified at 2, X^2 + 3 = (X+1)^2 - 2X - 2 also generates Q_2(sqrt -3)
        let c = certify_unramified(&int_poly(&[3, 0, 1]), &BigInt::from(2), 3);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
        let c = certify_unramified(&int_poly(&[-1, 0, 1, 0]), &BigInt::from(2), 3);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
    }

    #[test]
    fn sextic_at_three() {
        let f = sextic_at(385);
        let c = certify_unramified(&f, &BigInt::from(3), 2);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
        assert_eq!(c.disc_valuation, Some(14));
        assert!(c.has_pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 4)]));
        assert!(c.has_pattern(&[("X", 1), ("X - 1", 1), ("X + 1", 2)]));
        let c1 = certify_unramified(&f, &BigInt::from(3), 1);
        assert_eq!(c1.verdict, LocalVerdict::UnramifiedCertified);
    }

    #[test]
    fn sextic_at_two() {
        let c = certify_unramified(&sextic_at(385), &BigInt::from(2), 10);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified, "{:?}", c.transcript);
        assert_eq!(c.disc_valuation, Some(24));
    }

    #[test]
    fn neighbourhoods() {
        let g = int_poly(&[62208, 0, -5940, 0, 53, 0, 1]);
        let h = int_poly(&[0, 1600, 0, -172, 0, 3]);
        let at = |t: i64, m: i64| (&g - &h.scale(&BigInt::from(t)), h.scale(&BigInt::from(-m)));
        let (a, b) = at(385, 729);
        let c = certify_neighborhood(&a, &b, &BigInt::from(3), 12, Some(14));
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
        let (a, b) = at(385, 32);
        let c = certify_neighborhood(&a, &b, &BigInt::from(2), 12, None);
        assert_eq!(c.verdict, LocalVerdict::UnramifiedCertified);
        let (a, b) = at(385 % 16, 16);
        let c = certify_neighborhood(&a, &b, &BigInt::from(2), 12, None);
        assert!(c.verdict.is_unknown());
    }
}
