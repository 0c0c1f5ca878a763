use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use unrx_core::exactnum::valuation;
use unrx_core::families::{build, residue_square_class, verify, Family, FamilyOptions, FamilyReport, Status};
use unrx_core::localarith::LocalVerdict;
use unrx_core::permcover::Parity;
use unrx_core::polyring::{discriminant, ModPolynomial};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn admissible(n: u32, count: usize) -> Vec<BigInt> {
    let m = b(n as i64 * (n as i64 - 1));
    (1..).map(b).filter(|t| t.gcd(&m).is_one()).take(count).collect()
}

/// Checks a report against a direct computation of the model discriminant.
fn audit(r: &FamilyReport, model_disc: &BigInt) {
    let excluded = b(r.n as i64 * (r.n as i64 - 1));
    if let Some(fac) = &r.model_disc_factorization {
        assert_eq!(&fac.product(), model_disc);
    }
    for chk in &r.clause_ii.checks {
        let v = valuation(model_disc, &chk.prime);
        assert!(v > 0, "clause ii looked at an unramified prime {}", chk.prime);
        let Some(cert) = &chk.certificate else { continue };
        match &cert.verdict {
            LocalVerdict::UnramifiedCertified => assert_eq!(v % 2, 0, "unramified claim at odd valuation"),
            LocalVerdict::RamifiedTame { .. } | LocalVerdict::Ramified { .. } => {}
            LocalVerdict::Unknown { .. } => {}
        }
        if chk.frobenius_parity == Some(Parity::Even) {
            assert_eq!(chk.condition_i, Some(true), "even Frobenius at {} without condition i", chk.prime);
        }
        if let Some(s) = chk.split_symbol {
            let class = residue_square_class(r.n);
            assert_eq!(s, unrx_core::exactnum::jacobi(&class, &chk.prime));
        }
    }
    if r.verdict == Status::Certified {
        let fac = r.model_disc_factorization.as_ref().expect("certified reports carry the factorization");
        let odd: Vec<BigInt> = fac
            .factors
            .iter()
            .filter(|(q, e)| e % 2 == 1 && !excluded.is_multiple_of(q))
            .map(|(q, _)| q.clone())
            .collect();
        let ramified: Vec<BigInt> = r
            .clause_ii
            .checks
            .iter()
            .filter(|c| !c.deferred && c.certificate.as_ref().is_some_and(|k| !k.verdict.is_unramified()))
            .map(|c| c.prime.clone())
            .collect();
        assert_eq!(odd, ramified, "t = {}", r.t);
    }
    let a = &r.archimedean;
    assert!(a.consistent);
    assert_eq!(a.disc_negative, model_disc.is_negative());
    assert_eq!(a.disc_negative, a.conjugation_transpositions % 2 == 1);
}

#[test]
fn tech1_eleven_soundness_sweep() {
    let opts = FamilyOptions::default();
    let mut certified = 0;
    for t in admissible(11, 20) {
        let inst = build(Family::Tech1, 11, &t).unwrap();
        for p in [b(2), b(5)] {
            let red = ModPolynomial::from_int(&inst.model, &p);
            let mut cs = vec![BigInt::from(0); 12];
            cs[11] = BigInt::one();
            if p == b(2) {
                cs[10] = BigInt::one();
                cs[0] = BigInt::one();
            } else {
                cs[0] = t.pow(10);
            }
            assert_eq!(red, ModPolynomial::new(&p, cs), "t = {t} mod {p}");
        }
        let r = verify(&inst, &opts);
        audit(&r, &discriminant(&inst.model));
        assert_ne!(r.verdict, Status::Refuted, "t = {t}");
        let np: Vec<(String, usize)> = r
            .clause_iii
            .newton_polygon
            .as_ref()
            .unwrap()
            .segments
            .iter()
            .map(|s| (s.slope.to_string(), s.length))
            .collect();
        assert_eq!(np, vec![("-1/2".to_string(), 10), ("0".to_string(), 1)]);
        assert_eq!(r.clause_iii.residue_degree_odd, Some(true));
        certified += usize::from(r.verdict == Status::Certified);
    }
    assert!(certified >= 15, "{certified}");
}

#[test]
fn tech2_ten_soundness_sweep() {
    let opts = FamilyOptions::default();
    for t in admissible(10, 10) {
        let inst = build(Family::Tech2, 10, &t).unwrap();
        let r = verify(&inst, &opts);
        audit(&r, &discriminant(&inst.model));
        assert_eq!(r.clause_i.status, Status::Certified);
        assert_eq!(r.clause_iii.status, Status::Certified, "t = {t}");
        assert_ne!(r.verdict, Status::Refuted);
    }
}

#[test]
fn tech1_seven_and_tech2_fourteen_smoke() {
    // only soundness is asserted here
    for (fam, n) in [(Family::Tech1, 7), (Family::Tech2, 14)] {
        for t in admissible(n, 3) {
            let inst = build(fam, n, &t).unwrap();
            let r = verify(&inst, &FamilyOptions::default());
            audit(&r, &discriminant(&inst.model));
        }
    }
}
