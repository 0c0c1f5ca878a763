use super::Poly;
use crate::scalar::Field;

/// Interval endpoint for [`sturm_count`].
#[derive(Clone, Debug, PartialEq)]
pub enum Bound<T> {
    NegInf,
    Finite(T),
    PosInf,
}

fn sign<T: Field + PartialOrd>(x: &T) -> i8 {
    if x.is_zero() {
        0
    } else if *x > T::zero() {
        1
    } else {
        -1
    }
}

fn sign_at<T: Field + PartialOrd>(p: &Poly<T>, at: &Bound<T>) -> i8 {
    match at {
        Bound::Finite(x) => sign(&p.eval(x)),
        Bound::PosInf => sign(&p.lc()),
        Bound::NegInf => {
            let s = sign(&p.lc());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

fn chain<T: Field + PartialOrd>(f: &Poly<T>) -> Vec<Poly<T>> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn variations<T: Field + PartialOrd>(seq: &[Poly<T>], at: &Bound<T>) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count<T: Field + PartialOrd>(f: &Poly<T>, a: &Bound<T>, b: &Bound<T>) -> usize {
    assert!(!f.is_zero(), "sturm count of zero");
    if f.deg() == 0 {
        return 0;
    }
    let sf = f.squarefree_part();
    let seq = chain(&sf);
    let (va, vb) = (variations(&seq, a), variations(&seq, b));
    va.saturating_sub(vb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    fn rp(cs: &[i64]) -> Poly<BigRational> {
        Poly::from_i64(cs)
    }

    #[test]
    fn examples() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(sturm_count(&rp(&[1, 0, 1]), &all.0, &all.1), 0);
        assert_eq!(sturm_count(&rp(&[-1, 0, 1]), &all.0, &all.1), 2);
        // (X-1)^2 (X+2): two distinct roots
        let f = &(&rp(&[-1, 1]) * &rp(&[-1, 1])) * &rp(&[2, 1]);
        assert_eq!(sturm_count(&f, &all.0, &all.1), 2);
        // half-open interval (a, b]
        let g = rp(&[-1, 0, 1]);
        assert_eq!(sturm_count(&g, &Bound::Finite(rat(-1, 1)), &Bound::Finite(rat(1, 1))), 1);
        assert_eq!(sturm_count(&g, &Bound::Finite(rat(-2, 1)), &Bound::Finite(rat(0, 1))), 1);
        assert_eq!(sturm_count(&g, &Bound::Finite(rat(1, 1)), &Bound::PosInf), 0);
    }

    #[test]
    fn float_instantiation() {
        let f: Poly<f64> = Poly::new(vec![-2.0, 0.0, 1.0]);
        assert_eq!(sturm_count(&f, &Bound::NegInf, &Bound::PosInf), 2);
    }
}
