use super::Poly;
use crate::scalar::IntegralDomain;

fn pow<T: IntegralDomain>(x: &T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Resultant by the subresultant PRS; exact over any integral domain.
pub fn resultant<T: IntegralDomain>(f: &Poly<T>, g: &Poly<T>) -> T {
    if f.is_zero() || g.is_zero() {
        return T::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = T::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return s * pow(&b.lc(), a.deg());
    }
    let mut gg = T::one();
    let mut h = T::one();
    loop {
        let da = a.deg();
        let db = b.deg();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return T::zero();
        }
        let d = gg.clone() * pow(&h, delta);
        b = r.map(|c| c.div_exact(&d));
        gg = a.lc();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 { h } else { pow(&gg, delta).div_exact(&pow(&h, delta - 1)) };
        if b.deg() == 0 {
            let da = a.deg();
            let num = pow(&b.lc(), da);
            let den = pow(&h, da.saturating_sub(1));
            let val = if da == 0 { T::one() } else { num.div_exact(&den) };
            return s * val;
        }
    }
}

/// `(-1)^(d(d-1)/2) res(f, f') / lc(f)`.
pub fn discriminant<T: IntegralDomain>(f: &Poly<T>) -> T {
    let d = f.deg();
    assert!(d >= 1, "discriminant of a constant");
    if d == 1 {
        return T::one();
    }
    let r = resultant(f, &f.derivative()).div_exact(&f.lc());
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Discriminant of `f` viewed as a binary form of degree `n`.
/// A drop of one in degree multiplies by the square of the new leading
/// coefficient; larger drops give zero (a repeated root at infinity).
pub fn formal_discriminant<T: IntegralDomain>(f: &Poly<T>, n: usize) -> T {
    if f.is_zero() {
        return T::zero();
    }
    let d = f.deg();
    assert!(d <= n);
    match n - d {
        0 => discriminant(f),
        1 => {
            let lc = f.lc();
            if d == 0 {
                return T::one();
            }
            lc.clone() * lc * discriminant(f)
        }
        _ => T::zero(),
    }
}

/// Determinant of the Sylvester matrix by fraction-free elimination.
/// Quadratic-size reference used to cross-check [`resultant`].
pub fn sylvester_resultant<T: IntegralDomain>(f: &Poly<T>, g: &Poly<T>) -> T {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    if size == 0 {
        return T::one();
    }
    let mut mat = vec![vec![T::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = g.coeff(n - j);
        }
    }
    bareiss(mat)
}

fn bareiss<T: IntegralDomain>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
