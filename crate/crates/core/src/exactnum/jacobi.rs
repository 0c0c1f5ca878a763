use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Jacobi symbol `(a / m)` for odd positive `m`.
pub fn jacobi(a: &BigInt, m: &BigInt) -> i8 {
    assert!(m.is_positive() && m.is_odd(), "jacobi modulus must be odd and positive");
    let mut a = a.mod_floor(m);
    let mut n = m.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        if z > 0 {
            a >>= z;
            let r8 = (&n & BigInt::from(7)).to_u8().unwrap();
            if z % 2 == 1 && (r8 == 3 || r8 == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let a4 = (&a & BigInt::from(3)).to_u8().unwrap();
        let n4 = (&n & BigInt::from(3)).to_u8().unwrap();
        if a4 == 3 && n4 == 3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

pub fn jacobi_i64(a: i64, m: i64) -> i8 {
    jacobi(&BigInt::from(a), &BigInt::from(m))
}
