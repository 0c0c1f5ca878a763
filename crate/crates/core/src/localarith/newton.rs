use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::exactnum::valuation;
use crate::ser;
use crate::RatPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "ser::rat")]
    pub slope: BigRational,
    pub length: usize,
}

/// Lower convex hull of `(i, v_p(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Power of X divided out before building the hull.
    pub x_power: usize,
    #[serde(skip)]
    pub vertices: Vec<(usize, BigRational)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Root valuations with multiplicity, ascending.
    pub fn root_valuations(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> =
            self.segments.iter().flat_map(|s| std::iter::repeat(-s.slope.clone()).take(s.length)).collect();
        v.sort();
        v
    }

    pub fn span(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

fn rat_valuation(x: &BigRational, p: &BigInt) -> BigRational {
    let v = valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64;
    BigRational::from_integer(BigInt::from(v))
}

pub fn newton_polygon(f: &RatPolynomial, p: &BigInt) -> NewtonPolygon {
    assert!(!f.is_zero(), "Newton polygon of zero");
    let x_power = f.x_adic_valuation();
    let pts: Vec<(usize, BigRational)> =
        f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, rat_valuation(c, p))).collect();
    let mut hull: Vec<(usize, BigRational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (i1, v1) = &hull[hull.len() - 2];
            let (i2, v2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let lhs = (v2 - v1) * BigRational::from_integer(BigInt::from(pt.0 - i1));
            let rhs = (&pt.1 - v1) * BigRational::from_integer(BigInt::from(i2 - i1));
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment { slope: (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(len)), length: len }
        })
        .collect();
    NewtonPolygon { x_power, vertices: hull, segments }
}
