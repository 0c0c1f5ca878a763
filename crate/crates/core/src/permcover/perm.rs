use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Cycle lengths, descending, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut v: Vec<usize>) -> Self {
        v.sort_by(|a, b| b.cmp(a));
        CycleType(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parity(&self) -> Parity {
        let n_minus_c = self.degree() - self.0.len();
        if n_minus_c % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn count(&self, len: usize) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }
}

/// Bijection of `{1..n}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images `[sigma(1), ..., sigma(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[i - 1] = true;
            v.push(i - 1);
        }
        Ok(Permutation { images: v })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    /// Product of 1-based cycles, composed right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p = Permutation::identity(n);
        for c in cycles.iter().rev() {
            let mut q = Permutation::identity(n);
            for k in 0..c.len() {
                let (a, b) = (c[k], c[(k + 1) % c.len()]);
                assert!(a >= 1 && a <= n && b >= 1 && b <= n, "point out of range");
                q.images[a - 1] = b - 1;
            }
            p = q.compose(&p);
        }
        p
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a != b);
        Permutation::from_cycles(n, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            v[j] = i;
        }
        Permutation { images: v }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i + 1);
                i = self.images[i];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let cs = self.cycles();
        let moved: usize = cs.iter().map(|c| c.len()).sum();
        let mut v: Vec<usize> = cs.iter().map(|c| c.len()).collect();
        v.extend(std::iter::repeat(1).take(self.degree() - moved));
        CycleType::new(v)
    }

    pub fn parity(&self) -> Parity {
        self.cycle_type().parity()
    }

    pub fn order(&self) -> usize {
        use num_integer::Integer;
        self.cycles().iter().fold(1usize, |acc, c| acc.lcm(&c.len()))
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Number of 2-cycles.
    pub fn transposition_count(&self) -> usize {
        self.cycles().iter().filter(|c| c.len() == 2).count()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).map(|i| i + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Subgroup generated by `gens`, sorted; `Overflow` past `bound` elements.
pub fn closure(gens: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    let n = gens.first().map_or(0, |g| g.degree());
    assert!(gens.iter().all(|g| g.degree() == n), "generators on different n");
    let id = Permutation::identity(n);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Error::Overflow { bound });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every element of the decomposition group fixes `{a, b}` and is even on the complement.
pub fn check_condition_i(inertia: &Permutation, decomp: &[Permutation], n: usize) -> Result<bool> {
    let ct = inertia.cycle_type();
    if inertia.degree() != n || ct.count(2) != 1 || ct.count(1) != n - 2 {
        return Err(Error::NotTransposition);
    }
    let ab = &inertia.cycles()[0];
    let (a, b) = (ab[0], ab[1]);
    let mut gens = decomp.to_vec();
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    for g in closure(&gens, DEFAULT_CLOSURE_BOUND)? {
        let (ga, gb) = (g.apply(a), g.apply(b));
        if !((ga == a && gb == b) || (ga == b && gb == a)) {
            return Ok(false);
        }
        // parity on the complement = parity of g times parity of its action on {a, b}
        let swaps = ga != a;
        let odd_total = g.parity() == Parity::Odd;
        if odd_total != swaps {
            return Ok(false);
        }
    }
    Ok(true)
}

fn involution_ok(g: &Permutation) -> bool {
    matches!(g.transposition_count() % 4, 0 | 1)
}

/// Inertia has `4j+1` transpositions and every involution of the
/// decomposition group has `d ≡ 0, 1 mod 4` transpositions.
pub fn check_condition_ii(inertia: &Permutation, decomp: &[Permutation]) -> Result<bool> {
    if !inertia.is_involution() {
        return Err(Error::PreconditionUnmet("inertia generator is not an involution".into()));
    }
    if inertia.transposition_count() % 4 != 1 {
        return Ok(false);
    }
    if decomp.len() == 1 {
        // cyclic: the only involution is g^(ord/2)
        let g = &decomp[0];
        let o = g.order();
        if o % 2 == 1 {
            return Ok(true);
        }
        let mut h = Permutation::identity(g.degree());
        for _ in 0..o / 2 {
            h = h.compose(g);
        }
        return Ok(involution_ok(&h));
    }
    let gens = if decomp.is_empty() { vec![inertia.clone()] } else { decomp.to_vec() };
    Ok(closure(&gens, DEFAULT_CLOSURE_BOUND)?.iter().filter(|g| g.is_involution()).all(involution_ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cs)
    }

    #[test]
    fn cycle_types() {
        let t = Permutation::transposition(6, 1, 2);
        assert_eq!(t.cycle_type(), CycleType(vec![2, 1, 1, 1, 1]));
        assert_eq!(t.parity(), Parity::Odd);
        let id = Permutation::identity(5);
        assert_eq!(id.cycle_type(), CycleType(vec![1; 5]));
        assert_eq!(id.parity(), Parity::Even);
        let f = cyc(10, &[&[1, 2], &[3, 4], &[5, 6], &[7, 8], &[9, 10]]);
        assert_eq!(f.cycle_type(), CycleType(vec![2; 5]));
        assert_eq!(f.transposition_count(), 5);
        assert_eq!(f.parity(), Parity::Odd);
    }

    #[test]
    fn composition_order() {
        // (1,2)(2,3) = (1,2,3) under right-to-left composition
        let p = cyc(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(p, cyc(3, &[&[1, 2, 3]]));
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.to_string(), "(1,2,3)");
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::from_images(&[2, 3, 1]).unwrap(), p);
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    }

    #[test]
    fn closures() {
        let t = Permutation::transposition(5, 1, 2);
        assert_eq!(closure(&[t.clone()], 10).unwrap().len(), 2);
        let c = cyc(5, &[&[3, 4, 5]]);
        assert_eq!(closure(&[t, c], 10).unwrap().len(), 6);
        let all: Vec<_> =
            (1..=4).flat_map(|a| ((a + 1)..=4).map(move |b| Permutation::transposition(4, a, b))).collect();
        assert_eq!(closure(&all, 100).unwrap().len(), 24);
        assert!(matches!(closure(&all, 10), Err(Error::Overflow { bound: 10 })));
    }

    #[test]
    fn condition_i() {
        let t = Permutation::transposition(5, 1, 2);
        let c = cyc(5, &[&[3, 4, 5]]);
        assert!(check_condition_i(&t, &[t.clone(), c.clone()], 5).unwrap());
        assert!(!check_condition_i(&t, &[t.clone(), Permutation::transposition(5, 3, 4)], 5).unwrap());
        assert!(!check_condition_i(&t, &[Permutation::transposition(5, 1, 3)], 5).unwrap());
        assert!(!check_condition_i(&t, &[cyc(5, &[&[1, 2], &[3, 4]])], 5).unwrap());
        assert!(matches!(check_condition_i(&c, &[], 5), Err(Error::NotTransposition)));
    }

    #[test]
    fn condition_ii() {
        let five = cyc(10, &[&[1, 2], &[3, 4], &[5, 6], &[7, 8], &[9, 10]]);
        assert!(check_condition_ii(&five, &[five.clone()]).unwrap());
        let t = Permutation::transposition(6, 1, 2);
        let d2 = cyc(6, &[&[3, 4], &[5, 6]]);
        assert!(!check_condition_ii(&t, &[t.clone(), d2]).unwrap());
        let two = cyc(6, &[&[1, 2], &[3, 4]]);
        assert!(!check_condition_ii(&two, &[two.clone()]).unwrap());
    }
}
