//! Permutations, the conditions on decomposition groups, and an explicit
//! Clifford-algebra model of the double cover in which transpositions lift
//! to involutions.

mod clifford;
mod perm;
mod selftest;

pub use clifford::{
    clifford_commutator, clifford_inverse, clifford_order, generator, is_group_element, lift, mul_by_lift, project,
    Multivector, QSqrt2, Sqrt2Ext,
};
pub use perm::{check_condition_i, check_condition_ii, closure, CycleType, Parity, Permutation, DEFAULT_CLOSURE_BOUND};
pub use selftest::{
    cover_selftest, for_each_permutation, random_involution, random_permutation, LawCheck, SelftestReport,
    EXHAUSTIVE_DEGREE, MAX_SELFTEST_DEGREE,
};
