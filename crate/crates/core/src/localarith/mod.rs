//! Local analysis at a prime: Newton polygons and ramification certificates.

mod certify;
mod newton;
mod tame;

pub use certify::{
    certify_neighborhood, certify_unramified, LocalCertificate, LocalVerdict, TranscriptStep, DEFAULT_DEPTH,
};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use tame::{frobenius_parity, residue_degree_odd_at_n, tame_inertia_cycle_type, tame_inertia_with_disc};
