//! m-nodal rational curves over prime fields and their canonical rings.

pub mod error;
pub mod nodal;
pub mod ring;

pub use error::CurveError;
pub use nodal::{attempt_rng, build_curve, build_curve_attempt, CurveSpec, Mode, NodalRationalCurve};
pub use ring::{build_canonical, canonical_ring, numerator_len, quadrics_cubics, twist_at, CanonicalRing};
