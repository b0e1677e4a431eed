//! Region algebra over circline half-spaces, closed under Möbius maps, with
//! sampled almost-everywhere comparison.

mod circline;
mod membership;
mod region;

pub use circline::{intersections, HalfSpace, Shape, Side};
pub use membership::{
    ae_equal, ae_equal_with, block_rng, buildable_from, sample_region, sampled_comparison, AnyOf,
    CompareParams, ComparisonReport, Membership, Predicate, Probe, Rect, Verdict, BLOCK,
};
pub use region::{Bounds, Cell, Region};

/// `contains` with an explicit tolerance; see [`Membership::classify`].
pub fn contains(r: &Region, z: num_complex::Complex64, eps: f64) -> Verdict {
    r.classify(z, eps)
}

/// Image of `r` under a Möbius map over ℤ[i].
pub fn transform(r: &Region, m: &crate::arith::MobiusMap) -> Region {
    r.transform(m)
}
