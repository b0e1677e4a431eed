//! Exact Gaussian-integer arithmetic, Möbius maps and continued-fraction
//! recurrences.

mod cf;
mod gaussian;
mod mobius;
mod rational;

pub use cf::{convergents, eval_cf, norm_gap_holds, norm_gap_hypothesis, Convergent, DigitSeq};
pub use gaussian::{GaussianInt, ParseGaussianError, Parity};
pub use mobius::{mobius_apply, s_map, ExtendedComplex, MobiusMap};
pub use rational::{rational_real, BigGaussian, ProjRational, RationalComplex};

/// Parity of a Gaussian integer.
pub fn parity(a: GaussianInt) -> Parity {
    a.parity()
}
