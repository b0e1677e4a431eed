//! The natural extension `Ĝ(z, w) = (T^{-a} S z, T^{-a} S w)` with
//! `a = ⟨Sz⟩`, its bijectivity domains and attractor simulation.

mod alpha;
mod bijectivity;
mod lsets;
mod simulate;

pub use alpha::{deep_point, ext_alpha, ExtAlphaSet};
pub use bijectivity::{
    check_bijectivity, check_system, verify_bijectivity, BijectivityParams, BijectivityReport,
};
pub use lsets::{declared_l, perturbed_nearest_even_l, printed_l, SphereRegion};
pub use simulate::{
    containment, coverage, simulate_attractor, simulate_fold, CoverageReport, PointCloud,
    SimParams, SimStats,
};

use crate::algorithms::{piece_at, spec, AlgorithmId};
use crate::arith::ExtendedComplex;
use crate::dynamics::gauss_step;
use crate::error::{Error, Result};
use crate::regions::Verdict;
use num_complex::Complex64;

/// Iterates with `|z|` below this are treated as having reached `0`.
pub const RATIONAL_EPS: f64 = 1e-13;

/// A point of `K × ℂ̄` off the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtPoint {
    pub z: Complex64,
    pub w: ExtendedComplex,
}

impl ExtPoint {
    pub fn new(z: Complex64, w: ExtendedComplex) -> Self {
        ExtPoint { z, w }
    }

    /// `S(w)`, with `S(∞) = 0`.
    pub fn s_w(&self) -> ExtendedComplex {
        match self.w {
            ExtendedComplex::Infinity => ExtendedComplex::Finite(Complex64::new(0.0, 0.0)),
            ExtendedComplex::Finite(w) if w == Complex64::new(0.0, 0.0) => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(w) => ExtendedComplex::Finite(-1.0 / w),
        }
    }
}

pub fn next_ext(alg: AlgorithmId, p: ExtPoint) -> Result<ExtPoint> {
    if p.w == ExtendedComplex::Finite(p.z) {
        return Err(Error::DiagonalInput);
    }
    let step = gauss_step(alg, p.z)?;
    let a = step.digit.to_c64();
    let w = match p.s_w() {
        ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        ExtendedComplex::Finite(v) => ExtendedComplex::Finite(v - a),
    };
    Ok(ExtPoint { z: step.next, w })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeOutcome {
    /// `|w_n| > 1` first at step `n`.
    Escaped(usize),
    /// The orbit of `z` reached `0` at step `n` before escaping.
    RationalOrbit(usize),
    NotReached,
}

impl EscapeOutcome {
    pub fn steps(self) -> Option<usize> {
        match self {
            EscapeOutcome::Escaped(n) => Some(n),
            _ => None,
        }
    }
}

fn outside_unit_disk(w: ExtendedComplex) -> bool {
    match w {
        ExtendedComplex::Infinity => true,
        ExtendedComplex::Finite(w) => w.norm() > 1.0,
    }
}

/// Least `n ≤ max_n` with `|w_n| > 1`.
pub fn escape_time(alg: AlgorithmId, p: ExtPoint, max_n: usize) -> EscapeOutcome {
    let mut q = p;
    for n in 0..=max_n {
        if outside_unit_disk(q.w) {
            return EscapeOutcome::Escaped(n);
        }
        if q.z.norm() < RATIONAL_EPS {
            return EscapeOutcome::RationalOrbit(n);
        }
        match next_ext(alg, q) {
            Ok(next) => q = next,
            Err(_) => return EscapeOutcome::RationalOrbit(n),
        }
    }
    EscapeOutcome::NotReached
}

/// Whether `p` lies in `⋃ K_i × L_i` for the given S-coordinate sets.
pub fn in_domain(alg: AlgorithmId, ls: &[SphereRegion], p: &ExtPoint, eps: f64) -> bool {
    let Some(i) = piece_at(&spec(alg).partition, p.z, eps) else {
        return false;
    };
    ls[i].classify_w(p.w, eps) == Verdict::In
}

/// Least `n ≤ max_n` with `Ĝ^n(p)` inside the declared domain.
pub fn attractor_reached(alg: AlgorithmId, p: ExtPoint, max_n: usize) -> Result<Option<usize>> {
    let ls = declared_l(alg).ok_or_else(|| Error::NoDeclaredL(alg.name().to_string()))?;
    let mut q = p;
    for n in 0..=max_n {
        if in_domain(alg, &ls, &q, 1e-12) {
            return Ok(Some(n));
        }
        if q.z.norm() < RATIONAL_EPS {
            return Ok(None);
        }
        match next_ext(alg, q) {
            Ok(next) => q = next,
            Err(_) => return Ok(None),
        }
    }
    Ok(None)
}
