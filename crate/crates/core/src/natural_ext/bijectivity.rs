//! Sampled check of the system `L_i = ⋃_{(a,j) ∈ ExtAlpha_i} T^{-a} S L_j`.
//!
//! Both sides are compared in S-coordinates. A point `v` lies in the right
//! side when `S(v) + a ∈ S(L_j)` for some pair, and since every `S(L_j)` is
//! bounded only the digits near `-S(v)` can contribute, so each sample is
//! decided exactly whatever the size of the digits involved.

use super::alpha::{ext_alpha, ExtAlphaSet};
use super::lsets::{declared_l, SphereRegion};
use crate::algorithms::AlgorithmId;
use crate::arith::GaussianInt;
use crate::error::{Error, Result};
use crate::regions::{sampled_comparison, ComparisonReport, Probe, Rect, Verdict};
use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BijectivityParams {
    /// Samples per piece.
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    /// Truncation radius of the explicit part of `ExtAlpha`.
    pub radius: f64,
}

impl Default for BijectivityParams {
    fn default() -> Self {
        BijectivityParams {
            n: 1_000_000,
            eps: 1e-9,
            seed: 0,
            radius: 8.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BijectivityReport {
    pub algorithm: AlgorithmId,
    pub params: BijectivityParams,
    pub pieces: Vec<ComparisonReport>,
}

impl BijectivityReport {
    pub fn passed(&self) -> bool {
        self.pieces.iter().all(|p| p.passed())
    }

    pub fn first_failure(&self) -> Option<Error> {
        self.pieces.iter().enumerate().find_map(|(i, p)| {
            p.witness.filter(|_| !p.passed()).map(|w| Error::SystemMismatch {
                piece: i + 1,
                witness: w,
            })
        })
    }
}

impl fmt::Display for BijectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={}", self.algorithm)?;
        writeln!(
            f,
            "samples={} eps={:e} seed={} radius={} coordinates=S",
            self.params.n, self.params.eps, self.params.seed, self.params.radius
        )?;
        for (i, p) in self.pieces.iter().enumerate() {
            writeln!(f, "piece={} {p}", i + 1)?;
        }
        write!(f, "result={}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Membership of `v` in `S(⋃_{(a,j) ∈ ExtAlpha_i} T^{-a} S L_j)`.
fn rhs(alpha: &ExtAlphaSet, ls: &[SphereRegion], reach: f64, i: usize, v: Complex64, eps: f64) -> Verdict {
    if v.norm() < 1e-12 {
        return Verdict::NearBoundary;
    }
    let w = -1.0 / v;
    let mut inside = false;
    for a in GaussianInt::near(-w, reach) {
        if !alpha.algorithm.admissible(a) {
            continue;
        }
        for j in alpha.sources(i, a) {
            match ls[j].classify_s(w + a.to_c64(), eps) {
                Verdict::NearBoundary => return Verdict::NearBoundary,
                Verdict::In => inside = true,
                Verdict::Out => {}
            }
        }
    }
    Verdict::from_bool(inside)
}

/// Compares each `S(L_i)` with the image side of the system for the given
/// sets.
pub fn check_system(alg: AlgorithmId, ls: &[SphereRegion], params: &BijectivityParams) -> Result<BijectivityReport> {
    let alpha = ext_alpha(alg, params.radius)?;
    let mut bbox = Rect::square(1.0);
    for l in ls {
        if let Some(b) = l.bounding_box() {
            bbox = bbox.union(&b);
        }
    }
    let reach = [bbox.x0, bbox.x1]
        .iter()
        .flat_map(|&x| [bbox.y0, bbox.y1].map(|y| Complex64::new(x, y).norm()))
        .fold(0.0, f64::max)
        + 1e-6;
    let bbox = bbox.expand(0.05);
    let pieces = (0..ls.len())
        .map(|i| {
            sampled_comparison(params.n, params.seed.wrapping_add(i as u64), |rng| {
                let v = bbox.sample(rng);
                let lhs = ls[i].classify_s(v, params.eps);
                Probe::of(lhs, rhs(&alpha, ls, reach, i, v, params.eps), v)
            })
        })
        .collect();
    Ok(BijectivityReport {
        algorithm: alg,
        params: *params,
        pieces,
    })
}

/// [`check_system`] with the published sets.
pub fn check_bijectivity(alg: AlgorithmId, params: &BijectivityParams) -> Result<BijectivityReport> {
    let ls = declared_l(alg).ok_or_else(|| Error::NoDeclaredL(alg.name().to_string()))?;
    check_system(alg, &ls, params)
}

/// [`check_bijectivity`], failing with the first mismatch.
pub fn verify_bijectivity(alg: AlgorithmId, params: &BijectivityParams) -> Result<BijectivityReport> {
    let r = check_bijectivity(alg, params)?;
    match r.first_failure() {
        Some(e) => Err(e),
        None => Ok(r),
    }
}
