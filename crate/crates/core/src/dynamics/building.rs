//! Sampled verification that each `S(K_i)` is a union of translated pieces
//! with the right digit on every translate.

use super::formula::{UnionFormula, Placement};
use super::markov::{markov_formulas, markov_checks, MarkovCheck};
use super::published::{corrected_base, expand};
use crate::algorithms::{choose, piece_at, spec, AlgorithmId};
use crate::arith::GaussianInt;
use crate::error::{Error, Result};
use crate::regions::{sampled_comparison, ComparisonReport, Membership, Probe, Rect, Region, Verdict};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Which sufficient condition the verification establishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shortcut {
    /// Translates of `K` by admissible digits receive their digit, and each
    /// `S(K_i)` is a union of such translates of pieces.
    Tiling,
    /// Each `S(K_i)` is a union of translated pieces on which the digit is
    /// constant and equal to the translation.
    PreTiling,
    /// Every cell lies in one piece and its image is a union of pieces.
    Markov,
}

impl Shortcut {
    pub fn for_algorithm(alg: AlgorithmId) -> Shortcut {
        if alg.is_markov() {
            Shortcut::Markov
        } else if alg.is_tiling() {
            Shortcut::Tiling
        } else {
            Shortcut::PreTiling
        }
    }
}

impl fmt::Display for Shortcut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shortcut::Tiling => "tiling",
            Shortcut::PreTiling => "pre-tiling",
            Shortcut::Markov => "markov",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildParams {
    /// Samples per comparison.
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    /// Digits with `|a| ≤ radius` are checked individually.
    pub radius: f64,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            n: 1_000_000,
            eps: 1e-9,
            seed: 0,
            radius: 8.0,
        }
    }
}

/// A point where the digit differs from the translation of its term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitViolation {
    pub w: Complex64,
    pub expected: GaussianInt,
    pub chosen: GaussianInt,
}

#[derive(Debug, Clone)]
pub struct PieceCheck {
    pub piece: usize,
    pub formula: UnionFormula,
    pub comparison: ComparisonReport,
    pub digit_checks: usize,
    pub digit_violations: usize,
    pub first_violation: Option<DigitViolation>,
}

impl PieceCheck {
    pub fn passed(&self) -> bool {
        self.comparison.passed() && self.digit_violations == 0
    }
}

#[derive(Debug, Clone)]
pub struct BuildingReport {
    pub algorithm: AlgorithmId,
    pub shortcut: Shortcut,
    pub params: BuildParams,
    pub pieces: Vec<PieceCheck>,
    pub markov: Vec<MarkovCheck>,
}

impl BuildingReport {
    pub fn passed(&self) -> bool {
        self.pieces.iter().all(PieceCheck::passed) && self.markov.iter().all(MarkovCheck::passed)
    }

    /// The first failure as an error.
    pub fn first_failure(&self) -> Option<Error> {
        for m in &self.markov {
            if let Some(e) = m.failure() {
                return Some(e);
            }
        }
        let pieces = &spec(self.algorithm).partition;
        for p in &self.pieces {
            if let Some(v) = p.first_violation {
                return Some(Error::FormulaMismatch {
                    piece: p.piece + 1,
                    detail: format!(
                        "digit condition: ⟨w⟩ = {} but the term translates by {}",
                        v.chosen, v.expected
                    ),
                    witness: v.w,
                });
            }
            if let Some(w) = p.comparison.witness {
                let detail = match locate(&p.formula, w, 0.0, pieces) {
                    Some((pl, j)) => format!(
                        "term {} places {} + K{} outside S(K{})",
                        p.formula.terms[pl.term],
                        pl.digit,
                        j + 1,
                        p.piece + 1
                    ),
                    None => format!("S(K{}) is not covered by any term", p.piece + 1),
                };
                return Some(Error::FormulaMismatch {
                    piece: p.piece + 1,
                    detail,
                    witness: w,
                });
            }
        }
        None
    }
}

impl fmt::Display for BuildingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={}", self.algorithm)?;
        writeln!(f, "shortcut={}", self.shortcut)?;
        writeln!(
            f,
            "samples={} eps={:e} seed={} radius={}",
            self.params.n, self.params.eps, self.params.seed, self.params.radius
        )?;
        for m in &self.markov {
            if !m.passed() {
                writeln!(f, "{m}")?;
            }
        }
        if !self.markov.is_empty() {
            let ok = self.markov.iter().filter(|m| m.passed()).count();
            writeln!(f, "cells_checked={} cells_passed={ok}", self.markov.len())?;
        }
        for p in &self.pieces {
            writeln!(
                f,
                "piece={} status={} samples={} mismatches={} excluded={} digit_checks={} digit_violations={}",
                p.piece + 1,
                if p.passed() { "pass" } else { "FAIL" },
                p.comparison.samples_total,
                p.comparison.mismatches,
                p.comparison.near_boundary_excluded,
                p.digit_checks,
                p.digit_violations
            )?;
        }
        write!(f, "result={}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// The placement and piece whose translate contains `w` in its interior.
pub fn locate(
    formula: &UnionFormula,
    w: Complex64,
    eps: f64,
    pieces: &[Region],
) -> Option<(Placement, usize)> {
    for p in formula.placements_near(w, 1.0 + 2.0 * eps) {
        let u = w - p.digit.to_c64();
        if let Some(&j) = p.pieces.iter().find(|&&j| pieces[j].classify(u, eps) == Verdict::In) {
            return Some((p, j));
        }
    }
    None
}

/// The formulas checked for `alg`, one per piece.
pub fn formulas(alg: AlgorithmId, radius: f64) -> Result<Vec<UnionFormula>> {
    if alg.is_markov() {
        markov_formulas(alg, radius)
    } else {
        Ok(expand(alg, &corrected_base(alg)))
    }
}

/// Compares every `S(K_i)` with its formula and checks the digit condition
/// on each covered point.
pub fn check_formulas(alg: AlgorithmId, formulas: &[UnionFormula], params: &BuildParams) -> Vec<PieceCheck> {
    let pieces = &spec(alg).partition;
    let eps = params.eps;
    let reach = params.radius + 1.0;
    formulas
        .iter()
        .map(|f| {
            let i = f.piece;
            let s_ki = pieces[i].invert();
            let checks = AtomicUsize::new(0);
            let violations = AtomicUsize::new(0);
            let probe_w = |w: Complex64| -> Probe {
                let lhs = s_ki.classify(w, eps);
                let rhs = f.classify(w, eps, pieces);
                let p = Probe::of(lhs, rhs, w);
                if p == Probe::Agree && rhs == Verdict::In {
                    if let Some((pl, _)) = locate(f, w, eps, pieces) {
                        checks.fetch_add(1, Ordering::Relaxed);
                        if choose(alg, w) != pl.digit {
                            violations.fetch_add(1, Ordering::Relaxed);
                            return Probe::Mismatch(w);
                        }
                    }
                }
                p
            };
            let bbox = pieces[i].bounding_box().unwrap_or(Rect::square(1.0)).expand(0.05);
            let near = sampled_comparison(params.n / 2, params.seed ^ (2 * i as u64), |rng| {
                let z = bbox.sample(rng);
                if z.norm() == 0.0 {
                    return Probe::Excluded;
                }
                probe_w(-1.0 / z)
            });
            let window = Rect::square(reach);
            let far = sampled_comparison(params.n - params.n / 2, params.seed ^ (2 * i as u64 + 1), |rng| {
                probe_w(window.sample(rng))
            });
            let comparison = near.merge(&far);
            let digit_violations = violations.into_inner();
            let first_violation = if digit_violations > 0 {
                comparison.witness.map(|w| DigitViolation {
                    w,
                    expected: locate(f, w, eps, pieces).map(|(p, _)| p.digit).unwrap_or_default(),
                    chosen: choose(alg, w),
                })
                .filter(|v| v.expected != v.chosen)
            } else {
                None
            };
            PieceCheck {
                piece: i,
                formula: f.clone(),
                comparison,
                digit_checks: checks.into_inner(),
                digit_violations,
                first_violation,
            }
        })
        .collect()
}

/// Checks the finite building property of the published partition.
pub fn check_building(alg: AlgorithmId, params: &BuildParams) -> Result<BuildingReport> {
    let formulas = formulas(alg, params.radius)?;
    let markov = if alg.is_markov() {
        markov_checks(alg, params)?
    } else {
        Vec::new()
    };
    Ok(BuildingReport {
        algorithm: alg,
        shortcut: Shortcut::for_algorithm(alg),
        params: *params,
        pieces: check_formulas(alg, &formulas, params),
        markov,
    })
}

/// [`check_building`], failing with the first mismatch.
pub fn verify_building(alg: AlgorithmId, params: &BuildParams) -> Result<BuildingReport> {
    let report = check_building(alg, params)?;
    match report.first_failure() {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// The pairs `(⟨w⟩, j)` with `w - ⟨w⟩ ∈ K_j` met by `S(K_piece)`, estimated
/// from `n` samples of the piece. Only digits with `|a| ≤ max_abs` are kept.
pub fn sampled_decomposition(
    alg: AlgorithmId,
    piece: usize,
    n: usize,
    seed: u64,
    max_abs: f64,
) -> BTreeMap<(i64, i64), BTreeSet<usize>> {
    let pieces = &spec(alg).partition;
    let k = &pieces[piece];
    let bbox = k.bounding_box().unwrap_or(Rect::square(1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: BTreeMap<(i64, i64), BTreeSet<usize>> = BTreeMap::new();
    for _ in 0..n {
        let z = bbox.sample(&mut rng);
        if k.classify(z, 1e-9) != Verdict::In {
            continue;
        }
        let w = -1.0 / z;
        let a = choose(alg, w);
        if a.abs() > max_abs {
            continue;
        }
        if let Some(j) = piece_at(pieces, w - a.to_c64(), 1e-9) {
            out.entry((a.re, a.im)).or_default().insert(j);
        }
    }
    out
}
