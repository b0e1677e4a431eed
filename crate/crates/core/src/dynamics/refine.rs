//! Building a partition by repeatedly splitting along images of cells that
//! are not unions of the current pieces.

use crate::algorithms::{choice_region, spec, AlgorithmId};
use crate::arith::GaussianInt;
use crate::error::{Error, Result};
use crate::regions::{HalfSpace, Region};
use std::fmt;

const CIRCLINE_TOL: f64 = 1e-9;

/// One refinement: the image of `piece ∩ ⟨digit⟩` split the partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub digit: GaussianInt,
    /// Index of the piece in the partition before the stage.
    pub piece: usize,
    pub pieces_after: usize,
}

#[derive(Debug, Clone)]
pub struct Refinement {
    pub algorithm: AlgorithmId,
    pub pieces: Vec<Region>,
    pub stages: Vec<Stage>,
    /// Whether every image is buildable from the final pieces.
    pub complete: bool,
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={}", self.algorithm)?;
        for (n, s) in self.stages.iter().enumerate() {
            writeln!(
                f,
                "stage={} digit={} piece={} pieces_after={}",
                n,
                s.digit,
                s.piece + 1,
                s.pieces_after
            )?;
        }
        writeln!(f, "pieces={}", self.pieces.len())?;
        write!(f, "complete={}", self.complete)
    }
}

/// `T^{-a} S (k ∩ ⟨a⟩)`.
pub fn image_set(alg: AlgorithmId, a: GaussianInt, k: &Region) -> Result<Region> {
    let r = choice_region(alg, a)?;
    Ok(r.intersect(&k.invert())
        .translate_by(-a)
        .intersect(&spec(alg).k)
        .simplify())
}

/// Whether `x` cuts `p` into two parts with interior.
fn splits(x: &Region, p: &Region) -> bool {
    p.intersect(x).has_interior() && p.difference(x).has_interior()
}

fn circlines(r: &Region) -> Vec<HalfSpace> {
    let mut out: Vec<HalfSpace> = Vec::new();
    for c in r.cells() {
        for h in c.constraints() {
            if !out.iter().any(|g| g.same_circline(h, CIRCLINE_TOL)) {
                out.push(*h);
            }
        }
    }
    out
}

/// Search key: fewest new boundary circlines, then smallest `|a|`, then
/// largest `Re a`, largest `Im a`, then lowest piece index.
type Key = (usize, i64, i64, i64, usize);

fn refine_once(alg: AlgorithmId, pieces: &[Region], digits: &[GaussianInt]) -> Result<Option<(Key, Region)>> {
    let known: Vec<HalfSpace> = pieces.iter().flat_map(circlines).collect();
    let mut best: Option<(Key, Region)> = None;
    for (ki, k) in pieces.iter().enumerate() {
        for &a in digits {
            let x = image_set(alg, a, k)?;
            if !x.has_interior() || !pieces.iter().any(|p| splits(&x, p)) {
                continue;
            }
            let fresh = circlines(&x)
                .iter()
                .filter(|h| !known.iter().any(|g| g.same_circline(h, CIRCLINE_TOL)))
                .count();
            let key = (fresh, a.norm(), -a.re, -a.im, ki);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, x));
            }
        }
    }
    Ok(best)
}

/// Runs the refinement from `{K}` for at most `max_stages` splits, searching
/// digits with `|a| ≤ radius`.
pub fn refine(alg: AlgorithmId, max_stages: usize, radius: f64) -> Result<Refinement> {
    let k = spec(alg).k.clone();
    let mut digits: Vec<GaussianInt> = GaussianInt::ball(radius)
        .into_iter()
        .filter(|&a| alg.admissible(a))
        .collect();
    digits.sort_by_key(|a| (a.norm(), -a.re, -a.im));
    let mut pieces = vec![k.clone()];
    let mut stages = Vec::new();
    loop {
        let Some((key, x)) = refine_once(alg, &pieces, &digits)? else {
            return Ok(Refinement {
                algorithm: alg,
                pieces,
                stages,
                complete: true,
            });
        };
        if stages.len() == max_stages {
            return Ok(Refinement {
                algorithm: alg,
                pieces,
                stages,
                complete: false,
            });
        }
        let rest = k.difference(&x).simplify();
        let mut next = Vec::new();
        for p in &pieces {
            for part in [p.intersect(&x).simplify(), p.intersect(&rest).simplify()] {
                if part.has_interior() {
                    next.push(part);
                }
            }
        }
        pieces = next;
        stages.push(Stage {
            digit: GaussianInt::new(-key.2, -key.3),
            piece: key.4,
            pieces_after: pieces.len(),
        });
    }
}

/// [`refine`], failing when the budget runs out.
pub fn refine_partition(alg: AlgorithmId, max_stages: usize, radius: f64) -> Result<Refinement> {
    let r = refine(alg, max_stages, radius)?;
    if r.complete {
        Ok(r)
    } else {
        Err(Error::BudgetExhausted {
            stages: r.stages.len(),
            pieces: r.pieces.len(),
        })
    }
}
