//! Algorithms whose cells each lie in a single piece: the digit table
//! `a ↦ (j(a), J(a))` with `⟨a⟩ ⊆ K_{j(a)}` and `S⟨a⟩ = a + ⋃_{J(a)} K`.

use super::building::BuildParams;
use super::formula::{Clip, DigitSet, Term, UnionFormula};
use crate::algorithms::{cell, disk, digit_image, spec, AlgorithmId};
use crate::arith::GaussianInt;
use crate::error::{Error, Result};
use crate::regions::{ae_equal, buildable_from, CompareParams, ComparisonReport, Rect, Region};
use std::fmt;

/// One row of the digit table; piece indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct JEntry {
    pub digit: GaussianInt,
    /// The piece containing the cell, `None` when the cell is empty.
    pub piece: Option<usize>,
    pub pieces: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct JTable {
    pub algorithm: AlgorithmId,
    pub radius: f64,
    pub entries: Vec<JEntry>,
}

impl JTable {
    pub fn get(&self, a: GaussianInt) -> Option<&JEntry> {
        self.entries.iter().find(|e| e.digit == a)
    }
}

impl fmt::Display for JTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let piece = e.piece.map_or("-".to_string(), |j| (j + 1).to_string());
            let js: Vec<String> = e.pieces.iter().map(|j| (j + 1).to_string()).collect();
            writeln!(f, "a={} j={piece} J={{{}}}", e.digit, js.join(","))?;
        }
        Ok(())
    }
}

/// Admissible digits with `|a| ≤ radius`, ordered by norm.
fn digits(alg: AlgorithmId, radius: f64) -> Vec<GaussianInt> {
    let mut out: Vec<GaussianInt> = GaussianInt::ball(radius)
        .into_iter()
        .filter(|&a| alg.admissible(a))
        .collect();
    out.sort_by_key(|a| (a.norm(), a.re, a.im));
    out
}

/// Pieces whose intersection with the cell of `a` has interior.
fn pieces_meeting(alg: AlgorithmId, a: GaussianInt) -> Result<Vec<usize>> {
    let c = cell(alg, a)?;
    Ok(spec(alg)
        .partition
        .iter()
        .enumerate()
        .filter(|(_, p)| p.intersect(&c).has_interior())
        .map(|(j, _)| j)
        .collect())
}

fn single_piece(alg: AlgorithmId, a: GaussianInt) -> Result<Option<usize>> {
    let meets = pieces_meeting(alg, a)?;
    match meets.len() {
        0 => Ok(None),
        1 => Ok(Some(meets[0])),
        _ => Err(Error::NotMarkov {
            digit: a,
            pieces: meets.iter().map(|j| j + 1).collect(),
        }),
    }
}

/// Computes `j(a)` and `J(a)` for every admissible `|a| ≤ radius` from the
/// exact cells.
pub fn compute_j_table(alg: AlgorithmId, radius: f64) -> Result<JTable> {
    let pieces = &spec(alg).partition;
    let params = CompareParams::default()
        .with_bbox(Rect::square(1.05))
        .with_n(40_000);
    let mut entries = Vec::new();
    for a in digits(alg, radius) {
        let piece = single_piece(alg, a)?;
        let pieces_j = match piece {
            None => Vec::new(),
            Some(j) => {
                let image = digit_image(alg, a)?;
                buildable_from(&image, pieces, &params).ok_or_else(|| Error::FormulaMismatch {
                    piece: j + 1,
                    detail: format!("the image of the cell of {a} is not a union of pieces"),
                    witness: image.interior_witness().unwrap_or_default(),
                })?
            }
        };
        entries.push(JEntry {
            digit: a,
            piece,
            pieces: pieces_j,
        });
    }
    Ok(JTable {
        algorithm: alg,
        radius,
        entries,
    })
}

/// `J(a)` as published (0-based).
pub fn published_j(alg: AlgorithmId, a: GaussianInt) -> Vec<usize> {
    let one_based: Vec<usize> = match alg {
        AlgorithmId::NearestEven => match (a.re, a.im) {
            (0, 0) => Vec::new(),
            (1, 1) => vec![2, 3, 4, 5, 6],
            (-1, 1) => vec![1, 2, 3, 4, 8],
            (-1, -1) => vec![1, 2, 6, 7, 8],
            (1, -1) => vec![4, 5, 6, 7, 8],
            _ => (1..=8).collect(),
        },
        AlgorithmId::Disk => match disk::sector(a) {
            Some(0) | None => Vec::new(),
            Some(s) => disk::v_union(s).to_vec(),
        },
        _ => panic!("{alg} has no published digit table"),
    };
    one_based.into_iter().map(|j| j - 1).collect()
}

/// Formulas `S(K_i) = ⋃_{j(a) = i} (a + ⋃_{J(a)} K)` with the published
/// `J`. Digits beyond `radius` are covered by one clipped family per sector;
/// their cells lie in the piece containing `-1/a`.
pub fn markov_formulas(alg: AlgorithmId, radius: f64) -> Result<Vec<UnionFormula>> {
    let radius = radius.max(2.0);
    let pieces = &spec(alg).partition;
    let min_norm = (radius * radius).floor() as i64;
    let mut table: Vec<(GaussianInt, Option<usize>)> = Vec::new();
    for a in digits(alg, radius) {
        table.push((a, single_piece(alg, a)?));
    }
    Ok(pieces
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let mut terms: Vec<Term> = table
                .iter()
                .filter(|(a, j)| *j == Some(i) && !published_j(alg, *a).is_empty())
                .map(|&(a, _)| Term::new(DigitSet::Single(a), published_j(alg, a)))
                .collect();
            let clip = Clip {
                region: k.invert(),
                min_norm,
            };
            for s in 1..=8 {
                let rep = sector_representative(s) * 3;
                terms.push(
                    Term::new(DigitSet::Sector(s), published_j(alg, rep)).clipped(clip.clone()),
                );
            }
            UnionFormula { piece: i, terms }
        })
        .collect())
}

fn sector_representative(s: usize) -> GaussianInt {
    let (re, im) = [(0, 0), (1, 1), (1, -1), (-1, -1), (-1, 1), (2, 0), (0, -2), (-2, 0), (0, 2)][s];
    GaussianInt::new(re, im)
}

/// Per-digit check of the two Markov hypotheses.
#[derive(Debug, Clone)]
pub struct MarkovCheck {
    pub digit: GaussianInt,
    pub meets: Vec<usize>,
    pub expected: Vec<usize>,
    pub comparison: ComparisonReport,
}

impl MarkovCheck {
    pub fn passed(&self) -> bool {
        self.meets.len() <= 1 && self.comparison.passed()
    }

    pub fn failure(&self) -> Option<Error> {
        if self.meets.len() > 1 {
            return Some(Error::NotMarkov {
                digit: self.digit,
                pieces: self.meets.iter().map(|j| j + 1).collect(),
            });
        }
        self.comparison.witness.map(|w| Error::FormulaMismatch {
            piece: self.meets.first().map_or(0, |j| j + 1),
            detail: format!("image of the cell of {} differs from the published pieces", self.digit),
            witness: w,
        })
    }
}

impl fmt::Display for MarkovCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let meets: Vec<String> = self.meets.iter().map(|j| (j + 1).to_string()).collect();
        let js: Vec<String> = self.expected.iter().map(|j| (j + 1).to_string()).collect();
        write!(
            f,
            "cell={} status={} meets={{{}}} J={{{}}} mismatches={}",
            self.digit,
            if self.passed() { "pass" } else { "FAIL" },
            meets.join(","),
            js.join(","),
            self.comparison.mismatches
        )
    }
}

/// Checks every admissible `|a| ≤ radius`: the cell meets one piece and its
/// image is the published union.
pub fn markov_checks(alg: AlgorithmId, params: &BuildParams) -> Result<Vec<MarkovCheck>> {
    let pieces = &spec(alg).partition;
    let n = (params.n / 100).max(10_000);
    let mut out = Vec::new();
    for a in digits(alg, params.radius) {
        let meets = pieces_meeting(alg, a)?;
        let expected = published_j(alg, a);
        let image = digit_image(alg, a)?;
        let union = Region::union_all(expected.iter().map(|&j| &pieces[j]));
        let seed = params.seed ^ ((a.re as u64) << 32 ^ a.im as u64);
        let comparison = ae_equal(&image, &union, Rect::square(1.05), n, params.eps, seed);
        out.push(MarkovCheck {
            digit: a,
            meets,
            expected,
            comparison,
        });
    }
    Ok(out)
}
