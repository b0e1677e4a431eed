//! Transcribed decompositions of `S(K_i)` for the algorithms checked through
//! union formulas, and their extension to all pieces by symmetry.

use super::formula::{DigitSet, Term, UnionFormula};
use crate::algorithms::{piece_permutation, spec, AlgorithmId};
use crate::arith::GaussianInt;

fn gi(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

/// 1-based piece list to 0-based.
fn ks(list: &[usize]) -> Vec<usize> {
    list.iter().map(|j| j - 1).collect()
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a - 1..b).collect()
}

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn single(a: GaussianInt, pieces: Vec<usize>) -> Term {
    Term::new(DigitSet::Single(a), pieces)
}

fn ray(base: GaussianInt, step: GaussianInt, pieces: Vec<usize>) -> Term {
    Term::new(DigitSet::Ray { base, step }, pieces)
}

fn cone(base: GaussianInt, s1: GaussianInt, s2: GaussianInt, pieces: Vec<usize>) -> Term {
    Term::new(DigitSet::Cone { base, s1, s2 }, pieces)
}

fn formula(piece: usize, terms: Vec<Term>) -> UnionFormula {
    UnionFormula {
        piece: piece - 1,
        terms,
    }
}

/// The decompositions as printed, for the base pieces only.
pub fn printed_base(alg: AlgorithmId) -> Vec<UnionFormula> {
    match alg {
        AlgorithmId::NearestInteger => vec![
            formula(1, vec![single(gi(2, 0), range(4, 10)), ray(gi(3, 0), gi(1, 0), all(12))]),
            formula(
                2,
                vec![
                    single(gi(2, 1), range(4, 10)),
                    single(gi(1, 2), range(1, 7)),
                    single(gi(1, 1), all(12)),
                    cone(gi(2, 2), gi(1, 0), gi(0, 1), all(12)),
                ],
            ),
            formula(
                3,
                vec![
                    single(gi(1, 1), range(4, 7)),
                    single(gi(2, 1), ks(&[1, 2, 3, 11, 12])),
                    single(gi(1, 2), range(9, 12)),
                    single(gi(2, 2), ks(&[12])),
                ],
            ),
        ],
        AlgorithmId::NearestOdd => vec![
            formula(
                1,
                vec![
                    single(gi(1, 0), range(6, 8)),
                    ray(gi(2, 1), gi(1, 1), range(6, 11)),
                    ray(gi(2, -1), gi(1, -1), range(3, 8)),
                    // Odd m + ni with n ≥ 2 and |n| ≤ m - 2.
                    cone(gi(5, 2), gi(1, 1), gi(2, 0), all(12)),
                ],
            ),
            formula(
                2,
                vec![
                    single(gi(1, 0), ks(&[5])),
                    ray(gi(2, 1), gi(1, 1), ks(&[1, 2, 3, 4, 5, 12])),
                ],
            ),
            formula(
                3,
                vec![single(gi(0, 1), ks(&[6])), ray(gi(1, 2), gi(1, 1), range(6, 11))],
            ),
        ],
        AlgorithmId::Diamond => vec![
            formula(
                1,
                vec![
                    ray(gi(2, 1), gi(1, 1), range(6, 8)),
                    cone(gi(2, 1), gi(1, 0), gi(1, 1), range(3, 8)),
                    single(gi(1, 0), range(6, 8)),
                    ray(gi(2, 0), gi(1, 0), range(3, 11)),
                    cone(gi(2, -1), gi(1, 0), gi(1, -1), range(6, 11)),
                    ray(gi(2, -1), gi(1, -1), range(6, 8)),
                ],
            ),
            formula(
                2,
                vec![
                    single(gi(1, 0), ks(&[5])),
                    ray(gi(1, 1), gi(1, 1), range(6, 8)),
                    ray(gi(2, 1), gi(1, 1), range(3, 5)),
                ],
            ),
        ],
        AlgorithmId::ShiftedHurwitz => vec![
            formula(1, vec![single(gi(2, 0), ks(&[3, 8])), ray(gi(3, 0), gi(1, 0), all(10))]),
            formula(
                2,
                vec![
                    single(gi(2, 1), ks(&[3, 8])),
                    single(gi(1, 2), range(1, 4)),
                    single(gi(2, 2), range(1, 8)),
                    cone(gi(3, 3), gi(1, 0), gi(0, 1), all(10)),
                ],
            ),
            formula(
                3,
                vec![
                    single(gi(0, 2), range(1, 4)),
                    single(gi(1, 2), ks(&[5, 6])),
                    ray(gi(0, 3), gi(0, 1), ks(&[1, 2, 3, 4, 7, 8, 9])),
                    ray(gi(1, 3), gi(0, 1), ks(&[5, 6, 10])),
                ],
            ),
            formula(
                4,
                vec![
                    single(gi(1, 1), ks(&[3])),
                    single(gi(2, 1), ks(&[1, 2, 4, 5, 6, 7])),
                    single(gi(1, 2), ks(&[7, 8])),
                    single(gi(2, 2), ks(&[9, 10])),
                ],
            ),
            formula(
                5,
                vec![
                    single(gi(1, 0), ks(&[3])),
                    single(gi(2, 0), ks(&[4, 5])),
                    single(gi(1, 1), ks(&[8])),
                    single(gi(2, 1), ks(&[9, 10])),
                ],
            ),
            formula(6, vec![single(gi(2, 0), ks(&[1, 2, 6, 7]))]),
        ],
        AlgorithmId::NearestEven | AlgorithmId::Disk => Vec::new(),
    }
}

/// The base decompositions with transcription errors repaired.
pub fn corrected_base(alg: AlgorithmId) -> Vec<UnionFormula> {
    let mut base = printed_base(alg);
    match alg {
        AlgorithmId::NearestInteger => {
            base[1] = formula(
                2,
                vec![
                    single(gi(2, 1), range(4, 10)),
                    single(gi(1, 2), range(1, 7)),
                    single(gi(2, 2), range(1, 11)),
                    cone(gi(3, 1), gi(1, 0), gi(0, 1), all(12)),
                    cone(gi(1, 3), gi(1, 0), gi(0, 1), all(12)),
                ],
            );
            base[2] = formula(
                3,
                vec![
                    single(gi(1, 1), range(4, 7)),
                    single(gi(2, 1), ks(&[1, 2, 3, 11])),
                    single(gi(1, 2), range(8, 11)),
                    single(gi(2, 2), ks(&[12])),
                ],
            );
        }
        AlgorithmId::NearestOdd => {
            base[0].terms[3] = cone(gi(3, 0), gi(1, 1), gi(1, -1), all(12));
        }
        AlgorithmId::Diamond => {
            // The open sectors start one step off the diagonals n ± (n-1)i.
            base[0].terms[1] = cone(gi(3, 1), gi(1, 0), gi(1, 1), range(3, 8));
            base[0].terms[4] = cone(gi(3, -1), gi(1, 0), gi(1, -1), range(6, 11));
        }
        AlgorithmId::ShiftedHurwitz => {
            base[1].terms[3] = ray(gi(1, 3), gi(0, 1), ks(&[1, 2, 3, 4, 7, 8, 9]));
            base[1].terms.push(cone(gi(2, 3), gi(1, 0), gi(0, 1), all(10)));
            base[1].terms.push(cone(gi(3, 1), gi(1, 0), gi(0, 1), all(10)));
        }
        _ => {}
    }
    base
}

/// Extends base formulas to every piece through the symmetries of the
/// partition.
pub fn expand(alg: AlgorithmId, base: &[UnionFormula]) -> Vec<UnionFormula> {
    let pieces = &spec(alg).partition;
    let mut out: Vec<Option<UnionFormula>> = vec![None; pieces.len()];
    for f in base {
        out[f.piece] = Some(f.clone());
    }
    for g in alg.symmetries() {
        let gp = g.conjugate_by_s();
        let perm_g = piece_permutation(&g, pieces).expect("symmetry permutes pieces");
        let perm_gp = piece_permutation(&gp, pieces).expect("symmetry permutes pieces");
        for f in base {
            let i = perm_g[f.piece];
            if out[i].is_none() {
                out[i] = Some(f.map(&gp, &perm_g, &perm_gp));
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, f)| f.unwrap_or_else(|| panic!("{alg}: no formula reaches piece {}", i + 1)))
        .collect()
}
