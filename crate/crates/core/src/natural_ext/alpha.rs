//! The extended alphabets `ExtAlpha_i = {(a, j) : K_i ⊆ G(K_j ∩ ⟨a⟩)}`.

use crate::algorithms::{choose, piece_at, spec, AlgorithmId};
use crate::arith::GaussianInt;
use crate::dynamics::compute_j_table;
use crate::error::Result;
use crate::regions::{sample_region, Membership, Region, Verdict};
use dashmap::DashMap;
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;

const PROBES: usize = 32;

/// A point of `r` far from its boundary, searched on a grid.
pub fn deep_point(r: &Region) -> Option<Complex64> {
    let b = r.bounding_box()?;
    let n = 96;
    let mut best: Option<(f64, Complex64)> = None;
    for ix in 0..=n {
        for iy in 0..=n {
            let z = Complex64::new(
                b.x0 + (b.x1 - b.x0) * ix as f64 / n as f64,
                b.y0 + (b.y1 - b.y0) * iy as f64 / n as f64,
            );
            for cell in r.cells() {
                if !cell.contains(z) {
                    continue;
                }
                let margin = cell
                    .constraints()
                    .iter()
                    .map(|h| h.distance(z))
                    .fold(f64::INFINITY, f64::min);
                if best.is_none_or(|(m, _)| margin > m) {
                    best = Some((margin, z));
                }
            }
        }
    }
    best.filter(|(m, _)| *m > 0.0).map(|(_, z)| z)
}

/// `ExtAlpha_i` for every piece: explicit pairs for `|a| ≤ radius`, and the
/// remaining digits decided on demand.
pub struct ExtAlphaSet {
    pub algorithm: AlgorithmId,
    pub radius: f64,
    /// Per piece, the pairs `(a, j)` with `|a| ≤ radius`.
    pub pairs: Vec<Vec<(GaussianInt, usize)>>,
    index: HashMap<(usize, GaussianInt), Vec<usize>>,
    deep: Vec<Complex64>,
    tail: DashMap<(usize, GaussianInt), Vec<usize>>,
}

/// Piece `j` with `a + u ∈ S(K_j)` and `⟨a + u⟩ = a`.
fn source_at(alg: AlgorithmId, a: GaussianInt, u: Complex64) -> Option<usize> {
    let w = a.to_c64() + u;
    if choose(alg, w) != a {
        return None;
    }
    piece_at(&spec(alg).partition, -1.0 / w, 0.0)
}

impl ExtAlphaSet {
    /// The pieces `j` with `(a, j) ∈ ExtAlpha_i`.
    pub fn sources(&self, i: usize, a: GaussianInt) -> Vec<usize> {
        if a.abs() <= self.radius {
            return self.index.get(&(i, a)).cloned().unwrap_or_default();
        }
        if let Some(v) = self.tail.get(&(i, a)) {
            return v.clone();
        }
        let v: Vec<usize> = source_at(self.algorithm, a, self.deep[i]).into_iter().collect();
        self.tail.insert((i, a), v.clone());
        v
    }

    pub fn contains(&self, i: usize, a: GaussianInt, j: usize) -> bool {
        self.sources(i, a).contains(&j)
    }

    /// Admissible digits with `|a| ≤ radius` missing from `ExtAlpha_i`.
    pub fn excluded(&self, i: usize) -> Vec<GaussianInt> {
        let mut out: Vec<GaussianInt> = GaussianInt::ball(self.radius)
            .into_iter()
            .filter(|&a| self.algorithm.admissible(a) && !self.index.contains_key(&(i, a)))
            .collect();
        out.sort_by_key(|a| (a.norm(), -a.re, -a.im));
        out
    }
}

impl fmt::Display for ExtAlphaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={} radius={}", self.algorithm, self.radius)?;
        for (i, ps) in self.pairs.iter().enumerate() {
            let items: Vec<String> = ps.iter().map(|(a, j)| format!("({a},{})", j + 1)).collect();
            writeln!(f, "piece={} pairs={}", i + 1, items.join(" "))?;
        }
        write!(f, "tail: (a, j) with a + u_i in S(K_j) and <a + u_i> = a for |a| > {}", self.radius)
    }
}

/// Markov algorithms read `(a, j(a))` for `i ∈ J(a)` off the exact table.
/// Otherwise a pair is kept when sampled points of `K_i`, shifted by `a`,
/// all land in `S(K_j)` with digit `a`.
pub fn ext_alpha(alg: AlgorithmId, radius: f64) -> Result<ExtAlphaSet> {
    let pieces = &spec(alg).partition;
    let deep: Vec<Complex64> = pieces
        .iter()
        .map(|p| deep_point(p).expect("pieces have interior"))
        .collect();
    let mut pairs: Vec<Vec<(GaussianInt, usize)>> = vec![Vec::new(); pieces.len()];
    if alg.is_markov() {
        let table = compute_j_table(alg, radius)?;
        for e in &table.entries {
            if let Some(j) = e.piece {
                for &i in &e.pieces {
                    pairs[i].push((e.digit, j));
                }
            }
        }
    } else {
        let mut digits: Vec<GaussianInt> = GaussianInt::ball(radius)
            .into_iter()
            .filter(|&a| alg.admissible(a))
            .collect();
        digits.sort_by_key(|a| (a.norm(), -a.re, -a.im));
        for (i, p) in pieces.iter().enumerate() {
            let bbox = p.bounding_box().expect("bounded piece");
            let mut probes = vec![deep[i]];
            probes.extend(
                sample_region(p, bbox, PROBES, i as u64)?
                    .into_iter()
                    .filter(|&z| p.classify(z, 1e-6) == Verdict::In),
            );
            for &a in &digits {
                let Some(j) = source_at(alg, a, deep[i]) else {
                    continue;
                };
                if probes.iter().all(|&u| source_at(alg, a, u) == Some(j)) {
                    pairs[i].push((a, j));
                }
            }
        }
    }
    let mut index: HashMap<(usize, GaussianInt), Vec<usize>> = HashMap::new();
    for (i, ps) in pairs.iter().enumerate() {
        for &(a, j) in ps {
            index.entry((i, a)).or_default().push(j);
        }
    }
    Ok(ExtAlphaSet {
        algorithm: alg,
        radius,
        pairs,
        index,
        deep,
        tail: DashMap::new(),
    })
}
