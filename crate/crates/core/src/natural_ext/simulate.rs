//! Random orbits of the natural extension, recorded in S-coordinates.

use super::lsets::SphereRegion;
use super::RATIONAL_EPS;
use crate::algorithms::{choose, piece_at, spec, AlgorithmId};
use crate::error::{Error, Result};
use crate::regions::{block_rng, Membership, Verdict};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::io::{BufRead, Write};

/// Starting points handled sequentially by one task.
const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimParams {
    pub n_points: usize,
    pub n_iters: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            n_points: 100_000,
            n_iters: 200,
            burn_in: 50,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimStats {
    pub starts: usize,
    /// Starts abandoned because the orbit of `z` reached `0` or `w` hit `0`.
    pub dropped: usize,
    pub emitted: usize,
}

fn random_start(alg: AlgorithmId, rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let k = &spec(alg).k;
    let b = k.bounding_box().expect("bounded fundamental set");
    let z = loop {
        let z = b.sample(rng);
        if k.classify(z, 0.0) == Verdict::In {
            break z;
        }
    };
    let w = loop {
        let w = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        if w.norm() <= 3.0 && w != z {
            break w;
        }
    };
    (z, w)
}

/// Runs one orbit and passes each post-burn-in point `(i, S(w))` to `emit`.
/// Returns false if the start had to be dropped.
fn run_orbit(alg: AlgorithmId, p: &SimParams, index: usize, mut emit: impl FnMut(usize, Complex64)) -> bool {
    let mut rng = block_rng(p.seed, index as u64);
    let (mut z, w) = random_start(alg, &mut rng);
    let pieces = &spec(alg).partition;
    let mut v = -1.0 / w;
    for t in 1..=p.n_iters {
        if z.norm() < RATIONAL_EPS {
            return false;
        }
        let sz = -1.0 / z;
        let a = choose(alg, sz).to_c64();
        z = sz - a;
        let w = v - a;
        if w == Complex64::new(0.0, 0.0) {
            return false;
        }
        v = -1.0 / w;
        if t > p.burn_in {
            if let Some(i) = piece_at(pieces, z, 0.0) {
                emit(i, v);
            }
        }
    }
    true
}

/// Folds every emitted point into per-chunk accumulators, merged in start
/// order so the result does not depend on the number of workers.
pub fn simulate_fold<T, I, F, M>(alg: AlgorithmId, p: &SimParams, init: I, fold: F, merge: M) -> (T, SimStats)
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, usize, Complex64) + Sync,
    M: Fn(T, T) -> T,
{
    let chunks = p.n_points.div_ceil(CHUNK);
    let parts: Vec<(T, SimStats)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let mut stats = SimStats::default();
            for index in c * CHUNK..((c + 1) * CHUNK).min(p.n_points) {
                stats.starts += 1;
                let mut n = 0;
                let kept = run_orbit(alg, p, index, |i, v| {
                    fold(&mut acc, i, v);
                    n += 1;
                });
                stats.emitted += n;
                if !kept {
                    stats.dropped += 1;
                }
            }
            (acc, stats)
        })
        .collect();
    let mut total = SimStats::default();
    let mut out = init();
    for (acc, s) in parts {
        out = merge(out, acc);
        total.starts += s.starts;
        total.dropped += s.dropped;
        total.emitted += s.emitted;
    }
    (out, total)
}

/// A simulated cloud of points `(i, S(w))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub algorithm: AlgorithmId,
    pub params: SimParams,
    pub dropped: usize,
    /// Piece index (0-based) and point in S-coordinates.
    pub records: Vec<(usize, Complex64)>,
}

pub fn simulate_attractor(alg: AlgorithmId, p: &SimParams) -> PointCloud {
    let (records, stats) = simulate_fold(
        alg,
        p,
        Vec::new,
        |acc: &mut Vec<(usize, Complex64)>, i, v| acc.push((i, v)),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    PointCloud {
        algorithm: alg,
        params: *p,
        dropped: stats.dropped,
        records,
    }
}

impl PointCloud {
    /// CSV with `#` metadata lines, a `piece,re,im` header and 1-based pieces.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# algorithm={}", self.algorithm)?;
        writeln!(out, "# seed={}", self.params.seed)?;
        writeln!(out, "# points={}", self.params.n_points)?;
        writeln!(out, "# iters={}", self.params.n_iters)?;
        writeln!(out, "# burn_in={}", self.params.burn_in)?;
        writeln!(out, "# dropped={}", self.dropped)?;
        writeln!(out, "piece,re,im")?;
        for (i, v) in &self.records {
            writeln!(out, "{},{},{}", i + 1, v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_csv(input: impl BufRead) -> Result<PointCloud> {
        let mut alg = None;
        let mut params = SimParams::default();
        let mut dropped = 0;
        let mut records = Vec::new();
        let mut header = false;
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            let bad = |message: String| Error::Parse { line: n + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let Some((key, value)) = meta.trim().split_once('=') else {
                    continue;
                };
                let num = || value.parse::<u64>().map_err(|e| bad(format!("{key}: {e}")));
                match key {
                    "algorithm" => alg = Some(value.parse::<AlgorithmId>().map_err(|e| bad(e.to_string()))?),
                    "seed" => params.seed = num()?,
                    "points" => params.n_points = num()? as usize,
                    "iters" => params.n_iters = num()? as usize,
                    "burn_in" => params.burn_in = num()? as usize,
                    "dropped" => dropped = num()? as usize,
                    _ => {}
                }
                continue;
            }
            if !header {
                if line != "piece,re,im" {
                    return Err(bad(format!("expected header piece,re,im, found {line}")));
                }
                header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 3 fields, found {}", fields.len())));
            }
            let piece: usize = fields[0].parse().map_err(|e| bad(format!("piece: {e}")))?;
            if piece == 0 {
                return Err(bad("pieces are numbered from 1".into()));
            }
            let re: f64 = fields[1].parse().map_err(|e| bad(format!("re: {e}")))?;
            let im: f64 = fields[2].parse().map_err(|e| bad(format!("im: {e}")))?;
            records.push((piece - 1, Complex64::new(re, im)));
        }
        let algorithm = alg.ok_or_else(|| Error::Parse {
            line: 0,
            message: "missing algorithm metadata".into(),
        })?;
        Ok(PointCloud {
            algorithm,
            params,
            dropped,
            records,
        })
    }
}

/// Per piece, the number of points and how many are not outside `S(L_i)`.
pub fn containment(cloud: &PointCloud, ls: &[SphereRegion], eps: f64) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0); ls.len()];
    for &(i, v) in &cloud.records {
        out[i].0 += 1;
        if ls[i].classify_s(v, eps) != Verdict::Out {
            out[i].1 += 1;
        }
    }
    out
}

/// Containment and grid coverage of a simulated cloud, per piece.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub algorithm: AlgorithmId,
    pub cell: f64,
    pub stats: SimStats,
    pub points: Vec<usize>,
    pub inside: Vec<usize>,
    /// Grid cells lying inside `S(L_i)`.
    pub interior_cells: Vec<usize>,
    /// Interior cells containing at least one point of piece `i`.
    pub hit_cells: Vec<usize>,
}

impl CoverageReport {
    pub fn containment(&self, i: usize) -> f64 {
        self.inside[i] as f64 / self.points[i].max(1) as f64
    }

    pub fn coverage(&self, i: usize) -> f64 {
        self.hit_cells[i] as f64 / self.interior_cells[i].max(1) as f64
    }
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "algorithm={} starts={} dropped={} emitted={} cell={}",
            self.algorithm, self.stats.starts, self.stats.dropped, self.stats.emitted, self.cell
        )?;
        for i in 0..self.points.len() {
            writeln!(
                f,
                "piece={} points={} contained={:.5} cells={} covered={:.4}",
                i + 1,
                self.points[i],
                self.containment(i),
                self.interior_cells[i],
                self.coverage(i)
            )?;
        }
        Ok(())
    }
}

struct Grid {
    x0: f64,
    side: f64,
    n: usize,
}

impl Grid {
    fn index(&self, v: Complex64) -> Option<usize> {
        let fx = ((v.re - self.x0) / self.side).floor();
        let fy = ((v.im - self.x0) / self.side).floor();
        if fx < 0.0 || fy < 0.0 || fx >= self.n as f64 || fy >= self.n as f64 {
            return None;
        }
        Some(fy as usize * self.n + fx as usize)
    }

    /// Whether the closed cell lies inside `r`, judged on a 3×3 lattice.
    fn cell_inside(&self, r: &SphereRegion, k: usize) -> bool {
        let (cx, cy) = (k % self.n, k / self.n);
        (0..3).all(|a| {
            (0..3).all(|b| {
                let z = Complex64::new(
                    self.x0 + (cx as f64 + a as f64 / 2.0) * self.side,
                    self.x0 + (cy as f64 + b as f64 / 2.0) * self.side,
                );
                r.classify_s(z, 0.0) == Verdict::In
            })
        })
    }
}

/// Simulates without storing the cloud and measures containment in the given
/// sets and coverage of their interior grid cells of side `cell`.
pub fn coverage(alg: AlgorithmId, ls: &[SphereRegion], p: &SimParams, cell: f64, eps: f64) -> CoverageReport {
    let n = (2.0 / cell).ceil() as usize;
    let grid = Grid {
        x0: -(n as f64) * cell / 2.0,
        side: cell,
        n,
    };
    let m = ls.len();
    type Acc = (Vec<usize>, Vec<usize>, Vec<Vec<bool>>);
    let init = || -> Acc { (vec![0; m], vec![0; m], vec![vec![false; n * n]; m]) };
    let (acc, stats) = simulate_fold(
        alg,
        p,
        init,
        |acc: &mut Acc, i, v| {
            acc.0[i] += 1;
            if ls[i].classify_s(v, eps) != Verdict::Out {
                acc.1[i] += 1;
            }
            if let Some(k) = grid.index(v) {
                acc.2[i][k] = true;
            }
        },
        |mut a, b| {
            for i in 0..m {
                a.0[i] += b.0[i];
                a.1[i] += b.1[i];
                for (x, y) in a.2[i].iter_mut().zip(&b.2[i]) {
                    *x |= *y;
                }
            }
            a
        },
    );
    let mut interior_cells = vec![0; m];
    let mut hit_cells = vec![0; m];
    for i in 0..m {
        for k in 0..n * n {
            if grid.cell_inside(&ls[i], k) {
                interior_cells[i] += 1;
                if acc.2[i][k] {
                    hit_cells[i] += 1;
                }
            }
        }
    }
    CoverageReport {
        algorithm: alg,
        cell,
        stats,
        points: acc.0,
        inside: acc.1,
        interior_cells,
        hit_cells,
    }
}
