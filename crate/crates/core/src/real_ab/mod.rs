//! Real `(a,b)`-continued fractions: the generalized integer part, the Gauss
//! map and its natural extension, and the domain `⋃ K_i × L_i` for
//! `(a,b) = (-4/5, 2/5)`.
//!
//! Points of the projective line are `f64` values with `f64::INFINITY` for
//! `∞`.

use crate::error::{Error, Result};
use crate::natural_ext::{SimParams, SimStats};
use crate::regions::block_rng;
use rand::Rng;
use rayon::prelude::*;
use std::fmt;

const CHUNK: usize = 256;
const RATIONAL_EPS: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ABParams {
    pub a: f64,
    pub b: f64,
}

impl ABParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a <= 0.0 && b >= 0.0 && b - a >= 1.0 && -a * b <= 1.0) {
            return Err(Error::InvalidParameters(format!(
                "need a <= 0 <= b, b - a >= 1 and -ab <= 1, got a = {a}, b = {b}"
            )));
        }
        Ok(ABParams { a, b })
    }

    /// `(a, b) = (-4/5, 2/5)`.
    pub fn example() -> Self {
        ABParams { a: -0.8, b: 0.4 }
    }
}

/// `⟨x⟩_{a,b}`.
pub fn bracket_ab(x: f64, p: &ABParams) -> i64 {
    if x < p.a {
        (x - p.a).floor() as i64
    } else if x < p.b {
        0
    } else {
        (x - p.b).ceil() as i64
    }
}

fn proj_s(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else if x == 0.0 {
        f64::INFINITY
    } else {
        -1.0 / x
    }
}

/// `G_{a,b}(x) = -1/x - ⟨-1/x⟩_{a,b}`.
pub fn gauss_ab(x: f64, p: &ABParams) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::ZeroInput);
    }
    let y = -1.0 / x;
    Ok(y - bracket_ab(y, p) as f64)
}

/// `Ĝ_{a,b}(x, w) = (-1/x - n, -1/w - n)` with `n = ⟨-1/x⟩_{a,b}`.
pub fn next_ext_ab(x: f64, w: f64, p: &ABParams) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Err(Error::ZeroInput);
    }
    if x == w {
        return Err(Error::DiagonalInput);
    }
    let y = -1.0 / x;
    let n = bracket_ab(y, p) as f64;
    let sw = proj_s(w);
    let w1 = if sw.is_infinite() { f64::INFINITY } else { sw - n };
    Ok((y - n, w1))
}

/// `x + 1` left of `a`, `-1/x` on `[a, b)`, `x - 1` from `b` on.
pub fn slow_map(x: f64, p: &ABParams) -> Result<f64> {
    if x < p.a {
        Ok(x + 1.0)
    } else if x < p.b {
        if x == 0.0 {
            Err(Error::ZeroInput)
        } else {
            Ok(-1.0 / x)
        }
    } else {
        Ok(x - 1.0)
    }
}

/// The closed arc of `ℝP¹` running upward from `left` to `right`, through
/// `∞` when `left > right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjInterval {
    pub left: f64,
    pub right: f64,
}

impl ProjInterval {
    pub fn new(left: f64, right: f64) -> Self {
        assert!(left != right, "degenerate projective interval");
        ProjInterval { left, right }
    }

    pub fn wraps(&self) -> bool {
        self.left.is_infinite() || self.right.is_infinite() || self.left > self.right
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_infinite() {
            return self.wraps();
        }
        let after_left = self.left.is_infinite() || x >= self.left;
        let before_right = self.right.is_infinite() || x <= self.right;
        if self.left.is_finite() && self.right.is_finite() && self.left < self.right {
            after_left && before_right
        } else if self.left.is_infinite() {
            before_right
        } else if self.right.is_infinite() {
            after_left
        } else {
            after_left || before_right
        }
    }

    /// The image under `S(x) = -1/x`, which preserves orientation.
    pub fn s_image(&self) -> ProjInterval {
        ProjInterval::new(proj_s(self.left), proj_s(self.right))
    }

    /// Endpoints as an ordinary interval, when the arc avoids `∞`.
    pub fn bounded(&self) -> Option<(f64, f64)> {
        (!self.wraps()).then_some((self.left, self.right))
    }

    /// The part inside `[-m, m]`, as at most two ordinary intervals.
    fn window(&self, m: f64) -> Vec<(f64, f64)> {
        let clip = |l: f64, r: f64| -> Option<(f64, f64)> {
            let (l, r) = (l.max(-m), r.min(m));
            (r > l).then_some((l, r))
        };
        if !self.wraps() {
            return clip(self.left, self.right).into_iter().collect();
        }
        let mut out = Vec::new();
        if self.right.is_finite() {
            out.extend(clip(-m, self.right));
        }
        if self.left.is_finite() {
            out.extend(clip(self.left, m));
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

fn fmt_point(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x}")
    }
}

impl fmt::Display for ProjInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_point(self.left), fmt_point(self.right))
    }
}

/// The pieces `K_1, …, K_6` of `[-4/5, 2/5]`.
pub fn example_pieces() -> Vec<(f64, f64)> {
    vec![
        (-0.8, -0.6),
        (-0.6, -0.5),
        (-0.5, -1.0 / 3.0),
        (-1.0 / 3.0, 0.2),
        (0.2, 0.25),
        (0.25, 0.4),
    ]
}

/// The published `L_1, …, L_6` for the example pieces.
pub fn example_l() -> Vec<ProjInterval> {
    let inf = f64::INFINITY;
    vec![
        ProjInterval::new(2.0, inf),
        ProjInterval::new(2.0, -2.0),
        ProjInterval::new(3.0, -2.0),
        ProjInterval::new(3.0, -1.5),
        ProjInterval::new(inf, -1.5),
        ProjInterval::new(inf, -1.0),
    ]
}

/// Index of the half-open piece containing `x`; the last piece is closed.
pub fn piece_of(pieces: &[(f64, f64)], x: f64) -> Option<usize> {
    let last = pieces.len().checked_sub(1)?;
    pieces
        .iter()
        .position(|&(l, r)| x >= l && x < r)
        .or_else(|| (x == pieces[last].1).then_some(last))
}

/// Range of `S(w)` seen over one piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hull {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Hull {
    fn empty() -> Self {
        Hull {
            count: 0,
            lo: f64::INFINITY,
            hi: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, v: f64) {
        self.count += 1;
        self.lo = self.lo.min(v);
        self.hi = self.hi.max(v);
    }

    fn merge(&mut self, o: &Hull) {
        self.count += o.count;
        self.lo = self.lo.min(o.lo);
        self.hi = self.hi.max(o.hi);
    }

    /// Largest endpoint distance to an ordinary interval.
    pub fn distance(&self, target: (f64, f64)) -> f64 {
        (self.lo - target.0).abs().max((self.hi - target.1).abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ABHulls {
    pub params: ABParams,
    pub sim: SimParams,
    pub stats: SimStats,
    /// Per piece, the range of `S(w)` after burn-in.
    pub hulls: Vec<Hull>,
}

impl fmt::Display for ABHulls {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "a={} b={} starts={} dropped={} emitted={}",
            self.params.a, self.params.b, self.stats.starts, self.stats.dropped, self.stats.emitted
        )?;
        for (i, h) in self.hulls.iter().enumerate() {
            let l = ProjInterval::new(proj_s(h.lo), proj_s(h.hi));
            writeln!(f, "piece={} samples={} S(L)=[{:.6}, {:.6}] L={l}", i + 1, h.count, h.lo, h.hi)?;
        }
        Ok(())
    }
}

impl ABHulls {
    pub fn write_csv(&self, mut out: impl std::io::Write) -> Result<()> {
        writeln!(out, "# a={} b={} seed={}", self.params.a, self.params.b, self.sim.seed)?;
        writeln!(out, "piece,samples,s_lo,s_hi")?;
        for (i, h) in self.hulls.iter().enumerate() {
            writeln!(out, "{},{},{},{}", i + 1, h.count, h.lo, h.hi)?;
        }
        Ok(())
    }
}

fn run_orbit(p: &ABParams, pieces: &[(f64, f64)], sim: &SimParams, index: usize, hulls: &mut [Hull]) -> (bool, usize) {
    let mut rng = block_rng(sim.seed, index as u64);
    let mut x = loop {
        let x = rng.random_range(p.a..p.b);
        if x != 0.0 {
            break x;
        }
    };
    let w = loop {
        let w = rng.random_range(-3.0..3.0);
        if w != x && w != 0.0 {
            break w;
        }
    };
    let mut v = -1.0 / w;
    let mut emitted = 0;
    for t in 1..=sim.n_iters {
        if x.abs() < RATIONAL_EPS {
            return (false, emitted);
        }
        let y = -1.0 / x;
        let n = bracket_ab(y, p) as f64;
        x = y - n;
        let w = v - n;
        if w == 0.0 {
            return (false, emitted);
        }
        v = -1.0 / w;
        if t > sim.burn_in {
            if let Some(i) = piece_of(pieces, x) {
                hulls[i].add(v);
                emitted += 1;
            }
        }
    }
    (true, emitted)
}

/// Iterates `Ĝ_{a,b}` from random starts (`x` uniform in `[a, b)`, `w`
/// uniform in `[-3, 3]`) and records the range of `S(w)` per piece of `x`.
pub fn simulate_ab(p: &ABParams, pieces: &[(f64, f64)], sim: &SimParams) -> ABHulls {
    let chunks = sim.n_points.div_ceil(CHUNK);
    let parts: Vec<(Vec<Hull>, SimStats)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hulls = vec![Hull::empty(); pieces.len()];
            let mut stats = SimStats::default();
            for index in c * CHUNK..((c + 1) * CHUNK).min(sim.n_points) {
                let (kept, n) = run_orbit(p, pieces, sim, index, &mut hulls);
                stats.starts += 1;
                stats.emitted += n;
                stats.dropped += usize::from(!kept);
            }
            (hulls, stats)
        })
        .collect();
    let mut hulls = vec![Hull::empty(); pieces.len()];
    let mut stats = SimStats::default();
    for (h, s) in parts {
        for (acc, x) in hulls.iter_mut().zip(&h) {
            acc.merge(x);
        }
        stats.starts += s.starts;
        stats.dropped += s.dropped;
        stats.emitted += s.emitted;
    }
    ABHulls {
        params: *p,
        sim: *sim,
        stats,
        hulls,
    }
}

/// Closure of `{y : ⟨y⟩_{a,b} = n}`.
fn digit_cell(n: i64, p: &ABParams) -> (f64, f64) {
    let n = n as f64;
    match n {
        n if n < 0.0 => (p.a + n, p.a + n + 1.0),
        n if n > 0.0 => (p.b + n - 1.0, p.b + n),
        _ => (p.a, p.b),
    }
}

/// `S(K)` as at most two intervals of `ℝ`, cut at `∞` when `0 ∈ K`.
fn s_pieces(k: (f64, f64), far: f64) -> Vec<(f64, f64)> {
    let (l, r) = k;
    if l < 0.0 && r > 0.0 {
        vec![(-1.0 / l, far), (-far, -1.0 / r)]
    } else if l == 0.0 {
        vec![(-far, -1.0 / r)]
    } else if r == 0.0 {
        vec![(-1.0 / l, far)]
    } else {
        vec![(-1.0 / l, -1.0 / r)]
    }
}

/// The images `G(K_j ∩ ⟨n⟩)` with `|n| ≤ max_digit`, as `(n, j, image)`.
pub fn digit_images(p: &ABParams, pieces: &[(f64, f64)], max_digit: i64) -> Vec<(i64, usize, (f64, f64))> {
    let far = max_digit as f64 + 10.0;
    let mut out = Vec::new();
    for (j, &k) in pieces.iter().enumerate() {
        for (yl, yr) in s_pieces(k, far) {
            for n in -max_digit..=max_digit {
                let (cl, cr) = digit_cell(n, p);
                let (l, r) = (yl.max(cl), yr.min(cr));
                if r - l > 1e-12 {
                    out.push((n, j, (l - n as f64, r - n as f64)));
                }
            }
        }
    }
    out
}

/// Per piece `i`, the pairs `(n, j)` with `K_i ⊆ G(K_j ∩ ⟨n⟩)`.
pub fn transitions(p: &ABParams, pieces: &[(f64, f64)], max_digit: i64) -> Vec<Vec<(i64, usize)>> {
    let tol = 1e-12;
    let mut out = vec![Vec::new(); pieces.len()];
    for (n, j, (il, ir)) in digit_images(p, pieces, max_digit) {
        for (i, &(kl, kr)) in pieces.iter().enumerate() {
            if kl >= il - tol && kr <= ir + tol {
                out[i].push((n, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ABSystemReport {
    pub window: f64,
    /// Per piece, the largest endpoint discrepancy inside the window over
    /// the atoms of the piece, or infinity when interval counts differ.
    pub deviation: Vec<f64>,
    /// Per piece, the number of atoms cut out by image endpoints.
    pub atoms: Vec<usize>,
}

impl ABSystemReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.deviation.iter().all(|&d| d <= tol)
    }
}

fn merge_intervals(mut v: Vec<(f64, f64)>, tol: f64) -> Vec<(f64, f64)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (l, r) in v {
        match out.last_mut() {
            Some(last) if l <= last.1 + tol => last.1 = last.1.max(r),
            _ => out.push((l, r)),
        }
    }
    out
}

fn deviation(union: &[(f64, f64)], want: &[(f64, f64)]) -> f64 {
    if union.len() != want.len() {
        return f64::INFINITY;
    }
    union
        .iter()
        .zip(want)
        .map(|(u, w)| (u.0 - w.0).abs().max((u.1 - w.1).abs()))
        .fold(0.0, f64::max)
}

/// Checks that `Ĝ_{a,b}` maps `⋃ K_i × L_i` onto itself. Each `K_i` is cut
/// at the endpoints of the images `G(K_j ∩ ⟨n⟩)`; over every atom the union
/// of `T^{-n} S L_j` for the images covering it must equal `L_i`. Digits
/// with `|n| ≤ max_digit` are used and both sides are compared inside
/// `[-max_digit/2, max_digit/2]`.
pub fn check_ab_system(p: &ABParams, pieces: &[(f64, f64)], ls: &[ProjInterval], max_digit: i64) -> ABSystemReport {
    let m = max_digit as f64 / 2.0;
    let images = digit_images(p, pieces, max_digit);
    let mut dev = Vec::with_capacity(ls.len());
    let mut atoms = Vec::with_capacity(ls.len());
    for (i, target) in ls.iter().enumerate() {
        let (kl, kr) = pieces[i];
        let mut cuts = vec![kl, kr];
        for &(_, _, (l, r)) in &images {
            for x in [l, r] {
                if x > kl + 1e-12 && x < kr - 1e-12 {
                    cuts.push(x);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let want = target.window(m);
        let mut worst: f64 = 0.0;
        for pair in cuts.windows(2) {
            let mid = 0.5 * (pair[0] + pair[1]);
            let mut parts = Vec::new();
            for &(n, j, (l, r)) in &images {
                if l < mid && mid < r {
                    let (sl, sr) = ls[j].s_image().bounded().expect("0 is outside every L_j");
                    parts.extend(ProjInterval::new(sl - n as f64, sr - n as f64).window(m));
                }
            }
            worst = worst.max(deviation(&merge_intervals(parts, 1e-12), &want));
        }
        dev.push(worst);
        atoms.push(cuts.len() - 1);
    }
    ABSystemReport {
        window: m,
        deviation: dev,
        atoms,
    }
}
