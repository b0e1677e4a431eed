//! Membership verdicts and sampled almost-everywhere comparison.

use super::region::Region;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

/// Samples handled by one deterministic RNG stream.
pub const BLOCK: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    In,
    Out,
    NearBoundary,
}

impl Verdict {
    pub fn from_bool(inside: bool) -> Self {
        if inside {
            Verdict::In
        } else {
            Verdict::Out
        }
    }

    pub fn is_in(self) -> bool {
        self == Verdict::In
    }

    pub fn is_out(self) -> bool {
        self == Verdict::Out
    }
}

/// Anything that can classify points of the plane.
pub trait Membership: Sync {
    fn classify(&self, z: Complex64, eps: f64) -> Verdict;
}

impl<T: Membership + ?Sized> Membership for &T {
    fn classify(&self, z: Complex64, eps: f64) -> Verdict {
        (**self).classify(z, eps)
    }
}

/// Membership given by a closure.
pub struct Predicate<F>(pub F);

impl<F: Fn(Complex64, f64) -> Verdict + Sync> Membership for Predicate<F> {
    fn classify(&self, z: Complex64, eps: f64) -> Verdict {
        (self.0)(z, eps)
    }
}

/// Union of memberships: In if any is In, NearBoundary if any is near.
pub struct AnyOf<'a, M: Membership>(pub &'a [M]);

impl<M: Membership> Membership for AnyOf<'_, M> {
    fn classify(&self, z: Complex64, eps: f64) -> Verdict {
        let mut inside = false;
        for m in self.0 {
            match m.classify(z, eps) {
                Verdict::NearBoundary => return Verdict::NearBoundary,
                Verdict::In => inside = true,
                Verdict::Out => {}
            }
        }
        Verdict::from_bool(inside)
    }
}

/// Closed axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    /// `[-h, h]²`.
    pub const fn square(h: f64) -> Self {
        Rect::new(-h, h, -h, h)
    }

    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }

    pub fn include(&self, z: Complex64) -> Rect {
        Rect::new(
            self.x0.min(z.re),
            self.x1.max(z.re),
            self.y0.min(z.im),
            self.y1.max(z.im),
        )
    }

    pub fn union(&self, o: &Rect) -> Rect {
        Rect::new(
            self.x0.min(o.x0),
            self.x1.max(o.x1),
            self.y0.min(o.y0),
            self.y1.max(o.y1),
        )
    }

    pub fn expand(&self, m: f64) -> Rect {
        Rect::new(self.x0 - m, self.x1 + m, self.y0 - m, self.y1 + m)
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0).max(0.0) * (self.y1 - self.y0).max(0.0)
    }

    #[inline]
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Complex64 {
        Complex64::new(
            self.x0 + (self.x1 - self.x0) * rng.random::<f64>(),
            self.y0 + (self.y1 - self.y0) * rng.random::<f64>(),
        )
    }
}

/// Generator for block `block` of a run seeded by `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub samples_total: usize,
    pub mismatches: usize,
    pub near_boundary_excluded: usize,
    pub seed: u64,
    /// First mismatching sample in block order.
    pub witness: Option<Complex64>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn empty(seed: u64) -> Self {
        ComparisonReport {
            samples_total: 0,
            mismatches: 0,
            near_boundary_excluded: 0,
            seed,
            witness: None,
        }
    }

    pub fn merge(mut self, o: &ComparisonReport) -> Self {
        self.samples_total += o.samples_total;
        self.mismatches += o.mismatches;
        self.near_boundary_excluded += o.near_boundary_excluded;
        self.witness = self.witness.or(o.witness);
        self
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "verdict={} samples={} mismatches={} excluded={} seed={}",
            if self.passed() { "pass" } else { "fail" },
            self.samples_total,
            self.mismatches,
            self.near_boundary_excluded,
            self.seed
        )?;
        if let Some(w) = self.witness {
            write!(f, " witness={:.12}{:+.12}i", w.re, w.im)?;
        }
        Ok(())
    }
}

/// Outcome of one sampled comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    Agree,
    Excluded,
    Mismatch(Complex64),
}

impl Probe {
    /// Compares two verdicts at the point `z`.
    pub fn of(a: Verdict, b: Verdict, z: Complex64) -> Probe {
        match (a, b) {
            (Verdict::NearBoundary, _) | (_, Verdict::NearBoundary) => Probe::Excluded,
            (x, y) if x == y => Probe::Agree,
            _ => Probe::Mismatch(z),
        }
    }
}

/// Runs `n` probes in fixed-size blocks, each with its own RNG stream, so the
/// result does not depend on the number of worker threads.
pub fn sampled_comparison<F>(n: usize, seed: u64, probe: F) -> ComparisonReport
where
    F: Fn(&mut ChaCha8Rng) -> Probe + Sync,
{
    let blocks = n.div_ceil(BLOCK);
    let parts: Vec<ComparisonReport> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b as u64);
            let count = BLOCK.min(n - b * BLOCK);
            let mut rep = ComparisonReport::empty(seed);
            rep.samples_total = count;
            for _ in 0..count {
                match probe(&mut rng) {
                    Probe::Agree => {}
                    Probe::Excluded => rep.near_boundary_excluded += 1,
                    Probe::Mismatch(z) => {
                        rep.mismatches += 1;
                        rep.witness.get_or_insert(z);
                    }
                }
            }
            rep
        })
        .collect();
    parts
        .iter()
        .fold(ComparisonReport::empty(seed), |acc, p| acc.merge(p))
}

/// Sampling parameters shared by the comparison routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareParams {
    pub bbox: Rect,
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
}

impl Default for CompareParams {
    fn default() -> Self {
        CompareParams {
            bbox: Rect::square(6.0),
            n: 1_000_000,
            eps: 1e-9,
            seed: 0,
        }
    }
}

impl CompareParams {
    pub fn with_bbox(self, bbox: Rect) -> Self {
        CompareParams { bbox, ..self }
    }

    pub fn with_n(self, n: usize) -> Self {
        CompareParams { n, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        CompareParams { seed, ..self }
    }
}

/// Samples `n` points of `bbox` and counts points that are In one membership
/// and Out of the other; points near either boundary are excluded.
pub fn ae_equal(
    a: &impl Membership,
    b: &impl Membership,
    bbox: Rect,
    n: usize,
    eps: f64,
    seed: u64,
) -> ComparisonReport {
    sampled_comparison(n, seed, |rng| {
        let z = bbox.sample(rng);
        Probe::of(a.classify(z, eps), b.classify(z, eps), z)
    })
}

/// [`ae_equal`] with bundled parameters.
pub fn ae_equal_with(a: &impl Membership, b: &impl Membership, p: &CompareParams) -> ComparisonReport {
    ae_equal(a, b, p.bbox, p.n, p.eps, p.seed)
}

/// `n` uniform points of `r ∩ bbox` by rejection from `bbox`.
pub fn sample_region(r: &Region, bbox: Rect, n: usize, seed: u64) -> Result<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = n.max(100).saturating_mul(10_000);
    let mut out = Vec::with_capacity(n);
    let mut draws = 0usize;
    while out.len() < n {
        if draws >= budget {
            return Err(Error::RejectionBudgetExceeded {
                accepted: out.len(),
                draws,
            });
        }
        draws += 1;
        let z = bbox.sample(&mut rng);
        if r.contains(z) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Indices of `pieces` whose union equals `target` almost everywhere, or
/// `None` if no union does. A piece is selected when its intersection with
/// the target has interior; the union is then compared by sampling.
pub fn buildable_from(target: &Region, pieces: &[Region], params: &CompareParams) -> Option<Vec<usize>> {
    let selected: Vec<usize> = pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| p.intersect(target).has_interior())
        .map(|(i, _)| i)
        .collect();
    let union = Region::union_all(selected.iter().map(|&i| &pieces[i]));
    ae_equal_with(target, &union, params)
        .passed()
        .then_some(selected)
}
