//! The six choice functions with their fundamental sets, partitions and
//! per-digit choice regions.

pub mod disk;
mod partitions;
pub mod symmetry;

use crate::arith::GaussianInt;
use crate::error::{Error, Result};
use crate::regions::{HalfSpace, Region};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub use partitions::diamond;
pub use symmetry::{piece_at, piece_permutation, Isometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    NearestInteger,
    NearestEven,
    NearestOdd,
    Diamond,
    Disk,
    ShiftedHurwitz,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::NearestInteger,
        AlgorithmId::NearestEven,
        AlgorithmId::NearestOdd,
        AlgorithmId::Diamond,
        AlgorithmId::Disk,
        AlgorithmId::ShiftedHurwitz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::NearestInteger => "nearest-integer",
            AlgorithmId::NearestEven => "nearest-even",
            AlgorithmId::NearestOdd => "nearest-odd",
            AlgorithmId::Diamond => "diamond",
            AlgorithmId::Disk => "disk",
            AlgorithmId::ShiftedHurwitz => "shifted-hurwitz",
        }
    }

    /// Whether `a` can occur as a digit.
    pub fn admissible(self, a: GaussianInt) -> bool {
        match self {
            AlgorithmId::NearestEven | AlgorithmId::Disk => a.is_even(),
            AlgorithmId::NearestOdd => !a.is_even(),
            _ => true,
        }
    }

    /// Whether every translate `a + K` by an admissible digit is a choice
    /// region.
    pub fn is_tiling(self) -> bool {
        !matches!(self, AlgorithmId::Diamond | AlgorithmId::Disk)
    }

    /// Whether each cell lies in a single partition piece.
    pub fn is_markov(self) -> bool {
        matches!(self, AlgorithmId::NearestEven | AlgorithmId::Disk)
    }

    /// Isometries of `K` that permute the partition pieces.
    pub fn symmetries(self) -> Vec<Isometry> {
        match self {
            AlgorithmId::ShiftedHurwitz => vec![Isometry::IDENTITY, Isometry::CONJ],
            _ => Isometry::dihedral(),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = AlgorithmId::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Fundamental set and partition of one algorithm.
#[derive(Debug, Clone)]
pub struct AlgorithmSpec {
    pub id: AlgorithmId,
    pub k: Region,
    pub partition: Vec<Region>,
}

/// Cached spec for `alg`.
pub fn spec(alg: AlgorithmId) -> &'static AlgorithmSpec {
    static SPECS: [OnceLock<AlgorithmSpec>; 6] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    SPECS[alg as usize].get_or_init(|| AlgorithmSpec {
        id: alg,
        k: partitions::fundamental_set(alg),
        partition: partitions::partition(alg),
    })
}

pub fn fundamental_set(alg: AlgorithmId) -> Region {
    spec(alg).k.clone()
}

pub fn partition(alg: AlgorithmId) -> Vec<Region> {
    spec(alg).partition.clone()
}

/// The digit `⟨z⟩`.
pub fn choose(alg: AlgorithmId, z: Complex64) -> GaussianInt {
    match alg {
        AlgorithmId::NearestInteger => GaussianInt::new(
            (z.re + 0.5).floor() as i64,
            (z.im + 0.5).floor() as i64,
        ),
        AlgorithmId::NearestEven => {
            let p = ((z.re + z.im + 1.0) / 2.0).floor() as i64;
            let q = ((z.re - z.im + 1.0) / 2.0).floor() as i64;
            GaussianInt::new(p + q, p - q)
        }
        AlgorithmId::NearestOdd => nearest_odd(z),
        AlgorithmId::Diamond => {
            diamond_choose(z).expect("the t-map reaches the diamond from any start")
        }
        AlgorithmId::Disk => disk::disk_choose(z),
        AlgorithmId::ShiftedHurwitz => shifted_hurwitz(z),
    }
}

/// Nearest odd Gaussian integer; ties go to the largest `(Re, Im)`.
fn nearest_odd(z: Complex64) -> GaussianInt {
    let mut best = GaussianInt::ONE;
    let mut best_d = f64::INFINITY;
    let (x0, y0) = (z.re.floor() as i64, z.im.floor() as i64);
    for re in x0 - 1..=x0 + 2 {
        for im in y0 - 1..=y0 + 2 {
            let a = GaussianInt::new(re, im);
            if a.is_even() {
                continue;
            }
            let d = (z - a.to_c64()).norm_sqr();
            if d < best_d || (d == best_d && (re, im) > (best.re, best.im)) {
                best = a;
                best_d = d;
            }
        }
    }
    best
}

/// Minimises `|z - h + 1/2|` over `h` with `|z - h| ≤ 1`; ties go to the
/// smallest `(Re, Im)`.
fn shifted_hurwitz(z: Complex64) -> GaussianInt {
    let shift = Complex64::new(0.5, 0.0);
    let mut best: Option<(f64, GaussianInt)> = None;
    for h in GaussianInt::near(z, 1.0) {
        let d = (z - h.to_c64() + shift).norm_sqr();
        let better = match best {
            None => true,
            Some((bd, bh)) => d < bd || (d == bd && (h.re, h.im) < (bh.re, bh.im)),
        };
        if better {
            best = Some((d, h));
        }
    }
    best.map(|(_, h)| h).unwrap_or(GaussianInt::ZERO)
}

/// Unit subtracted by `t` at `z`, `None` at `0`.
fn t_step(z: Complex64) -> Option<GaussianInt> {
    let (x, y) = (z.re, z.im);
    if x > 0.0 && -x <= y && y < x {
        Some(GaussianInt::ONE)
    } else if y > 0.0 && -y < x && x <= y {
        Some(GaussianInt::I)
    } else if x < 0.0 && x < y && y <= -x {
        Some(GaussianInt::new(-1, 0))
    } else if y < 0.0 && y <= x && x < -y {
        Some(GaussianInt::new(0, -1))
    } else {
        None
    }
}

/// One step of the sector map: subtract `1`, `i`, `-1` or `-i` according to
/// the quarter-plane sector of `arg z`; `0` is fixed.
pub fn t_map(z: Complex64) -> Complex64 {
    match t_step(z) {
        Some(u) => z - u.to_c64(),
        None => z,
    }
}

pub const DIAMOND_BUDGET: usize = 100_000;

/// Iterates `t` until the iterate lies in the closed diamond and returns the
/// accumulated digit.
pub fn diamond_choose(z: Complex64) -> Result<GaussianInt> {
    let mut digit = GaussianInt::ZERO;
    let mut w = z;
    let mut steps = 0usize;
    while w.re.abs() + w.im.abs() > 1.0 {
        let Some(u) = t_step(w) else { break };
        // Skip straight runs that stay in one sector.
        let along = u.re as f64 * w.re + u.im as f64 * w.im;
        let across = (u.im as f64 * w.re - u.re as f64 * w.im).abs();
        let k = ((along - across).floor() - 2.0).max(0.0) as i64;
        let k = k.max(1);
        digit = digit + u * k;
        w -= u.to_c64() * k as f64;
        steps += 1;
        if steps > DIAMOND_BUDGET {
            return Err(Error::IterationBudgetExceeded {
                budget: DIAMOND_BUDGET,
                z,
            });
        }
    }
    Ok(digit)
}

/// Closure of `{w : ⟨w⟩ = a}`.
pub fn choice_region(alg: AlgorithmId, a: GaussianInt) -> Result<Region> {
    if !alg.admissible(a) {
        return Err(Error::InvalidDigit {
            algorithm: alg.name().to_string(),
            digit: a,
        });
    }
    let shift = a.to_c64();
    Ok(match alg {
        AlgorithmId::Disk => {
            let j = disk::sector(a).expect("even digit");
            disk::v_set(j).translate(shift)
        }
        AlgorithmId::Diamond => {
            // The lines x ± y ∈ ℤ cut the diamond into four quarter diamonds
            // on which the digit is constant.
            let mut out = Region::empty();
            for c in [
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.0, -0.5),
            ] {
                if choose(alg, shift + c) == a {
                    out = out.union(&quarter_diamond(c).translate(shift));
                }
            }
            out
        }
        _ => spec(alg).k.translate(shift),
    })
}

fn quarter_diamond(center: Complex64) -> Region {
    let d = |n: Complex64| HalfSpace::half_plane(n, n.re * center.re + n.im * center.im + 0.5);
    Region::cell(vec![
        d(Complex64::new(1.0, 1.0)),
        d(Complex64::new(1.0, -1.0)),
        d(Complex64::new(-1.0, 1.0)),
        d(Complex64::new(-1.0, -1.0)),
    ])
}

/// The cell `⟨a⟩ = K ∩ S(choice_region(a))`, possibly empty.
pub fn cell(alg: AlgorithmId, a: GaussianInt) -> Result<Region> {
    let r = choice_region(alg, a)?;
    Ok(spec(alg).k.intersect(&r.invert()).simplify())
}

/// `T^{-a} S ⟨a⟩ = (choice_region(a) ∩ S(K)) - a`, the part of `K` covered by
/// the image of the cell.
pub fn digit_image(alg: AlgorithmId, a: GaussianInt) -> Result<Region> {
    let r = choice_region(alg, a)?;
    Ok(r
        .intersect(&spec(alg).k.invert())
        .simplify()
        .translate(-a.to_c64()))
}
