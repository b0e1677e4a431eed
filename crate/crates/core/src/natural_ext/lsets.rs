//! The published sets `L_i`, stored as `S(L_i) ⊆ 𝔻̄`.

use crate::algorithms::AlgorithmId;
use crate::arith::ExtendedComplex;
use crate::regions::{HalfSpace, Membership, Rect, Region, Verdict};
use num_complex::Complex64;

/// A subset `L` of the sphere, held through the bounded set `S(L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRegion {
    pub s_region: Region,
}

impl SphereRegion {
    /// From `L` given in the `w` plane.
    pub fn from_w(l: &Region) -> Self {
        SphereRegion {
            s_region: l.invert().simplify(),
        }
    }

    /// Membership of a point given in S-coordinates.
    pub fn classify_s(&self, v: Complex64, eps: f64) -> Verdict {
        self.s_region.classify(v, eps)
    }

    /// Membership of `w` through `S(w)`.
    pub fn classify_w(&self, w: ExtendedComplex, eps: f64) -> Verdict {
        match w {
            ExtendedComplex::Infinity => self.classify_s(Complex64::new(0.0, 0.0), eps),
            ExtendedComplex::Finite(w) if w == Complex64::new(0.0, 0.0) => Verdict::Out,
            ExtendedComplex::Finite(w) => self.classify_s(-1.0 / w, eps),
        }
    }

    pub fn bounding_box(&self) -> Option<Rect> {
        self.s_region.bounding_box()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ℂ̄` minus the open unit balls at `centers`, cut by extra half-planes.
fn outside_balls(centers: &[Complex64], radius: f64, extra: &[HalfSpace]) -> Region {
    let mut hs: Vec<HalfSpace> = centers.iter().map(|&z| HalfSpace::outside(z, radius)).collect();
    hs.extend_from_slice(extra);
    Region::cell(hs)
}

/// `L_{k+period} = -i · L_k` starting from the given sets.
fn rotate_out(base: Vec<Region>, total: usize) -> Vec<SphereRegion> {
    let period = base.len();
    let mut ls = base;
    while ls.len() < total {
        let next = ls[ls.len() - period].rotate(c(0.0, -1.0));
        ls.push(next);
    }
    ls.iter().map(SphereRegion::from_w).collect()
}

fn diamond_l(third: Region) -> Vec<SphereRegion> {
    let l1 = outside_balls(
        &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, -1.0)],
        1.0,
        &[HalfSpace::re_ge(-0.5)],
    );
    let l2 = outside_balls(&[c(0.0, 1.0), c(0.0, 0.0)], 1.0, &[HalfSpace::re_ge(-0.5)]);
    rotate_out(vec![l1, l2, third], 12)
}

/// `L_1` and `L_1` minus the strip beyond the line with the given normal.
fn disk_l(normal: Complex64) -> Vec<SphereRegion> {
    let centers = [c(0.5, 0.5), c(-0.5, 0.5), c(-0.5, -0.5), c(0.5, -0.5)];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let l1 = outside_balls(&centers, r, &[]);
    let mut l = outside_balls(&centers, r, &[HalfSpace::half_plane(normal, 1.0)]);
    let mut ls = vec![SphereRegion::from_w(&l1)];
    for _ in 0..4 {
        ls.push(SphereRegion::from_w(&l));
        l = l.rotate(c(0.0, -1.0));
    }
    ls
}

/// The sets `L_i` for the algorithms where they are known explicitly.
pub fn declared_l(alg: AlgorithmId) -> Option<Vec<SphereRegion>> {
    match alg {
        AlgorithmId::NearestEven => {
            let l1 = outside_balls(&[c(0.0, 0.0), c(-1.0, 1.0), c(-1.0, -1.0)], 1.0, &[]);
            let l2 = outside_balls(&[c(0.0, 0.0), c(-1.0, 1.0)], 1.0, &[]);
            Some(rotate_out(vec![l1, l2], 8))
        }
        // The printed third set is rotated by a half turn.
        AlgorithmId::Diamond => Some(diamond_l(outside_balls(
            &[c(-1.0, 0.0), c(0.0, 0.0)],
            1.0,
            &[HalfSpace::im_le(0.5)],
        ))),
        // The printed strip Im w > -Re w + 1 is mirrored; the system holds
        // with Im w > Re w + 1.
        AlgorithmId::Disk => Some(disk_l(c(-1.0, 1.0))),
        _ => None,
    }
}

/// The sets exactly as published, transcription errors included.
pub fn printed_l(alg: AlgorithmId) -> Option<Vec<SphereRegion>> {
    match alg {
        AlgorithmId::Diamond => Some(diamond_l(outside_balls(
            &[c(1.0, 0.0), c(0.0, 0.0)],
            1.0,
            &[HalfSpace::im_ge(-0.5)],
        ))),
        AlgorithmId::Disk => Some(disk_l(c(1.0, 1.0))),
        _ => declared_l(alg),
    }
}

/// The nearest even sets with the ball `B(0)` in `L_1` shrunk to radius 0.9.
pub fn perturbed_nearest_even_l() -> Vec<SphereRegion> {
    let mut ls = declared_l(AlgorithmId::NearestEven).expect("declared");
    let l1 = Region::cell(vec![
        HalfSpace::outside(c(0.0, 0.0), 0.9),
        HalfSpace::outside(c(-1.0, 1.0), 1.0),
        HalfSpace::outside(c(-1.0, -1.0), 1.0),
    ]);
    ls[0] = SphereRegion::from_w(&l1);
    ls
}
