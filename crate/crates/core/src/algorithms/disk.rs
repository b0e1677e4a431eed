//! Tables of the disk algorithm: the nine sets `V_j ⊆ 𝔻̄` and the sectors
//! `E_j` of the even Gaussian integers.

use crate::arith::GaussianInt;
use crate::regions::{HalfSpace, Region};
use num_complex::Complex64;

/// Centers of the unit disks removed from `𝔻̄` to form `V_j`.
pub fn excluded_centers(j: usize) -> &'static [(i64, i64)] {
    const T: [&[(i64, i64)]; 9] = [
        &[],
        &[(-1, -1)],
        &[(-1, 1)],
        &[(1, 1)],
        &[(1, -1)],
        &[(-1, -1), (-1, 1)],
        &[(-1, 1), (1, 1)],
        &[(1, 1), (1, -1)],
        &[(1, -1), (-1, -1)],
    ];
    T[j]
}

/// `V_j` as a region.
pub fn v_set(j: usize) -> Region {
    let mut hs = vec![HalfSpace::disk(Complex64::new(0.0, 0.0), 1.0)];
    for &(x, y) in excluded_centers(j) {
        hs.push(HalfSpace::outside(Complex64::new(x as f64, y as f64), 1.0));
    }
    Region::cell(hs)
}

/// Index `j` with `a ∈ E_j`, or `None` for odd `a`.
pub fn sector(a: GaussianInt) -> Option<usize> {
    if !a.is_even() {
        return None;
    }
    // a = nα + m conj(α) with α = 1+i.
    let n = (a.re + a.im) / 2;
    let m = (a.re - a.im) / 2;
    Some(match (n.signum(), m.signum()) {
        (0, 0) => 0,
        (1, 0) => 1,
        (0, 1) => 2,
        (-1, 0) => 3,
        (0, -1) => 4,
        (1, 1) => 5,
        (-1, 1) => 6,
        (-1, -1) => 7,
        _ => 8,
    })
}

/// Signed distance of `v` inside `V_j` (negative outside).
pub fn v_margin(j: usize, v: Complex64) -> f64 {
    let mut m = 1.0 - v.norm();
    for &(x, y) in excluded_centers(j) {
        m = m.min((v - Complex64::new(x as f64, y as f64)).norm() - 1.0);
    }
    m
}

/// The even `a` with `w ∈ a + V(a)`; among overlapping candidates the one
/// with the largest margin.
pub fn disk_choose(w: Complex64) -> GaussianInt {
    let mut best = GaussianInt::ZERO;
    let mut best_margin = f64::NEG_INFINITY;
    for a in GaussianInt::near(w, 1.0 + 1e-9) {
        let Some(j) = sector(a) else { continue };
        let m = v_margin(j, w - a.to_c64());
        if m > best_margin {
            best_margin = m;
            best = a;
        }
    }
    best
}

/// The unions `V_j = ⋃ K_k` over the disk partition (1-based).
pub fn v_union(j: usize) -> &'static [usize] {
    const T: [&[usize]; 9] = [
        &[1, 2, 3, 4, 5],
        &[1, 2, 3, 4],
        &[1, 3, 4, 5],
        &[1, 2, 4, 5],
        &[1, 2, 3, 5],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 2, 5],
        &[1, 2, 3],
    ];
    T[j]
}
