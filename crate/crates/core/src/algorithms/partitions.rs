//! Fundamental sets and their published finite partitions.

use super::AlgorithmId;
use crate::regions::{HalfSpace, Rect, Region};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn inside(center: Complex64, r: f64) -> HalfSpace {
    HalfSpace::disk(center, r)
}

fn outside(center: Complex64, r: f64) -> HalfSpace {
    HalfSpace::outside(center, r)
}

/// `{|Re z| + |Im z| ≤ 1}`.
pub fn diamond() -> Region {
    Region::cell(vec![
        HalfSpace::half_plane(c(1.0, 1.0), 1.0),
        HalfSpace::half_plane(c(1.0, -1.0), 1.0),
        HalfSpace::half_plane(c(-1.0, 1.0), 1.0),
        HalfSpace::half_plane(c(-1.0, -1.0), 1.0),
    ])
}

pub fn fundamental_set(alg: AlgorithmId) -> Region {
    match alg {
        AlgorithmId::NearestInteger => Region::rect(Rect::square(0.5)),
        AlgorithmId::NearestEven | AlgorithmId::NearestOdd | AlgorithmId::Diamond => diamond(),
        AlgorithmId::Disk => Region::unit_disk(),
        AlgorithmId::ShiftedHurwitz => Region::cell(vec![
            HalfSpace::im_le(0.5),
            HalfSpace::im_ge(-0.5),
            inside(c(0.0, 0.0), 1.0),
            outside(c(1.0, 0.0), 1.0),
        ]),
    }
}

fn within(k: &Region, hs: Vec<HalfSpace>) -> Region {
    k.intersect(&Region::cell(hs)).simplify()
}

/// Extends `base` by `K_i = -i K_{i-period}`.
fn rotate_out(base: Vec<Region>, total: usize) -> Vec<Region> {
    let period = base.len();
    let mut out = base;
    while out.len() < total {
        let prev = &out[out.len() - period];
        out.push(prev.rotate(c(0.0, -1.0)));
    }
    out
}

pub fn partition(alg: AlgorithmId) -> Vec<Region> {
    let k = fundamental_set(alg);
    let r = FRAC_1_SQRT_2;
    match alg {
        AlgorithmId::NearestInteger => rotate_out(
            vec![
                within(
                    &k,
                    vec![
                        HalfSpace::re_le(0.0),
                        outside(c(0.0, 1.0), 1.0),
                        outside(c(0.0, -1.0), 1.0),
                    ],
                ),
                within(
                    &k,
                    vec![
                        inside(c(0.0, 1.0), 1.0),
                        inside(c(-1.0, 0.0), 1.0),
                        outside(c(-1.0, 1.0), 1.0),
                    ],
                ),
                within(&k, vec![inside(c(-1.0, 1.0), 1.0)]),
            ],
            12,
        ),
        AlgorithmId::NearestEven => rotate_out(
            vec![
                within(
                    &k,
                    vec![inside(c(-0.5, 0.5), r), inside(c(-0.5, -0.5), r)],
                ),
                within(
                    &k,
                    vec![
                        inside(c(-0.5, 0.5), r),
                        outside(c(-0.5, -0.5), r),
                        outside(c(0.5, 0.5), r),
                    ],
                ),
            ],
            8,
        ),
        AlgorithmId::NearestOdd | AlgorithmId::Diamond => rotate_out(
            vec![
                within(
                    &k,
                    vec![inside(c(-0.5, -0.5), r), inside(c(-0.5, 0.5), r)],
                ),
                within(
                    &k,
                    vec![
                        outside(c(-0.5, -0.5), r),
                        HalfSpace::im_ge(0.0),
                        HalfSpace::half_plane(c(1.0, 1.0), 0.0),
                    ],
                ),
                within(
                    &k,
                    vec![
                        outside(c(0.5, 0.5), r),
                        HalfSpace::half_plane(c(-1.0, -1.0), 0.0),
                        HalfSpace::re_le(0.0),
                    ],
                ),
            ],
            12,
        ),
        AlgorithmId::Disk => {
            let corners = [c(-1.0, 1.0), c(1.0, 1.0), c(1.0, -1.0), c(-1.0, -1.0)];
            let mut out = vec![within(
                &k,
                corners.iter().map(|&p| outside(p, 1.0)).collect(),
            )];
            for p in corners {
                out.push(within(&k, vec![inside(p, 1.0)]));
            }
            out
        }
        AlgorithmId::ShiftedHurwitz => {
            let base = vec![
                within(
                    &k,
                    vec![
                        HalfSpace::re_ge(-0.5),
                        HalfSpace::re_le(0.0),
                        outside(c(0.0, 1.0), 1.0),
                        outside(c(0.0, -1.0), 1.0),
                    ],
                ),
                within(
                    &k,
                    vec![
                        inside(c(0.0, 1.0), 1.0),
                        inside(c(-1.0, 0.0), 1.0),
                        outside(c(-1.0, 1.0), 1.0),
                    ],
                ),
                within(
                    &k,
                    vec![
                        HalfSpace::im_ge(0.0),
                        HalfSpace::im_le(0.5),
                        outside(c(1.0, 0.0), 1.0),
                        outside(c(-1.0, 0.0), 1.0),
                    ],
                ),
                within(
                    &k,
                    vec![HalfSpace::re_ge(-0.5), inside(c(-1.0, 1.0), 1.0)],
                ),
                within(
                    &k,
                    vec![HalfSpace::re_le(-0.5), inside(c(-1.0, 1.0), 1.0)],
                ),
                within(
                    &k,
                    vec![
                        HalfSpace::re_le(-0.5),
                        outside(c(-1.0, 1.0), 1.0),
                        outside(c(-1.0, -1.0), 1.0),
                    ],
                ),
            ];
            let mirrored: Vec<Region> = base[1..5].iter().map(Region::conj).collect();
            base.into_iter().chain(mirrored).collect()
        }
    }
}
