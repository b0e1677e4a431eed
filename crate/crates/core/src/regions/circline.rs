//! Closed half-spaces bounded by circlines.
//!
//! A half-space is `{z : A|z|² + 2 Re(conj(B) z) + C ≤ 0}` with real `A`, `C`
//! and complex `B`. The coefficients form the Hermitian matrix
//! `H = [[A, B], [conj(B), C]]`, so `f(z) = v* H v` for `v = (z, 1)` and a
//! Möbius map `M` acts by congruence `H ↦ N* H N` with `N = adj(M)`.

use num_complex::Complex64;
use std::fmt;

const ZERO_A: f64 = 1e-12;

/// Which side of the circline the half-space keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `f(z) ≤ 0`
    Le,
    /// `f(z) ≥ 0`
    Ge,
}

/// Boundary geometry of a half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `Re(conj(n) z) = d` with `|n| = 1`.
    Line { n: Complex64, d: f64 },
    Circle { center: Complex64, radius: f64 },
    /// No boundary: the half-space is the whole plane or empty.
    Trivial { everything: bool },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    a: f64,
    b: Complex64,
    c: f64,
    shape: Shape,
}

impl HalfSpace {
    /// The half-space `{A|z|² + 2 Re(conj(B) z) + C ≤ 0}` (or `≥ 0`).
    pub fn new(a: f64, b: Complex64, c: f64, side: Side) -> Self {
        let (a, b, c) = match side {
            Side::Le => (a, b, c),
            Side::Ge => (-a, -b, -c),
        };
        let scale = a.abs().max(b.re.abs()).max(b.im.abs()).max(c.abs());
        assert!(scale > 0.0 && scale.is_finite(), "degenerate circline");
        let snap = |x: f64| if x.abs() < 1e-14 { 0.0 } else { x };
        let a = snap(a / scale);
        let b = Complex64::new(snap(b.re / scale), snap(b.im / scale));
        let c = snap(c / scale);
        let a = if a.abs() < ZERO_A { 0.0 } else { a };
        HalfSpace {
            a,
            b,
            c,
            shape: shape_of(a, b, c),
        }
    }

    /// Closed disk `|z - center| ≤ radius`.
    pub fn disk(center: Complex64, radius: f64) -> Self {
        HalfSpace::new(1.0, -center, center.norm_sqr() - radius * radius, Side::Le)
    }

    /// Closed exterior `|z - center| ≥ radius`.
    pub fn outside(center: Complex64, radius: f64) -> Self {
        HalfSpace::new(1.0, -center, center.norm_sqr() - radius * radius, Side::Ge)
    }

    /// Closed half-plane `Re(conj(n) z) ≤ d`, i.e. `n·z ≤ d` as vectors.
    pub fn half_plane(n: Complex64, d: f64) -> Self {
        HalfSpace::new(0.0, n * 0.5, -d, Side::Le)
    }

    pub fn re_le(x: f64) -> Self {
        Self::half_plane(Complex64::new(1.0, 0.0), x)
    }

    pub fn re_ge(x: f64) -> Self {
        Self::half_plane(Complex64::new(-1.0, 0.0), -x)
    }

    pub fn im_le(y: f64) -> Self {
        Self::half_plane(Complex64::new(0.0, 1.0), y)
    }

    pub fn im_ge(y: f64) -> Self {
        Self::half_plane(Complex64::new(0.0, -1.0), -y)
    }

    pub fn coefficients(&self) -> (f64, Complex64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `f(z)`; the half-space is `f ≤ 0`.
    #[inline]
    pub fn value(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.re * z.re + self.b.im * z.im) + self.c
    }

    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        self.value(z) <= 0.0
    }

    /// Euclidean distance from `z` to the boundary circline.
    #[inline]
    pub fn distance(&self, z: Complex64) -> f64 {
        match self.shape {
            Shape::Line { n, d } => (n.re * z.re + n.im * z.im - d).abs(),
            Shape::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            Shape::Trivial { .. } => f64::INFINITY,
        }
    }

    /// Membership together with the boundary distance.
    #[inline]
    pub fn probe(&self, z: Complex64) -> (bool, f64) {
        match self.shape {
            Shape::Line { n, d } => {
                let s = n.re * z.re + n.im * z.im - d;
                (s <= 0.0, s.abs())
            }
            Shape::Circle { center, radius } => {
                let r = (z - center).norm();
                (self.contains(z), (r - radius).abs())
            }
            Shape::Trivial { everything } => (everything, f64::INFINITY),
        }
    }

    pub fn complement(&self) -> Self {
        HalfSpace::new(self.a, self.b, self.c, Side::Ge)
    }

    /// Image under `z ↦ (p z + q) / (r z + s)`.
    pub fn mobius(&self, p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> Self {
        // z = N w with N = [[s, -q], [-r, p]]; H' = N* H N.
        let n = [[s, -q], [-r, p]];
        let h = [
            [Complex64::new(self.a, 0.0), self.b],
            [self.b.conj(), Complex64::new(self.c, 0.0)],
        ];
        let mut hn = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                hn[i][j] = h[i][0] * n[0][j] + h[i][1] * n[1][j];
            }
        }
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = n[0][i].conj() * hn[0][j] + n[1][i].conj() * hn[1][j];
            }
        }
        HalfSpace::new(out[0][0].re, out[0][1], out[1][1].re, Side::Le)
    }

    /// Image under `z ↦ ζ conj(z)` for `|ζ| = 1`.
    pub fn reflect(&self, zeta: Complex64) -> Self {
        // z = ζ conj(w) and Re(conj(B) ζ conj(w)) = Re(B conj(ζ) w), so B' = conj(B) ζ.
        HalfSpace::new(self.a, self.b.conj() * zeta, self.c, Side::Le)
    }

    /// Same half-space up to coefficient noise.
    pub fn approx_eq(&self, other: &HalfSpace, tol: f64) -> bool {
        (self.a - other.a).abs() < tol
            && (self.b - other.b).norm() < tol
            && (self.c - other.c).abs() < tol
    }

    /// Same boundary circline, either side.
    pub fn same_circline(&self, other: &HalfSpace, tol: f64) -> bool {
        self.approx_eq(other, tol) || self.approx_eq(&other.complement(), tol)
    }

    /// Points of the boundary parameterised by `t` (arc length on lines,
    /// angle on circles).
    pub fn boundary_point(&self, t: f64) -> Option<Complex64> {
        match self.shape {
            Shape::Line { n, d } => Some(n * d + n * Complex64::new(0.0, 1.0) * t),
            Shape::Circle { center, radius } => {
                Some(center + Complex64::from_polar(radius, t))
            }
            Shape::Trivial { .. } => None,
        }
    }

    /// Parameter of a boundary point, inverse of [`Self::boundary_point`].
    pub fn parameter(&self, z: Complex64) -> Option<f64> {
        match self.shape {
            Shape::Line { n, .. } => {
                let dir = n * Complex64::new(0.0, 1.0);
                Some(dir.re * z.re + dir.im * z.im)
            }
            Shape::Circle { center, .. } => Some((z - center).arg()),
            Shape::Trivial { .. } => None,
        }
    }

    /// Unit normal of the boundary at a boundary point.
    pub fn normal_at(&self, z: Complex64) -> Option<Complex64> {
        match self.shape {
            Shape::Line { n, .. } => Some(n),
            Shape::Circle { center, .. } => {
                let v = z - center;
                let len = v.norm();
                (len > 0.0).then(|| v / len)
            }
            Shape::Trivial { .. } => None,
        }
    }
}

fn shape_of(a: f64, b: Complex64, c: f64) -> Shape {
    if a == 0.0 {
        let len = b.norm();
        if len < 1e-13 {
            return Shape::Trivial {
                everything: c <= 0.0,
            };
        }
        // 2 Re(conj(B) z) + C ≤ 0  ⇔  Re(conj(n) z) ≤ -C / (2|B|).
        Shape::Line {
            n: b / len,
            d: -c / (2.0 * len),
        }
    } else {
        let r2 = (b.norm_sqr() - a * c) / (a * a);
        if r2 <= 0.0 {
            return Shape::Trivial { everything: a < 0.0 };
        }
        Shape::Circle {
            center: -b / a,
            radius: r2.sqrt(),
        }
    }
}

/// Intersection points of two circline boundaries (tangencies give one point).
pub fn intersections(h1: &HalfSpace, h2: &HalfSpace) -> Vec<Complex64> {
    const TOL: f64 = 1e-10;
    match (h1.shape, h2.shape) {
        (Shape::Trivial { .. }, _) | (_, Shape::Trivial { .. }) => vec![],
        (Shape::Line { n: n1, d: d1 }, Shape::Line { n: n2, d: d2 }) => {
            let det = n1.re * n2.im - n1.im * n2.re;
            if det.abs() < TOL {
                return vec![];
            }
            let x = (d1 * n2.im - d2 * n1.im) / det;
            let y = (n1.re * d2 - n2.re * d1) / det;
            vec![Complex64::new(x, y)]
        }
        (Shape::Line { n, d }, Shape::Circle { center, radius })
        | (Shape::Circle { center, radius }, Shape::Line { n, d }) => {
            let dist = n.re * center.re + n.im * center.im - d;
            let foot = center - n * dist;
            let h2 = radius * radius - dist * dist;
            if h2 < -TOL * radius.max(1.0) {
                return vec![];
            }
            if h2 <= TOL * radius.max(1.0) {
                return vec![foot];
            }
            let h = h2.sqrt();
            let dir = n * Complex64::new(0.0, 1.0);
            vec![foot + dir * h, foot - dir * h]
        }
        (
            Shape::Circle {
                center: c1,
                radius: r1,
            },
            Shape::Circle {
                center: c2,
                radius: r2,
            },
        ) => {
            let v = c2 - c1;
            let dd = v.norm();
            if dd < TOL {
                return vec![];
            }
            let tol = TOL * (r1 + r2).max(1.0);
            if dd > r1 + r2 + tol || dd < (r1 - r2).abs() - tol {
                return vec![];
            }
            let x = (dd * dd + r1 * r1 - r2 * r2) / (2.0 * dd);
            let u = v / dd;
            let h2 = r1 * r1 - x * x;
            if h2 <= tol * r1.max(1.0) {
                return vec![c1 + u * x];
            }
            let h = h2.sqrt();
            let perp = u * Complex64::new(0.0, 1.0);
            vec![c1 + u * x + perp * h, c1 + u * x - perp * h]
        }
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.16e} {:.16e} {:.16e} {:.16e} le",
            self.a, self.b.re, self.b.im, self.c
        )
    }
}
