//! Finite unions of finite intersections of circline half-spaces.

use super::circline::{intersections, HalfSpace, Shape, Side};
use super::membership::{Membership, Rect, Verdict};
use crate::arith::{GaussianInt, MobiusMap};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::OnceLock;

const SAME_TOL: f64 = 1e-9;
const STRICT: f64 = 1e-9;
const FAR: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bounds {
    Empty,
    Bounded(Rect),
    Unbounded,
}

/// Intersection of half-spaces; no constraints means the whole plane.
#[derive(Debug, Clone)]
pub struct Cell {
    constraints: Vec<HalfSpace>,
    bounds: OnceLock<Bounds>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.constraints == other.constraints
    }
}

impl Cell {
    pub fn new(constraints: Vec<HalfSpace>) -> Self {
        let mut out: Vec<HalfSpace> = Vec::with_capacity(constraints.len());
        for h in constraints {
            if !out.iter().any(|o| o.approx_eq(&h, SAME_TOL)) {
                out.push(h);
            }
        }
        Cell {
            constraints: out,
            bounds: OnceLock::new(),
        }
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        self.constraints.iter().all(|h| h.contains(z))
    }

    fn strictly_contains(&self, z: Complex64) -> bool {
        self.constraints
            .iter()
            .all(|h| h.contains(z) && h.distance(z) > STRICT)
    }

    /// A point at positive distance inside the cell, if its interior is
    /// nonempty. Candidates are offsets from every arc of every boundary
    /// circline between consecutive crossing points.
    pub fn interior_witness(&self) -> Option<Complex64> {
        let mut active: Vec<&HalfSpace> = Vec::new();
        for h in &self.constraints {
            match h.shape() {
                Shape::Trivial { everything: false } => return None,
                Shape::Trivial { everything: true } => {}
                _ => active.push(h),
            }
        }
        if active.is_empty() {
            return Some(Complex64::new(0.0, 0.0));
        }
        for (i, h) in active.iter().enumerate() {
            for g in &active[i + 1..] {
                if h.approx_eq(&g.complement(), SAME_TOL) {
                    return None;
                }
            }
        }
        for (i, h) in active.iter().enumerate() {
            let mut params: Vec<f64> = Vec::new();
            for (j, g) in active.iter().enumerate() {
                if i == j || h.same_circline(g, SAME_TOL) {
                    continue;
                }
                for p in intersections(h, g) {
                    if let Some(t) = h.parameter(p) {
                        params.push(t);
                    }
                }
            }
            params.sort_by(f64::total_cmp);
            params.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            for t in arc_samples(h, &params) {
                let p = h.boundary_point(t).expect("nontrivial");
                let Some(n) = h.normal_at(p) else { continue };
                for delta in [1e-6, 1e-4, 1e-2] {
                    for s in [-1.0, 1.0] {
                        let q = p + n * (s * delta);
                        if self.strictly_contains(q) {
                            return Some(q);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn has_interior(&self) -> bool {
        self.interior_witness().is_some()
    }

    pub fn bounds(&self) -> Bounds {
        *self.bounds.get_or_init(|| self.compute_bounds())
    }

    fn compute_bounds(&self) -> Bounds {
        if !self.has_interior() {
            return Bounds::Empty;
        }
        let hs = &self.constraints;
        let loose = |z: Complex64| hs.iter().all(|h| h.value(z) <= 1e-9 || h.distance(z) < 1e-9);
        let mut far = Vec::new();
        for k in 0..64 {
            far.push(Complex64::from_polar(FAR, TAU * k as f64 / 64.0));
        }
        for h in hs {
            if let Shape::Line { n, .. } = h.shape() {
                for t in [-FAR, FAR] {
                    let p = h.boundary_point(t).expect("line");
                    far.push(p + n * 1e-3);
                    far.push(p - n * 1e-3);
                }
            }
        }
        if far.iter().any(|&z| self.contains(z)) {
            return Bounds::Unbounded;
        }
        let mut pts: Vec<Complex64> = Vec::new();
        for (i, h) in hs.iter().enumerate() {
            if let Shape::Circle { center, radius } = h.shape() {
                for u in [1.0, -1.0] {
                    pts.push(center + Complex64::new(u * radius, 0.0));
                    pts.push(center + Complex64::new(0.0, u * radius));
                }
            }
            for g in &hs[i + 1..] {
                pts.extend(intersections(h, g));
            }
        }
        let mut rect: Option<Rect> = None;
        for p in pts.into_iter().filter(|&p| loose(p)) {
            rect = Some(match rect {
                None => Rect::new(p.re, p.re, p.im, p.im),
                Some(r) => r.include(p),
            });
        }
        match rect {
            Some(r) => Bounds::Bounded(r),
            None => Bounds::Unbounded,
        }
    }

    fn map(&self, f: impl Fn(&HalfSpace) -> HalfSpace) -> Cell {
        Cell::new(self.constraints.iter().map(f).collect())
    }

    /// Drops constraints implied by the others.
    fn prune_redundant(&self) -> Cell {
        let mut keep = self.constraints.clone();
        let mut i = 0;
        while i < keep.len() {
            let mut probe: Vec<HalfSpace> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| *h)
                .collect();
            probe.push(keep[i].complement());
            if Cell::new(probe).has_interior() {
                i += 1;
            } else {
                keep.remove(i);
            }
        }
        Cell::new(keep)
    }
}

/// Sample parameters along one boundary circline: interior positions of
/// each arc cut out by the crossing parameters.
fn arc_samples(h: &HalfSpace, params: &[f64]) -> Vec<f64> {
    let fractions = [0.5, 0.25, 0.75];
    let mut out = Vec::new();
    match h.shape() {
        Shape::Circle { .. } => {
            if params.is_empty() {
                return vec![0.0, PI / 2.0, PI, -PI / 2.0, PI / 4.0];
            }
            for k in 0..params.len() {
                let a = params[k];
                let b = if k + 1 < params.len() {
                    params[k + 1]
                } else {
                    params[0] + TAU
                };
                if b - a < 1e-12 {
                    continue;
                }
                out.extend(fractions.iter().map(|f| a + f * (b - a)));
            }
        }
        Shape::Line { .. } => {
            if params.is_empty() {
                return vec![0.0, -1.0, 1.0];
            }
            for w in params.windows(2) {
                out.extend(fractions.iter().map(|f| w[0] + f * (w[1] - w[0])));
            }
            let lo = params[0];
            let hi = params[params.len() - 1];
            out.extend([lo - 1.0, hi + 1.0, lo - 10.0, hi + 10.0]);
        }
        Shape::Trivial { .. } => {}
    }
    out
}

/// A closed region: union of [`Cell`]s. No cells means the empty set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Region {
    cells: Vec<Cell>,
}

impl Region {
    pub fn empty() -> Self {
        Region { cells: vec![] }
    }

    pub fn everything() -> Self {
        Region {
            cells: vec![Cell::new(vec![])],
        }
    }

    pub fn from_cells(cells: Vec<Cell>) -> Self {
        Region { cells }
    }

    /// A single cell given by its constraints.
    pub fn cell(constraints: Vec<HalfSpace>) -> Self {
        Region {
            cells: vec![Cell::new(constraints)],
        }
    }

    pub fn half_space(h: HalfSpace) -> Self {
        Region::cell(vec![h])
    }

    /// Closed disk `|z - center| ≤ radius`.
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Region::half_space(HalfSpace::disk(center, radius))
    }

    /// Closed unit disk.
    pub fn unit_disk() -> Self {
        Region::disk(Complex64::new(0.0, 0.0), 1.0)
    }

    /// Axis-parallel closed rectangle.
    pub fn rect(r: Rect) -> Self {
        Region::cell(vec![
            HalfSpace::re_ge(r.x0),
            HalfSpace::re_le(r.x1),
            HalfSpace::im_ge(r.y0),
            HalfSpace::im_le(r.y1),
        ])
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        !self.has_interior()
    }

    /// Exact sign evaluation, boundary counted as inside.
    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        self.cells.iter().any(|c| c.contains(z))
    }

    pub fn interior_witness(&self) -> Option<Complex64> {
        self.cells.iter().find_map(Cell::interior_witness)
    }

    pub fn has_interior(&self) -> bool {
        self.interior_witness().is_some()
    }

    /// Bounding rectangle, `None` when empty or unbounded.
    pub fn bounding_box(&self) -> Option<Rect> {
        let mut out: Option<Rect> = None;
        for c in &self.cells {
            match c.bounds() {
                Bounds::Empty => {}
                Bounds::Unbounded => return None,
                Bounds::Bounded(r) => out = Some(out.map_or(r, |o| o.union(&r))),
            }
        }
        out
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Region { cells }
    }

    pub fn union_all<'a>(regions: impl IntoIterator<Item = &'a Region>) -> Region {
        let mut cells = Vec::new();
        for r in regions {
            cells.extend(r.cells.iter().cloned());
        }
        Region { cells }
    }

    /// Intersection; cells with empty interior are dropped.
    pub fn intersect(&self, other: &Region) -> Region {
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let mut hs = a.constraints.clone();
                hs.extend(b.constraints.iter().copied());
                let c = Cell::new(hs);
                if c.has_interior() {
                    cells.push(c);
                }
            }
        }
        Region { cells }
    }

    /// Closure of the complement.
    pub fn complement(&self) -> Region {
        let mut acc = Region::everything();
        for c in &self.cells {
            let negated = Region {
                cells: c
                    .constraints
                    .iter()
                    .map(|h| Cell::new(vec![h.complement()]))
                    .collect(),
            };
            acc = acc.intersect(&negated).simplify();
            if acc.cells.is_empty() {
                break;
            }
        }
        acc
    }

    pub fn difference(&self, other: &Region) -> Region {
        self.intersect(&other.complement())
    }

    /// Drops empty cells and redundant constraints, merges duplicates.
    pub fn simplify(&self) -> Region {
        let mut cells: Vec<Cell> = Vec::new();
        for c in &self.cells {
            if !c.has_interior() {
                continue;
            }
            let c = c.prune_redundant();
            let dup = cells.iter().any(|o| {
                o.constraints.len() == c.constraints.len()
                    && c.constraints
                        .iter()
                        .all(|h| o.constraints.iter().any(|g| g.approx_eq(h, SAME_TOL)))
            });
            if !dup {
                cells.push(c);
            }
        }
        Region { cells }
    }

    /// Image under a Möbius map with complex coefficients.
    pub fn mobius(&self, p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> Region {
        Region {
            cells: self.cells.iter().map(|c| c.map(|h| h.mobius(p, q, r, s))).collect(),
        }
    }

    /// Image under a Möbius map over ℤ[i].
    pub fn transform(&self, m: &MobiusMap) -> Region {
        self.mobius(m.p.to_c64(), m.q.to_c64(), m.r.to_c64(), m.s.to_c64())
    }

    /// Image under `z ↦ -1/z`.
    pub fn invert(&self) -> Region {
        self.transform(&MobiusMap::S)
    }

    pub fn translate(&self, a: Complex64) -> Region {
        let one = Complex64::new(1.0, 0.0);
        self.mobius(one, a, Complex64::new(0.0, 0.0), one)
    }

    pub fn translate_by(&self, a: GaussianInt) -> Region {
        self.translate(a.to_c64())
    }

    /// Image under `z ↦ ζ z`.
    pub fn rotate(&self, zeta: Complex64) -> Region {
        let zero = Complex64::new(0.0, 0.0);
        self.mobius(zeta, zero, zero, Complex64::new(1.0, 0.0))
    }

    /// Image under `z ↦ ζ conj(z)`.
    pub fn reflect(&self, zeta: Complex64) -> Region {
        Region {
            cells: self.cells.iter().map(|c| c.map(|h| h.reflect(zeta))).collect(),
        }
    }

    /// Image under `z ↦ conj(z)`.
    pub fn conj(&self) -> Region {
        self.reflect(Complex64::new(1.0, 0.0))
    }

    /// Text form: a `region` header, then per cell a `cell` line followed by
    /// one `A B_re B_im C side` line per half-space.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Region> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let (n0, head) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n_cells: usize = head
            .strip_prefix("region")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| parse_err(n0, "expected `region <count>`"))?;
        let mut cells = Vec::with_capacity(n_cells);
        for _ in 0..n_cells {
            let (ln, head) = lines.next().ok_or_else(|| parse_err(n0, "missing cell"))?;
            let n_hs: usize = head
                .strip_prefix("cell")
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| parse_err(ln, "expected `cell <count>`"))?;
            let mut hs = Vec::with_capacity(n_hs);
            for _ in 0..n_hs {
                let (ln, row) = lines
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing half-space"))?;
                let fields: Vec<&str> = row.split_whitespace().collect();
                if fields.len() != 5 {
                    return Err(parse_err(ln, "expected `A B_re B_im C side`"));
                }
                let mut nums = [0.0; 4];
                for (k, f) in fields[..4].iter().enumerate() {
                    nums[k] = f.parse().map_err(|_| parse_err(ln, "bad number"))?;
                }
                let side = match fields[4] {
                    "le" => Side::Le,
                    "ge" => Side::Ge,
                    _ => return Err(parse_err(ln, "side must be `le` or `ge`")),
                };
                hs.push(HalfSpace::new(
                    nums[0],
                    Complex64::new(nums[1], nums[2]),
                    nums[3],
                    side,
                ));
            }
            cells.push(Cell::new(hs));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        Ok(Region { cells })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "region {}", self.cells.len())?;
        for c in &self.cells {
            writeln!(f, "cell {}", c.constraints.len())?;
            for h in &c.constraints {
                writeln!(f, "{h}")?;
            }
        }
        Ok(())
    }
}

impl Membership for Region {
    #[inline]
    fn classify(&self, z: Complex64, eps: f64) -> Verdict {
        let mut inside = false;
        for c in &self.cells {
            if let Bounds::Bounded(r) = c.bounds() {
                if !r.expand(eps).contains(z) {
                    continue;
                }
            } else if c.bounds() == Bounds::Empty {
                continue;
            }
            let mut all = true;
            for h in &c.constraints {
                let (ok, d) = h.probe(z);
                if d < eps {
                    return Verdict::NearBoundary;
                }
                all &= ok;
            }
            inside |= all;
        }
        if inside {
            Verdict::In
        } else {
            Verdict::Out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Region {
        Region::rect(Rect::new(-0.5, 0.5, -0.5, 0.5))
    }

    #[test]
    fn classify_unit_disk() {
        let d = Region::unit_disk();
        assert_eq!(d.classify(c(0.0, 0.0), 1e-9), Verdict::In);
        assert_eq!(d.classify(c(2.0, 0.0), 1e-9), Verdict::Out);
        assert_eq!(d.classify(c(1.0, 0.0), 1e-9), Verdict::NearBoundary);
    }

    #[test]
    fn interior_detection() {
        assert!(Region::unit_disk().has_interior());
        let lens = Region::cell(vec![
            HalfSpace::disk(c(0.0, 1.0), 1.0),
            HalfSpace::disk(c(0.0, -1.0), 1.0),
        ]);
        assert!(!lens.has_interior());
        let lens = Region::cell(vec![
            HalfSpace::disk(c(0.0, 0.9), 1.0),
            HalfSpace::disk(c(0.0, -0.9), 1.0),
        ]);
        assert!(lens.has_interior());
        let sliver = Region::cell(vec![HalfSpace::re_le(0.0), HalfSpace::re_ge(0.0)]);
        assert!(!sliver.has_interior());
        assert!(Region::everything().has_interior());
        assert!(!Region::empty().has_interior());
    }

    #[test]
    fn complement_of_square() {
        let sq = square();
        let comp = sq.complement();
        assert!(comp.contains(c(0.7, 0.0)));
        assert!(!comp.contains(c(0.1, 0.1)));
        let back = comp.complement();
        assert!(back.contains(c(0.4, -0.4)));
        assert!(!back.contains(c(0.6, 0.0)));
    }

    #[test]
    fn bounds_of_cells() {
        assert_eq!(
            square().bounding_box(),
            Some(Rect::new(-0.5, 0.5, -0.5, 0.5))
        );
        let k = Region::cell(vec![HalfSpace::re_le(0.0), HalfSpace::disk(c(0.0, 0.0), 1.0)]);
        let b = k.bounding_box().unwrap();
        assert!((b.x0 + 1.0).abs() < 1e-12 && b.x1.abs() < 1e-12);
        assert!((b.y1 - 1.0).abs() < 1e-12);
        assert!(Region::half_space(HalfSpace::re_le(0.0)).bounding_box().is_none());
        let strip = Region::cell(vec![HalfSpace::re_le(1.0), HalfSpace::re_ge(0.0)]);
        assert!(strip.bounding_box().is_none());
    }

    #[test]
    fn transform_half_plane_by_translation() {
        let r = Region::half_space(HalfSpace::re_le(0.0)).translate_by(GaussianInt::ONE);
        assert!(r.contains(c(0.9, 5.0)));
        assert!(!r.contains(c(1.1, 0.0)));
    }

    #[test]
    fn inversion_of_disk() {
        let img = Region::unit_disk().invert();
        assert!(img.contains(c(0.0, 3.0)));
        assert!(!img.contains(c(0.3, 0.1)));
    }

    #[test]
    fn simplify_drops_redundant_constraints() {
        let r = Region::cell(vec![
            HalfSpace::disk(c(0.0, 0.0), 1.0),
            HalfSpace::re_le(5.0),
            HalfSpace::disk(c(0.0, 0.0), 2.0),
        ])
        .simplify();
        assert_eq!(r.cells().len(), 1);
        assert_eq!(r.cells()[0].constraints().len(), 1);
    }

    #[test]
    fn text_round_trip() {
        let r = Region::cell(vec![
            HalfSpace::outside(c(-1.0, 1.0), 1.0),
            HalfSpace::re_ge(-0.5),
        ])
        .union(&Region::disk(c(1.0 / 3.0, 0.1), 0.7));
        let back = Region::from_text(&r.to_text()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn parse_error_names_line() {
        let err = Region::from_text("region 1\ncell 1\n1 2 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }
}
