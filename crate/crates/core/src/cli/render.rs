//! SVG panels of a point cloud in S-coordinates.

use crate::algorithms::spec;
use crate::natural_ext::PointCloud;
use crate::regions::{HalfSpace, Membership, Region, Shape, Verdict};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt::Write;

/// Half-width of the square shown in each panel.
const VIEW: f64 = 1.05;
const MARGIN: f64 = 8.0;
const LABEL: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Side of one panel in pixels.
    pub panel: usize,
    /// Panels per row; 0 picks a near-square grid.
    pub columns: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            panel: 240,
            columns: 0,
        }
    }
}

/// One panel per piece. Points are binned to the pixel grid of the panel and
/// drawn as runs of pixels, so the file size does not grow with the cloud.
/// `outlines[i]`, when present, is drawn over panel `i`.
pub fn render_svg(cloud: &PointCloud, outlines: &[Region], opts: &RenderOptions) -> String {
    let n_pieces = cloud
        .records
        .iter()
        .map(|&(i, _)| i + 1)
        .chain([outlines.len(), spec(cloud.algorithm).partition.len()])
        .max()
        .unwrap_or(0);
    let cols = match opts.columns {
        0 => (n_pieces as f64).sqrt().ceil().max(1.0) as usize,
        c => c,
    };
    let rows = n_pieces.div_ceil(cols).max(1);
    let side = opts.panel as f64;
    let cell_w = side + 2.0 * MARGIN;
    let cell_h = side + 2.0 * MARGIN + LABEL;
    let width = cols as f64 * cell_w;
    let height = rows as f64 * cell_h;

    let px = opts.panel.max(1);
    let mut hits = vec![vec![false; px * px]; n_pieces];
    for &(i, v) in &cloud.records {
        if let Some((x, y)) = to_pixel(v, px) {
            hits[i][y * px + x] = true;
        }
    }

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for (i, hits) in hits.iter().enumerate() {
        let ox = (i % cols) as f64 * cell_w + MARGIN;
        let oy = (i / cols) as f64 * cell_h + MARGIN + LABEL;
        writeln!(svg, r#"<g id="piece-{}" transform="translate({ox},{oy})">"#, i + 1).unwrap();
        writeln!(
            svg,
            r#"<text x="0" y="-4" font-family="sans-serif" font-size="12">{} piece {}</text>"#,
            cloud.algorithm,
            i + 1
        )
        .unwrap();
        writeln!(
            svg,
            r##"<rect width="{side}" height="{side}" fill="none" stroke="#999" stroke-width="0.5"/>"##
        )
        .unwrap();
        let unit = side / (2.0 * VIEW);
        writeln!(
            svg,
            r##"<circle cx="{c}" cy="{c}" r="{unit}" fill="none" stroke="#ccc" stroke-width="0.5"/>"##,
            c = side / 2.0
        )
        .unwrap();
        let scale = side / px as f64;
        for (y, row) in hits.chunks(px).enumerate() {
            let mut x = 0;
            while x < px {
                if !row[x] {
                    x += 1;
                    continue;
                }
                let start = x;
                while x < px && row[x] {
                    x += 1;
                }
                writeln!(
                    svg,
                    r#"<rect x="{}" y="{}" width="{}" height="{scale}" fill="black"/>"#,
                    start as f64 * scale,
                    y as f64 * scale,
                    (x - start) as f64 * scale
                )
                .unwrap();
            }
        }
        if let Some(r) = outlines.get(i) {
            for path in outline(r) {
                let mut d = String::new();
                for (k, z) in path.iter().enumerate() {
                    let (x, y) = to_panel(*z, side);
                    write!(d, "{}{x:.2},{y:.2}", if k == 0 { "M" } else { " L" }).unwrap();
                }
                writeln!(
                    svg,
                    r##"<path d="{d}" fill="none" stroke="#8e44ad" stroke-width="1.2"/>"##
                )
                .unwrap();
            }
        }
        writeln!(svg, "</g>").unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

fn to_panel(z: Complex64, side: f64) -> (f64, f64) {
    let x = (z.re + VIEW) / (2.0 * VIEW) * side;
    let y = (VIEW - z.im) / (2.0 * VIEW) * side;
    (x, y)
}

fn to_pixel(z: Complex64, px: usize) -> Option<(usize, usize)> {
    let (x, y) = to_panel(z, px as f64);
    if !(0.0..px as f64).contains(&x) || !(0.0..px as f64).contains(&y) {
        return None;
    }
    Some((x as usize, y as usize))
}

/// Boundary of each cell, as polylines clipped to the view.
pub fn outline(r: &Region) -> Vec<Vec<Complex64>> {
    let mut paths = Vec::new();
    for cell in r.cells() {
        let cell_region = Region::from_cells(vec![cell.clone()]);
        for h in cell.constraints() {
            let mut current = Vec::new();
            for z in boundary_samples(h) {
                let keep = z.re.abs() <= VIEW
                    && z.im.abs() <= VIEW
                    && cell_region.classify(z, 1e-9) != Verdict::Out;
                if keep {
                    current.push(z);
                } else if current.len() > 1 {
                    paths.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
            }
            if current.len() > 1 {
                paths.push(current);
            }
        }
    }
    paths
}

fn boundary_samples(h: &HalfSpace) -> Vec<Complex64> {
    let (lo, hi, steps) = match h.shape() {
        Shape::Circle { .. } => (0.0, TAU, 720),
        Shape::Line { .. } => (-2.0 * VIEW, 2.0 * VIEW, 600),
        Shape::Trivial { .. } => return Vec::new(),
    };
    (0..=steps)
        .filter_map(|k| h.boundary_point(lo + (hi - lo) * k as f64 / steps as f64))
        .collect()
}
