//! Decompositions `S(K_i) = ⋃ (a + ⋃_{j∈J} K_j)` over digit families.

use crate::algorithms::{disk, Isometry};
use crate::arith::GaussianInt;
use crate::regions::{Membership, Region, Verdict};
use num_complex::Complex64;
use std::fmt;

/// A set of Gaussian integers.
#[derive(Debug, Clone, PartialEq)]
pub enum DigitSet {
    Single(GaussianInt),
    /// `{base + n·step : n ≥ 0}`.
    Ray { base: GaussianInt, step: GaussianInt },
    /// `{base + m·s1 + n·s2 : m, n ≥ 0}` with `s1, s2` independent.
    Cone {
        base: GaussianInt,
        s1: GaussianInt,
        s2: GaussianInt,
    },
    /// The sector `E_j` of the disk algorithm.
    Sector(usize),
    /// Every Gaussian integer.
    All,
}

fn exact_div(n: i64, d: i64) -> Option<i64> {
    (d != 0 && n % d == 0).then(|| n / d)
}

impl DigitSet {
    pub fn contains(&self, a: GaussianInt) -> bool {
        match *self {
            DigitSet::Single(b) => a == b,
            DigitSet::Ray { base, step } => {
                let d = a - base;
                let n = if step.re != 0 {
                    exact_div(d.re, step.re)
                } else {
                    exact_div(d.im, step.im)
                };
                matches!(n, Some(n) if n >= 0 && step * n == d)
            }
            DigitSet::Cone { base, s1, s2 } => {
                let d = a - base;
                let det = s1.re * s2.im - s1.im * s2.re;
                let m = exact_div(d.re * s2.im - d.im * s2.re, det);
                let n = exact_div(s1.re * d.im - s1.im * d.re, det);
                matches!((m, n), (Some(m), Some(n)) if m >= 0 && n >= 0)
            }
            DigitSet::Sector(j) => disk::sector(a) == Some(j),
            DigitSet::All => true,
        }
    }

    /// Image under an isometry fixing the lattice.
    pub fn map(&self, g: &Isometry) -> DigitSet {
        match *self {
            DigitSet::Single(a) => DigitSet::Single(g.apply(a)),
            DigitSet::Ray { base, step } => DigitSet::Ray {
                base: g.apply(base),
                step: g.apply(step),
            },
            DigitSet::Cone { base, s1, s2 } => DigitSet::Cone {
                base: g.apply(base),
                s1: g.apply(s1),
                s2: g.apply(s2),
            },
            DigitSet::Sector(_) | DigitSet::All => {
                panic!("sector and full families are not mapped by symmetry")
            }
        }
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitSet::Single(a) => write!(f, "{a}"),
            DigitSet::Ray { base, step } => write!(f, "{base} + n({step}), n≥0"),
            DigitSet::Cone { base, s1, s2 } => {
                write!(f, "{base} + m({s1}) + n({s2}), m,n≥0")
            }
            DigitSet::Sector(j) => write!(f, "E{j}"),
            DigitSet::All => f.write_str("ℤ[i]"),
        }
    }
}

/// Restriction of a family to digits `a` with `|a|² > min_norm` and `a`
/// strictly inside `region`.
#[derive(Debug, Clone)]
pub struct Clip {
    pub region: Region,
    pub min_norm: i64,
}

/// `⋃_{a ∈ digits} (a + ⋃_{j ∈ pieces} K_j)`; pieces are 0-based.
#[derive(Debug, Clone)]
pub struct Term {
    pub digits: DigitSet,
    pub clip: Option<Clip>,
    pub pieces: Vec<usize>,
}

impl Term {
    pub fn new(digits: DigitSet, pieces: Vec<usize>) -> Self {
        Term {
            digits,
            clip: None,
            pieces,
        }
    }

    pub fn clipped(mut self, clip: Clip) -> Self {
        self.clip = Some(clip);
        self
    }

    pub fn has_digit(&self, a: GaussianInt) -> bool {
        if !self.digits.contains(a) {
            return false;
        }
        match &self.clip {
            None => true,
            Some(c) => a.norm() > c.min_norm && c.region.classify(a.to_c64(), 0.0) == Verdict::In,
        }
    }

    fn map(&self, g: &Isometry, perm: &[usize]) -> Term {
        assert!(self.clip.is_none(), "clipped families are not mapped by symmetry");
        let mut pieces: Vec<usize> = self.pieces.iter().map(|&j| perm[j]).collect();
        pieces.sort_unstable();
        Term::new(self.digits.map(g), pieces)
    }
}

fn fmt_pieces(f: &mut fmt::Formatter<'_>, pieces: &[usize]) -> fmt::Result {
    let names: Vec<String> = pieces.iter().map(|j| format!("K{}", j + 1)).collect();
    write!(f, "{{{}}}", names.join(","))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.digits)?;
        if let Some(c) = &self.clip {
            write!(f, ", |a|² > {}, a ∈ clip region", c.min_norm)?;
        }
        write!(f, "] + ")?;
        fmt_pieces(f, &self.pieces)
    }
}

/// Decomposition of `S(K_piece)`.
#[derive(Debug, Clone)]
pub struct UnionFormula {
    pub piece: usize,
    pub terms: Vec<Term>,
}

/// One digit of a formula together with its pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub digit: GaussianInt,
    pub pieces: Vec<usize>,
    /// Index of the first term contributing the digit.
    pub term: usize,
}

impl UnionFormula {
    /// The digits within `radius` of `w`, each with the union of its piece
    /// sets across terms.
    pub fn placements_near(&self, w: Complex64, radius: f64) -> Vec<Placement> {
        let mut out: Vec<Placement> = Vec::new();
        for a in GaussianInt::near(w, radius) {
            let mut hit: Option<Placement> = None;
            for (t, term) in self.terms.iter().enumerate() {
                if term.has_digit(a) {
                    let p = hit.get_or_insert(Placement {
                        digit: a,
                        pieces: Vec::new(),
                        term: t,
                    });
                    p.pieces.extend(&term.pieces);
                }
            }
            if let Some(mut p) = hit {
                p.pieces.sort_unstable();
                p.pieces.dedup();
                out.push(p);
            }
        }
        out
    }

    /// Membership of `w` in the union, given the partition.
    pub fn classify(&self, w: Complex64, eps: f64, pieces: &[Region]) -> Verdict {
        let mut near = false;
        for p in self.placements_near(w, 1.0 + 2.0 * eps) {
            let u = w - p.digit.to_c64();
            for &j in &p.pieces {
                match pieces[j].classify(u, eps) {
                    Verdict::In => return Verdict::In,
                    Verdict::NearBoundary => near = true,
                    Verdict::Out => {}
                }
            }
        }
        if near {
            Verdict::NearBoundary
        } else {
            Verdict::Out
        }
    }

    /// The formula for `g(K_piece)` where `perm` is the piece permutation
    /// of `g' = S g S⁻¹`.
    pub fn map(&self, g_prime: &Isometry, perm_g: &[usize], perm_g_prime: &[usize]) -> UnionFormula {
        UnionFormula {
            piece: perm_g[self.piece],
            terms: self.terms.iter().map(|t| t.map(g_prime, perm_g_prime)).collect(),
        }
    }
}

impl fmt::Display for UnionFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(K{}) =", self.piece + 1)?;
        for (i, t) in self.terms.iter().enumerate() {
            write!(f, "{} {t}", if i == 0 { "" } else { " ∪" })?;
        }
        Ok(())
    }
}
