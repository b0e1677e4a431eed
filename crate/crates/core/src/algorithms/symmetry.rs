//! The dihedral group of the square acting on ℂ and on partitions.

use crate::arith::GaussianInt;
use crate::regions::{Membership, Region, Verdict};
use num_complex::Complex64;

/// `z ↦ i^k z` or `z ↦ i^k conj(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub quarter_turns: u8,
    pub reflect: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        quarter_turns: 0,
        reflect: false,
    };
    pub const CONJ: Isometry = Isometry {
        quarter_turns: 0,
        reflect: true,
    };

    pub fn rotation(quarter_turns: u8) -> Self {
        Isometry {
            quarter_turns: quarter_turns % 4,
            reflect: false,
        }
    }

    /// All eight elements.
    pub fn dihedral() -> Vec<Isometry> {
        (0..8)
            .map(|k| Isometry {
                quarter_turns: k % 4,
                reflect: k >= 4,
            })
            .collect()
    }

    pub fn rotations() -> Vec<Isometry> {
        (0..4).map(Isometry::rotation).collect()
    }

    fn unit(&self) -> GaussianInt {
        match self.quarter_turns % 4 {
            0 => GaussianInt::ONE,
            1 => GaussianInt::I,
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    pub fn apply(&self, a: GaussianInt) -> GaussianInt {
        let a = if self.reflect { a.conj() } else { a };
        self.unit() * a
    }

    pub fn apply_c64(&self, z: Complex64) -> Complex64 {
        let z = if self.reflect { z.conj() } else { z };
        self.unit().to_c64() * z
    }

    pub fn apply_region(&self, r: &Region) -> Region {
        let u = self.unit().to_c64();
        if self.reflect {
            r.reflect(u)
        } else {
            r.rotate(u)
        }
    }

    /// The map `g'` with `S ∘ g = g' ∘ S` for `S(z) = -1/z`.
    pub fn conjugate_by_s(&self) -> Isometry {
        Isometry {
            quarter_turns: (4 - self.quarter_turns % 4) % 4,
            reflect: self.reflect,
        }
    }
}

/// Index of the piece that contains `z` in its interior.
pub fn piece_at(pieces: &[Region], z: Complex64, eps: f64) -> Option<usize> {
    let mut hit = None;
    for (i, p) in pieces.iter().enumerate() {
        match p.classify(z, eps) {
            Verdict::In => {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            }
            Verdict::NearBoundary => return None,
            Verdict::Out => {}
        }
    }
    hit
}

/// The permutation `σ` with `g(K_j) = K_σ(j)`, if `g` permutes the pieces.
pub fn piece_permutation(g: &Isometry, pieces: &[Region]) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(pieces.len());
    for p in pieces {
        let w = p.interior_witness()?;
        let img = g.apply_region(p);
        let k = piece_at(pieces, g.apply_c64(w), 1e-8)?;
        let probe = img.interior_witness()?;
        if piece_at(pieces, probe, 1e-8) != Some(k) {
            return None;
        }
        perm.push(k);
    }
    let mut seen = perm.clone();
    seen.sort_unstable();
    seen.dedup();
    (seen.len() == pieces.len()).then_some(perm)
}
