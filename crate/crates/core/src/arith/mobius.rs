use super::gaussian::GaussianInt;
use num_complex::Complex64;

/// A point of the Riemann sphere ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(self) -> Option<Complex64> {
        match self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtendedComplex::Finite(z)
        } else {
            ExtendedComplex::Infinity
        }
    }
}

/// `z ↦ (p z + q) / (r z + s)` with Gaussian-integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub p: GaussianInt,
    pub q: GaussianInt,
    pub r: GaussianInt,
    pub s: GaussianInt,
}

impl MobiusMap {
    pub const fn new(p: GaussianInt, q: GaussianInt, r: GaussianInt, s: GaussianInt) -> Self {
        MobiusMap { p, q, r, s }
    }

    pub const IDENTITY: MobiusMap = MobiusMap::new(
        GaussianInt::ONE,
        GaussianInt::ZERO,
        GaussianInt::ZERO,
        GaussianInt::ONE,
    );

    /// `S(z) = -1/z`.
    pub const S: MobiusMap = MobiusMap::new(
        GaussianInt::ZERO,
        GaussianInt::new(-1, 0),
        GaussianInt::ONE,
        GaussianInt::ZERO,
    );

    /// `T^a(z) = z + a`.
    pub fn translate(a: GaussianInt) -> Self {
        MobiusMap::new(GaussianInt::ONE, a, GaussianInt::ZERO, GaussianInt::ONE)
    }

    /// `z ↦ u z` for a unit (or any nonzero) `u`.
    pub fn scale(u: GaussianInt) -> Self {
        MobiusMap::new(u, GaussianInt::ZERO, GaussianInt::ZERO, GaussianInt::ONE)
    }

    pub fn det(&self) -> GaussianInt {
        self.p * self.s - self.q * self.r
    }

    /// The adjugate, which acts as the inverse map.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap::new(self.s, -self.q, -self.r, self.p)
    }

    /// Matrix product: `(self ∘ other)(z) = self(other(z))`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap::new(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        let (p, q, r, s) = (
            self.p.to_c64(),
            self.q.to_c64(),
            self.r.to_c64(),
            self.s.to_c64(),
        );
        match z {
            ExtendedComplex::Infinity => {
                if r == Complex64::new(0.0, 0.0) {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite(p / r)
                }
            }
            ExtendedComplex::Finite(z) => {
                let den = r * z + s;
                if den == Complex64::new(0.0, 0.0) {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::from((p * z + q) / den)
                }
            }
        }
    }

    /// Action on finite points; poles become non-finite values.
    pub fn apply_c64(&self, z: Complex64) -> Complex64 {
        let den = self.r.to_c64() * z + self.s.to_c64();
        (self.p.to_c64() * z + self.q.to_c64()) / den
    }
}

/// `S(z) = -1/z` on finite points.
#[inline]
pub fn s_map(z: Complex64) -> Complex64 {
    let n = z.norm_sqr();
    Complex64::new(-z.re / n, z.im / n)
}

/// Applies `m` on the Riemann sphere.
pub fn mobius_apply(m: &MobiusMap, z: ExtendedComplex) -> ExtendedComplex {
    m.apply(z)
}
