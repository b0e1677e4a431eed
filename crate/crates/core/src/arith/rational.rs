use super::gaussian::{fmt_gaussian, GaussianInt};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision Gaussian integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BigGaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl BigGaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        BigGaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        BigGaussian::new(0, 0)
    }

    pub fn one() -> Self {
        BigGaussian::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        BigGaussian::new(self.re.clone(), -&self.im)
    }

    /// Multiplies by `i`.
    fn rotate(&self) -> Self {
        BigGaussian::new(-&self.im, self.re.clone())
    }

    /// Euclidean division with quotient rounded to the nearest Gaussian
    /// integer; the remainder has strictly smaller norm than `d`.
    pub fn div_rem(&self, d: &BigGaussian) -> (BigGaussian, BigGaussian) {
        let n = d.norm();
        let num = self * &d.conj();
        let round = |x: &BigInt| -> BigInt {
            // floor((2x + n) / 2n)
            let twice: BigInt = x * 2u32 + &n;
            twice.div_floor(&(&n * 2u32))
        };
        let q = BigGaussian::new(round(&num.re), round(&num.im));
        let r = self - &(&q * d);
        (q, r)
    }

    pub fn gcd(&self, other: &BigGaussian) -> BigGaussian {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Associate lying in the sector `re > 0, im >= 0` (zero stays zero).
    pub fn normalize_unit(&self) -> (BigGaussian, BigGaussian) {
        let mut x = self.clone();
        let mut unit = BigGaussian::one();
        if x.is_zero() {
            return (x, unit);
        }
        for _ in 0..4 {
            if x.re.is_positive() && !x.im.is_negative() {
                break;
            }
            x = x.rotate();
            unit = unit.rotate();
        }
        (x, unit)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<GaussianInt> for BigGaussian {
    fn from(g: GaussianInt) -> Self {
        BigGaussian::new(g.re, g.im)
    }
}

impl<'a> Add<&'a BigGaussian> for &'a BigGaussian {
    type Output = BigGaussian;
    fn add(self, o: &BigGaussian) -> BigGaussian {
        BigGaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a BigGaussian> for &'a BigGaussian {
    type Output = BigGaussian;
    fn sub(self, o: &BigGaussian) -> BigGaussian {
        BigGaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a BigGaussian> for &'a BigGaussian {
    type Output = BigGaussian;
    fn mul(self, o: &BigGaussian) -> BigGaussian {
        BigGaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &BigGaussian {
    type Output = BigGaussian;
    fn neg(self) -> BigGaussian {
        BigGaussian::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for BigGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_gaussian(f, &self.re.to_string(), &self.im.to_string())
    }
}

/// An element of ℚ(i) kept as a reduced fraction of Gaussian integers with
/// the denominator normalized to the sector `re > 0, im >= 0`, so that
/// structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    numerator: BigGaussian,
    denominator: BigGaussian,
}

impl RationalComplex {
    /// Returns `None` when `den` is zero.
    pub fn new(num: BigGaussian, den: BigGaussian) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalComplex {
                numerator: BigGaussian::zero(),
                denominator: BigGaussian::one(),
            });
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let (d, unit) = d.normalize_unit();
        Some(RationalComplex {
            numerator: &n * &unit,
            denominator: d,
        })
    }

    pub fn from_gaussian(g: impl Into<BigGaussian>) -> Self {
        RationalComplex {
            numerator: g.into(),
            denominator: BigGaussian::one(),
        }
    }

    pub fn numerator(&self) -> &BigGaussian {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigGaussian {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `1/self`, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        RationalComplex::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn add(&self, o: &RationalComplex) -> RationalComplex {
        let num = &(&self.numerator * &o.denominator) + &(&o.numerator * &self.denominator);
        let den = &self.denominator * &o.denominator;
        RationalComplex::new(num, den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RationalComplex {
        RationalComplex {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, o: &RationalComplex) -> RationalComplex {
        self.add(&o.neg())
    }

    /// Real and imaginary parts as exact rationals.
    pub fn parts(&self) -> (BigRational, BigRational) {
        let n = self.denominator.norm();
        let t = &self.numerator * &self.denominator.conj();
        (
            BigRational::new(t.re, n.clone()),
            BigRational::new(t.im, n),
        )
    }

    pub fn to_c64(&self) -> Complex64 {
        let (re, im) = self.parts();
        Complex64::new(
            re.to_f64().unwrap_or(f64::NAN),
            im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == BigGaussian::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

/// A point of ℚ(i) ∪ {∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjRational {
    Finite(RationalComplex),
    Infinity,
}

impl ProjRational {
    pub fn from_fraction(num: BigGaussian, den: BigGaussian) -> Self {
        match RationalComplex::new(num, den) {
            Some(r) => ProjRational::Finite(r),
            None => ProjRational::Infinity,
        }
    }

    pub fn to_extended(&self) -> super::mobius::ExtendedComplex {
        match self {
            ProjRational::Finite(r) => super::mobius::ExtendedComplex::Finite(r.to_c64()),
            ProjRational::Infinity => super::mobius::ExtendedComplex::Infinity,
        }
    }
}

impl fmt::Display for ProjRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjRational::Finite(r) => write!(f, "{r}"),
            ProjRational::Infinity => write!(f, "∞"),
        }
    }
}

/// Exact rational for a real fraction, used by callers that build inputs.
pub fn rational_real(num: i64, den: i64) -> RationalComplex {
    RationalComplex::new(BigGaussian::new(num, 0), BigGaussian::new(den, 0)).expect("den != 0")
}
