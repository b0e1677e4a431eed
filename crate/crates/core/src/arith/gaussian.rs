use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// An element `re + im·i` of ℤ[i].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

/// Parity of a Gaussian integer: even iff `re + im` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        (self.norm() as f64).sqrt()
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn parity(self) -> Parity {
        if (self.re + self.im).rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// All Gaussian integers with `|a| <= radius`, ordered by norm, then by
    /// `(re, im)`.
    pub fn ball(radius: f64) -> Vec<GaussianInt> {
        let r = radius.floor() as i64;
        let r2 = radius * radius;
        let mut out: Vec<GaussianInt> = (-r..=r)
            .flat_map(|x| (-r..=r).map(move |y| GaussianInt::new(x, y)))
            .filter(|a| (a.norm() as f64) <= r2 + 1e-9)
            .collect();
        out.sort_by_key(|a| (a.norm(), a.re, a.im));
        out
    }

    /// Gaussian integers within distance `radius` of `z`.
    pub fn near(z: Complex64, radius: f64) -> impl Iterator<Item = GaussianInt> {
        let x0 = (z.re - radius).ceil() as i64;
        let x1 = (z.re + radius).floor() as i64;
        let y0 = (z.im - radius).ceil() as i64;
        let y1 = (z.im + radius).floor() as i64;
        let r2 = radius * radius;
        (x0..=x1).flat_map(move |x| {
            (y0..=y1).filter_map(move |y| {
                let dx = z.re - x as f64;
                let dy = z.im - y as f64;
                (dx * dx + dy * dy <= r2).then_some(GaussianInt::new(x, y))
            })
        })
    }
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        GaussianInt::new(re, 0)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<i64> for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, k: i64) -> GaussianInt {
        GaussianInt::new(self.re * k, self.im * k)
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_gaussian(f, &self.re.to_string(), &self.im.to_string())
    }
}

/// Shared `a+bi` formatting for machine and big Gaussian integers.
pub(crate) fn fmt_gaussian(f: &mut fmt::Formatter<'_>, re: &str, im: &str) -> fmt::Result {
    let im_unit = match im {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        _ => format!("{im}i"),
    };
    match (re == "0", im == "0") {
        (_, true) => write!(f, "{re}"),
        (true, false) => write!(f, "{im_unit}"),
        (false, false) => {
            if im.starts_with('-') {
                write!(f, "{re}{im_unit}")
            } else {
                write!(f, "{re}+{im_unit}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse Gaussian integer from {0:?}")]
pub struct ParseGaussianError(pub String);

impl FromStr for GaussianInt {
    type Err = ParseGaussianError;

    /// Accepts `3`, `-2i`, `i`, `1+i`, `2-3i`, and `re,im`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((a, b)) = t.split_once(',') {
            return Ok(GaussianInt::new(
                a.parse().map_err(|_| err())?,
                b.parse().map_err(|_| err())?,
            ));
        }
        let parse_im = |p: &str| -> Result<i64, ParseGaussianError> {
            let body = p.strip_suffix('i').ok_or_else(err)?;
            match body {
                "" | "+" => Ok(1),
                "-" => Ok(-1),
                _ => body.parse().map_err(|_| err()),
            }
        };
        if !t.ends_with('i') {
            return Ok(GaussianInt::new(t.parse().map_err(|_| err())?, 0));
        }
        // split at the last sign that is not the leading one
        let split = t
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(GaussianInt::new(
                t[..k].parse().map_err(|_| err())?,
                parse_im(&t[k..])?,
            )),
            None => Ok(GaussianInt::new(0, parse_im(&t)?)),
        }
    }
}
