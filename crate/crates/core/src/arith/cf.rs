//! Minus continued fractions `a0 - 1/(a1 - 1/(a2 - ...))` over ℤ[i].

use super::gaussian::GaussianInt;
use super::rational::{BigGaussian, ProjRational, RationalComplex};
use std::fmt;

/// Digits `a0, a1, ..., an` of a (possibly truncated) expansion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DigitSeq {
    pub a0: GaussianInt,
    pub rest: Vec<GaussianInt>,
}

impl DigitSeq {
    pub fn new(a0: GaussianInt, rest: Vec<GaussianInt>) -> Self {
        DigitSeq { a0, rest }
    }

    /// Builds from a flat list; `None` when empty.
    pub fn from_slice(digits: &[GaussianInt]) -> Option<Self> {
        let (first, rest) = digits.split_first()?;
        Some(DigitSeq::new(*first, rest.to_vec()))
    }

    pub fn len(&self) -> usize {
        1 + self.rest.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = GaussianInt> + '_ {
        std::iter::once(self.a0).chain(self.rest.iter().copied())
    }

    pub fn to_vec(&self) -> Vec<GaussianInt> {
        self.iter().collect()
    }

    pub fn prefix(&self, len: usize) -> DigitSeq {
        DigitSeq::new(self.a0, self.rest[..len.saturating_sub(1)].to_vec())
    }
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, a) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// The `n`-th convergent `p_n / q_n`; `value` is `None` when `q_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigGaussian,
    pub q: BigGaussian,
    pub value: Option<RationalComplex>,
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "p{0}/q{0} = ({1})/({2}) = {3}", self.index, self.p, self.q, v),
            None => write!(f, "p{0}/q{0} = ({1})/0 undefined", self.index, self.p),
        }
    }
}

/// Runs the three-term recurrences
/// `p_n = a_n p_{n-1} - p_{n-2}`, `q_n = a_n q_{n-1} - q_{n-2}`
/// from `p_{-2} = 0, p_{-1} = 1, q_{-2} = -1, q_{-1} = 0`.
pub fn convergents(digits: &DigitSeq) -> Vec<Convergent> {
    let mut p_prev2 = BigGaussian::new(0, 0);
    let mut p_prev = BigGaussian::new(1, 0);
    let mut q_prev2 = BigGaussian::new(-1, 0);
    let mut q_prev = BigGaussian::new(0, 0);
    let mut out = Vec::with_capacity(digits.len());
    for (index, a) in digits.iter().enumerate() {
        let a = BigGaussian::from(a);
        let p = &(&a * &p_prev) - &p_prev2;
        let q = &(&a * &q_prev) - &q_prev2;
        let value = RationalComplex::new(p.clone(), q.clone());
        out.push(Convergent {
            index,
            p: p.clone(),
            q: q.clone(),
            value,
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    out
}

/// Evaluates the nested fraction right to left in exact arithmetic, passing
/// through ∞ projectively (`1/0 = ∞`, `1/∞ = 0`).
pub fn eval_cf(digits: &DigitSeq) -> ProjRational {
    let all = digits.to_vec();
    let mut acc = ProjRational::Finite(RationalComplex::from_gaussian(*all.last().expect("nonempty")));
    for a in all.iter().rev().skip(1) {
        let a = RationalComplex::from_gaussian(*a);
        acc = match acc {
            ProjRational::Infinity => ProjRational::Finite(a),
            ProjRational::Finite(x) => match x.recip() {
                None => ProjRational::Infinity,
                Some(inv) => ProjRational::Finite(a.sub(&inv)),
            },
        };
    }
    acc
}

/// Whether `|u| - |v| > C / |u|`.
pub fn norm_gap_holds(u: GaussianInt, v: GaussianInt, c: f64) -> bool {
    let au = u.abs();
    au - v.abs() > c / au
}

/// Hypothesis of the norm-gap lemma: `|u| > |v| > (C + 1)√2`.
pub fn norm_gap_hypothesis(u: GaussianInt, v: GaussianInt, c: f64) -> bool {
    let bound = (c + 1.0) * std::f64::consts::SQRT_2;
    u.norm() > v.norm() && v.abs() > bound
}
