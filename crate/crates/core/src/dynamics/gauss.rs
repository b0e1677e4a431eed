//! The Gauss map `G(z) = -1/z - ⟨-1/z⟩` and digit extraction.

use crate::algorithms::{choose, spec, AlgorithmId};
use crate::arith::{BigGaussian, DigitSeq, GaussianInt, RationalComplex};
use crate::error::{Error, Result};
use crate::regions::{Membership, Verdict};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Tolerance used to decide that a point lies in `K`.
pub const DOMAIN_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussStep {
    pub digit: GaussianInt,
    pub next: Complex64,
}

pub fn gauss_step(alg: AlgorithmId, z: Complex64) -> Result<GaussStep> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    if spec(alg).k.classify(z, DOMAIN_EPS) == Verdict::Out {
        return Err(Error::OutsideDomain { z });
    }
    let w = -1.0 / z;
    let digit = choose(alg, w);
    Ok(GaussStep {
        digit,
        next: w - digit.to_c64(),
    })
}

/// `a_0` for `z`: zero when `z ∈ K` and zero is a digit, else `⟨z⟩`.
fn leading_digit(alg: AlgorithmId, z: Complex64) -> GaussianInt {
    let zero = GaussianInt::ZERO;
    if alg.admissible(zero) && spec(alg).k.classify(z, 0.0) == Verdict::In {
        zero
    } else {
        choose(alg, z)
    }
}

/// `a_0` followed by at most `n` digits of the orbit of `z - a_0`.
pub fn digit_sequence(alg: AlgorithmId, z: Complex64, n: usize) -> Result<DigitSeq> {
    let a0 = leading_digit(alg, z);
    let mut x = z - a0.to_c64();
    let mut rest = Vec::with_capacity(n);
    while rest.len() < n && x != Complex64::new(0.0, 0.0) {
        let step = gauss_step(alg, x)?;
        rest.push(step.digit);
        x = step.next;
    }
    Ok(DigitSeq::new(a0, rest))
}

fn floor_half(x: &BigRational) -> i64 {
    // floor(x + 1/2)
    let twice: BigInt = x.numer() * 2u32 + x.denom();
    twice
        .div_floor(&(x.denom() * 2u32))
        .to_i64()
        .expect("digit fits in i64")
}

/// Digit choice on an exact rational. The nearest integer and nearest even
/// rules are evaluated exactly; the others through the nearest double.
pub fn choose_exact(alg: AlgorithmId, z: &RationalComplex) -> GaussianInt {
    let (x, y) = z.parts();
    match alg {
        AlgorithmId::NearestInteger => GaussianInt::new(floor_half(&x), floor_half(&y)),
        AlgorithmId::NearestEven => {
            let two = BigRational::from_integer(BigInt::from(2));
            let p = floor_half(&(&(&x + &y) / &two));
            let q = floor_half(&(&(&x - &y) / &two));
            GaussianInt::new(p + q, p - q)
        }
        _ => choose(alg, z.to_c64()),
    }
}

/// [`digit_sequence`] in exact arithmetic; stops when the remainder is 0.
pub fn digit_sequence_exact(alg: AlgorithmId, z: &RationalComplex, n: usize) -> Result<DigitSeq> {
    let a0 = leading_digit(alg, z.to_c64());
    let mut x = z.sub(&RationalComplex::from_gaussian(a0));
    let mut rest = Vec::with_capacity(n);
    while rest.len() < n && !x.is_zero() {
        if spec(alg).k.classify(x.to_c64(), DOMAIN_EPS) == Verdict::Out {
            return Err(Error::OutsideDomain { z: x.to_c64() });
        }
        let w = x.recip().expect("nonzero remainder").neg();
        let a = choose_exact(alg, &w);
        rest.push(a);
        x = w.sub(&RationalComplex::from_gaussian(BigGaussian::from(a)));
    }
    Ok(DigitSeq::new(a0, rest))
}
