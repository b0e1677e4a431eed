//! Complex continued fractions over the Gaussian integers.
//!
//! Six choice functions (nearest integer, nearest even, nearest odd, diamond,
//! disk and shifted Hurwitz) with their Gauss maps, finite partitions of the
//! fundamental sets that are mapped onto unions of pieces, and tools to
//! simulate and certify product domains `⋃ K_i × L_i` on which the natural
//! extension is bijective.

pub mod algorithms;
pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod natural_ext;
pub mod real_ab;

pub use num_complex::Complex64 as C64;
pub mod error;
pub mod regions;

pub use error::{Error, Result};
