//! Gauss maps, digit extraction and checks of the finite building property.

pub mod building;
pub mod formula;
mod gauss;
pub mod markov;
pub mod published;
mod refine;

pub use building::{
    check_building, formulas, sampled_decomposition, verify_building, BuildParams,
    BuildingReport, PieceCheck, Shortcut,
};
pub use formula::{Clip, DigitSet, Term, UnionFormula};
pub use gauss::{
    choose_exact, digit_sequence, digit_sequence_exact, gauss_step, GaussStep, DOMAIN_EPS,
};
pub use markov::{compute_j_table, published_j, JEntry, JTable, MarkovCheck};
pub use refine::{image_set, refine, refine_partition, Refinement, Stage};
