//! Verification of Lie point symmetries (plain and conditional) by
//! prolongation and on-shell reduction, together with the bundled
//! catalogue of plasma-model systems, their generator families and the
//! exact-solution residual checks.

mod bracket;
mod check;
mod error;
mod exact;
mod generator;
mod prolong;

pub mod catalogue;

pub use bracket::commutator;
pub use check::{check_conditional_symmetry, check_symmetry, residuals, side_condition_rules, SymmetryReport, Verdict};
pub use error::CheckError;
pub use exact::{exact_case, exact_case_ids, ExactCaseReport};
pub use generator::{parse_generator_file, parse_side_conditions, Generator};
pub use prolong::{prolong, ProlongedGenerator};
