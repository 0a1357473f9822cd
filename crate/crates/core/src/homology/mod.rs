//! Exact simplicial homology: boundary matrices, integer Smith normal form,
//! ranks over prime fields, and reduced or unreduced homology profiles.

mod matrix;
mod modp;
mod profile;
mod snf;
mod verify;

pub use matrix::{boundary_matrix, boundary_matrix_with_budget, IntMatrix};
pub use modp::rank_mod_p;
pub use profile::{homology, homology_with_budget, Coefficients, HomologyGroup, HomologyProfile};
pub use snf::{smith_normal_form, SmithForm};
pub use verify::{verify_join_formula, verify_join_over_formula, DimensionCheck, FormulaCheck, Hypothesis};
