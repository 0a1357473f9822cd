//! Simplicial homology of clique complexes of zero-divisor graphs of finite
//! commutative rings.
//!
//! The crate computes the homology of `K(R)` (the clique complex of the
//! zero-divisor graph) and `K0(R)` two independent ways: directly, by exact
//! integer Smith normal form of the boundary matrices, and from the unit
//! counts of the local factors of `R` through a subset recursion. It also
//! decides the Cohen-Macaulay property through Reisner's link criterion and
//! explains why `K(R)` is never a closed surface.
//!
//! Module map:
//! - [`rings`]: explicit finite commutative rings, units, locality and local
//!   decomposition.
//! - [`complexes`]: graphs, clique complexes, joins, links, surface checks and
//!   the facet-list file format.
//! - [`homology`]: boundary matrices, Smith normal form, homology profiles.
//! - [`formulas`]: closed-form and recursive Betti numbers.
//! - [`analysis`]: Cohen-Macaulay tests and the surface obstruction.
//! - [`cli`]: ring-spec parsing and the command implementations behind the
//!   `zerodiv` binary.

pub mod analysis;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod formulas;
pub mod homology;
pub mod rings;

pub use error::{Error, Result};

/// Default cap on the total number of faces a computation may enumerate.
pub const DEFAULT_FACE_BUDGET: usize = 2_000_000;
