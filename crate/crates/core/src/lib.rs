//! Exact computations in two weighted virtually abelian groups: `H`, a
//! rank-5 lattice extended by the Klein four-group with a weight-2 letter,
//! and `G`, a rank-10 lattice extended by `Z/2 x Z/4` with unit weights,
//! into which `H` embeds via `τ = s²`.
//!
//! The crate compiles symbolic presentations into lattice-plus-action data
//! ([`group`]), enumerates weighted balls and geodesics by uniform-cost
//! search ([`geodesy`]), checks closed-form length formulas against that
//! oracle, and runs a loop-elimination refutation engine against candidate
//! regular languages of geodesics ([`automata`], [`embed`]).

pub mod automata;
pub mod cli;
pub mod embed;
pub mod error;
pub mod finite_group;
pub mod geodesy;
pub mod group;
pub mod lattice;
pub mod presentation;
pub mod presets;
pub mod report;

pub use error::{Error, Result};
pub use group::{GroupElement, LetterId, VAGroup};
