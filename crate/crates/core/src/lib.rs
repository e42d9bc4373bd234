//! Exact I-function coefficients of GIT quotients `V//G` through the abelian/nonabelian
//! correspondence.
//!
//! A quotient is described by its torus shadow: the weights of a maximal torus `T` on `V`,
//! the roots of `G`, the Weyl group action and an effective cone of degree lifts. Each
//! coefficient `I_β` is assembled as a sum over lifts `β̃ ↦ β` of factored products of
//! linear forms, and checked by restricting to the fixed points of an auxiliary torus.
//!
//! Module map:
//! - [`algebra`]: rationals, linear forms, factored terms, rational functions in `z`.
//! - [`git`]: presentations, Weyl actions, effective cones and lift enumeration.
//! - [`ifunction`]: hypergeometric factors and coefficient assembly.
//! - [`localization`]: fixed-point charts, restriction, integration, symmetrization.
//! - [`targets`]: projective spaces, Grassmannians and Grassmann bundles.
//! - [`closed_forms`]: independent closed-form evaluators used as oracles.
//! - [`cli`]: the command surface behind the `anc` binary.

pub mod algebra;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod git;
pub mod ifunction;
pub mod localization;
pub mod targets;

pub use error::{Error, Result};
