//! A desk-scale laboratory for l^p harmonic analysis on finitely generated
//! groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: supported groups, canonical element forms, generating sets and
//!   Cayley-graph balls.
//! - [`algebra`]: finitely supported group-ring vectors over exact complex
//!   rationals or `Complex64`, convolution, p-norms, the averaging elements
//!   `x_n`, factor witnesses and Neumann inverses.
//! - [`energy`]: gradients, p-Dirichlet sums, the p-Laplacian and a convex
//!   solver for the p-Dirichlet problem on balls.
//! - [`cohomology`]: free-resolution fragments, truncated operators and the
//!   density / distance / singular-value experiments.
//! - [`invariance`]: translations, `Diff` spans, the `theta` embedding and
//!   amenability probes.

// NaN must fail range checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cohomology;
pub mod energy;
mod error;
pub mod group;
pub mod invariance;
pub mod optim;
pub(crate) mod sum;

pub use error::{Error, Result};
