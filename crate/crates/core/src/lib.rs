//! Toric plurisubharmonic singularities from their Newton convex bodies.
//!
//! Given a Newton body `P`, the crate computes the log canonical threshold
//! and its computing monomial valuations, decides whether the Ohsawa norm of
//! `h_P(log|z_1|^2, ..., log|z_n|^2)` is singular at the origin through three
//! independent geometric routes, and evaluates the shell integrals that define
//! that norm.

// `!(x < y)` is used on purpose to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod geometry;
pub mod newton_body;
pub mod polar_volume;
pub mod quad;
pub mod rational;
pub mod sampling;
pub mod shell_oracle;
pub mod valuations;

pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{Hyperplane, Number, Point, Weight};
pub use newton_body::{BodyKind, HyperbolicHull, LocalBoundaryModel, NewtonBody, OracleBody, PolyhedralBody};
