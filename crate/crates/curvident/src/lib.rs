#![allow(clippy::needless_range_loop)]

//! Exact verification of dimensional curvature identities.
//!
//! This crate computes with pseudo-Riemannian curvature over arbitrary-precision
//! rationals, so that "this tensor vanishes" is a decidable, exact statement
//! rather than a floating-point judgement call. It provides:
//!
//! * dense exact tensor algebra (products, contractions, slot permutations,
//!   (anti)symmetrization, generalized Kronecker deltas) in [`tensor`],
//! * metric jets — truncated Taylor expansions of a metric at a point — and
//!   their curvature (Christoffel symbols, Riemann, Ricci, scalar curvature,
//!   Einstein tensor, cylinder extension/restriction, rescaling) in [`metric`],
//! * the Lovelock-type total contractions of curvature powers against a
//!   generalized Kronecker delta, Pfaffian densities, and randomized exact
//!   vanishing trials in [`identities`],
//! * orthogonal-group invariant theory at a point: perfect matchings, Gram
//!   matrices and exact ranks, normal-tensor spaces, generator enumeration and
//!   kernel-dimension certificates in [`invariant`],
//! * machine-readable JSON/CSV reports and the command-line front end in
//!   [`report`] and [`cli`].
//!
//! Every verification path runs over `BigRational`; floating point is opt-in
//! through the generic scalar parameter of [`tensor::Tensor`] and is never used
//! by the checks themselves.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod error;
pub mod identities;
pub mod invariant;
pub mod linalg;
pub mod metric;
pub mod poly;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{rat, Rational, Scalar};
pub use tensor::{Permutation, Tensor, Variance};
