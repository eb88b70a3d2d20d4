//! Numerical toolkit for sign-changing radial solutions of
//!
//! ```text
//! Delta u - u + |u|^{p-1} u = 0   in R^N,   u in H^1(R^N),
//! ```
//!
//! with `p` close to the critical Sobolev exponent `(N+2)/(N-2)`.
//!
//! The crate has three legs that cross-check each other:
//!
//! * [`shooting`] solves the radial initial value problem and locates the
//!   decaying solution with exactly `k` nodes by bisection in `u(0)`.
//! * [`ansatz`] and [`reduction`] build the two-bump approximate solution in
//!   Emden-Fowler variables, solve the projected linear/nonlinear problems,
//!   and compare the reduced energy against its closed-form expansion.
//! * [`spectrum`] computes the linearized spectrum mode by mode: the two
//!   small radial eigenvalues, the mode-1 kernel, the Hardy-weighted
//!   eigenvalues and the limit problem.
//!
//! [`verify`] bundles the cross-checks into a pass/fail suite.

pub mod ansatz;
pub mod error;
pub mod fowler;
pub mod grid;
pub mod par;
pub mod quad;
pub mod reduction;
pub mod shooting;
pub mod special;
pub mod spectrum;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
pub use grid::Grid;
