//! Numerical laboratory for extremal structure in the Bergman space of the
//! unit disc: Bergman projections of unimodular power symbols
//! `prod ((1 - z conj(z_i))/|1 - z conj(z_i)|)^{beta_i}`, Bloch norms and
//! boundary profiles of the projections, Bergman norms and exposing
//! functionals of the underlying power functions, and the distance bounds
//! that classify which normalized functions are strongly exposed in the unit
//! ball.
//!
//! The crate is organized around independent computational routes for the
//! same quantities (explicit Gamma-ratio series against disc quadrature,
//! series norms against closed forms), so every headline number can be
//! cross-checked. See the `verify` module and the `bergman verify` CLI for
//! the full check suite.

pub mod bloch;
pub mod classify;
pub mod config;
pub mod discquad;
pub mod error;
pub mod extremal;
pub mod projection;
pub mod report;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
