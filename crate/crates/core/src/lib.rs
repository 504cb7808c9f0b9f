//! Periodic traveling waves of dispersive equations: explicit families,
//! their spectra, stability functionals, and a pseudospectral evolver.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is how NaN gets rejected; long literals are quadrature nodes
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod elliptic;
pub mod error;
pub mod evolution;
pub mod families;
pub mod fourier;
pub mod functionals;
pub mod hypothesis;
pub mod nonlinearity;
pub mod ode;
pub mod quadrature;
pub mod spectral;
pub mod symbol;

pub use error::{Error, Result};
