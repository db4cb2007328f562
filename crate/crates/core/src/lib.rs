//! Exact computer algebra for the unramified local zeta integral of GSp(4).
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`algebra`]: sparse Laurent polynomials over the rationals in eight fixed
//!   indeterminates, rational functions with factored denominators, and
//!   truncated power series.
//! * [`sugano`]: Sugano's generating function for the spherical Bessel
//!   function and extraction of individual Bessel coefficients.
//! * [`lfactor`]: the degree-five local L-factor, its quadratic twist and the
//!   zeta normalizing factors.
//! * [`hilbert`]: Legendre and Hilbert symbols over the rationals, the
//!   inert/split/ramified classification and the character `chi_T`.
//! * [`cosets`]: finite-ring brute force for the coset index and the integrand
//!   weight exponents.
//! * [`verifier`]: assembly of the local integral in three independent ways
//!   and the identity checks that tie it to the twisted L-factor.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cosets;
mod error;
pub mod hilbert;
pub mod lfactor;
pub mod sugano;
pub mod verifier;

pub use error::{Error, Result};
