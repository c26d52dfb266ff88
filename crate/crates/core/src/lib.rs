//! The generalized modified Bessel function
//!
//! ```text
//! K_{z,w}(x) = 1/(2πi) ∫_(c) Γ((s−z)/2) Γ((s+z)/2)
//!              ₁F₁((s−z)/2; 1/2; −w²/4) ₁F₁((s+z)/2; 1/2; −w²/4) 2^{s−2} x^{−s} ds
//! ```
//!
//! evaluated through several independent representations, together with
//! checks of the modular-type and integral identities it satisfies. At
//! w = 0 it is the ordinary K_z(x).
//!
//! All public entry points take the argument `x` of `K_{z,w}(x)` directly.
//! The crate is organised bottom-up:
//!
//! * [`foundations`]: gamma, hypergeometric, Bessel and zeta functions.
//! * [`kzw`]: the representations of `K_{z,w}` and a dispatcher.
//! * [`identities`]: residual checks for the identities involving `K_{z,w}`.
//! * [`xi`]: the Riemann Ξ-function and the integral it produces.

pub mod config;
pub mod error;
pub mod foundations;
pub mod identities;
pub mod kzw;
pub mod quad;
pub mod xi;

pub use config::{EvalConfig, Evaluation, Method};
pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex value type used throughout the crate.
pub type ComplexValue = Complex64;

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
