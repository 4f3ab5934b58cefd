//! Exact calculus for Toeplitz operators with mixed-monomial symbols on the
//! Fock–Sobolev space `F^{2,m}(ℂ)`.
//!
//! - [`scalar`]: big integers, rationals, Gaussian rationals, exact `q·π` values
//! - [`fock`]: inner products, projection, Toeplitz action, adjoint, forms
//! - [`forms`]: Gram and defect matrices on `span{1, …, z^N}` with an exact PSD test
//! - [`criteria`]: necessary-condition checkers for hyponormality and quasinormality
//! - [`numeric`]: floating-point quadrature oracle for the closed forms
//! - [`dsl`]: text syntax for symbols and polynomials

pub mod criteria;
pub mod dsl;
pub mod fock;
pub mod forms;
pub mod numeric;
pub mod scalar;

pub use fock::{AnalyticPoly, FockParams, MixedSymbol, MixedTerm};
pub use scalar::{BigNat, GaussianRational, PiScalar, Rational};
