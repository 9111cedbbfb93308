//! Fusion rings of rigid C*-tensor categories, their cp-multipliers and
//! admissible representations, with a complete treatment of the
//! Temperley-Lieb-Jones `A_∞` case.
//!
//! Everything is generic over the coefficient type through [`Scalar`]; the
//! aliases below fix the common choices.

pub mod builders;
pub mod error;
pub mod fusion;
pub mod multiplier;
pub mod scalar;
pub mod spectral;
pub mod tlj;

pub use error::{FusionError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use fusion::{FusionElement, FusionRing, Label};
pub use multiplier::Multiplier;
pub use scalar::{Dimension, RealScalar, Scalar};

pub use num::complex::Complex64;
pub use num::rational::BigRational as Rational;

/// Complex floating-point elements of the fusion algebra.
pub type Element = FusionElement<Complex64>;
/// Real floating-point elements.
pub type RealElement = FusionElement<f64>;
/// Exact rational elements.
pub type RationalElement = FusionElement<Rational>;
/// Exact Gaussian-rational elements.
pub type ExactElement = FusionElement<num::complex::Complex<Rational>>;

pub type RealMultiplier = Multiplier<f64>;
pub type RationalMultiplier = Multiplier<Rational>;
pub type ComplexMultiplier = Multiplier<Complex64>;
