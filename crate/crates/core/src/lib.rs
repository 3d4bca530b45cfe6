//! Numerical harmonic analysis around refined Sobolev inequalities.
//!
//! * [`spectral`]: periodic grids and Littlewood-Paley blocks.
//! * [`norms`]: Lebesgue, Lorentz, Besov and Triebel-Lizorkin (semi)norms.
//! * [`interpolation`]: K- and J-method tools for the `(L¹, L^∞)` and
//!   `(ℓ^{q0}, ℓ^{q1})` couples.
//! * [`inequalities`]: parameter algebra, the pointwise Hedberg-type bound
//!   and randomized verification suites.
//! * [`sharpness`]: atomic sums showing the Lorentz index condition cannot
//!   be relaxed.

pub mod error;
pub mod exponent;
pub mod fit;
pub mod inequalities;
pub mod interpolation;
pub mod norms;
pub mod rng;
pub mod sharpness;
pub mod spectral;

pub use error::{Error, Result};
