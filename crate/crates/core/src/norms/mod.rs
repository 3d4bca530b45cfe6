//! Lebesgue, Lorentz, Besov and Triebel-Lizorkin (semi)norms.
//!
//! Every norm of `|f|` goes through [`MeasuredValues`], a list of
//! `(value, mass)` pairs, so grids (mass = cell volume), sequences
//! (counting measure) and atomic sums share one kernel. The distribution
//! function uses the `μ{|f| >= t}` convention; switching to `>` only moves
//! measure-zero level sets and leaves every integral norm unchanged.

mod besov;
mod lorentz;
mod measured;

pub use besov::{
    besov_seminorm, field_lebesgue_norm, triebel_seminorm, weighted_block_norms, BesovParams,
};
pub use lorentz::{
    lebesgue_norm, lorentz_norm, lorentz_normalization, normalized_lorentz_norm,
    profile_lorentz_norm, LorentzParams,
};
pub use measured::{
    distribution_function, rearrangement, MeasuredValues, RearrangementProfile, Step,
};
