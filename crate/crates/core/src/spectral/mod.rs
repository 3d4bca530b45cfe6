//! Periodic sampled grids and the dyadic Littlewood-Paley decomposition.
//!
//! Euclidean space is modeled by a large torus `[0, period)^dim` with
//! frequencies measured in absolute units `|ξ| = 2π·k/period`, so that the
//! dyadic annuli `2^{j-1} <= |ξ| <= 2^{j+1}` do not depend on the grid
//! resolution. Only the scales representable below the Nyquist frequency
//! are kept.

mod cutoff;
pub mod fft;
mod grid;
mod littlewood_paley;

pub use cutoff::{make_cutoff_profile, CutoffProfile};
pub use grid::{decode_le_f64, encode_le_f64, sidecar_path, GridSpec, SampledField};
pub use littlewood_paley::{decompose, max_scale, reconstruct, BlockDecomposition};
