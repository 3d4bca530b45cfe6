//! Sharpness of the Lorentz index: atomic families `f_L`, `g_L` built from
//! a smooth atom with vanishing moments, whose Besov norms grow like
//! `L^{1/r0}`, `L^{1/r1}` while `∫ f_L g_L` grows like `L`.
//!
//! Everything is evaluated in closed form per scale; [`rasterize`] gives a
//! sampled version for cross-checks on small families.

mod atom;
mod cas1;
mod family;
mod growth;

pub use atom::{build_atom, min_resolution, Atom};
pub use cas1::{default_first_scale, scale_count, solve_cas1, Cas1Solution, CountRule, SharpnessParams};
pub use family::{
    atomic_besov_bracket, atomic_besov_upper, atomic_distribution, build_family, pairing,
    rasterize, AtomicSum, ScaleGroup,
};
pub use growth::{growth_experiment, GrowthReport, GrowthRow, SlopeCheck};
