//! Refined Sobolev-type inequalities between Lorentz and Besov norms:
//! parameter algebra, the pointwise Hedberg-type bound, the admissibility
//! region for general `(r0, r1)`, and randomized verification suites.
//!
//! Verification is one-sided: a suite can show bounded ratios or exhibit
//! growth, never prove an inequality.

mod generators;
mod hedberg;
mod params;
mod region;
mod verify;

pub use generators::{generate, Band, GeneratorKind, Mode, TestField};
pub use hedberg::{hedberg_constant, hedberg_lp_sides, hedberg_pointwise, HedbergReport};
pub use params::{derive_params, CaseParams, CONSISTENCY_TOLERANCE};
pub use region::{theorem5_admissible, AdmissibilityReport, RegionSpec};
pub use verify::{
    run_suite, standard_decomposition, verify_case, SuiteConfig, SuiteSummary, VerificationReport,
};
