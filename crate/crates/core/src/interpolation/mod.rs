//! Real interpolation for the couples `(L¹, L^∞)`, `(L^{p0,r0}, L^{p1,r1})`
//! and `(ℓ^{q0}, ℓ^{q1})`.
//!
//! The J-method infimum is never computed: it is bounded above by
//! canonical decompositions through [`j_bound`] and below by the K-method
//! norm [`interpolation_norm_k`].

mod duality;
mod jmethod;
mod kfunctional;
mod level_sets;
mod partition;
mod reiteration;
mod suites;

pub use duality::{duality_pairing_check, DUALITY_CONSTANT};
pub use jmethod::{j_bound, j_bound_constant, j_bound_from_norms, Couple, Endpoint, JDecomposition};
pub use kfunctional::{
    interpolation_norm_k, k_functional_l1_linf, profile_interpolation_norm_k,
    profile_k_functional, InterpParams,
};
pub use level_sets::{
    lemma1_constant, lemma1_decompose, lemma1_lhs, level_labels, level_set_decomposition,
};
pub use partition::{ell_partition, partition_constant, BlockStats, PartitionResult};
pub use reiteration::{reiteration_estimate, reiteration_ratio, ReiterationParams};
pub use suites::{
    random_measured, random_sparse_sequence, ratio_interval, reiteration_check,
    run_interp_suite, InterpCheck, SuiteRecord,
};
