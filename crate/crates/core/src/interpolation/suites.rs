use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::duality::duality_pairing_check;
use super::kfunctional::{interpolation_norm_k, InterpParams};
use super::level_sets::{lemma1_decompose, lemma1_lhs};
use super::partition::ell_partition;
use super::reiteration::{reiteration_ratio, ReiterationParams};
use crate::error::Result;
use crate::exponent::{conjugate, ell_norm};
use crate::norms::{lorentz_norm, LorentzParams, MeasuredValues};
use crate::rng::{instance_rng, SuiteRng};

/// One randomized check of the interpolation toolbox.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum InterpCheck {
    /// K-method norm against `‖f‖_{p,r}` with `θ = 1 - 1/p`.
    KEquivalence {
        #[serde(with = "crate::exponent::serde_inf")] p: f64,
        #[serde(with = "crate::exponent::serde_inf")] r: f64,
    },
    /// Level-set decomposition bound against `‖f‖_{p,r}`.
    Lemma1 {
        #[serde(with = "crate::exponent::serde_inf")] p: f64,
        #[serde(with = "crate::exponent::serde_inf")] r: f64,
    },
    /// Partition statistics against `‖λ‖_{ℓ^{r0}}`.
    Partition {
        #[serde(with = "crate::exponent::serde_inf")] q0: f64,
        #[serde(with = "crate::exponent::serde_inf")] q1: f64,
        #[serde(with = "crate::exponent::serde_inf")] r0: f64,
    },
    /// `∫|fg|` against `‖f‖_{p,r}‖g‖_{p',r'}`.
    Duality {
        #[serde(with = "crate::exponent::serde_inf")] p: f64,
        #[serde(with = "crate::exponent::serde_inf")] r: f64,
    },
    /// Interpolation-norm estimate against the target Lorentz norm.
    Reiteration(ReiterationParams),
}

/// `(instance_id, lhs, rhs, ratio)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub instance_id: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Random `|f|` with log-normal values (about 10% zeros) and log-normal
/// masses, or unit masses when `counting`.
pub fn random_measured(rng: &mut SuiteRng, len: usize, counting: bool) -> MeasuredValues {
    let mut values = Vec::with_capacity(len);
    let mut masses = Vec::with_capacity(len);
    for _ in 0..len {
        let z: f64 = StandardNormal.sample(rng);
        values.push(if rng.random::<f64>() < 0.1 { 0.0 } else { (2.0 * z).exp() });
        let w: f64 = StandardNormal.sample(rng);
        masses.push(if counting { 1.0 } else { w.exp() });
    }
    MeasuredValues::new(values, masses).expect("generated entries are valid")
}

/// Sparse signed sequence: about 70% zeros, log-normal magnitudes.
pub fn random_sparse_sequence(rng: &mut SuiteRng, len: usize) -> Vec<f64> {
    (0..len)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            if rng.random::<f64>() < 0.7 {
                0.0
            } else if rng.random::<bool>() {
                (2.0 * z).exp()
            } else {
                -(2.0 * z).exp()
            }
        })
        .collect()
}

fn run_one(check: &InterpCheck, rng: &mut SuiteRng) -> Result<(f64, f64)> {
    let len = rng.random_range(1..=256);
    match *check {
        InterpCheck::KEquivalence { p, r } => {
            let v = random_measured(rng, len, false);
            let lhs = interpolation_norm_k(&v, InterpParams::for_lorentz(p, r)?)?;
            Ok((lhs, lorentz_norm(&v, LorentzParams::new(p, r)?)?))
        }
        InterpCheck::Lemma1 { p, r } => {
            let params = LorentzParams::new(p, r)?;
            let v = random_measured(rng, len, true);
            let d = lemma1_decompose(&v, params)?;
            Ok((lemma1_lhs(&d, params)?, lorentz_norm(&v, params)?))
        }
        InterpCheck::Partition { q0, q1, r0 } => {
            let lambda = random_sparse_sequence(rng, 100);
            let part = ell_partition(&lambda, q0, q1, r0)?;
            Ok((part.lhs(), ell_norm(lambda.iter().map(|x| x.abs()), r0)))
        }
        InterpCheck::Duality { p, r } => {
            let f = random_measured(rng, len, false);
            let g_values: Vec<f64> = if rng.random::<bool>() {
                random_measured(rng, len, true).values().to_vec()
            } else {
                // near-extremal partner: g = f^{p-1} up to noise
                f.values()
                    .iter()
                    .map(|x| {
                        let z: f64 = StandardNormal.sample(rng);
                        x.powf(p - 1.0) * (0.1 * z).exp()
                    })
                    .collect()
            };
            let g = f.with_values(g_values)?;
            let rhs = lorentz_norm(&f, LorentzParams::new(p, r)?)?
                * lorentz_norm(&g, LorentzParams::new(conjugate(p), conjugate(r))?)?;
            if rhs == 0.0 {
                return Ok((0.0, 0.0));
            }
            let ratio = duality_pairing_check(&f, &g, p, r)?;
            Ok((ratio * rhs, rhs))
        }
        InterpCheck::Reiteration(params) => {
            let v = random_measured(rng, len, false);
            let (lhs, rhs, _) = reiteration_ratio(&v, &params)?;
            Ok((lhs, rhs))
        }
    }
}

/// Runs `suite_size` random instances; instance `i` draws from
/// `instance_rng(seed, i)`, so results do not depend on thread count.
/// Instances whose norms vanish are redrawn within the same stream.
pub fn run_interp_suite(check: &InterpCheck, suite_size: usize, seed: u64) -> Result<Vec<SuiteRecord>> {
    (0..suite_size as u64)
        .into_par_iter()
        .map(|id| {
            let mut rng = instance_rng(seed, id);
            loop {
                let (lhs, rhs) = run_one(check, &mut rng)?;
                if rhs > 0.0 {
                    return Ok(SuiteRecord {
                        instance_id: id,
                        lhs,
                        rhs,
                        ratio: lhs / rhs,
                    });
                }
            }
        })
        .collect()
}

/// Smallest and largest ratio of a suite (`None` when empty).
pub fn ratio_interval(records: &[SuiteRecord]) -> Option<(f64, f64)> {
    if records.is_empty() {
        return None;
    }
    Some(records.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.ratio), hi.max(r.ratio))
    }))
}

/// Ratio interval of the reiteration estimate over a random suite.
pub fn reiteration_check(
    params: &ReiterationParams,
    suite_size: usize,
    seed: u64,
) -> Result<Option<(f64, f64)>> {
    params.validate()?;
    let records = run_interp_suite(&InterpCheck::Reiteration(*params), suite_size, seed)?;
    Ok(ratio_interval(&records))
}
