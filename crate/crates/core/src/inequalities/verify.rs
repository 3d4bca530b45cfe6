use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::{generate, Band, GeneratorKind};
use super::params::CaseParams;
use crate::error::{Error, Result};
use crate::interpolation::Endpoint;
use crate::norms::{besov_seminorm, BesovParams, MeasuredValues};
use crate::rng::{instance_rng, instance_seed};
use crate::spectral::{decompose, max_scale, reconstruct, BlockDecomposition, CutoffProfile, GridSpec};

/// One evaluated instance: `lhs = ‖f‖_{L^{p,r}}`,
/// `rhs = ‖f‖_{B^{α,q0}_{r0}}^{1-θ} ‖f‖_{B^{-β,q1}_{r1}}^θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: CaseParams,
    pub instance_id: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub descriptor: String,
}

/// Evaluates both sides for `f = lowpass + Σ_j Δ_j f`.
///
/// `L^{p,r}` falls back to `L^p` when `p ∈ {1, ∞}`. An instance with
/// `rhs = 0 < lhs` would contradict the inequality and is returned as
/// [`Error::Falsified`].
pub fn verify_case(case: &CaseParams, d: &BlockDecomposition) -> Result<VerificationReport> {
    let f = reconstruct(d);
    let lhs = Endpoint::lorentz_or_lebesgue(case.p, case.r)?.norm(&MeasuredValues::from_field(&f))?;
    let b0 = besov_seminorm(d, BesovParams::new(case.alpha, case.q0, case.r0)?)?;
    let b1 = besov_seminorm(d, BesovParams::new(-case.beta, case.q1, case.r1)?)?;
    let rhs = b0.powf(1.0 - case.theta) * b1.powf(case.theta);
    if rhs == 0.0 && lhs > 0.0 {
        return Err(Error::Falsified(format!(
            "right-hand side vanishes while ‖f‖ = {lhs}"
        )));
    }
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(VerificationReport {
        case: *case,
        instance_id: 0,
        lhs,
        rhs,
        ratio,
        descriptor: String::new(),
    })
}

/// Settings of a randomized suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub generator: GeneratorKind,
    pub count: usize,
    pub seed: u64,
    /// Points of the 1-D grid (period `2π`).
    pub grid_points: usize,
    pub band: Band,
}

impl SuiteConfig {
    pub fn new(generator: GeneratorKind, count: usize, seed: u64, grid_points: usize) -> Self {
        Self {
            generator,
            count,
            seed,
            grid_points,
            band: Band::default(),
        }
    }
}

/// Reports ordered by instance id, with the largest ratio and the
/// instance attaining it (`None` for an empty suite).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub reports: Vec<VerificationReport>,
    pub max_ratio: Option<f64>,
    pub argmax: Option<u64>,
    pub argmax_descriptor: Option<String>,
}

/// Decomposition of a field over `j = 0..=max_scale(grid)`.
pub fn standard_decomposition(f: &crate::spectral::SampledField) -> Result<BlockDecomposition> {
    decompose(f, &CutoffProfile::default(), 0, max_scale(f.grid()))
}

/// Runs `count` instances of `generator` in parallel; instance `i` uses
/// the stream `instance_rng(seed, i)`, so the summary depends only on the
/// configuration.
pub fn run_suite(case: &CaseParams, config: &SuiteConfig) -> Result<SuiteSummary> {
    let grid = GridSpec::torus_1d(config.grid_points)?;
    config.band.validate()?;
    let reports: Vec<VerificationReport> = (0..config.count as u64)
        .into_par_iter()
        .map(|id| {
            let mut rng = instance_rng(config.seed, id);
            let field = generate(config.generator, config.band, &mut rng, instance_seed(config.seed, id))?;
            let d = standard_decomposition(&field.sample(&grid)?)?;
            let mut rep = verify_case(case, &d)?;
            rep.instance_id = id;
            rep.descriptor = field.descriptor;
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let best = reports
        .iter()
        .fold(None::<&VerificationReport>, |acc, r| match acc {
            Some(a) if a.ratio >= r.ratio => Some(a),
            _ => Some(r),
        });
    Ok(SuiteSummary {
        max_ratio: best.map(|r| r.ratio),
        argmax: best.map(|r| r.instance_id),
        argmax_descriptor: best.map(|r| r.descriptor.clone()),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::derive_params;

    #[test]
    fn empty_suite_has_no_maximum() {
        let case = derive_params(0.5, 0.5, 1.0, f64::INFINITY, 2.0, 2.0).unwrap();
        let s = run_suite(&case, &SuiteConfig::new(GeneratorKind::Lacunary, 0, 1, 256)).unwrap();
        assert!(s.reports.is_empty() && s.max_ratio.is_none() && s.argmax.is_none());
    }

    #[test]
    fn single_block_ratios_coincide() {
        let case = derive_params(0.5, 0.5, 1.0, f64::INFINITY, 1.0, f64::INFINITY)
            .unwrap()
            .with_r(2.0)
            .unwrap();
        let s = run_suite(&case, &SuiteConfig::new(GeneratorKind::SingleBlock, 12, 9, 512)).unwrap();
        let first = s.reports[0].ratio;
        for r in &s.reports {
            assert!((r.ratio - first).abs() <= 1e-9 * first, "{} vs {first}", r.ratio);
        }
    }

    #[test]
    fn dilation_leaves_ratio_unchanged() {
        let case = derive_params(0.5, 0.5, 1.0, f64::INFINITY, 2.0, 2.0).unwrap();
        let grid = GridSpec::torus_1d(1024).unwrap();
        let mut rng = crate::rng::seeded(4);
        let f = generate(GeneratorKind::MultiBlockRandom, Band::default(), &mut rng, 4).unwrap();
        let a = verify_case(&case, &standard_decomposition(&f.sample(&grid).unwrap()).unwrap()).unwrap();
        let b = verify_case(&case, &standard_decomposition(&f.dilated().sample(&grid).unwrap()).unwrap())
            .unwrap();
        assert!((a.ratio - b.ratio).abs() < 0.01 * a.ratio);
    }

    #[test]
    fn zero_field_is_not_a_counterexample() {
        let case = derive_params(0.5, 0.5, 1.0, 2.0, 2.0, 2.0).unwrap();
        let g = GridSpec::torus_1d(64).unwrap();
        let d = standard_decomposition(&crate::spectral::SampledField::zeros(g)).unwrap();
        let rep = verify_case(&case, &d).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.ratio), (0.0, 0.0, 0.0));
    }
}
