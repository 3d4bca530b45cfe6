use serde::{Deserialize, Serialize};

use super::lorentz::lebesgue_norm;
use super::measured::MeasuredValues;
use crate::error::{invalid, Result};
use crate::exponent::check_exponent;
use crate::spectral::{BlockDecomposition, SampledField};

/// Smoothness `s`, inner integrability `p` and scale summation `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesovParams {
    pub s: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub p: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub q: f64,
}

impl BesovParams {
    pub fn new(s: f64, p: f64, q: f64) -> Result<Self> {
        let out = Self { s, p, q };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return Err(invalid(format!("smoothness s must be finite, got {}", self.s)));
        }
        check_exponent("p", self.p)?;
        check_exponent("q", self.q)
    }
}

/// `‖f‖_{L^p}` on the grid measure.
pub fn field_lebesgue_norm(f: &SampledField, p: f64) -> Result<f64> {
    lebesgue_norm(&MeasuredValues::from_field(f), p)
}

/// `2^{js}‖Δ_j f‖_{L^p}` for every stored block.
pub fn weighted_block_norms(d: &BlockDecomposition, s: f64, p: f64) -> Result<Vec<(i32, f64)>> {
    d.blocks()
        .map(|(j, b)| Ok((j, (s * j as f64).exp2() * field_lebesgue_norm(b, p)?)))
        .collect()
}

/// `(Σ_j 2^{jsq}‖Δ_j f‖_{L^p}^q)^{1/q}` over the stored blocks.
pub fn besov_seminorm(d: &BlockDecomposition, params: BesovParams) -> Result<f64> {
    params.validate()?;
    let terms = weighted_block_norms(d, params.s, params.p)?;
    Ok(scaled_ell_norm(terms.into_iter().map(|(_, t)| t), params.q))
}

/// `‖(Σ_j 2^{jsq}|Δ_j f|^q)^{1/q}‖_{L^p}` over the stored blocks.
pub fn triebel_seminorm(d: &BlockDecomposition, params: BesovParams) -> Result<f64> {
    params.validate()?;
    let weights: Vec<(f64, &[f64])> = d
        .blocks()
        .map(|(j, b)| ((params.s * j as f64).exp2(), b.samples()))
        .collect();
    let n = d.grid().len();
    let pointwise: Vec<f64> = (0..n)
        .map(|i| scaled_ell_norm(weights.iter().map(|(w, b)| w * b[i].abs()), params.q))
        .collect();
    let masses = vec![d.grid().cell_mass(); n];
    lebesgue_norm(&MeasuredValues::new(pointwise, masses)?, params.p)
}

/// ℓ^q norm of nonnegative terms, rescaled by the largest term.
fn scaled_ell_norm(terms: impl Iterator<Item = f64>, q: f64) -> f64 {
    let terms: Vec<f64> = terms.collect();
    let m = terms.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    if q.is_infinite() {
        return m;
    }
    m * terms.iter().map(|t| (t / m).powf(q)).sum::<f64>().powf(1.0 / q)
}
