use serde::{Deserialize, Serialize};

use super::measured::{rearrangement, MeasuredValues, RearrangementProfile};
use crate::error::{invalid, Error, Result};
use crate::exponent::check_exponent;

/// Exponents of `L^{p,r}`: `1 < p < ∞`, `1 <= r <= ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzParams {
    #[serde(with = "crate::exponent::serde_inf")]
    pub p: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r: f64,
}

impl LorentzParams {
    pub fn new(p: f64, r: f64) -> Result<Self> {
        let out = Self { p, r };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0 && self.p.is_finite()) {
            return Err(invalid(format!("Lorentz p must lie in (1, inf), got {}", self.p)));
        }
        check_exponent("Lorentz r", self.r)
    }
}

/// `(∫_0^∞ (s^{1/p} f*(s))^r ds/s)^{1/r}`, or `sup_s s^{1/p} f*(s)` for
/// `r = ∞`, evaluated exactly on the step rearrangement.
pub fn lorentz_norm(v: &MeasuredValues, params: LorentzParams) -> Result<f64> {
    params.validate()?;
    profile_lorentz_norm(&rearrangement(v), params)
}

/// `(r/p)^{1/r}·‖f‖_{p,r}`, the normalization for which the norm is
/// nonincreasing in `r` and equals `sup_s s^{1/p} f*(s)` at `r = ∞`.
pub fn normalized_lorentz_norm(v: &MeasuredValues, params: LorentzParams) -> Result<f64> {
    let raw = lorentz_norm(v, params)?;
    Ok(raw * lorentz_normalization(params))
}

/// `(r/p)^{1/r}` (1 for `r = ∞`).
pub fn lorentz_normalization(params: LorentzParams) -> f64 {
    if params.r.is_infinite() {
        1.0
    } else {
        (params.r / params.p).powf(1.0 / params.r)
    }
}

/// Lorentz norm of an explicit rearrangement profile.
///
/// Values and masses are rescaled by the largest value and the support
/// mass before summing, so huge or tiny inputs do not overflow.
pub fn profile_lorentz_norm(prof: &RearrangementProfile, params: LorentzParams) -> Result<f64> {
    params.validate()?;
    let steps = prof.steps();
    let Some(first) = steps.first() else {
        return Ok(0.0);
    };
    let support = prof.support_mass();
    if support.is_infinite() {
        return Err(Error::Divergent(
            "rearrangement has a positive value on an infinite tail".into(),
        ));
    }
    let vmax = first.value;
    let inv_p = 1.0 / params.p;
    if params.r.is_infinite() {
        let sup = steps
            .iter()
            .map(|st| (st.value / vmax) * (st.end / support).powf(inv_p))
            .fold(0.0, f64::max);
        return Ok(vmax * support.powf(inv_p) * sup);
    }
    let r = params.r;
    let a = r * inv_p;
    let mut total = 0.0;
    let mut start = 0.0_f64;
    for st in steps {
        let s0 = start / support;
        let s1 = st.end / support;
        // s1^a - s0^a without cancellation when the step is thin
        let increment = if s0 == 0.0 {
            s1.powf(a)
        } else {
            s0.powf(a) * (a * ((s1 - s0) / s0).ln_1p()).exp_m1()
        };
        total += (st.value / vmax).powf(r) * increment;
        start = st.end;
    }
    Ok(vmax * support.powf(inv_p) * (total / a).powf(1.0 / r))
}

/// `(Σ mass·value^p)^{1/p}`, or the largest value for `p = ∞`.
pub fn lebesgue_norm(v: &MeasuredValues, p: f64) -> Result<f64> {
    check_exponent("p", p)?;
    let vmax = v.max_value();
    if vmax == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(vmax);
    }
    let sum: f64 = v.iter().map(|(x, m)| m * (x / vmax).powf(p)).sum();
    Ok(vmax * sum.powf(1.0 / p))
}
