use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exponent::recip;
use crate::inequalities::{derive_params, CaseParams, CONSISTENCY_TOLERANCE};

/// Exponents of the atomic family: `δ` (log2 of the number of atoms per
/// scale), `X` and `Y` (log2 of the coefficients of `f_L` and `g_L`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cas1Solution {
    pub delta: f64,
    pub x: f64,
    pub y: f64,
}

impl Cas1Solution {
    /// Residuals of the four scaling equations (one per Besov bound)
    /// `X + α - (n-δ)/q0`, `X - β - (n-δ)/q1`, `Y - α - (n-δ)/q0'`,
    /// `Y + β - (n-δ)/q1'` and of their consequence `X + Y - n + δ`.
    pub fn residuals(&self, n: f64, alpha: f64, beta: f64, q0: f64, q1: f64) -> [f64; 5] {
        let (a0, a1) = (recip(q0), recip(q1));
        let (d, x, y) = (self.delta, self.x, self.y);
        let m = n - d;
        [
            x + alpha - m * a0,
            x - beta - m * a1,
            y - alpha - m * (1.0 - a0),
            y + beta - m * (1.0 - a1),
            x + y - n + d,
        ]
    }
}

/// Solves the scaling system for `(δ, X, Y)`:
/// `δ = n - (α+β)/(1/q0 - 1/q1)`, `X = -α + (n-δ)/q0`,
/// `Y = α + (n-δ)(1 - 1/q0)`.
///
/// Errors when `q0 = q1` (the system is singular) and with
/// [`Error::Infeasible`] when `δ < 0`, i.e. fewer than one atom per scale.
pub fn solve_cas1(n: usize, alpha: f64, beta: f64, q0: f64, q1: f64) -> Result<Cas1Solution> {
    if !(n == 1 || n == 2) {
        return Err(invalid(format!("dimension must be 1 or 2, got {n}")));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(format!("{name} must be positive and finite, got {v}")));
        }
    }
    for (name, q) in [("q0", q0), ("q1", q1)] {
        crate::exponent::check_exponent(name, q)?;
    }
    if q0 == q1 {
        return Err(invalid(format!("q0 and q1 must differ, both are {q0}")));
    }
    let nf = n as f64;
    let gap = recip(q0) - recip(q1);
    let delta = nf - (alpha + beta) / gap;
    if delta < -CONSISTENCY_TOLERANCE {
        return Err(Error::Infeasible(format!(
            "delta = {delta} < 0: the scaling system needs fewer than one atom per scale"
        )));
    }
    let delta = delta.max(0.0);
    let x = -alpha + (nf - delta) * recip(q0);
    let y = alpha + (nf - delta) * (1.0 - recip(q0));
    Ok(Cas1Solution { delta, x, y })
}

/// How the integer count `A_j` approximates `2^{δj}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountRule {
    /// `round(2^{δ(j+1/2)})` clamped to `[⌈2^{δj}⌉, ⌊2^{δ(j+1)}⌋]`, or
    /// `⌈2^{δj}⌉` when that bracket holds no integer.
    #[default]
    Balanced,
    /// `⌈2^{δj}⌉`; equals `2^{δj}` when `δj` is an integer.
    Lower,
}

/// Everything needed to build the families `f_L`, `g_L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpnessParams {
    pub dim: usize,
    pub case: CaseParams,
    pub solution: Cas1Solution,
    /// First scale `j1 >= 0`; the family uses `j1, …, j1 + L - 1`.
    /// Defaults to [`default_first_scale`].
    pub j1: i32,
    pub count_rule: CountRule,
}

impl SharpnessParams {
    /// Validates the exponents, solves the scaling system and sets the
    /// Lorentz index `r` of the lower bound.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dim: usize,
        alpha: f64,
        beta: f64,
        q0: f64,
        q1: f64,
        r0: f64,
        r1: f64,
        r: f64,
    ) -> Result<Self> {
        let solution = solve_cas1(dim, alpha, beta, q0, q1)?;
        let case = derive_params(alpha, beta, q0, q1, r0, r1)?.with_r(r)?;
        if !(case.p > 1.0 && case.p.is_finite()) {
            return Err(invalid(format!("target exponent p = {} must lie in (1, ∞)", case.p)));
        }
        Ok(Self {
            dim,
            case,
            solution,
            j1: default_first_scale(solution.delta),
            count_rule: CountRule::Balanced,
        })
    }

    pub fn with_j1(mut self, j1: i32) -> Result<Self> {
        if j1 < 0 {
            return Err(invalid(format!("first scale must be >= 0, got {j1}")));
        }
        self.j1 = j1;
        Ok(self)
    }

    pub fn with_count_rule(mut self, rule: CountRule) -> Self {
        self.count_rule = rule;
        self
    }

    /// `A_j` for `j >= 0`.
    pub fn count(&self, j: i32) -> Result<u64> {
        scale_count(self.solution.delta, j, self.count_rule)
    }
}

/// Smallest `j1` with `2^{δ j1} >= 16`, capped at 16 (1 when `δ = 0`).
///
/// From there on `A_j / 2^{δj}` stays close to `2^{δ/2}`; starting at
/// `j = 1` the first few ratios swing between 1 and `2^δ` and bias slope
/// fits over short ranges of `L`.
pub fn default_first_scale(delta: f64) -> i32 {
    if delta <= 0.0 {
        1
    } else {
        ((4.0 / delta).ceil() as i32).clamp(1, 16)
    }
}

/// `A_j` under `rule`, failing once the count leaves the exactly
/// representable integers.
pub fn scale_count(delta: f64, j: i32, rule: CountRule) -> Result<u64> {
    let jf = j as f64;
    let lo = (delta * jf).exp2().ceil();
    let hi = (delta * (jf + 1.0)).exp2().floor();
    if lo > 2f64.powi(53) {
        return Err(Error::PlacementOverflow(format!(
            "atom count 2^{} at scale {j} is not representable",
            delta * jf
        )));
    }
    let a = match rule {
        CountRule::Lower => lo,
        CountRule::Balanced if lo > hi => lo,
        CountRule::Balanced => (delta * (jf + 0.5)).exp2().round().clamp(lo, hi),
    };
    Ok(a as u64)
}
