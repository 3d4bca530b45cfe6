use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exponent::{check_exponent, from_recip, recip};

/// Tolerance for consistency of derived exponents.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-12;

/// One inequality instance
/// `‖f‖_{L^{p,r}} <= C ‖f‖_{B^{α,q0}_{r0}}^{1-θ} ‖f‖_{B^{-β,q1}_{r1}}^θ`.
///
/// `θ = α/(α+β)`, `1/p = (1-θ)/q0 + θ/q1` and
/// `1/r* = (1-θ)/r0 + θ/r1` are derived. `q_swapped` records that the
/// input had `q0 > q1`; the exponents are kept as given because swapping
/// them would change the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    pub alpha: f64,
    pub beta: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub q0: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub q1: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r0: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r1: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r: f64,
    pub theta: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub p: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r_star: f64,
    pub q_swapped: bool,
}

/// Derives `θ`, `p` and `r*`; the Lorentz index `r` defaults to `r*`.
pub fn derive_params(alpha: f64, beta: f64, q0: f64, q1: f64, r0: f64, r1: f64) -> Result<CaseParams> {
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(invalid(format!("{name} must be positive and finite, got {x}")));
        }
    }
    for (name, x) in [("q0", q0), ("q1", q1), ("r0", r0), ("r1", r1)] {
        check_exponent(name, x)?;
    }
    let theta = alpha / (alpha + beta);
    let one_minus = beta / (alpha + beta);
    let p = from_recip(one_minus * recip(q0) + theta * recip(q1));
    let r_star = from_recip(one_minus * recip(r0) + theta * recip(r1));
    let case = CaseParams {
        alpha,
        beta,
        q0,
        q1,
        r0,
        r1,
        r: r_star,
        theta,
        p,
        r_star,
        q_swapped: q0 > q1,
    };
    let cancel = case.exponent_cancellation();
    if cancel.abs() > CONSISTENCY_TOLERANCE * alpha.max(beta) {
        return Err(invalid(format!("exponent cancellation failed: {cancel}")));
    }
    Ok(case)
}

impl CaseParams {
    /// Same case with Lorentz index `r`.
    pub fn with_r(mut self, r: f64) -> Result<Self> {
        check_exponent("r", r)?;
        self.r = r;
        Ok(self)
    }

    /// `α(1-θ) - βθ`, zero by the choice of `θ`; it is the exponent of
    /// `2^j` left over when a single block is inserted in the bound.
    pub fn exponent_cancellation(&self) -> f64 {
        self.alpha * (1.0 - self.theta) - self.beta * self.theta
    }

    /// Rejects manual values of `θ`, `p` or `r*` that disagree with the
    /// derived ones by more than `1e-12` (in reciprocal form for exponents).
    pub fn check_overrides(&self, theta: Option<f64>, p: Option<f64>, r_star: Option<f64>) -> Result<()> {
        if let Some(t) = theta {
            if (t - self.theta).abs() > CONSISTENCY_TOLERANCE {
                return Err(invalid(format!("theta={t} is inconsistent with derived {}", self.theta)));
            }
        }
        for (name, given, derived) in [("p", p, self.p), ("r*", r_star, self.r_star)] {
            if let Some(x) = given {
                if (recip(x) - recip(derived)).abs() > CONSISTENCY_TOLERANCE {
                    return Err(invalid(format!("{name}={x} is inconsistent with derived {derived}")));
                }
            }
        }
        Ok(())
    }

    /// Errors when `q0 = q1`, for statements that need distinct exponents.
    pub fn require_distinct_q(&self) -> Result<()> {
        if self.q0 == self.q1 {
            return Err(invalid(format!("q0 and q1 must differ, both are {}", self.q0)));
        }
        Ok(())
    }

    /// `1/r - 1/r*`: positive when `r` is below the critical index.
    pub fn index_gap(&self) -> f64 {
        recip(self.r) - recip(self.r_star)
    }
}
