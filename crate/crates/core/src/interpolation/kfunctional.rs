use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exponent::check_exponent;
use crate::norms::{rearrangement, MeasuredValues, RearrangementProfile};

/// Parameters `θ`, `r` of `[A0, A1]_{θ,r}` and the geometric base `ρ` of
/// the weighted J-method sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterpParams {
    pub theta: f64,
    #[serde(with = "crate::exponent::serde_inf")]
    pub r: f64,
    pub rho: f64,
}

impl InterpParams {
    pub fn new(theta: f64, r: f64, rho: f64) -> Result<Self> {
        let out = Self { theta, r, rho };
        out.validate()?;
        Ok(out)
    }

    /// `ρ = 2`.
    pub fn dyadic(theta: f64, r: f64) -> Result<Self> {
        Self::new(theta, r, 2.0)
    }

    /// `θ = 1 - 1/p`, the parameter for which `[L¹, L^∞]_{θ,r} = L^{p,r}`.
    pub fn for_lorentz(p: f64, r: f64) -> Result<Self> {
        Self::dyadic(1.0 - 1.0 / p, r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(invalid(format!("theta must lie in (0, 1), got {}", self.theta)));
        }
        check_exponent("r", self.r)?;
        if !(self.rho > 0.0 && self.rho.is_finite() && self.rho != 1.0) {
            return Err(invalid(format!("rho must be positive and != 1, got {}", self.rho)));
        }
        Ok(())
    }
}

/// `K(t, f; L¹, L^∞) = ∫_0^t f*(s) ds`, exact on the step rearrangement.
pub fn k_functional_l1_linf(v: &MeasuredValues, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    Ok(profile_k_functional(&rearrangement(v), t))
}

/// `∫_0^t f*(s) ds` for an explicit profile.
pub fn profile_k_functional(prof: &RearrangementProfile, t: f64) -> f64 {
    let mut acc = 0.0;
    for (a, b, v) in prof.pieces() {
        if t <= a {
            break;
        }
        acc += v * (t.min(b) - a);
    }
    acc
}

/// `(∫_0^∞ (t^{-θ} K(t))^r dt/t)^{1/r}` for the `(L¹, L^∞)` couple.
///
/// `K` is piecewise linear, `K(t) = a_i + v_i t` on the i-th step. The
/// first piece (`a = 0`) and the constant tail have closed forms; middle
/// pieces are integrated exactly by the binomial theorem for integer `r`
/// and by Gauss-Legendre quadrature in `log t` otherwise. For `r = ∞` the
/// supremum of `t^{-θ}(a + vt)` on a piece is attained at an endpoint, so
/// only breakpoints are inspected. `ρ` is not used.
pub fn interpolation_norm_k(v: &MeasuredValues, params: InterpParams) -> Result<f64> {
    params.validate()?;
    profile_interpolation_norm_k(&rearrangement(v), params)
}

pub fn profile_interpolation_norm_k(
    prof: &RearrangementProfile,
    params: InterpParams,
) -> Result<f64> {
    params.validate()?;
    let Some(first) = prof.steps().first() else {
        return Ok(0.0);
    };
    let support = prof.support_mass();
    if support.is_infinite() {
        return Err(Error::Divergent(
            "K-functional grows without bound on an infinite tail".into(),
        ));
    }
    let theta = params.theta;
    // rescale to max value 1 and support 1
    let vmax = first.value;
    let scale = vmax * support.powf(1.0 - theta);
    let pieces: Vec<(f64, f64, f64)> = prof
        .pieces()
        .map(|(a, b, v)| (a / support, b / support, v / vmax))
        .collect();
    let l1: f64 = pieces.iter().map(|(a, b, v)| v * (b - a)).sum();

    if params.r.is_infinite() {
        let mut k = 0.0;
        let mut best: f64 = 0.0;
        for &(a, b, v) in &pieces {
            k += v * (b - a);
            best = best.max(k * b.powf(-theta));
        }
        return Ok(scale * best);
    }

    let r = params.r;
    let mut total = 0.0;
    let mut k_start = 0.0;
    for (i, &(s0, s1, v)) in pieces.iter().enumerate() {
        if i == 0 {
            total += s1.powf(r * (1.0 - theta)) / (r * (1.0 - theta));
        } else {
            let a = k_start - v * s0;
            total += linear_piece_integral(a.max(0.0), v, s0, s1, theta, r);
        }
        k_start += v * (s1 - s0);
    }
    // tail: K = ‖f‖_1 on [1, ∞)
    total += l1.powf(r) / (theta * r);
    Ok(scale * total.powf(1.0 / r))
}

/// `∫_{s0}^{s1} (a + v t)^r t^{-θr-1} dt` for `0 < s0 < s1`.
fn linear_piece_integral(a: f64, v: f64, s0: f64, s1: f64, theta: f64, r: f64) -> f64 {
    if r.fract() == 0.0 && r <= 64.0 {
        let n = r as u32;
        let mut sum = 0.0;
        let mut binom = 1.0;
        for k in 0..=n {
            // (a + vt)^n = Σ C(n,k) a^k (vt)^{n-k}
            let e = (n - k) as f64 - theta * r;
            let coeff = binom * a.powi(k as i32) * v.powi((n - k) as i32);
            if coeff != 0.0 {
                sum += coeff * power_increment(s0, s1, e);
            }
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        sum
    } else {
        let (u0, u1) = (s0.ln(), s1.ln());
        let panels = ((u1 - u0) / 0.25).ceil().max(1.0) as usize;
        let h = (u1 - u0) / panels as f64;
        let rule = gauss_legendre_16();
        let mut sum = 0.0;
        for p in 0..panels {
            let mid = u0 + (p as f64 + 0.5) * h;
            for &(x, w) in rule.iter() {
                let u = mid + 0.5 * h * x;
                let t = u.exp();
                sum += 0.5 * h * w * (a + v * t).powf(r) * (-theta * r * u).exp();
            }
        }
        sum
    }
}

/// `∫_{s0}^{s1} t^{e-1} dt`, stable for thin intervals.
fn power_increment(s0: f64, s1: f64, e: f64) -> f64 {
    let rel = ((s1 - s0) / s0).ln_1p();
    if e == 0.0 {
        rel
    } else {
        s0.powf(e) * (e * rel).exp_m1() / e
    }
}

/// 16-point Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton
/// iteration on the Legendre polynomial.
fn gauss_legendre_16() -> &'static [(f64, f64); 16] {
    use std::sync::OnceLock;
    static RULE: OnceLock<[(f64, f64); 16]> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        let mut out = [(0.0, 0.0); N];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=N {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}
