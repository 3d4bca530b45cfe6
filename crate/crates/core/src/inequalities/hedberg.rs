use crate::error::{invalid, Result};
use crate::exponent::recip;
use crate::norms::{field_lebesgue_norm, triebel_seminorm, BesovParams};
use crate::spectral::{BlockDecomposition, SampledField};

/// Constant of the pointwise bound
/// `|f(x)| <= C0 A_α(x)^{1-θ} A_β(x)^θ`, `θ = α/(α+β)`:
/// `C0(α, β) = 1 + 1/(2^α - 1) + 1/(2^β - 1)`.
///
/// `|f(x)| <= Σ_j min(2^{-jα}A_α, 2^{jβ}A_β)`; the two terms cross at a
/// real index `t`, where both equal `A_α^{1-θ}A_β^θ`. With `j0 = ⌊t⌋` and
/// `u = t - j0`, the two geometric tails sum to
/// `2^{-uβ}/(1-2^{-β}) + 2^{-(1-u)α}/(1-2^{-α})` times that value. This is
/// convex in `u`, and both endpoints `u = 0, 1` give `C0`.
pub fn hedberg_constant(alpha: f64, beta: f64) -> Result<f64> {
    check_positive(alpha, beta)?;
    Ok(1.0 + 1.0 / (alpha.exp2() - 1.0) + 1.0 / (beta.exp2() - 1.0))
}

/// Output of [`hedberg_pointwise`].
#[derive(Debug, Clone, PartialEq)]
pub struct HedbergReport {
    /// `C0·A_α^{1-θ}A_β^θ` at every grid point.
    pub bound_field: SampledField,
    /// `sup_x |f(x)| / (A_α^{1-θ}A_β^θ)(x)` over points where the
    /// denominator is positive (0 if there are none).
    pub empirical_constant: f64,
    pub analytic_constant: f64,
}

/// Evaluates `A_α(x) = sup_j 2^{jα}|Δ_j f(x)|`,
/// `A_β(x) = sup_j 2^{-jβ}|Δ_j f(x)|` and the pointwise bound for
/// `f = Σ_j Δ_j f` (the stored blocks, without the lowpass).
pub fn hedberg_pointwise(d: &BlockDecomposition, alpha: f64, beta: f64) -> Result<HedbergReport> {
    let c0 = hedberg_constant(alpha, beta)?;
    let theta = alpha / (alpha + beta);
    let f = d.block_sum();
    let n = d.grid().len();
    let mut a_alpha = vec![0.0f64; n];
    let mut a_beta = vec![0.0f64; n];
    for (j, b) in d.blocks() {
        let wa = (alpha * j as f64).exp2();
        let wb = (-beta * j as f64).exp2();
        for (i, x) in b.samples().iter().enumerate() {
            a_alpha[i] = a_alpha[i].max(wa * x.abs());
            a_beta[i] = a_beta[i].max(wb * x.abs());
        }
    }
    let mut empirical: f64 = 0.0;
    let mut bound = Vec::with_capacity(n);
    for i in 0..n {
        let g = a_alpha[i].powf(1.0 - theta) * a_beta[i].powf(theta);
        if g > 0.0 {
            empirical = empirical.max(f.samples()[i].abs() / g);
        }
        bound.push(c0 * g);
    }
    Ok(HedbergReport {
        bound_field: SampledField::new(*d.grid(), bound)?,
        empirical_constant: empirical,
        analytic_constant: c0,
    })
}

/// `(‖f‖_{L^p}, ‖f‖_{F^{α,q0}_∞}^{1-θ} ‖f‖_{F^{-β,q1}_∞}^θ)` for
/// `f = Σ_j Δ_j f`; Hölder applied to the pointwise bound gives
/// `lhs <= C0·rhs`.
pub fn hedberg_lp_sides(d: &BlockDecomposition, alpha: f64, beta: f64, q0: f64, q1: f64) -> Result<(f64, f64)> {
    check_positive(alpha, beta)?;
    let theta = alpha / (alpha + beta);
    let p = crate::exponent::from_recip((1.0 - theta) * recip(q0) + theta * recip(q1));
    let lhs = field_lebesgue_norm(&d.block_sum(), p)?;
    let f0 = triebel_seminorm(d, BesovParams::new(alpha, q0, f64::INFINITY)?)?;
    let f1 = triebel_seminorm(d, BesovParams::new(-beta, q1, f64::INFINITY)?)?;
    Ok((lhs, f0.powf(1.0 - theta) * f1.powf(theta)))
}

fn check_positive(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(invalid(format!("alpha and beta must be positive, got {alpha}, {beta}")));
    }
    Ok(())
}
