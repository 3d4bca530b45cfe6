use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::atom::Atom;
use super::cas1::SharpnessParams;
use super::family::{atomic_besov_upper, atomic_distribution, build_family, pairing};
use crate::error::{Error, Result};
use crate::exponent::{conjugate, recip};
use crate::fit::loglog_slope;
use crate::norms::{profile_lorentz_norm, BesovParams, LorentzParams};

/// One row of the growth table.
///
/// `lorentz_lower = pairing / ‖g_L‖_{p',r'}` is a lower bound for
/// `‖f_L‖_{p,r}` by Lorentz duality; `lorentz_exact` is `‖f_L‖_{p,r}`
/// from the atomic distribution. `ratio = lorentz_lower / rhs_product`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    #[serde(rename = "L")]
    pub big_l: u32,
    pub besov0: f64,
    pub besov1: f64,
    pub pairing: f64,
    pub g_dual_norm: f64,
    pub lorentz_lower: f64,
    pub rhs_product: f64,
    pub ratio: f64,
    pub lorentz_exact: f64,
}

/// A fitted log-log slope against its predicted value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeCheck {
    pub name: String,
    pub fitted: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SlopeCheck {
    /// Relative tolerance, absolute when the prediction is zero.
    fn new(name: &str, fitted: f64, expected: f64, tolerance: f64) -> Self {
        let scale = if expected == 0.0 { 1.0 } else { expected.abs() };
        Self {
            name: name.to_string(),
            fitted,
            expected,
            tolerance,
            passed: (fitted - expected).abs() <= tolerance * scale,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub params: SharpnessParams,
    pub rows: Vec<GrowthRow>,
    pub checks: Vec<SlopeCheck>,
    /// Slope of `‖f_L‖_{p,r}` (not checked: its constant is not tracked).
    pub lorentz_exact_slope: f64,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&SlopeCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn row(params: &SharpnessParams, atom: &Atom, big_l: u32) -> Result<GrowthRow> {
    let c = &params.case;
    let (f, g) = build_family(params, big_l)?;
    let besov0 = atomic_besov_upper(&f, atom, BesovParams::new(c.alpha, c.q0, c.r0)?)?;
    let besov1 = atomic_besov_upper(&f, atom, BesovParams::new(-c.beta, c.q1, c.r1)?)?;
    let pair = pairing(&f, &g, atom)?;
    let dual = LorentzParams::new(conjugate(c.p), conjugate(c.r))?;
    let g_dual_norm = profile_lorentz_norm(&atomic_distribution(&g, atom)?, dual)?;
    let lorentz_lower = pair / g_dual_norm;
    let rhs_product = besov0.powf(1.0 - c.theta) * besov1.powf(c.theta);
    let lorentz_exact =
        profile_lorentz_norm(&atomic_distribution(&f, atom)?, LorentzParams::new(c.p, c.r)?)?;
    Ok(GrowthRow {
        big_l,
        besov0,
        besov1,
        pairing: pair,
        g_dual_norm,
        lorentz_lower,
        rhs_product,
        ratio: lorentz_lower / rhs_product,
        lorentz_exact,
    })
}

/// Tabulates the family over `l_values` and fits log-log slopes.
///
/// Predicted slopes: `1/r0` and `1/r1` for the Besov bounds (2%), `1` for
/// the pairing (1%), `1/r` for the Lorentz lower bound (3%) and
/// `1/r - 1/r*` for the ratio (3%, absolute when zero). The fit needs at
/// least four values of `L` spanning a factor of 8.
pub fn growth_experiment(params: &SharpnessParams, atom: &Atom, l_values: &[u32]) -> Result<GrowthReport> {
    let lo = l_values.iter().copied().min().unwrap_or(0);
    let hi = l_values.iter().copied().max().unwrap_or(0);
    let mut distinct = l_values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 || lo == 0 || hi < 8 * lo {
        return Err(Error::InsufficientRange(format!(
            "need at least 4 distinct L values spanning a factor of 8, got {l_values:?}"
        )));
    }
    let rows = l_values
        .par_iter()
        .map(|&l| row(params, atom, l))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.big_l as f64).collect();
    let slope = |col: fn(&GrowthRow) -> f64| -> Result<f64> {
        let ys: Vec<f64> = rows.iter().map(col).collect();
        loglog_slope(&xs, &ys)
    };
    let c = &params.case;
    let checks = vec![
        SlopeCheck::new("besov0", slope(|r| r.besov0)?, recip(c.r0), 0.02),
        SlopeCheck::new("besov1", slope(|r| r.besov1)?, recip(c.r1), 0.02),
        SlopeCheck::new("pairing", slope(|r| r.pairing)?, 1.0, 0.01),
        SlopeCheck::new("lorentz_lower", slope(|r| r.lorentz_lower)?, recip(c.r), 0.03),
        SlopeCheck::new("ratio", slope(|r| r.ratio)?, c.index_gap(), 0.03),
    ];
    let lorentz_exact_slope = slope(|r| r.lorentz_exact)?;
    Ok(GrowthReport {
        params: *params,
        rows,
        checks,
        lorentz_exact_slope,
    })
}
