use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::kfunctional::InterpParams;
use crate::error::{invalid, Result};
use crate::exponent::{check_exponent, log2_ell_norm};
use crate::norms::{lebesgue_norm, lorentz_norm, LorentzParams, MeasuredValues};

/// A space of functions on the measure space of a [`MeasuredValues`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Endpoint {
    Lebesgue(#[serde(with = "crate::exponent::serde_inf")] f64),
    Lorentz(LorentzParams),
}

impl Endpoint {
    pub fn validate(&self) -> Result<()> {
        match self {
            Endpoint::Lebesgue(p) => check_exponent("p", *p),
            Endpoint::Lorentz(lp) => lp.validate(),
        }
    }

    pub fn norm(&self, v: &MeasuredValues) -> Result<f64> {
        match self {
            Endpoint::Lebesgue(p) => lebesgue_norm(v, *p),
            Endpoint::Lorentz(lp) => lorentz_norm(v, *lp),
        }
    }

    /// `L^p` for `p ∈ {1, ∞}`, `L^{p,r}` otherwise.
    pub fn lorentz_or_lebesgue(p: f64, r: f64) -> Result<Self> {
        if p == 1.0 || p.is_infinite() {
            check_exponent("p", p)?;
            Ok(Endpoint::Lebesgue(p))
        } else {
            Ok(Endpoint::Lorentz(LorentzParams::new(p, r)?))
        }
    }
}

/// The pair `(A0, A1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couple {
    pub a0: Endpoint,
    pub a1: Endpoint,
}

impl Couple {
    pub fn l1_linf() -> Self {
        Self {
            a0: Endpoint::Lebesgue(1.0),
            a1: Endpoint::Lebesgue(f64::INFINITY),
        }
    }
}

/// A finite decomposition `f = Σ_j f_j` of a measured element together
/// with the endpoint norms `‖f_j‖_0`, `‖f_j‖_1`.
///
/// Pieces are stored entrywise on the element's measure space.
#[derive(Debug, Clone, PartialEq)]
pub struct JDecomposition {
    element: MeasuredValues,
    pieces: BTreeMap<i32, Vec<f64>>,
    norms0: BTreeMap<i32, f64>,
    norms1: BTreeMap<i32, f64>,
}

impl JDecomposition {
    /// Checks `Σ_j pieces[j] = element` entrywise (relative tolerance
    /// `1e-12`) and evaluates the endpoint norms of every piece.
    pub fn new(
        element: MeasuredValues,
        pieces: BTreeMap<i32, Vec<f64>>,
        couple: &Couple,
    ) -> Result<Self> {
        couple.a0.validate()?;
        couple.a1.validate()?;
        let n = element.len();
        let mut sums = vec![0.0; n];
        for (j, piece) in &pieces {
            if piece.len() != n {
                return Err(invalid(format!("piece {j} has the wrong length")));
            }
            for (s, x) in sums.iter_mut().zip(piece) {
                *s += x;
            }
        }
        for (i, (s, x)) in sums.iter().zip(element.values()).enumerate() {
            if (s - x).abs() > 1e-12 * x.abs().max(f64::MIN_POSITIVE) && (s - x).abs() > 1e-300 {
                return Err(invalid(format!(
                    "pieces do not sum to the element at entry {i}: {s} vs {x}"
                )));
            }
        }
        let mut norms0 = BTreeMap::new();
        let mut norms1 = BTreeMap::new();
        for (j, piece) in &pieces {
            let abs = element.with_values(piece.iter().map(|x| x.abs()).collect())?;
            norms0.insert(*j, couple.a0.norm(&abs)?);
            norms1.insert(*j, couple.a1.norm(&abs)?);
        }
        Ok(Self {
            element,
            pieces,
            norms0,
            norms1,
        })
    }

    pub fn element(&self) -> &MeasuredValues {
        &self.element
    }

    pub fn pieces(&self) -> &BTreeMap<i32, Vec<f64>> {
        &self.pieces
    }

    pub fn norms0(&self) -> &BTreeMap<i32, f64> {
        &self.norms0
    }

    pub fn norms1(&self) -> &BTreeMap<i32, f64> {
        &self.norms1
    }

    /// `(j, ‖f_j‖_0, ‖f_j‖_1)` in increasing `j`.
    pub fn norm_triples(&self) -> Vec<(i32, f64, f64)> {
        self.norms0
            .iter()
            .map(|(j, a)| (*j, *a, self.norms1[j]))
            .collect()
    }

    /// Index sets of the pieces' supports (entries where the piece is
    /// nonzero).
    pub fn supports(&self) -> BTreeMap<i32, Vec<usize>> {
        self.pieces
            .iter()
            .map(|(j, p)| {
                (*j, p.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(i, _)| i).collect())
            })
            .collect()
    }

    /// True when no entry is charged by two pieces.
    pub fn supports_disjoint(&self) -> bool {
        let mut seen = vec![false; self.element.len()];
        for p in self.pieces.values() {
            for (i, x) in p.iter().enumerate() {
                if *x != 0.0 {
                    if seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
            }
        }
        true
    }
}

/// The constant `C_{ρ,θ,r}` of
/// `‖f‖_{θ,r} <= C (Σ_j ρ^{-jθr}‖f_j‖_0^r)^{(1-θ)/r} (Σ_j ρ^{j(1-θ)r}‖f_j‖_1^r)^{θ/r}`.
///
/// With `κ = |log2 ρ|` and `M = ⌈1/κ⌉` (`M = 1` when `κ >= 1`), grouping
/// the indices into runs of `M` reduces to `ρ >= 2`, at a cost of
/// `M^{1-1/r}` by Hölder. For the dyadic case two bounds are available:
///
/// * J-norm bound, balancing the two sums by an index shift `s`, with the
///   rounding of `s` to an integer costing `2^{θ(1-θ)}`:
///   `C_J = M^{1-1/r} 2^{θ(1-θ)} / (θ^θ (1-θ)^{1-θ})`.
/// * K-norm bound, summing the geometric tails of `min(a_j, t b_j)`:
///   `C_K = M^{1-1/r} 2^{θ(1-θ)} θ^{-θ}(1-θ)^{-(1-θ)} c_θ^{1-θ} c_{1-θ}^θ`,
///   `c_θ = ((1-2^{-θr})/(θr))^{1/r} / (1-2^{-θ})` (`1/(1-2^{-θ})` for `r = ∞`).
///
/// The published constant is `max(C_J, C_K)`, valid for both the J- and
/// K-method norms.
pub fn j_bound_constant(params: InterpParams) -> Result<f64> {
    params.validate()?;
    let InterpParams { theta, r, rho } = params;
    let kappa = rho.log2().abs();
    let m = if kappa >= 1.0 { 1.0 } else { (1.0 / kappa).ceil() };
    let holder = m.powf(1.0 - 1.0 / r);
    let balance = theta.powf(-theta) * (1.0 - theta).powf(-(1.0 - theta));
    let rounding = (theta * (1.0 - theta)).exp2();
    let c_j = holder * rounding * balance;
    let c = |x: f64| -> f64 {
        let tail = 1.0 / (1.0 - (-x).exp2());
        if r.is_infinite() {
            tail
        } else {
            ((1.0 - (-x * r).exp2()) / (x * r)).powf(1.0 / r) * tail
        }
    };
    let c_k = holder * rounding * balance * c(theta).powf(1.0 - theta) * c(1.0 - theta).powf(theta);
    Ok(c_j.max(c_k))
}

/// `j_bound` evaluated from explicit `(j, ‖f_j‖_0, ‖f_j‖_1)` triples.
///
/// Sums are accumulated in base-2 logarithms, so extreme indices or norms
/// do not overflow.
pub fn j_bound_from_norms(norms: &[(i32, f64, f64)], params: InterpParams) -> Result<f64> {
    let c = j_bound_constant(params)?;
    let InterpParams { theta, r, rho } = params;
    let lr = rho.log2();
    let log0 = log2_ell_norm(
        norms.iter().map(|(j, a, _)| -(*j as f64) * theta * lr + a.log2()),
        r,
    );
    let log1 = log2_ell_norm(
        norms.iter().map(|(j, _, b)| (*j as f64) * (1.0 - theta) * lr + b.log2()),
        r,
    );
    if log0 == f64::NEG_INFINITY || log1 == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok(c * ((1.0 - theta) * log0 + theta * log1).exp2())
}

/// `C (Σ_j ρ^{-jθr}‖f_j‖_0^r)^{(1-θ)/r} (Σ_j ρ^{j(1-θ)r}‖f_j‖_1^r)^{θ/r}`
/// with `C` from [`j_bound_constant`].
pub fn j_bound(d: &JDecomposition, params: InterpParams) -> Result<f64> {
    j_bound_from_norms(&d.norm_triples(), params)
}
