use serde::{Deserialize, Serialize};

use super::atom::Atom;
use super::cas1::SharpnessParams;
use crate::error::{invalid, Error, Result};
use crate::exponent::{log2_ell_norm, recip};
use crate::norms::{rearrangement, BesovParams, MeasuredValues, RearrangementProfile};
use crate::spectral::{GridSpec, SampledField};

/// All atoms of one scale: `count` translates `ω(2^j x - k e_1)` with
/// `k = first_k, first_k + 2, …`, each multiplied by `2^{log2_coeff}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleGroup {
    pub j: i32,
    pub count: u64,
    pub log2_coeff: f64,
    pub first_k: i128,
}

impl ScaleGroup {
    /// Centre of the last atom, in units of `2^{-j}`.
    pub fn last_k(&self) -> i128 {
        self.first_k + 2 * (self.count as i128 - 1)
    }
}

/// `Σ_j 2^{c_j} Σ_{k∈K_j} ω(2^j x - k)` stored per scale.
///
/// Atoms sit on the `x_1` axis. Inside a scale consecutive centres are
/// `2·2^{-j}` apart, so closed supports can touch but open supports never
/// meet; whole scales occupy disjoint intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicSum {
    dim: usize,
    groups: Vec<ScaleGroup>,
}

fn pow2_i128(e: i32) -> Result<i128> {
    if !(0..=125).contains(&e) {
        return Err(Error::PlacementOverflow(format!("2^{e} does not fit in 128 bits")));
    }
    Ok(1i128 << e)
}

fn overflow() -> Error {
    Error::PlacementOverflow("atom positions overflow 128-bit integers".into())
}

/// Closed interval `[start, end]` of a group in units of `2^{-fine}`.
fn group_interval(g: &ScaleGroup, fine: i32) -> Result<(i128, i128)> {
    let unit = pow2_i128(fine - g.j)?;
    let start = (g.first_k - 1).checked_mul(unit).ok_or_else(overflow)?;
    let end = (g.last_k() + 1).checked_mul(unit).ok_or_else(overflow)?;
    Ok((start, end))
}

impl AtomicSum {
    /// Checks that no two atoms have overlapping open supports.
    pub fn new(dim: usize, groups: Vec<ScaleGroup>) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return Err(invalid(format!("dimension must be 1 or 2, got {dim}")));
        }
        if let Some(g) = groups.iter().find(|g| g.count == 0 || !g.log2_coeff.is_finite()) {
            return Err(invalid(format!("scale {} has no atoms or a non-finite coefficient", g.j)));
        }
        let out = Self { dim, groups };
        if !out.supports_disjoint()? {
            return Err(invalid("atom supports overlap"));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn groups(&self) -> &[ScaleGroup] {
        &self.groups
    }

    /// Total number of atoms.
    pub fn len(&self) -> u128 {
        self.groups.iter().map(|g| g.count as u128).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    fn finest(&self) -> i32 {
        self.groups.iter().map(|g| g.j).max().unwrap_or(0)
    }

    /// Interval test between scales; within a scale the spacing is fixed.
    pub fn supports_disjoint(&self) -> Result<bool> {
        let fine = self.finest();
        let mut iv = self
            .groups
            .iter()
            .map(|g| group_interval(g, fine))
            .collect::<Result<Vec<_>>>()?;
        iv.sort();
        Ok(iv.windows(2).all(|w| w[0].1 <= w[1].0))
    }

    /// Every atom as `(j, k, log2 coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128, f64)> + '_ {
        self.groups.iter().flat_map(|g| {
            (0..g.count as i128).map(move |i| (g.j, g.first_k + 2 * i, g.log2_coeff))
        })
    }

    /// `[min, max]` of the supports along `x_1`.
    pub fn extent(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for g in &self.groups {
            let u = (-g.j as f64).exp2();
            lo = lo.min((g.first_k - 1) as f64 * u);
            hi = hi.max((g.last_k() + 1) as f64 * u);
        }
        (lo, hi)
    }

    /// Same atoms with coefficients `2^{j·exponent}`.
    pub fn with_coefficient_exponent(&self, exponent: f64) -> Self {
        let groups = self
            .groups
            .iter()
            .map(|g| ScaleGroup {
                log2_coeff: g.j as f64 * exponent,
                ..*g
            })
            .collect();
        Self {
            dim: self.dim,
            groups,
        }
    }

    fn same_placement(&self, other: &AtomicSum) -> bool {
        self.dim == other.dim
            && self.groups.len() == other.groups.len()
            && self
                .groups
                .iter()
                .zip(&other.groups)
                .all(|(a, b)| a.j == b.j && a.count == b.count && a.first_k == b.first_k)
    }
}

/// `f_L` and `g_L`: scales `j1, …, j1+L-1`, `A_j` atoms at scale `j`,
/// coefficients `2^{jX}` and `2^{jY}`.
///
/// Scales are laid out left to right from the origin with a gap of one
/// atom radius between consecutive scales. Positions are exact integers in
/// units of `2^{-(j1+L-1)}`; leaving the 128-bit range raises
/// [`Error::PlacementOverflow`].
pub fn build_family(params: &SharpnessParams, big_l: u32) -> Result<(AtomicSum, AtomicSum)> {
    if big_l == 0 {
        return Err(invalid("the family needs at least one scale"));
    }
    let fine = params
        .j1
        .checked_add(big_l as i32 - 1)
        .ok_or_else(overflow)?;
    let mut cursor: i128 = 0;
    let mut groups = Vec::with_capacity(big_l as usize);
    for j in params.j1..=fine {
        let count = params.count(j)?;
        let unit = pow2_i128(fine - j)?;
        // first centre one radius past the cursor, on the 2^{-j} lattice
        let first_k = (cursor + unit - 1) / unit + 1;
        let g = ScaleGroup {
            j,
            count,
            log2_coeff: j as f64 * params.solution.x,
            first_k,
        };
        let end = (first_k + 2 * (count as i128 - 1) + 1)
            .checked_mul(unit)
            .ok_or_else(overflow)?;
        cursor = end.checked_add(unit).ok_or_else(overflow)?;
        groups.push(g);
    }
    let f = AtomicSum::new(params.dim, groups)?;
    let g = f.with_coefficient_exponent(params.solution.y);
    Ok((f, g))
}

/// Upper bound for `‖Σ λ_{jk} ω(2^j· - k)‖_{B^{s,q}_r}` with the atom
/// constant set to 1:
/// `(Σ_j (2^{j(s-n/q)} (Σ_k |λ_{jk}|^q)^{1/q})^r)^{1/r}`.
///
/// Valid for `|s| < N`; evaluated in the `log2` domain.
pub fn atomic_besov_upper(sum: &AtomicSum, atom: &Atom, params: BesovParams) -> Result<f64> {
    params.validate()?;
    if params.s.abs() >= atom.moments() as f64 {
        return Err(invalid(format!(
            "|s| = {} needs more than {} vanishing moments",
            params.s.abs(),
            atom.moments()
        )));
    }
    let n = sum.dim as f64;
    let inv_q = recip(params.p);
    let logs = sum.groups.iter().map(|g| {
        let j = g.j as f64;
        j * (params.s - n * inv_q) + (g.count as f64).log2() * inv_q + g.log2_coeff
    });
    Ok(log2_ell_norm(logs, params.q).exp2())
}

/// [`atomic_besov_upper`] with every `A_j` replaced by its bracket bound
/// `2^{δ(j+1)}` and coefficients `2^{jc}`; under the scaling equations
/// each scale contributes the same term and the result is
/// `2^{δ/q} L^{1/r}`.
pub fn atomic_besov_bracket(
    params: &SharpnessParams,
    big_l: u32,
    coeff_exponent: f64,
    besov: BesovParams,
) -> Result<f64> {
    besov.validate()?;
    let n = params.dim as f64;
    let delta = params.solution.delta;
    let inv_q = recip(besov.p);
    let logs = (0..big_l as i32).map(|i| {
        let j = (params.j1 + i) as f64;
        j * (besov.s - n * inv_q + coeff_exponent) + delta * (j + 1.0) * inv_q
    });
    Ok(log2_ell_norm(logs, besov.q).exp2())
}

/// Distribution of `|Σ λ_{jk} ω(2^j· - k)|` from the atom profile: each
/// scale contributes the atom's steps with values times `2^{c_j}` and
/// masses times `A_j 2^{-jn}` (supports are disjoint).
pub fn atomic_distribution(sum: &AtomicSum, atom: &Atom) -> Result<RearrangementProfile> {
    if atom.dim() != sum.dim {
        return Err(invalid("atom and sum live in different dimensions"));
    }
    let base = atom.rearrangement().to_measured();
    let n = sum.dim as f64;
    let parts: Vec<MeasuredValues> = sum
        .groups
        .iter()
        .map(|g| {
            let vs = g.log2_coeff.exp2();
            let ms = g.count as f64 * (-(g.j as f64) * n).exp2();
            let (values, masses) = base.iter().map(|(v, m)| (v * vs, m * ms)).unzip();
            MeasuredValues::new(values, masses)
        })
        .collect::<Result<_>>()?;
    Ok(rearrangement(&MeasuredValues::concat(&parts)))
}

/// `∫ f g` for two sums on the same placement:
/// `Σ_j A_j 2^{c_j + c'_j - jn} ‖ω‖²_2`.
pub fn pairing(f: &AtomicSum, g: &AtomicSum, atom: &Atom) -> Result<f64> {
    if !f.same_placement(g) {
        return Err(invalid("pairing needs both sums on the same atom placement"));
    }
    let n = f.dim as f64;
    let norm = atom.l2_norm_sq();
    Ok(f.groups
        .iter()
        .zip(&g.groups)
        .map(|(a, b)| {
            a.count as f64 * (a.log2_coeff + b.log2_coeff - a.j as f64 * n).exp2() * norm
        })
        .sum())
}

/// Samples the sum on `grid`, with physical coordinates
/// `x = grid coordinate - origin`.
pub fn rasterize(sum: &AtomicSum, atom: &Atom, grid: &GridSpec, origin: &[f64]) -> Result<SampledField> {
    if grid.dim() != sum.dim || origin.len() != sum.dim || atom.dim() != sum.dim {
        return Err(invalid("grid, origin, atom and sum must share the dimension"));
    }
    let groups = sum.groups.clone();
    let dim = sum.dim;
    let origin = origin.to_vec();
    SampledField::from_fn(*grid, move |x| {
        let x1 = x[0] - origin[0];
        let x2 = if dim == 2 { x[1] - origin[1] } else { 0.0 };
        let mut acc = 0.0;
        for g in &groups {
            let scale = (g.j as f64).exp2();
            let y1 = scale * x1;
            let idx = ((y1 - g.first_k as f64) / 2.0).round().clamp(0.0, (g.count - 1) as f64);
            let k = g.first_k as f64 + 2.0 * idx;
            let local = [y1 - k, scale * x2];
            let v = atom.eval(&local[..dim]);
            if v != 0.0 {
                acc += g.log2_coeff.exp2() * v;
            }
        }
        acc
    })
}
