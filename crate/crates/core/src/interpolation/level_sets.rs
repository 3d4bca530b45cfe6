use std::collections::BTreeMap;

use super::jmethod::{Couple, JDecomposition};
use crate::error::{invalid, Result};
use crate::exponent::ell_norm;
use crate::norms::{rearrangement, LorentzParams, MeasuredValues};

/// Splits `f` into level sets `f_j = f·1{f*(T_{j+1}) < |f| <= f*(T_j)}`
/// with mass thresholds `T_j = base^j · 2^offset`.
///
/// Every positive entry lands in exactly one piece: the label of a value
/// `x` is the largest `j` with `T_j < μ{|f| >= x}`. Pieces are disjoint
/// by construction and zero entries belong to no piece.
pub fn level_set_decomposition(
    v: &MeasuredValues,
    base: f64,
    offset: f64,
    couple: &Couple,
) -> Result<JDecomposition> {
    if !(base > 1.0 && base.is_finite()) {
        return Err(invalid(format!("level-set base must exceed 1, got {base}")));
    }
    if !offset.is_finite() {
        return Err(invalid("level-set offset must be finite"));
    }
    let labels = level_labels(v, base, offset);
    let mut pieces: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        if let Some(j) = label {
            pieces.entry(*j).or_insert_with(|| vec![0.0; v.len()])[i] = v.values()[i];
        }
    }
    JDecomposition::new(v.clone(), pieces, couple)
}

/// Level label of every entry (`None` for zero values).
pub fn level_labels(v: &MeasuredValues, base: f64, offset: f64) -> Vec<Option<i32>> {
    let prof = rearrangement(v);
    let threshold = |j: i32| base.powi(j) * offset.exp2();
    v.values()
        .iter()
        .map(|&x| {
            if x <= 0.0 {
                return None;
            }
            let d = prof.distribution(x);
            let mut j = ((d / offset.exp2()).ln() / base.ln()).ceil() as i32 - 1;
            while threshold(j + 1) < d {
                j += 1;
            }
            while threshold(j) >= d {
                j -= 1;
            }
            Some(j)
        })
        .collect()
}

/// Dyadic level-set decomposition in the `(L¹, L^∞)` couple.
///
/// With `f_j = f·1{f*(2^{j+1}) < |f| <= f*(2^j)}`, the support of `f_j`
/// has measure at most `2^{j+1}` and `|f_j| <= f*(2^j)`, which gives
/// `‖(2^{-j(p-1)/p}‖f_j‖_1)‖_{ℓ^r} + ‖(2^{j/p}‖f_j‖_∞)‖_{ℓ^r} <= C0 ‖f‖_{p,r}`
/// with `C0` from [`lemma1_constant`]. `params` is only validated.
pub fn lemma1_decompose(v: &MeasuredValues, params: LorentzParams) -> Result<JDecomposition> {
    params.validate()?;
    level_set_decomposition(v, 2.0, 0.0, &Couple::l1_linf())
}

/// `C0(p, r) = 3·((r/p) / (1 - 2^{-r/p}))^{1/r}` (`3` for `r = ∞`).
///
/// From `Σ_j (2^{j/p} f*(2^j))^r <= (r/p)/(1-2^{-r/p}) · ‖f‖_{p,r}^r`,
/// comparing each term with the integral over `[2^{j-1}, 2^j)`; the `L¹`
/// sum contributes twice that and the `L^∞` sum once.
pub fn lemma1_constant(params: LorentzParams) -> Result<f64> {
    params.validate()?;
    if params.r.is_infinite() {
        return Ok(3.0);
    }
    let a = params.r / params.p;
    Ok(3.0 * (a / (1.0 - (-a).exp2())).powf(1.0 / params.r))
}

/// Left-hand side
/// `‖(2^{-j(p-1)/p}‖f_j‖_1)‖_{ℓ^r} + ‖(2^{j/p}‖f_j‖_∞)‖_{ℓ^r}` for a
/// decomposition in the `(L¹, L^∞)` couple.
pub fn lemma1_lhs(d: &JDecomposition, params: LorentzParams) -> Result<f64> {
    params.validate()?;
    let inv_p = 1.0 / params.p;
    let triples = d.norm_triples();
    let first = ell_norm(
        triples.iter().map(|(j, a, _)| (-(*j as f64) * (1.0 - inv_p)).exp2() * a),
        params.r,
    );
    let second = ell_norm(
        triples.iter().map(|(j, _, b)| ((*j as f64) * inv_p).exp2() * b),
        params.r,
    );
    Ok(first + second)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_is_one_piece() {
        let v = MeasuredValues::from_pairs(&[(1.0, 1.0)]).unwrap();
        let d = lemma1_decompose(&v, LorentzParams::new(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(d.pieces().len(), 1);
        assert!(d.pieces().contains_key(&-1));
    }

    #[test]
    fn two_level_function_splits_at_dyadic_thresholds() {
        // d(4) = 1 -> 2^{-1} < 1 <= 2^0, label -1; d(1) = 9 -> 2^3 < 9, label 3
        let v = MeasuredValues::from_pairs(&[(4.0, 1.0), (1.0, 8.0)]).unwrap();
        let d = lemma1_decompose(&v, LorentzParams::new(2.0, 1.0).unwrap()).unwrap();
        let keys: Vec<i32> = d.pieces().keys().copied().collect();
        assert_eq!(keys, vec![-1, 3]);
        assert_eq!(d.pieces()[&-1], vec![4.0, 0.0]);
        assert_eq!(d.pieces()[&3], vec![0.0, 1.0]);
        assert!(d.supports_disjoint());
    }

    #[test]
    fn exact_power_of_two_boundary() {
        // d(1) = 4 exactly: largest j with 2^j < 4 is 1
        let v = MeasuredValues::from_pairs(&[(1.0, 4.0)]).unwrap();
        assert_eq!(level_labels(&v, 2.0, 0.0), vec![Some(1)]);
        let w = MeasuredValues::from_pairs(&[(1.0, 4.0)]).unwrap();
        assert_eq!(level_labels(&w, 4.0, 0.0), vec![Some(0)]);
    }

    #[test]
    fn bound_holds_on_examples() {
        for &(p, r) in &[(2.0, 1.0), (3.0, 2.0), (1.5, f64::INFINITY)] {
            let params = LorentzParams::new(p, r).unwrap();
            let v = MeasuredValues::counting(&[5.0, 0.0, 3.0, 3.0, 1.0, 0.5, 0.25, 7.0]).unwrap();
            let d = lemma1_decompose(&v, params).unwrap();
            let lhs = lemma1_lhs(&d, params).unwrap();
            let norm = crate::norms::lorentz_norm(&v, params).unwrap();
            assert!(lhs <= lemma1_constant(params).unwrap() * norm);
        }
    }
}
