use crate::error::{invalid, Error, Result};
use crate::exponent::conjugate;
use crate::norms::{lorentz_norm, LorentzParams, MeasuredValues};

/// Frozen constant for [`duality_pairing_check`]: `∫|fg| <= ∫ f* g*` by
/// the Hardy-Littlewood inequality, and Hölder in `L^r(ds/s)` with the
/// split `s^{1/p} f* · s^{1/p'} g*` gives `C0 = 1`.
pub const DUALITY_CONSTANT: f64 = 1.0;

/// `|∫ f g dμ| / (‖f‖_{p,r} ‖g‖_{p',r'})` for `f`, `g` on the same
/// measure space (identical mass lists). `r = 1` pairs with `r' = ∞`.
pub fn duality_pairing_check(f: &MeasuredValues, g: &MeasuredValues, p: f64, r: f64) -> Result<f64> {
    let fp = LorentzParams::new(p, r)?;
    let gp = LorentzParams::new(conjugate(p), conjugate(r))?;
    if f.masses() != g.masses() {
        return Err(invalid("f and g must share the same mass list"));
    }
    let pairing: f64 = f
        .iter()
        .zip(g.values())
        .map(|((x, m), y)| m * x * y)
        .sum();
    let nf = lorentz_norm(f, fp)?;
    let ng = lorentz_norm(g, gp)?;
    if nf == 0.0 || ng == 0.0 {
        return Err(Error::ZeroNorm("duality check needs nonzero f and g".into()));
    }
    Ok(pairing / (nf * ng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_self_pair() {
        let f = MeasuredValues::from_pairs(&[(1.0, 1.0)]).unwrap();
        let ratio = duality_pairing_check(&f, &f, 2.0, 2.0).unwrap();
        assert!((ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_supports_give_zero() {
        let f = MeasuredValues::counting(&[1.0, 0.0]).unwrap();
        let g = MeasuredValues::counting(&[0.0, 2.0]).unwrap();
        assert_eq!(duality_pairing_check(&f, &g, 3.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_and_mismatch_errors() {
        let f = MeasuredValues::counting(&[1.0, 0.0]).unwrap();
        let z = MeasuredValues::counting(&[0.0, 0.0]).unwrap();
        assert!(matches!(duality_pairing_check(&f, &z, 2.0, 2.0), Err(Error::ZeroNorm(_))));
        let other = MeasuredValues::from_pairs(&[(1.0, 2.0), (1.0, 1.0)]).unwrap();
        assert!(duality_pairing_check(&f, &other, 2.0, 2.0).is_err());
    }
}
