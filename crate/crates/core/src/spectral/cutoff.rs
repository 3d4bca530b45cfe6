use crate::error::{invalid, Result};

/// Radial Littlewood-Paley cutoff.
///
/// `phi(r)` equals 1 on `r <= 1/2`, 0 on `r >= 1` and in between follows the
/// C^∞ transition
///
/// ```text
/// t = 2(1 - r),   phi = 1 / (1 + exp(s·(1/t - 1/(1-t))))
/// ```
///
/// where `s` is the transition sharpness. `psi(r) = phi(r/2) - phi(r)` is
/// supported in `1/2 <= r <= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffProfile {
    sharpness: f64,
}

impl CutoffProfile {
    pub fn new(transition_sharpness: f64) -> Result<Self> {
        if !(transition_sharpness.is_finite() && transition_sharpness > 0.0) {
            return Err(invalid(format!(
                "transition sharpness must be positive, got {transition_sharpness}"
            )));
        }
        Ok(Self {
            sharpness: transition_sharpness,
        })
    }

    pub fn sharpness(&self) -> f64 {
        self.sharpness
    }

    pub fn phi(&self, r: f64) -> f64 {
        let r = r.abs();
        if r <= 0.5 {
            return 1.0;
        }
        if r >= 1.0 {
            return 0.0;
        }
        let t = 2.0 * (1.0 - r);
        let e = self.sharpness * (1.0 / t - 1.0 / (1.0 - t));
        1.0 / (1.0 + e.exp())
    }

    pub fn psi(&self, r: f64) -> f64 {
        self.phi(0.5 * r) - self.phi(r)
    }

    /// `psi(2^{-j} r)`, written as a difference of two cutoffs so that sums
    /// over consecutive `j` telescope exactly up to rounding.
    pub fn block_multiplier(&self, j: i32, r: f64) -> f64 {
        self.phi(r * pow2(-(j + 1))) - self.phi(r * pow2(-j))
    }

    /// `phi(2^{-j} r)`.
    pub fn lowpass_multiplier(&self, j: i32, r: f64) -> f64 {
        self.phi(r * pow2(-j))
    }
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self { sharpness: 1.0 }
    }
}

/// Exact power of two.
pub(crate) fn pow2(j: i32) -> f64 {
    2f64.powi(j)
}

/// Convenience wrapper for [`CutoffProfile::new`].
pub fn make_cutoff_profile(transition_sharpness: f64) -> Result<CutoffProfile> {
    CutoffProfile::new(transition_sharpness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_and_support() {
        let p = make_cutoff_profile(1.0).unwrap();
        assert_eq!(p.phi(0.25), 1.0);
        assert_eq!(p.phi(1.5), 0.0);
        assert_eq!(p.psi(1.0), 1.0);
        assert_eq!(p.psi(0.4), 0.0);
        assert_eq!(p.psi(2.5), 0.0);
        assert!(make_cutoff_profile(0.0).is_err());
        assert!(make_cutoff_profile(-1.0).is_err());
    }

    #[test]
    fn phi_is_monotone_and_bounded() {
        for &s in &[0.2, 1.0, 5.0] {
            let p = CutoffProfile::new(s).unwrap();
            let mut prev = 1.0;
            for i in 0..=2000 {
                let r = i as f64 / 1000.0;
                let v = p.phi(r);
                assert!((0.0..=1.0).contains(&v));
                assert!(v <= prev + 1e-15, "phi increased at r={r}");
                prev = v;
            }
        }
    }

    #[test]
    fn telescoping_on_a_range() {
        let p = CutoffProfile::default();
        let (jmin, jmax) = (-3, 6);
        for i in 1..500 {
            let r = i as f64 * 0.37;
            let sum: f64 = p.lowpass_multiplier(jmin, r)
                + (jmin..=jmax).map(|j| p.block_multiplier(j, r)).sum::<f64>();
            let expect = p.lowpass_multiplier(jmax + 1, r);
            assert!((sum - expect).abs() <= 1e-14, "r={r}");
        }
    }

    #[test]
    fn at_most_two_blocks_overlap() {
        let p = CutoffProfile::default();
        for i in 1..4000 {
            let r = i as f64 * 0.05;
            let hits = (-10..20).filter(|&j| p.block_multiplier(j, r) > 0.0).count();
            assert!(hits <= 2, "r={r} hit {hits} blocks");
        }
    }
}
