use crate::error::{invalid, Error, Result};
use crate::norms::{rearrangement, MeasuredValues, RearrangementProfile};

/// `ω = c·∂_1^N (1 - |x|²)^M` on the unit ball of `ℝ^n` (`n ∈ {1, 2}`),
/// normalized to `‖ω‖_{L²} = 1`.
///
/// Writing `u = 1 - x_2²` (`u = 1` in one dimension),
/// `(1 - |x|²)^M = Σ_i C(M,i) (-1)^i u^{M-i} x_1^{2i}`, so `ω` is an
/// explicit polynomial and its `L²` norm and moments are computed in
/// closed form. Integration by parts in `x_1` kills every moment
/// `∫ x^γ ω` with `γ_1 < N`, in particular all `|γ| < N`; `ω` is
/// `C^{M-N-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    dim: usize,
    moments: u32,
    exponent: u32,
    /// `(power of x_1, power of u, coefficient)` after normalization.
    terms: Vec<(u32, u32, f64)>,
    resolution: usize,
    profile: RearrangementProfile,
    l1_norm: f64,
}

/// `∫_{-1}^{1} (1 - x²)^{k/2} dx`.
fn half_power_integral(k: u32) -> f64 {
    // I(c) = I(c-1)·2c/(2c+1), I(0) = 2, I(1/2) = π/2
    let mut acc = if k.is_multiple_of(2) { 2.0 } else { std::f64::consts::FRAC_PI_2 };
    let mut c2 = if k.is_multiple_of(2) { 2 } else { 3 };
    while c2 <= k {
        acc *= c2 as f64 / (c2 + 1) as f64;
        c2 += 2;
    }
    acc
}

/// `∫_{-1}^{1} x^b (1 - x²)^{k/2} dx`.
fn weighted_half_power_integral(b: u32, k: u32) -> f64 {
    if b % 2 == 1 {
        return 0.0;
    }
    // J(b, c) = (b-1)/(b+2c+1) J(b-2, c)
    let mut acc = half_power_integral(k);
    let mut bb = 2;
    while bb <= b {
        acc *= (bb - 1) as f64 / (bb as f64 + k as f64 + 1.0);
        bb += 2;
    }
    acc
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Smallest sampling resolution accepted for an exponent `M`.
pub fn min_resolution(exponent: u32) -> usize {
    (16 * exponent as usize).max(64)
}

/// Builds the atom with `N = moments` vanishing moments and
/// `M = N + smoothness_order`, sampling `|ω|` at `resolution` midpoints
/// per axis of `[-1, 1]^n` for its rearrangement.
pub fn build_atom(moments: u32, smoothness_order: u32, resolution: usize, dim: usize) -> Result<Atom> {
    if moments < 1 {
        return Err(invalid("an atom needs at least one vanishing moment"));
    }
    if smoothness_order < 1 {
        return Err(invalid("smoothness order must be at least 1"));
    }
    if !(dim == 1 || dim == 2) {
        return Err(invalid(format!("atoms are built in dimension 1 or 2, got {dim}")));
    }
    let m = moments + smoothness_order;
    if m > 40 {
        return Err(invalid(format!("bump exponent {m} is too large")));
    }
    if resolution < min_resolution(m) {
        return Err(Error::Resolution(format!(
            "resolution {resolution} cannot resolve an order-{moments} derivative of (1-|x|^2)^{m}; need at least {}",
            min_resolution(m)
        )));
    }
    let n = moments;
    let mut terms = Vec::new();
    for i in 0..=m {
        if 2 * i < n {
            continue;
        }
        let falling = (0..n).fold(1.0, |acc, t| acc * (2 * i - t) as f64);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((2 * i - n, m - i, sign * binomial(m, i) * falling));
    }
    let mut atom = Atom {
        dim,
        moments: n,
        exponent: m,
        terms,
        resolution,
        profile: RearrangementProfile::from_steps(Vec::new(), 0.0)?,
        l1_norm: 0.0,
    };
    let raw = atom.raw_l2_sq();
    let scale = 1.0 / raw.sqrt();
    for t in &mut atom.terms {
        t.2 *= scale;
    }
    let h = 2.0 / resolution as f64;
    let mids: Vec<f64> = (0..resolution).map(|i| -1.0 + (i as f64 + 0.5) * h).collect();
    let values: Vec<f64> = if dim == 1 {
        mids.iter().map(|&x| atom.eval(&[x]).abs()).collect()
    } else {
        mids.iter()
            .flat_map(|&y| mids.iter().map(move |&x| (x, y)))
            .map(|(x, y)| atom.eval(&[x, y]).abs())
            .collect()
    };
    let mass = h.powi(dim as i32);
    atom.l1_norm = values.iter().sum::<f64>() * mass;
    let masses = vec![mass; values.len()];
    atom.profile = rearrangement(&MeasuredValues::new(values, masses)?);
    atom.verify_moments()?;
    Ok(atom)
}

impl Atom {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number `N` of vanishing moments.
    pub fn moments(&self) -> u32 {
        self.moments
    }

    /// Exponent `M` of the bump.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// `ω(x)`, zero outside the open unit ball.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let x1 = x[0];
        let u = if self.dim == 2 { 1.0 - x[1] * x[1] } else { 1.0 };
        if x1 * x1 >= u {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|&(a, b, c)| c * x1.powi(a as i32) * u.powi(b as i32))
            .sum()
    }

    /// `‖ω‖²_{L²}` from the polynomial coefficients (1 after normalization).
    pub fn l2_norm_sq(&self) -> f64 {
        self.raw_l2_sq()
    }

    /// `‖ω‖_{L¹}` from the midpoint samples.
    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// Rearrangement of `|ω|` from the midpoint samples.
    pub fn rearrangement(&self) -> &RearrangementProfile {
        &self.profile
    }

    /// `∫ x_1^a x_2^b ω dx` in closed form (`b` ignored in one dimension).
    pub fn moment(&self, a: u32, b: u32) -> f64 {
        self.terms
            .iter()
            .map(|&(pa, pu, c)| {
                let e = a + pa;
                if e % 2 == 1 {
                    return 0.0;
                }
                let inner = 2.0 / (e + 1) as f64;
                if self.dim == 1 {
                    c * inner
                } else {
                    // ∫ x_1^e over |x_1| < √u gives u^{(e+1)/2}
                    c * inner * weighted_half_power_integral(b, 2 * pu + e + 1)
                }
            })
            .sum()
    }

    fn raw_l2_sq(&self) -> f64 {
        let mut acc = 0.0;
        for &(a1, u1, c1) in &self.terms {
            for &(a2, u2, c2) in &self.terms {
                let e = a1 + a2;
                if e % 2 == 1 {
                    continue;
                }
                let inner = 2.0 / (e + 1) as f64;
                acc += if self.dim == 1 {
                    c1 * c2 * inner
                } else {
                    c1 * c2 * inner * half_power_integral(2 * (u1 + u2) + e + 1)
                };
            }
        }
        acc
    }

    fn verify_moments(&self) -> Result<()> {
        let tol = 1e-8 * self.l1_norm;
        for total in 0..self.moments {
            for b in 0..=total {
                if self.dim == 1 && b > 0 {
                    break;
                }
                let m = self.moment(total - b, b);
                if m.abs() > tol {
                    return Err(Error::Resolution(format!(
                        "moment ({}, {b}) = {m} does not vanish",
                        total - b
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_integrals() {
        assert!((half_power_integral(0) - 2.0).abs() < 1e-15);
        assert!((half_power_integral(2) - 4.0 / 3.0).abs() < 1e-15);
        assert!((half_power_integral(3) - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-15);
        assert!((weighted_half_power_integral(2, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((weighted_half_power_integral(2, 2) - 4.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn first_derivative_atom() {
        // N = 1, M = 2: ω ∝ -4x(1 - x²)
        let a = build_atom(1, 1, 256, 1).unwrap();
        let c = a.eval(&[0.5]) / (-4.0 * 0.5 * 0.75);
        assert!((a.eval(&[-0.3]) - c * (-4.0 * -0.3 * 0.91)).abs() < 1e-12);
        assert!((a.l2_norm_sq() - 1.0).abs() < 1e-12);
        assert_eq!(a.eval(&[1.0]), 0.0);
        assert!(a.moment(0, 0).abs() < 1e-12);
    }

    #[test]
    fn two_dimensional_atom() {
        let a = build_atom(2, 3, 256, 2).unwrap();
        assert!((a.l2_norm_sq() - 1.0).abs() < 1e-12);
        for (i, j) in [(0, 0), (1, 0), (0, 1)] {
            assert!(a.moment(i, j).abs() < 1e-12);
        }
        assert!(a.moment(2, 0).abs() > 1e-3);
        assert_eq!(a.eval(&[0.8, 0.7]), 0.0);
        // the sampled L² norm agrees with the closed form
        let h = 2.0 / 256.0;
        let l2: f64 = a.rearrangement().pieces().map(|(s0, s1, v)| v * v * (s1 - s0)).sum();
        assert!((l2 - 1.0).abs() < 1e-3, "{l2} vs 1 (h = {h})");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_atom(0, 1, 256, 1).is_err());
        assert!(matches!(build_atom(3, 4, 32, 1), Err(Error::Resolution(_))));
        assert!(build_atom(1, 1, 256, 3).is_err());
    }
}
