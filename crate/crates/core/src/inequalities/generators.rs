use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::SuiteRng;
use crate::spectral::{fft, CutoffProfile, GridSpec, SampledField};

/// Families of band-limited test functions on the `2π`-periodic line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// One pure mode at a fixed dyadic frequency, random amplitude, sign
    /// and grid-aligned shift.
    SingleBlock,
    /// Gaussian coefficients on every frequency of the band, with a random
    /// log-normal weight per dyadic block.
    MultiBlockRandom,
    /// One dyadic mode `c_j cos(2^j x + φ_j)` per scale.
    Lacunary,
    /// Littlewood-Paley molecules `Σ_k ψ(k/2^j) cos(k(x - x0))` at random
    /// scales and centers.
    Atomic,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] = [
        GeneratorKind::SingleBlock,
        GeneratorKind::MultiBlockRandom,
        GeneratorKind::Lacunary,
        GeneratorKind::Atomic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::SingleBlock => "single-block",
            GeneratorKind::MultiBlockRandom => "multi-block-random",
            GeneratorKind::Lacunary => "lacunary",
            GeneratorKind::Atomic => "atomic",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| invalid(format!("unknown generator '{s}'")))
    }
}

/// Dyadic band `[2^{j_lo}, 2^{j_hi}]` used by the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub j_lo: i32,
    pub j_hi: i32,
}

impl Default for Band {
    fn default() -> Self {
        Self { j_lo: 1, j_hi: 6 }
    }
}

impl Band {
    pub fn validate(&self) -> Result<()> {
        if !(self.j_lo >= 1 && self.j_lo <= self.j_hi && self.j_hi <= 24) {
            return Err(invalid(format!(
                "generator band needs 1 <= j_lo <= j_hi <= 24, got [{}, {}]",
                self.j_lo, self.j_hi
            )));
        }
        Ok(())
    }

    /// Highest integer frequency any generator may use.
    pub fn max_frequency(&self) -> u64 {
        1u64 << (self.j_hi + 1)
    }
}

/// `a cos(kx) + b sin(kx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: u64,
    pub a: f64,
    pub b: f64,
}

/// A trigonometric polynomial on `[0, 2π)`, defined independently of any
/// grid so the same instance can be sampled at several resolutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestField {
    pub modes: Vec<Mode>,
    pub descriptor: String,
}

/// Grid-aligned shifts of the single-block generator are multiples of
/// `2π/SHIFT_STEPS`.
const SHIFT_STEPS: u64 = 64;

impl TestField {
    /// Samples on a 1-D grid of period `2π` through an inverse FFT.
    pub fn sample(&self, grid: &GridSpec) -> Result<SampledField> {
        if grid.dim() != 1 || (grid.period() - 2.0 * PI).abs() > 1e-12 {
            return Err(invalid("test fields live on the 1-D torus of period 2*pi"));
        }
        let n = grid.points_per_axis();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        let scale = (n as f64).sqrt() / 2.0;
        for m in &self.modes {
            if 2 * m.k >= n as u64 {
                return Err(Error::Resolution(format!(
                    "mode {} is not below the Nyquist index of a {n}-point grid",
                    m.k
                )));
            }
            let k = m.k as usize;
            if k == 0 {
                coeffs[0] += Complex64::new(2.0 * scale * m.a, 0.0);
                continue;
            }
            coeffs[k] += Complex64::new(m.a, -m.b) * scale;
            coeffs[n - k] += Complex64::new(m.a, m.b) * scale;
        }
        SampledField::new(*grid, fft::inverse_real(grid, coeffs))
    }

    /// `x ↦ f(2x)`: every frequency doubled.
    pub fn dilated(&self) -> TestField {
        TestField {
            modes: self.modes.iter().map(|m| Mode { k: 2 * m.k, ..*m }).collect(),
            descriptor: format!("{}|dilated", self.descriptor),
        }
    }
}

fn lognormal(rng: &mut SuiteRng, sigma: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    (sigma * z).exp()
}

fn random_sign(rng: &mut SuiteRng) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Draws one test field; `seed` is only recorded in the descriptor.
pub fn generate(kind: GeneratorKind, band: Band, rng: &mut SuiteRng, seed: u64) -> Result<TestField> {
    band.validate()?;
    let mut modes = Vec::new();
    match kind {
        GeneratorKind::SingleBlock => {
            let j0 = (band.j_lo + band.j_hi) / 2;
            let k = 1u64 << j0;
            let amp = random_sign(rng) * lognormal(rng, 1.0);
            let shift = rng.random_range(0..SHIFT_STEPS) as f64 * 2.0 * PI / SHIFT_STEPS as f64;
            // cos(k(x - s)) = cos(ks) cos(kx) + sin(ks) sin(kx)
            let ph = k as f64 * shift;
            modes.push(Mode { k, a: amp * ph.cos(), b: amp * ph.sin() });
        }
        GeneratorKind::MultiBlockRandom => {
            for j in band.j_lo..band.j_hi {
                let w = lognormal(rng, 1.0);
                for k in (1u64 << j)..(1u64 << (j + 1)) {
                    let a: f64 = StandardNormal.sample(rng);
                    let b: f64 = StandardNormal.sample(rng);
                    modes.push(Mode { k, a: w * a, b: w * b });
                }
            }
            let a: f64 = StandardNormal.sample(rng);
            modes.push(Mode { k: 1u64 << band.j_hi, a, b: 0.0 });
        }
        GeneratorKind::Lacunary => {
            for j in band.j_lo..=band.j_hi {
                let c = random_sign(rng) * lognormal(rng, 1.0);
                let ph = rng.random::<f64>() * 2.0 * PI;
                modes.push(Mode { k: 1u64 << j, a: c * ph.cos(), b: -c * ph.sin() });
            }
        }
        GeneratorKind::Atomic => {
            let profile = CutoffProfile::default();
            let count = rng.random_range(1..=6);
            for _ in 0..count {
                let j = rng.random_range(band.j_lo..=band.j_hi);
                let c = random_sign(rng) * lognormal(rng, 1.0) * (-(j as f64) * 0.5).exp2();
                let x0 = rng.random::<f64>() * 2.0 * PI;
                let kmax = 1u64 << (j + 1);
                for k in 1..kmax {
                    let w = profile.psi(k as f64 / (j as f64).exp2());
                    if w > 0.0 {
                        let ph = k as f64 * x0;
                        modes.push(Mode { k, a: c * w * ph.cos(), b: c * w * ph.sin() });
                    }
                }
            }
        }
    }
    Ok(TestField {
        modes,
        descriptor: format!("{kind}:seed={seed}:band={}..{}", band.j_lo, band.j_hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn sampling_matches_direct_evaluation() {
        let f = TestField {
            modes: vec![Mode { k: 0, a: 0.5, b: 0.0 }, Mode { k: 5, a: 1.0, b: -2.0 }],
            descriptor: String::new(),
        };
        let g = GridSpec::torus_1d(32).unwrap();
        let s = f.sample(&g).unwrap();
        for (x, y) in g.axis_coordinates().iter().zip(s.samples()) {
            let direct = 0.5 + (5.0 * x).cos() - 2.0 * (5.0 * x).sin();
            assert!((direct - y).abs() < 1e-12);
        }
        let coarse = GridSpec::torus_1d(8).unwrap();
        assert!(matches!(f.sample(&coarse), Err(Error::Resolution(_))));
    }

    #[test]
    fn generators_respect_band() {
        let band = Band::default();
        for kind in GeneratorKind::ALL {
            let mut rng = seeded(3);
            let f = generate(kind, band, &mut rng, 3).unwrap();
            assert!(!f.modes.is_empty());
            assert!(f.modes.iter().all(|m| m.k >= 2 && m.k < band.max_frequency()));
            assert_eq!(kind.name().parse::<GeneratorKind>().unwrap(), kind);
        }
        assert!("nope".parse::<GeneratorKind>().is_err());
    }
}
