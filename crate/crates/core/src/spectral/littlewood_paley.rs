use rustfft::num_complex::Complex64;

use super::cutoff::{pow2, CutoffProfile};
use super::fft;
use super::grid::{GridSpec, SampledField};
use crate::error::{invalid, Error, Result};

/// Dyadic blocks `Δ_j f` for `j_min <= j <= j_max`, the low-frequency part
/// `S_{j_min} f` and the residual above `2^{j_max+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    grid: GridSpec,
    j_min: i32,
    j_max: i32,
    blocks: Vec<SampledField>,
    lowpass: SampledField,
    residual: SampledField,
}

impl BlockDecomposition {
    /// Assembles a decomposition from explicit parts. `blocks[i]` is the
    /// block of scale `j_min + i`; the residual is zero.
    pub fn from_parts(
        j_min: i32,
        blocks: Vec<SampledField>,
        lowpass: SampledField,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(invalid("a decomposition needs at least one block"));
        }
        let grid = *lowpass.grid();
        if blocks.iter().any(|b| *b.grid() != grid) {
            return Err(invalid("blocks and lowpass live on different grids"));
        }
        Ok(Self {
            grid,
            j_min,
            j_max: j_min + blocks.len() as i32 - 1,
            blocks,
            lowpass,
            residual: SampledField::zeros(grid),
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// `Δ_j f`, or `None` outside the stored range.
    pub fn block(&self, j: i32) -> Option<&SampledField> {
        if j < self.j_min || j > self.j_max {
            None
        } else {
            Some(&self.blocks[(j - self.j_min) as usize])
        }
    }

    /// `(j, Δ_j f)` in increasing `j`.
    pub fn blocks(&self) -> impl Iterator<Item = (i32, &SampledField)> {
        self.blocks
            .iter()
            .enumerate()
            .map(move |(i, b)| (self.j_min + i as i32, b))
    }

    pub fn lowpass(&self) -> &SampledField {
        &self.lowpass
    }

    pub fn residual(&self) -> &SampledField {
        &self.residual
    }

    /// `Σ_j Δ_j f` without the low-frequency part.
    pub fn block_sum(&self) -> SampledField {
        let mut out = SampledField::zeros(self.grid);
        for b in &self.blocks {
            out.add_assign(b);
        }
        out
    }

    /// Blockwise `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.grid != other.grid || self.j_min != other.j_min || self.j_max != other.j_max {
            return Err(invalid("decompositions have different grids or ranges"));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| x.combine(a, y, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid: self.grid,
            j_min: self.j_min,
            j_max: self.j_max,
            blocks,
            lowpass: self.lowpass.combine(a, &other.lowpass, b)?,
            residual: self.residual.combine(a, &other.residual, b)?,
        })
    }
}

/// Largest `j_max` allowed on `grid`: `2^{j_max+1} <= nyquist`.
pub fn max_scale(grid: &GridSpec) -> i32 {
    grid.nyquist().log2().floor() as i32 - 1
}

/// Littlewood-Paley decomposition of `f` over scales `j_min..=j_max`.
///
/// The block of scale `j` has Fourier multiplier `psi(2^{-j}|ξ|)`, the
/// lowpass `phi(2^{-j_min}|ξ|)` and the residual `1 - phi(2^{-j_max-1}|ξ|)`,
/// with `|ξ|` measured in absolute units `2π·k/period`.
pub fn decompose(
    f: &SampledField,
    profile: &CutoffProfile,
    j_min: i32,
    j_max: i32,
) -> Result<BlockDecomposition> {
    let grid = *f.grid();
    if j_min >= j_max {
        return Err(invalid(format!(
            "need j_min < j_max, got j_min={j_min}, j_max={j_max}"
        )));
    }
    if pow2(j_max + 1) > grid.nyquist() {
        return Err(Error::Range(format!(
            "2^(j_max+1) = {} exceeds the grid Nyquist frequency {}",
            pow2(j_max + 1),
            grid.nyquist()
        )));
    }
    let spectrum = fft::forward_real(&grid, f.samples());
    let mags = grid.frequency_magnitudes();

    let filtered = |mult: &dyn Fn(f64) -> f64| -> SampledField {
        let data: Vec<Complex64> = spectrum
            .iter()
            .zip(&mags)
            .map(|(z, &r)| *z * mult(r))
            .collect();
        SampledField::new(grid, fft::inverse_real(&grid, data))
            .expect("filtered samples are finite")
    };

    let blocks = (j_min..=j_max)
        .map(|j| filtered(&|r| profile.block_multiplier(j, r)))
        .collect();
    let lowpass = filtered(&|r| profile.lowpass_multiplier(j_min, r));
    let residual = filtered(&|r| 1.0 - profile.lowpass_multiplier(j_max + 1, r));
    Ok(BlockDecomposition {
        grid,
        j_min,
        j_max,
        blocks,
        lowpass,
        residual,
    })
}

/// `lowpass + Σ_j Δ_j f`.
pub fn reconstruct(d: &BlockDecomposition) -> SampledField {
    let mut out = d.lowpass.clone();
    for b in &d.blocks {
        out.add_assign(b);
    }
    out
}
