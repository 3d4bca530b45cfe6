use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A periodic, uniformly sampled box `[0, period)^dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    points_per_axis: usize,
    period: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points_per_axis: usize, period: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(invalid(format!("dim must be 1 or 2, got {dim}")));
        }
        if points_per_axis < 8 || !points_per_axis.is_power_of_two() {
            return Err(invalid(format!(
                "points_per_axis must be a power of two >= 8, got {points_per_axis}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(invalid(format!("period must be positive, got {period}")));
        }
        Ok(Self {
            dim,
            points_per_axis,
            period,
        })
    }

    /// One-dimensional grid on `[0, 2π)`, where lattice frequencies are the
    /// integers.
    pub fn torus_1d(points: usize) -> Result<Self> {
        Self::new(1, points, 2.0 * PI)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.points_per_axis as f64
    }

    /// Measure of one grid cell, `spacing^dim`.
    pub fn cell_mass(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unit of the frequency lattice, `2π / period`.
    pub fn frequency_unit(&self) -> f64 {
        2.0 * PI / self.period
    }

    /// Largest representable frequency magnitude along an axis.
    pub fn nyquist(&self) -> f64 {
        self.frequency_unit() * (self.points_per_axis / 2) as f64
    }

    /// Signed lattice index for FFT bin `k`.
    pub fn signed_index(&self, k: usize) -> i64 {
        let n = self.points_per_axis;
        if k <= n / 2 {
            k as i64
        } else {
            k as i64 - n as i64
        }
    }

    /// `|ξ|` in absolute units for every FFT bin, row-major.
    pub fn frequency_magnitudes(&self) -> Vec<f64> {
        let n = self.points_per_axis;
        let unit = self.frequency_unit();
        match self.dim {
            1 => (0..n)
                .map(|k| unit * self.signed_index(k).unsigned_abs() as f64)
                .collect(),
            _ => {
                let mut out = Vec::with_capacity(n * n);
                for r in 0..n {
                    let kr = self.signed_index(r) as f64;
                    for c in 0..n {
                        let kc = self.signed_index(c) as f64;
                        out.push(unit * (kr * kr + kc * kc).sqrt());
                    }
                }
                out
            }
        }
    }

    /// Sample coordinates along one axis.
    pub fn axis_coordinates(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points_per_axis).map(|i| i as f64 * h).collect()
    }
}

/// Real samples of a function on a [`GridSpec`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: GridSpec,
    samples: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct FieldFile {
    dim: usize,
    points_per_axis: usize,
    period: f64,
    #[serde(default)]
    samples: Vec<f64>,
}

impl SampledField {
    pub fn new(grid: GridSpec, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(invalid(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("sample {i} is not finite")));
        }
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            samples: vec![0.0; grid.len()],
        }
    }

    /// Samples `f` at the grid points (`f` receives one coordinate per axis).
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let xs = grid.axis_coordinates();
        let samples = match grid.dim() {
            1 => xs.iter().map(|&x| f(&[x])).collect(),
            _ => {
                let mut s = Vec::with_capacity(grid.len());
                for &y in &xs {
                    for &x in &xs {
                        s.push(f(&[y, x]));
                    }
                }
                s
            }
        };
        Self::new(grid, samples)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|v| a * v).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &SampledField, b: f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(invalid("fields live on different grids"));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            grid: self.grid,
            samples,
        })
    }

    pub(crate) fn add_assign(&mut self, other: &SampledField) {
        debug_assert_eq!(self.grid, other.grid);
        for (x, y) in self.samples.iter_mut().zip(&other.samples) {
            *x += y;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FieldFile {
            dim: self.grid.dim(),
            points_per_axis: self.grid.points_per_axis(),
            period: self.grid.period(),
            samples: self.samples.clone(),
        })
        .expect("field serialization cannot fail")
    }

    /// Parses the JSON field format. An empty `samples` array is accepted
    /// only when the samples come from a binary sidecar (see
    /// [`SampledField::read`]).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FieldFile =
            serde_json::from_str(text).map_err(|e| invalid(format!("bad field JSON: {e}")))?;
        let grid = GridSpec::new(file.dim, file.points_per_axis, file.period)?;
        Self::new(grid, file.samples)
    }

    /// Reads a field file. If the JSON carries no samples, they are taken
    /// from `<path>.bin` (little-endian f64, same ordering).
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let file: FieldFile =
            serde_json::from_str(&text).map_err(|e| invalid(format!("bad field JSON: {e}")))?;
        let grid = GridSpec::new(file.dim, file.points_per_axis, file.period)?;
        if file.samples.is_empty() {
            let sidecar = sidecar_path(path);
            let bytes = fs::read(&sidecar)
                .map_err(|e| invalid(format!("cannot read {}: {e}", sidecar.display())))?;
            return Self::new(grid, decode_le_f64(&bytes)?);
        }
        Self::new(grid, file.samples)
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        fs::write(path, self.to_json())
    }

    /// Writes the samples to `<path>.bin` and a sample-free JSON header to
    /// `path`.
    pub fn write_with_sidecar(&self, path: &Path) -> std::io::Result<()> {
        let header = serde_json::to_string(&FieldFile {
            dim: self.grid.dim(),
            points_per_axis: self.grid.points_per_axis(),
            period: self.grid.period(),
            samples: Vec::new(),
        })
        .expect("header serialization cannot fail");
        fs::write(path, header)?;
        fs::write(sidecar_path(path), encode_le_f64(&self.samples))
    }
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".bin");
    s.into()
}

pub fn encode_le_f64(values: &[f64]) -> Vec<u8> {
    values.iter().flat_map(|v| v.to_le_bytes()).collect()
}

pub fn decode_le_f64(bytes: &[u8]) -> Result<Vec<f64>> {
    if !bytes.len().is_multiple_of(8) {
        return Err(Error::InvalidParameter(format!(
            "sidecar length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}
