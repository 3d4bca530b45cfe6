use rayon::slice::ParallelSliceMut;

use crate::error::{invalid, Result};
use crate::spectral::SampledField;

/// Pushforward description of `|f|` on a measure space: a list of
/// `(value, mass)` pairs, one per cell or atom of the underlying measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredValues {
    values: Vec<f64>,
    masses: Vec<f64>,
}

impl MeasuredValues {
    pub fn new(values: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if values.len() != masses.len() {
            return Err(invalid("values and masses differ in length"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(invalid(format!("values must be finite and >= 0, got {v}")));
        }
        if let Some(m) = masses.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(invalid(format!("masses must be finite and > 0, got {m}")));
        }
        Ok(Self { values, masses })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    /// Counting measure: every entry has mass 1. Values are taken in
    /// absolute value.
    pub fn counting(values: &[f64]) -> Result<Self> {
        Self::new(
            values.iter().map(|v| v.abs()).collect(),
            vec![1.0; values.len()],
        )
    }

    /// `|f|` on a grid with cell mass `spacing^dim`.
    pub fn from_field(f: &SampledField) -> Self {
        let m = f.grid().cell_mass();
        Self {
            values: f.samples().iter().map(|v| v.abs()).collect(),
            masses: vec![m; f.samples().len()],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.masses.iter().copied())
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// Same masses, values multiplied by `lambda >= 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * lambda).collect(),
            masses: self.masses.clone(),
        }
    }

    /// Same masses with replacement values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(values, self.masses.clone())
    }

    /// Concatenation of the entry lists (disjoint union of the spaces).
    pub fn concat(parts: &[MeasuredValues]) -> Self {
        let mut values = Vec::new();
        let mut masses = Vec::new();
        for p in parts {
            values.extend_from_slice(&p.values);
            masses.extend_from_slice(&p.masses);
        }
        Self { values, masses }
    }

    pub(crate) fn from_raw(values: Vec<f64>, masses: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), masses.len());
        Self { values, masses }
    }
}

/// One step of a decreasing rearrangement: `f*(s) = value` on
/// `[start, end)`, with `start` the previous step's end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub end: f64,
    pub value: f64,
}

/// The decreasing rearrangement `f*` as a right-continuous step function.
///
/// Only positive values are stored; `f* = 0` after the last step. The last
/// step may end at `+∞` for synthetic profiles with an infinite tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementProfile {
    steps: Vec<Step>,
    total_mass: f64,
}

impl RearrangementProfile {
    /// Builds a profile from steps, checking monotonicity.
    pub fn from_steps(steps: Vec<Step>, total_mass: f64) -> Result<Self> {
        let mut prev_end = 0.0;
        let mut prev_value = f64::INFINITY;
        for s in &steps {
            if s.end.is_nan() || s.end <= prev_end {
                return Err(invalid("step ends must be strictly increasing"));
            }
            if !(s.value > 0.0 && s.value < prev_value && s.value.is_finite()) {
                return Err(invalid("step values must be positive and strictly decreasing"));
            }
            prev_end = s.end;
            prev_value = s.value;
        }
        if total_mass < prev_end {
            return Err(invalid("total mass is smaller than the support"));
        }
        Ok(Self { steps, total_mass })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Measure of the whole space (may exceed the support of `f*`).
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Measure of `{|f| > 0}`.
    pub fn support_mass(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.end)
    }

    /// `f*(s)`.
    pub fn value_at(&self, s: f64) -> f64 {
        if s < 0.0 {
            return self.steps.first().map_or(0.0, |st| st.value);
        }
        let i = self.steps.partition_point(|st| st.end <= s);
        self.steps.get(i).map_or(0.0, |st| st.value)
    }

    /// `d(t) = μ{f* >= t}` for `t > 0`.
    pub fn distribution(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.total_mass;
        }
        let i = self.steps.partition_point(|st| st.value >= t);
        if i == 0 {
            0.0
        } else {
            self.steps[i - 1].end
        }
    }

    /// Iterates `(start, end, value)`.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let mut start = 0.0;
        self.steps.iter().map(move |st| {
            let piece = (start, st.end, st.value);
            start = st.end;
            piece
        })
    }

    /// Back to measured values, one entry per step.
    pub fn to_measured(&self) -> MeasuredValues {
        let (values, masses) = self.pieces().map(|(a, b, v)| (v, b - a)).unzip();
        MeasuredValues::from_raw(values, masses)
    }
}

/// `d_f(t) = μ{x : |f(x)| >= t}`.
pub fn distribution_function(v: &MeasuredValues, t: f64) -> f64 {
    v.iter().filter(|(x, _)| *x >= t).map(|(_, m)| m).sum()
}

const PARALLEL_SORT_THRESHOLD: usize = 1 << 15;

/// Decreasing rearrangement `f*(s) = inf{t : d_f(t) <= s}`.
///
/// Entries are sorted by decreasing value (stable sort, so the result does
/// not depend on thread count), equal values are merged, and cumulative
/// masses give the step ends.
pub fn rearrangement(v: &MeasuredValues) -> RearrangementProfile {
    let mut order: Vec<(f64, f64)> = v.iter().filter(|(x, _)| *x > 0.0).collect();
    let cmp = |a: &(f64, f64), b: &(f64, f64)| b.0.total_cmp(&a.0);
    if order.len() >= PARALLEL_SORT_THRESHOLD {
        order.par_sort_by(cmp);
    } else {
        order.sort_by(cmp);
    }
    let mut steps: Vec<Step> = Vec::new();
    let mut cumulative = 0.0;
    for (value, mass) in order {
        cumulative += mass;
        match steps.last_mut() {
            Some(last) if last.value == value => last.end = cumulative,
            _ => steps.push(Step {
                end: cumulative,
                value,
            }),
        }
    }
    RearrangementProfile {
        steps,
        total_mass: v.total_mass(),
    }
}
