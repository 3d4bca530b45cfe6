use serde::{Deserialize, Serialize};

use super::params::{CaseParams, CONSISTENCY_TOLERANCE};
use crate::error::{invalid, Result};
use crate::exponent::recip;

/// The segment `I = {(x, y) ∈ [0,1]² : x(1-θ) + θy = 1/p}` with endpoints
/// ordered by `x`: `(x0, y0)` has the smaller `x` (and larger `y`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub p: f64,
    pub theta: f64,
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl RegionSpec {
    /// Intersects the line with the unit square. Requires `p <= 2`.
    pub fn new(theta: f64, p: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(invalid(format!("theta must lie in (0, 1), got {theta}")));
        }
        if !(1.0..=2.0).contains(&p) {
            return Err(invalid(format!("the admissibility region needs 1 <= p <= 2, got {p}")));
        }
        let c = recip(p);
        let y_at = |x: f64| (c - x * (1.0 - theta)) / theta;
        let x_lo = ((c - theta) / (1.0 - theta)).max(0.0);
        let x_hi = (c / (1.0 - theta)).min(1.0);
        let region = Self {
            p,
            theta,
            x0: x_lo,
            y0: y_at(x_lo).clamp(0.0, 1.0),
            x1: x_hi,
            y1: y_at(x_hi).clamp(0.0, 1.0),
        };
        for (x, y) in [(region.x0, region.y0), (region.x1, region.y1)] {
            if (x * (1.0 - theta) + theta * y - c).abs() > CONSISTENCY_TOLERANCE {
                return Err(invalid("segment endpoint misses the line"));
            }
        }
        Ok(region)
    }
}

/// Evaluation of the two ordering chains on `(1/r0, 1/r1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub region: RegionSpec,
    /// `x0 <= 1/r0 <= 1/r1 <= y0`.
    pub chain_lower: bool,
    /// `y1 <= 1/r1 <= 1/r0 <= x1`.
    pub chain_upper: bool,
    /// The side condition `x0 < y0 and x1 < y1` read literally; with
    /// endpoints ordered by `x` the second half fails whenever the segment
    /// is not a single point, so it is reported but not used.
    pub literal_orientation: bool,
    pub admissible: bool,
}

/// Region predicate for the general `(r0, r1)` statement: admissible when
/// either ordering chain holds.
pub fn theorem5_admissible(case: &CaseParams) -> Result<AdmissibilityReport> {
    let region = RegionSpec::new(case.theta, case.p)?;
    let (a, b) = (recip(case.r0), recip(case.r1));
    let chain_lower = region.x0 <= a && a <= b && b <= region.y0;
    let chain_upper = region.y1 <= b && b <= a && a <= region.x1;
    Ok(AdmissibilityReport {
        region,
        chain_lower,
        chain_upper,
        literal_orientation: region.x0 < region.y0 && region.x1 < region.y1,
        admissible: chain_lower || chain_upper,
    })
}
