//! Excursion sets and the first Minkowski functional (sojourn measure) on
//! lattice fields, with the analytic centering and the rank-2 Hermite
//! projection used by the reduction-principle diagnostics.

use crate::error::{Error, Result};
use crate::field::{f_cdf, LatticeField};
use crate::hermite::c4;

/// Excursion-set area summary for one field and level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionSummary {
    pub level: f64,
    /// Physical area: dx^2 per above-level node (midpoint counting rule).
    pub area: f64,
    pub window_area: f64,
    /// area / window_area, in [0, 1].
    pub fraction: f64,
    /// Non-finite values (F-transform sentinels) are excluded and counted.
    pub clipped_cells: usize,
    pub cells_above: usize,
}

/// Area of {x : field(x) > a}, strict inequality at the threshold.
pub fn excursion_area(field: &LatticeField, level: f64) -> ExcursionSummary {
    let mut cells_above = 0usize;
    let mut clipped = 0usize;
    for &v in &field.values {
        if !v.is_finite() {
            clipped += 1;
        } else if v > level {
            cells_above += 1;
        }
    }
    let cell = field.spec.dx * field.spec.dx;
    let window_area = field.spec.window_area();
    let area = cells_above as f64 * cell;
    ExcursionSummary {
        level,
        area,
        window_area,
        fraction: area / window_area,
        clipped_cells: clipped,
        cells_above,
    }
}

/// Boolean excursion mask, row-major like the field values. Sentinel (non
/// finite) cells are false.
pub fn excursion_mask(field: &LatticeField, level: f64) -> Vec<bool> {
    field
        .values
        .iter()
        .map(|&v| v.is_finite() && v > level)
        .collect()
}

/// Sojourn area minus its analytic mean window_area * (1 - H(a)) for an
/// F-field with the declared split.
pub fn centered_sojourn(
    field: &LatticeField,
    level: f64,
    numerator: usize,
    total: usize,
) -> Result<f64> {
    let summary = excursion_area(field, level);
    let tail = 1.0 - f_cdf(level, numerator, total)?;
    Ok(summary.area - summary.window_area * tail)
}

/// Rank-2 Hermite projection of the centered sojourn measure, evaluated from
/// the Gaussian components of the F-field:
///
///   c4(a,n,m) [ (1/n) sum_{j<=n} s_j - (1/(m-n)) sum_{j>n} s_j ],
///   s_j = dx^2 sum_grid (eta_j^2 - 1).
///
/// The weights are the expansion coefficients over the order-2 indices divided
/// by v! = 2, i.e. C_{2e_j}/2 = c4/n (numerator) and -c4/(m-n) (denominator).
pub fn rank2_statistic(components: &[LatticeField], numerator: usize, level: f64) -> Result<f64> {
    let m = components.len();
    if m < 2 || numerator == 0 || numerator >= m {
        return Err(Error::Config(format!(
            "rank2_statistic requires 1 <= n < m, got n={numerator}, m={m}"
        )));
    }
    let spec = components[0].spec;
    for c in components {
        if c.spec != spec {
            return Err(Error::Shape(
                "all components must share one lattice spec".into(),
            ));
        }
    }
    let cell = spec.dx * spec.dx;
    let sojourn_h2 = |f: &LatticeField| -> f64 {
        let mut s = 0.0;
        for &v in &f.values {
            s += v * v - 1.0;
        }
        s * cell
    };
    let mut num = 0.0;
    for c in &components[..numerator] {
        num += sojourn_h2(c);
    }
    let mut den = 0.0;
    for c in &components[numerator..] {
        den += sojourn_h2(c);
    }
    let c = c4(level, numerator, m)?;
    Ok(c * (num / numerator as f64 - den / (m - numerator) as f64))
}
