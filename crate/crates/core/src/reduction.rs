//! Analytic side of the reduction principle: pair-distance densities of the
//! observation window, the singular normalization integral c1, leading-order
//! variance asymptotics, dominant-component analysis with limit weights, and
//! brute-force checkers for the multi-index inequalities those results rest
//! on.

use crate::covariance::{slowly_varying, CovarianceModel, SvKind};
use crate::error::{Error, Result};
use crate::hermite::{enumerate_multi_indices, MultiIndex};
use crate::quad;
use std::f64::consts::PI;

/// Observation window Delta, centered and convex; Delta(r) is its r-scaled
/// homothetic copy with |Delta(r)| = r^2 |Delta|.
///
/// The lattice window of side S maps onto the unit square with r = S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowShape {
    /// Side-1 square: diameter sqrt(2), area 1.
    UnitSquare,
    /// Radius-1 disc: diameter 2, area pi.
    UnitDisc,
}

impl WindowShape {
    pub fn diameter(&self) -> f64 {
        match self {
            WindowShape::UnitSquare => std::f64::consts::SQRT_2,
            WindowShape::UnitDisc => 2.0,
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            WindowShape::UnitSquare => 1.0,
            WindowShape::UnitDisc => PI,
        }
    }

    /// Density of the distance between two independent uniform points in the
    /// window. Zero outside [0, diameter].
    pub fn distance_density(&self, rho: f64) -> f64 {
        if rho < 0.0 || rho > self.diameter() {
            return 0.0;
        }
        match self {
            WindowShape::UnitSquare => {
                if rho <= 1.0 {
                    2.0 * rho * (rho * rho - 4.0 * rho + PI)
                } else {
                    let t = (rho * rho - 1.0).sqrt();
                    2.0 * rho * (4.0 * t - (rho * rho + 2.0 - PI) - 4.0 * t.atan())
                }
            }
            WindowShape::UnitDisc => {
                let x = 0.5 * rho;
                4.0 * rho / PI * (x.acos() - x * (1.0 - x * x).sqrt())
            }
        }
    }
}

/// Normalization constant c1 = int_0^diam z^{-sum_j alpha_j k_j} psi(z) dz.
///
/// Finite exactly when sum_j alpha_j k_j < d; the integrable endpoint
/// singularity at zero is handled analytically (psi has a polynomial leading
/// part there) and the remainder adaptively. Relative error <= 1e-6.
pub fn c1(shape: WindowShape, alphas: &[f64], k: &MultiIndex, dim: u32) -> Result<f64> {
    if dim != 2 {
        return Err(Error::Domain(format!(
            "window shapes are two-dimensional, got d={dim}"
        )));
    }
    if alphas.len() != k.len() {
        return Err(Error::Shape(format!(
            "{} exponents vs index {k}",
            alphas.len()
        )));
    }
    let s: f64 = alphas
        .iter()
        .zip(k.parts())
        .map(|(&a, &kj)| a * kj as f64)
        .sum();
    c1_exponent(shape, s, dim)
}

/// c1 with the exponent sum supplied directly.
pub fn c1_exponent(shape: WindowShape, s: f64, dim: u32) -> Result<f64> {
    if dim != 2 {
        return Err(Error::Domain(format!(
            "window shapes are two-dimensional, got d={dim}"
        )));
    }
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("exponent sum must be >= 0, got {s}")));
    }
    if s >= dim as f64 {
        return Err(Error::DivergentConstant { exponent: s, dim });
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    match shape {
        WindowShape::UnitSquare => {
            // psi is the cubic 2 pi z - 8 z^2 + 2 z^3 on [0, 1]: integrate it
            // against z^{-s} in closed form, then the smooth tail piece.
            let head = 2.0 * PI / (2.0 - s) - 8.0 / (3.0 - s) + 2.0 / (4.0 - s);
            let tail = quad::integrate(
                &|z: f64| z.powf(-s) * shape.distance_density(z),
                1.0,
                std::f64::consts::SQRT_2,
                1e-9,
                1e-12,
            );
            Ok(head + tail)
        }
        WindowShape::UnitDisc => {
            // Series head from psi(z) = 2z - (4/pi) z^2 + z^4/(6 pi)
            // + z^6/(160 pi) + O(z^8).
            let eps = 1e-2f64;
            let head = 2.0 * eps.powf(2.0 - s) / (2.0 - s)
                - 4.0 / PI * eps.powf(3.0 - s) / (3.0 - s)
                + eps.powf(5.0 - s) / ((5.0 - s) * 6.0 * PI)
                + eps.powf(7.0 - s) / ((7.0 - s) * 160.0 * PI);
            let tail = quad::integrate(
                &|z: f64| z.powf(-s) * shape.distance_density(z),
                eps,
                2.0,
                1e-9,
                1e-12,
            );
            Ok(head + tail)
        }
    }
}

/// Per-component long-range parameters of the vector field, plus the
/// F-transform split and level.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentParams {
    pub alphas: Vec<f64>,
    pub sv_kinds: Vec<SvKind>,
    /// Numerator count n of the F_{n, m-n} split.
    pub numerator: usize,
    pub level: f64,
}

impl ComponentParams {
    pub fn new(alphas: Vec<f64>, sv_kinds: Vec<SvKind>, numerator: usize, level: f64) -> Result<Self> {
        let m = alphas.len();
        if sv_kinds.len() != m {
            return Err(Error::Shape(format!(
                "{} alphas vs {} slowly-varying kinds",
                m,
                sv_kinds.len()
            )));
        }
        if m < 2 || numerator == 0 || numerator >= m {
            return Err(Error::Config(format!(
                "component split requires 1 <= n < m, got n={numerator}, m={m}"
            )));
        }
        if alphas.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::Domain("all alphas must be positive".into()));
        }
        Ok(Self {
            alphas,
            sv_kinds,
            numerator,
            level,
        })
    }

    pub fn total(&self) -> usize {
        self.alphas.len()
    }
}

/// Leading-order variance prediction for the order-kappa Hermite projection at
/// window scale r: |Delta|^2 sum_v (C_v^2 / v!) c1({alpha}, v)
/// r^{2d - sum alpha_j k_j} prod_j L_j(r)^{k_j}.
///
/// Terms with C_v = 0 are skipped; each remaining term must satisfy the
/// finiteness condition of c1.
pub fn variance_asymptote(
    params: &ComponentParams,
    shape: WindowShape,
    coefficients: &[(MultiIndex, f64)],
    r: f64,
    dim: u32,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("window scale must be positive, got {r}")));
    }
    let d = dim as f64;
    let area = shape.area();
    let mut total = 0.0;
    for (v, c_v) in coefficients {
        if *c_v == 0.0 {
            continue;
        }
        if v.len() != params.total() {
            return Err(Error::Shape(format!(
                "index {v} does not match {} components",
                params.total()
            )));
        }
        let s: f64 = params
            .alphas
            .iter()
            .zip(v.parts())
            .map(|(&a, &kj)| a * kj as f64)
            .sum();
        let mut sv_prod = 1.0;
        for (&sv, &kj) in params.sv_kinds.iter().zip(v.parts()) {
            if kj > 0 {
                sv_prod *= slowly_varying(sv, r)?.powi(kj as i32);
            }
        }
        total += c_v * c_v / v.factorial()?
            * c1(shape, &params.alphas, v, dim)?
            * r.powf(2.0 * d - s)
            * sv_prod;
    }
    Ok(area * area * total)
}

/// Dominant components: indices (0-based) of minimal decay exponent whose
/// slowly-varying ratios have finite limits, with the limit ratios
/// a_{j, j1*} against the smallest dominant index.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantComponents {
    pub indices: Vec<usize>,
    pub ratios: Vec<f64>,
    /// Smallest dominant index, the normalization reference.
    pub reference: usize,
}

/// Relative tolerance for treating two decay exponents as equal.
const ALPHA_EQ_TOL: f64 = 1e-9;

/// Identifies the dominant components: the argmin of the decay exponents,
/// provided their pairwise slowly-varying ratios converge (identical kinds
/// do; an oscillating factor against a constant one does not, which is the
/// no-convergence regime and is reported as an error).
pub fn dominant_components(params: &ComponentParams) -> Result<DominantComponents> {
    let min_alpha = params
        .alphas
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let tol = ALPHA_EQ_TOL * min_alpha.max(1.0);
    let indices: Vec<usize> = params
        .alphas
        .iter()
        .enumerate()
        .filter(|(_, &a)| (a - min_alpha).abs() <= tol)
        .map(|(j, _)| j)
        .collect();
    let kinds: Vec<SvKind> = indices.iter().map(|&j| params.sv_kinds[j]).collect();
    if kinds.iter().any(|&k| k != kinds[0]) {
        return Err(Error::NoDominantComponent(format!(
            "components {:?} share the minimal exponent {min_alpha} but mix \
             slowly-varying kinds, so their ratios have no limit",
            indices
        )));
    }
    // Identical slowly-varying kinds have ratio limit 1.
    let ratios = vec![1.0; indices.len()];
    let reference = indices[0];
    Ok(DominantComponents {
        indices,
        ratios,
        reference,
    })
}

/// Signed limit weights q_j over the dominant components:
/// a_{j,j1*}/n for numerator slots, -a_{j,j1*}/(m-n) for denominator slots.
pub fn limit_weights(
    params: &ComponentParams,
    dominants: &DominantComponents,
) -> Vec<(usize, f64)> {
    let n = params.numerator as f64;
    let mn = (params.total() - params.numerator) as f64;
    dominants
        .indices
        .iter()
        .zip(&dominants.ratios)
        .map(|(&j, &a)| {
            let q = if j < params.numerator { a / n } else { -a / mn };
            (j, q)
        })
        .collect()
}

/// Exhaustive verification report for the higher-order gap inequality.
#[derive(Debug, Clone)]
pub struct GapReport {
    /// sum alpha_j k_j at the base index.
    pub base_sum: f64,
    /// Hypothesis bound (l0 + 1) min alpha.
    pub bound: f64,
    /// delta = bound - base_sum.
    pub delta: f64,
    /// Minimal gap over all orders in (l0, l_max] and all indices.
    pub min_gap: f64,
    pub min_gap_order: usize,
    pub min_gap_index: MultiIndex,
    pub indices_checked: usize,
    /// min_gap >= delta (up to floating tolerance; equality is attained by
    /// the index concentrated on the minimal-alpha slot at order l0 + 1).
    pub all_gaps_at_least_delta: bool,
    /// Sufficient condition max(alpha)/min(alpha) <= 1 + 1/l0.
    pub ratio_condition_holds: bool,
    pub ratio_lhs: f64,
    pub ratio_rhs: f64,
}

/// Brute-force check of the gap inequality: under the hypothesis
/// sum alpha_j k_{j,l0} < (l0+1) min alpha, every index of every order
/// l in (l0, l_max] has sum alpha_j k_{j,l} exceeding the base sum by at
/// least delta.
///
/// A violated hypothesis is reported as `Error::HypothesisFailed` carrying
/// both sides; that outcome is data, not a bug.
pub fn check_gap_inequality(
    alphas: &[f64],
    l0: usize,
    k_l0: &MultiIndex,
    l_max: usize,
) -> Result<GapReport> {
    let m = alphas.len();
    if k_l0.len() != m {
        return Err(Error::Shape(format!(
            "base index {k_l0} does not match {m} components"
        )));
    }
    if k_l0.order() != l0 {
        return Err(Error::Domain(format!(
            "base index {k_l0} has order {}, expected l0 = {l0}",
            k_l0.order()
        )));
    }
    if l_max <= l0 {
        return Err(Error::Config(format!(
            "l_max must exceed l0, got l0={l0}, l_max={l_max}"
        )));
    }
    if alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::Domain("all alphas must be positive".into()));
    }
    let weighted = |v: &MultiIndex| -> f64 {
        alphas
            .iter()
            .zip(v.parts())
            .map(|(&a, &kj)| a * kj as f64)
            .sum()
    };
    let min_alpha = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_alpha = alphas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let base_sum = weighted(k_l0);
    let bound = (l0 as f64 + 1.0) * min_alpha;
    if !(base_sum < bound) {
        return Err(Error::HypothesisFailed {
            lhs: base_sum,
            rhs: bound,
            detail: format!("sum alpha_j k_j at {k_l0} against (l0+1) min(alpha)"),
        });
    }
    let delta = bound - base_sum;
    let mut min_gap = f64::INFINITY;
    let mut min_at = (l0 + 1, k_l0.clone());
    let mut checked = 0usize;
    for l in (l0 + 1)..=l_max {
        for v in enumerate_multi_indices(m, l) {
            let gap = weighted(&v) - base_sum;
            checked += 1;
            if gap < min_gap {
                min_gap = gap;
                min_at = (l, v);
            }
        }
    }
    let ratio_lhs = max_alpha / min_alpha;
    let ratio_rhs = 1.0 + 1.0 / l0 as f64;
    Ok(GapReport {
        base_sum,
        bound,
        delta,
        min_gap,
        min_gap_order: min_at.0,
        min_gap_index: min_at.1,
        indices_checked: checked,
        all_gaps_at_least_delta: min_gap >= delta - 1e-12,
        ratio_condition_holds: ratio_lhs <= ratio_rhs + 1e-12,
        ratio_lhs,
        ratio_rhs,
    })
}

/// Numerical supremum report for covariance-product domination.
#[derive(Debug, Clone)]
pub struct ProductBoundReport {
    /// Supremum of prod B_j^{k_{j,l}} / prod B_j^{k_{j,l0}} over the grid and
    /// all indices of orders (l0, l_max].
    pub sup_ratio: f64,
    pub sup_at_z: f64,
    pub sup_at_order: usize,
    pub sup_at_index: MultiIndex,
    /// Ratio at the smallest grid point (tends to 1 as z -> 0).
    pub ratio_at_zmin: f64,
    /// Largest ratio over indices at the largest grid point (tends to 0).
    pub max_ratio_at_zmax: f64,
    pub grid_len: usize,
}

/// Default evaluation grid: zero plus log-spaced points on [1e-3, 1e6].
pub fn default_product_grid() -> Vec<f64> {
    let mut grid = vec![0.0];
    let n = 64;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        grid.push(10f64.powf(-3.0 + 9.0 * t));
    }
    grid
}

/// Evaluates the covariance-product ratios on a grid and reports their
/// supremum and endpoint behaviour. Components are realized as Cauchy models
/// (constant slowly-varying factor) or declared-tail models (oscillating
/// factor). Requires the same hypothesis as the gap check.
pub fn check_product_bound(
    alphas: &[f64],
    sv_kinds: &[SvKind],
    l0: usize,
    k_l0: &MultiIndex,
    l_max: usize,
    z_grid: &[f64],
) -> Result<ProductBoundReport> {
    if sv_kinds.len() != alphas.len() {
        return Err(Error::Shape(format!(
            "{} alphas vs {} slowly-varying kinds",
            alphas.len(),
            sv_kinds.len()
        )));
    }
    if z_grid.is_empty() {
        return Err(Error::Config("empty evaluation grid".into()));
    }
    // Reuse the hypothesis gate and argument validation.
    let _ = check_gap_inequality(alphas, l0, k_l0, l_max)?;
    let models: Vec<CovarianceModel> = alphas
        .iter()
        .zip(sv_kinds)
        .map(|(&a, &sv)| match sv {
            SvKind::ConstantOne => CovarianceModel::cauchy(a),
            SvKind::LogOscillating => CovarianceModel::power_law_sv(a, sv),
        })
        .collect::<Result<_>>()?;
    let m = alphas.len();
    let mut grid = z_grid.to_vec();
    grid.sort_by(|a, b| a.total_cmp(b));
    let ratio = |v: &MultiIndex, z: f64| -> Result<f64> {
        let mut num = 1.0;
        let mut den = 1.0;
        for ((model, &kv), &k0) in models.iter().zip(v.parts()).zip(k_l0.parts()) {
            let b = model.evaluate(z)?;
            num *= b.powi(kv as i32);
            den *= b.powi(k0 as i32);
        }
        Ok(num / den)
    };
    let mut report = ProductBoundReport {
        sup_ratio: f64::NEG_INFINITY,
        sup_at_z: f64::NAN,
        sup_at_order: 0,
        sup_at_index: k_l0.clone(),
        ratio_at_zmin: f64::NAN,
        max_ratio_at_zmax: f64::NEG_INFINITY,
        grid_len: grid.len(),
    };
    let z_min = grid[0];
    let z_max = *grid.last().unwrap();
    for l in (l0 + 1)..=l_max {
        for v in enumerate_multi_indices(m, l) {
            for &z in &grid {
                let rho = ratio(&v, z)?;
                if rho > report.sup_ratio {
                    report.sup_ratio = rho;
                    report.sup_at_z = z;
                    report.sup_at_order = l;
                    report.sup_at_index = v.clone();
                }
                if z == z_max {
                    report.max_ratio_at_zmax = report.max_ratio_at_zmax.max(rho);
                }
            }
        }
    }
    // Endpoint ratio for the first order above l0 (any index; they all tend
    // to 1 as z -> 0 because B(0) = 1).
    let v0 = enumerate_multi_indices(m, l0 + 1)
        .into_iter()
        .next()
        .expect("nonempty order");
    report.ratio_at_zmin = ratio(&v0, z_min)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, uniform_open01};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn density_support_and_normalization() {
        assert_eq!(WindowShape::UnitSquare.distance_density(1.5), 0.0);
        assert_eq!(WindowShape::UnitSquare.distance_density(-0.1), 0.0);
        assert_eq!(WindowShape::UnitDisc.distance_density(2.3), 0.0);
        for shape in [WindowShape::UnitSquare, WindowShape::UnitDisc] {
            let total = quad::integrate(
                &|z: f64| shape.distance_density(z),
                0.0,
                shape.diameter(),
                1e-9,
                1e-12,
            );
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn mean_distances_match_known_constants_and_mc() {
        // Square line picking mean: (2 + sqrt(2) + 5 asinh(1)) / 15.
        let square_mean = quad::integrate(
            &|z: f64| z * WindowShape::UnitSquare.distance_density(z),
            0.0,
            std::f64::consts::SQRT_2,
            1e-10,
            1e-13,
        );
        assert_abs_diff_eq!(square_mean, 0.5214054331647207, epsilon = 1e-8);
        // Disc line picking mean: 128 / (45 pi).
        let disc_mean = quad::integrate(
            &|z: f64| z * WindowShape::UnitDisc.distance_density(z),
            0.0,
            2.0,
            1e-10,
            1e-13,
        );
        assert_abs_diff_eq!(disc_mean, 128.0 / (45.0 * PI), epsilon = 1e-8);
        // Monte Carlo oracle over uniform point pairs.
        let mut rng = stream_rng(2024, 0);
        let n = 10_000_000u64;
        let mut acc = 0.0;
        for _ in 0..n {
            let dx = uniform_open01(&mut rng) - uniform_open01(&mut rng);
            let dy = uniform_open01(&mut rng) - uniform_open01(&mut rng);
            acc += (dx * dx + dy * dy).sqrt();
        }
        assert_abs_diff_eq!(acc / n as f64, square_mean, epsilon = 0.002);
    }

    fn disc_point(rng: &mut impl rand::RngCore) -> (f64, f64) {
        let r = uniform_open01(rng).sqrt();
        let th = 2.0 * PI * uniform_open01(rng);
        (r * th.cos(), r * th.sin())
    }

    /// Monte Carlo pair-distance oracle for E |U - V|^{-s}.
    fn mc_inverse_moment(shape: WindowShape, s: f64, n: u64, seed: u64) -> f64 {
        let mut rng = stream_rng(seed, 0);
        let mut acc = 0.0;
        for _ in 0..n {
            let d2 = match shape {
                WindowShape::UnitSquare => {
                    let dx = uniform_open01(&mut rng) - uniform_open01(&mut rng);
                    let dy = uniform_open01(&mut rng) - uniform_open01(&mut rng);
                    dx * dx + dy * dy
                }
                WindowShape::UnitDisc => {
                    let (x1, y1) = disc_point(&mut rng);
                    let (x2, y2) = disc_point(&mut rng);
                    (x1 - x2).powi(2) + (y1 - y2).powi(2)
                }
            };
            acc += d2.powf(-0.5 * s);
        }
        acc / n as f64
    }

    /// Deterministic lattice double-sum oracle for the square, Richardson
    /// extrapolated in the known leading error order h^{2-s}.
    fn lattice_inverse_moment_square(s: f64) -> f64 {
        let eval = |n: usize| -> f64 {
            let h = 1.0 / n as f64;
            let mut acc = 0.0;
            for a in -(n as i64 - 1)..(n as i64) {
                for b in -(n as i64 - 1)..(n as i64) {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let mult = ((n as i64 - a.abs()) * (n as i64 - b.abs())) as f64;
                    let d = h * ((a * a + b * b) as f64).sqrt();
                    acc += mult * d.powf(-s);
                }
            }
            acc * h.powi(4)
        };
        let coarse = eval(512);
        let fine = eval(1024);
        fine + (fine - coarse) / (2f64.powf(2.0 - s) - 1.0)
    }

    #[test]
    fn c1_unit_exponent_zero() {
        let v = MultiIndex::new(vec![0, 0, 0]);
        let val = c1(WindowShape::UnitSquare, &[0.65, 0.8, 0.9], &v, 2).unwrap();
        assert_abs_diff_eq!(val, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn c1_divergence_boundary() {
        assert!(matches!(
            c1_exponent(WindowShape::UnitSquare, 2.0, 2),
            Err(Error::DivergentConstant { .. })
        ));
        assert!(matches!(
            c1_exponent(WindowShape::UnitDisc, 2.4, 2),
            Err(Error::DivergentConstant { .. })
        ));
        assert!(c1_exponent(WindowShape::UnitSquare, 1.999, 2).is_ok());
        assert!(c1_exponent(WindowShape::UnitSquare, 0.5, 3).is_err());
    }

    #[test]
    fn c1_against_lattice_oracle_square() {
        for &s in &[0.5, 1.0, 1.3, 1.5] {
            let ours = c1_exponent(WindowShape::UnitSquare, s, 2).unwrap();
            let oracle = lattice_inverse_moment_square(s);
            assert_relative_eq!(ours, oracle, max_relative = 5e-3);
        }
    }

    #[test]
    fn c1_against_mc_oracle() {
        // The MC pair oracle has finite variance only for s < 1; above that
        // the summand is heavy-tailed and the tolerance widens accordingly.
        for &(s, tol) in &[(0.5, 5e-3), (1.0, 5e-3), (1.3, 1e-2), (1.5, 5e-2)] {
            for shape in [WindowShape::UnitSquare, WindowShape::UnitDisc] {
                let ours = c1_exponent(shape, s, 2).unwrap();
                let oracle = mc_inverse_moment(shape, s, 10_000_000, 99);
                assert_relative_eq!(ours, oracle, max_relative = tol);
            }
        }
    }

    #[test]
    fn variance_asymptote_scaling_and_zero() {
        let params = ComponentParams::new(
            vec![0.65, 0.8, 0.9],
            vec![SvKind::ConstantOne; 3],
            1,
            1.0,
        )
        .unwrap();
        let zero = vec![(MultiIndex::new(vec![2, 0, 0]), 0.0)];
        assert_abs_diff_eq!(
            variance_asymptote(&params, WindowShape::UnitSquare, &zero, 32.0, 2).unwrap(),
            0.0,
            epsilon = 0.0
        );
        let coeffs = vec![(MultiIndex::new(vec![2, 0, 0]), 0.4)];
        let v1 = variance_asymptote(&params, WindowShape::UnitSquare, &coeffs, 32.0, 2).unwrap();
        let v2 = variance_asymptote(&params, WindowShape::UnitSquare, &coeffs, 64.0, 2).unwrap();
        // Doubling r multiplies by 2^{2d - sum alpha k} exactly when L = 1.
        assert_relative_eq!(v2 / v1, 2f64.powf(4.0 - 1.3), max_relative = 1e-12);
        // And the single-term value is the assembled formula.
        let expect = 0.4 * 0.4 / 2.0
            * c1_exponent(WindowShape::UnitSquare, 1.3, 2).unwrap()
            * 32f64.powf(4.0 - 1.3);
        assert_relative_eq!(v1, expect, max_relative = 1e-12);
    }

    /// Direct double-sum of the squared Cauchy covariance over a window
    /// lattice: the finite-r variance of the single-component order-2 term,
    /// which the asymptote should approach from below as r grows.
    #[test]
    fn variance_asymptote_against_double_sum() {
        let alpha = 0.65f64;
        let model = CovarianceModel::cauchy(alpha).unwrap();
        let c = 0.4f64;
        let params =
            ComponentParams::new(vec![alpha, 0.8, 0.9], vec![SvKind::ConstantOne; 3], 1, 1.0)
                .unwrap();
        let coeffs = vec![(MultiIndex::new(vec![2, 0, 0]), c)];
        let mut ratios = Vec::new();
        for &r in &[8usize, 16] {
            // Var of (C/v!) integral H_2 = (C^2/4) * 2 * sum sum B^2 dx^4.
            let n = r;
            let mut acc = 0.0;
            for a in -(n as i64 - 1)..(n as i64) {
                for b in -(n as i64 - 1)..(n as i64) {
                    let mult = ((n as i64 - a.abs()) * (n as i64 - b.abs())) as f64;
                    let d = ((a * a + b * b) as f64).sqrt();
                    let bb = model.evaluate(d).unwrap();
                    acc += mult * bb * bb;
                }
            }
            let exact = c * c / 2.0 * acc;
            let asym =
                variance_asymptote(&params, WindowShape::UnitSquare, &coeffs, r as f64, 2)
                    .unwrap();
            ratios.push(asym / exact);
        }
        // The power-law tail overstates the near-origin covariance, so the
        // asymptote sits above the exact value, converging from above as the
        // relative weight of small lags shrinks.
        assert!(ratios[1] > 1.0 && ratios[1] < 2.0, "ratio {}", ratios[1]);
        assert!(
            (ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs() + 1e-9,
            "no convergence trend: {ratios:?}"
        );
    }

    #[test]
    fn dominant_component_cases() {
        let case1 = ComponentParams::new(
            vec![0.65, 0.8, 0.9],
            vec![SvKind::ConstantOne; 3],
            1,
            1.0,
        )
        .unwrap();
        let d = dominant_components(&case1).unwrap();
        assert_eq!(d.indices, vec![0]);
        assert_eq!(d.reference, 0);
        assert_eq!(d.ratios, vec![1.0]);

        let symmetric = ComponentParams::new(
            vec![0.5, 0.5, 0.5],
            vec![SvKind::ConstantOne; 3],
            1,
            1.0,
        )
        .unwrap();
        let d = dominant_components(&symmetric).unwrap();
        assert_eq!(d.indices, vec![0, 1, 2]);
        assert_eq!(d.ratios, vec![1.0, 1.0, 1.0]);

        let mixed = ComponentParams::new(
            vec![0.5, 0.5],
            vec![SvKind::LogOscillating, SvKind::ConstantOne],
            1,
            1.0,
        )
        .unwrap();
        assert!(matches!(
            dominant_components(&mixed),
            Err(Error::NoDominantComponent(_))
        ));
        // An oscillating factor on a non-minimal component is harmless.
        let tailed = ComponentParams::new(
            vec![0.5, 0.9],
            vec![SvKind::ConstantOne, SvKind::LogOscillating],
            1,
            1.0,
        )
        .unwrap();
        assert_eq!(dominant_components(&tailed).unwrap().indices, vec![0]);
    }

    #[test]
    fn dominance_depends_only_on_order_structure() {
        let base = vec![0.65, 0.8, 0.9, 0.65];
        let kinds = vec![SvKind::ConstantOne; 4];
        let reference = dominant_components(
            &ComponentParams::new(base.clone(), kinds.clone(), 2, 1.0).unwrap(),
        )
        .unwrap();
        for &scale in &[0.1, 3.0, 17.5] {
            let scaled: Vec<f64> = base.iter().map(|a| a * scale).collect();
            let d = dominant_components(
                &ComponentParams::new(scaled, kinds.clone(), 2, 1.0).unwrap(),
            )
            .unwrap();
            assert_eq!(d.indices, reference.indices);
        }
    }

    #[test]
    fn limit_weight_table() {
        // n=1, m=3, dominant {0}: q = 1.
        let p = ComponentParams::new(
            vec![0.65, 0.8, 0.9],
            vec![SvKind::ConstantOne; 3],
            1,
            1.0,
        )
        .unwrap();
        let d = dominant_components(&p).unwrap();
        assert_eq!(limit_weights(&p, &d), vec![(0, 1.0)]);

        // All dominant with equal alphas: (1, -1/2, -1/2).
        let p = ComponentParams::new(
            vec![0.5, 0.5, 0.5],
            vec![SvKind::ConstantOne; 3],
            1,
            1.0,
        )
        .unwrap();
        let d = dominant_components(&p).unwrap();
        assert_eq!(
            limit_weights(&p, &d),
            vec![(0, 1.0), (1, -0.5), (2, -0.5)]
        );

        // n=2, m=3, dominant {2}: q = -1.
        let p = ComponentParams::new(
            vec![0.9, 0.8, 0.5],
            vec![SvKind::ConstantOne; 3],
            2,
            1.0,
        )
        .unwrap();
        let d = dominant_components(&p).unwrap();
        assert_eq!(limit_weights(&p, &d), vec![(2, -1.0)]);
    }

    #[test]
    fn limit_weights_sum_rule() {
        // All components dominant with unit ratios: numerator weights sum to
        // 1, denominator weights to -1.
        for (n, m) in [(1usize, 3usize), (2, 5), (3, 7)] {
            let p = ComponentParams::new(
                vec![0.4; m],
                vec![SvKind::ConstantOne; m],
                n,
                1.0,
            )
            .unwrap();
            let d = dominant_components(&p).unwrap();
            let w = limit_weights(&p, &d);
            let num: f64 = w.iter().filter(|(j, _)| *j < n).map(|(_, q)| q).sum();
            let den: f64 = w.iter().filter(|(j, _)| *j >= n).map(|(_, q)| q).sum();
            assert_abs_diff_eq!(num, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(den, -1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn gap_check_case1() {
        let report = check_gap_inequality(
            &[0.65, 0.8, 0.9],
            2,
            &MultiIndex::new(vec![2, 0, 0]),
            6,
        )
        .unwrap();
        assert_abs_diff_eq!(report.delta, 3.0 * 0.65 - 1.3, epsilon = 1e-12);
        // The minimal gap is attained at (3,0,0) and equals delta exactly.
        assert_abs_diff_eq!(report.min_gap, 0.65, epsilon = 1e-12);
        assert_eq!(report.min_gap_order, 3);
        assert_eq!(report.min_gap_index.parts(), &[3, 0, 0]);
        assert!(report.all_gaps_at_least_delta);
        // C(3,1)+...: orders 3..6 of 3 parts: 10 + 15 + 21 + 28.
        assert_eq!(report.indices_checked, 74);
        // Case-1 alphas satisfy the ratio sufficient condition: 0.9/0.65 <= 1.5.
        assert!(report.ratio_condition_holds);
    }

    #[test]
    fn gap_check_case2_hypothesis() {
        // With the base mass on the heaviest component the hypothesis fails
        // outright: 1.8 < 3 * 0.1 is false.
        let err = check_gap_inequality(
            &[0.1, 0.5, 0.9],
            2,
            &MultiIndex::new(vec![0, 0, 2]),
            6,
        );
        match err {
            Err(Error::HypothesisFailed { lhs, rhs, .. }) => {
                assert_abs_diff_eq!(lhs, 1.8, epsilon = 1e-12);
                assert_abs_diff_eq!(rhs, 0.3, epsilon = 1e-12);
            }
            other => panic!("expected HypothesisFailed, got {other:?}"),
        }
        // On the lightest component the hypothesis itself holds (0.2 < 0.3)
        // but the ratio sufficient condition fails: 0.9 / 0.1 > 1.5.
        let report = check_gap_inequality(
            &[0.1, 0.5, 0.9],
            2,
            &MultiIndex::new(vec![2, 0, 0]),
            6,
        )
        .unwrap();
        assert!(!report.ratio_condition_holds);
        assert_abs_diff_eq!(report.ratio_lhs, 9.0, epsilon = 1e-12);
    }

    #[test]
    fn gap_check_single_component() {
        // m = 1: delta = (l0+1) alpha - l0 alpha = alpha, and the order-2 gap
        // equals alpha exactly.
        let alpha = 0.37;
        let report = check_gap_inequality(&[alpha], 1, &MultiIndex::new(vec![1]), 5).unwrap();
        assert_abs_diff_eq!(report.delta, alpha, epsilon = 1e-14);
        assert_abs_diff_eq!(report.min_gap, alpha, epsilon = 1e-14);
        assert!(report.all_gaps_at_least_delta);
    }

    #[test]
    fn gap_check_argument_validation() {
        let v = MultiIndex::new(vec![2, 0, 0]);
        assert!(check_gap_inequality(&[0.5, 0.5], 2, &v, 6).is_err());
        assert!(check_gap_inequality(&[0.5, 0.5, 0.5], 3, &v, 6).is_err());
        assert!(check_gap_inequality(&[0.5, 0.5, 0.5], 2, &v, 2).is_err());
    }

    #[test]
    fn product_bound_case1() {
        let alphas = [0.65, 0.8, 0.9];
        let kinds = [SvKind::ConstantOne; 3];
        let grid = default_product_grid();
        let report = check_product_bound(
            &alphas,
            &kinds,
            2,
            &MultiIndex::new(vec![2, 0, 0]),
            6,
            &grid,
        )
        .unwrap();
        // Cauchy factors are <= 1 and the exponent gap is positive, so the
        // supremum is 1, attained as z -> 0 where B(0) = 1.
        assert!(report.sup_ratio <= 1.0 + 1e-12, "sup {}", report.sup_ratio);
        assert_abs_diff_eq!(report.ratio_at_zmin, 1.0, epsilon = 1e-3);
        assert!(
            report.max_ratio_at_zmax < 1e-3,
            "tail ratio {}",
            report.max_ratio_at_zmax
        );
    }

    #[test]
    fn product_bound_respects_hypothesis_gate() {
        let grid = default_product_grid();
        assert!(matches!(
            check_product_bound(
                &[0.1, 0.5, 0.9],
                &[SvKind::ConstantOne; 3],
                2,
                &MultiIndex::new(vec![0, 0, 2]),
                6,
                &grid,
            ),
            Err(Error::HypothesisFailed { .. })
        ));
    }
}
