//! Multi-index machinery for the tensor Hermite basis, Monte Carlo estimation
//! of expansion coefficients and Hermite rank, Parseval diagnostics, and the
//! closed-form rank-2 coefficients of the F-field indicator.

use crate::error::{Error, Result};
use crate::rng::{stream_rng, NormalSource};
use crate::special::{ln_gamma, HermiteTable};
use rayon::prelude::*;
use std::fmt;

/// Default detection threshold: a coefficient counts as nonzero when its
/// estimate exceeds `z` standard errors.
pub const DEFAULT_RANK_Z: f64 = 4.0;

/// Largest multi-index order whose factorial is computed exactly.
pub const MAX_FACTORIAL_ORDER: usize = 20;

const PAIRS_PER_BLOCK: u64 = 1 << 13;

/// Hermite-expansion multi-index v = (k_1, ..., k_m) of order |v| = sum k_j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Self {
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// v! = k_1! ... k_m! in exact integer arithmetic; orders above
    /// `MAX_FACTORIAL_ORDER` are rejected rather than silently overflowing.
    pub fn factorial(&self) -> Result<f64> {
        if self.order() > MAX_FACTORIAL_ORDER {
            return Err(Error::Domain(format!(
                "multi-index order {} exceeds factorial bound {MAX_FACTORIAL_ORDER}",
                self.order()
            )));
        }
        let mut acc: u128 = 1;
        for &k in &self.0 {
            for j in 2..=k as u128 {
                acc = acc.checked_mul(j).ok_or_else(|| {
                    Error::Domain("multi-index factorial overflowed".to_string())
                })?;
            }
        }
        Ok(acc as f64)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// All compositions of `kappa` into `m` nonnegative parts, lexicographic.
/// Count is C(kappa + m - 1, kappa).
pub fn enumerate_multi_indices(m: usize, kappa: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    fill(&mut out, &mut cur, 0, kappa);
    out
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<usize>, pos: usize, remaining: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(MultiIndex::new(cur.clone()));
        return;
    }
    for k in 0..=remaining {
        cur[pos] = k;
        fill(out, cur, pos + 1, remaining - k);
    }
    cur[pos] = 0;
}

/// Tensor basis function e_v(omega) = prod_j H_{k_j}(omega_j).
pub fn e_v(v: &MultiIndex, omega: &[f64]) -> Result<f64> {
    if v.len() != omega.len() {
        return Err(Error::Shape(format!(
            "multi-index length {} vs vector length {}",
            v.len(),
            omega.len()
        )));
    }
    let mut prod = 1.0;
    for (&k, &w) in v.parts().iter().zip(omega) {
        prod *= crate::special::hermite(k, w)?;
    }
    Ok(prod)
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

impl CoefficientEstimate {
    /// True when the estimate is nonzero beyond `z` standard errors.
    pub fn significant(&self, z: f64) -> bool {
        self.estimate.abs() > z * self.std_error
    }
}

/// Hermite-expansion diagnostics of a functional G of an m-vector of
/// independent standard Gaussians.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub dim: usize,
    pub max_order: usize,
    /// (v, C_v estimate), grouped by order, lexicographic within an order.
    pub coefficients: Vec<(MultiIndex, CoefficientEstimate)>,
    /// Smallest order >= 1 with a significant coefficient, if any was found.
    pub hermite_rank: Option<usize>,
    pub rank_threshold: f64,
    /// Cumulative partial sums (kappa, sum_{|v| <= kappa} C_v^2 / v!).
    pub parseval_partial: Vec<(usize, f64)>,
    /// Monte Carlo estimate of the squared norm integral of G.
    pub g_squared: CoefficientEstimate,
    pub n_samples: u64,
    pub seed: u64,
}

impl ExpansionReport {
    pub fn coefficient(&self, v: &MultiIndex) -> Option<&CoefficientEstimate> {
        self.coefficients
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, c)| c)
    }

    /// Squared-norm estimate minus the cumulative partial sum at `max_order`.
    pub fn parseval_gap(&self) -> f64 {
        let partial = self.parseval_partial.last().map_or(0.0, |&(_, s)| s);
        self.g_squared.estimate - partial
    }
}

struct BlockAcc {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    g2_sum: f64,
    g2_sum_sq: f64,
}

/// One-pass Monte Carlo over antithetic pairs (omega, -omega) estimating
/// G-projections onto every supplied index, plus the squared norm of G.
///
/// Work is split into fixed-size blocks with per-block ChaCha streams and the
/// block results are merged in index order, so the output is independent of
/// thread scheduling.
fn mc_project<G>(
    g: &G,
    m: usize,
    indices: &[MultiIndex],
    n_samples: u64,
    seed: u64,
) -> Result<(Vec<CoefficientEstimate>, CoefficientEstimate)>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    if n_samples < 100 {
        return Err(Error::Config(format!(
            "Monte Carlo projection needs at least 100 samples, got {n_samples}"
        )));
    }
    let max_order = indices.iter().map(MultiIndex::order).max().unwrap_or(0);
    let table = HermiteTable::new(max_order)?;
    for v in indices {
        if v.len() != m {
            return Err(Error::Shape(format!(
                "index {v} does not match dimension {m}"
            )));
        }
    }
    let n_pairs = n_samples.div_ceil(2);
    let n_blocks = n_pairs.div_ceil(PAIRS_PER_BLOCK);
    let blocks: Vec<BlockAcc> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let pairs_here = if b + 1 == n_blocks {
                n_pairs - b * PAIRS_PER_BLOCK
            } else {
                PAIRS_PER_BLOCK
            };
            let mut src = NormalSource::new(stream_rng(seed, b));
            let mut acc = BlockAcc {
                sum: vec![0.0; indices.len()],
                sum_sq: vec![0.0; indices.len()],
                g2_sum: 0.0,
                g2_sum_sq: 0.0,
            };
            let mut omega = vec![0.0f64; m];
            let mut neg = vec![0.0f64; m];
            let mut herm = vec![0.0f64; (max_order + 1) * m];
            for _ in 0..pairs_here {
                for j in 0..m {
                    omega[j] = src.sample();
                    neg[j] = -omega[j];
                }
                let g_pos = g(&omega);
                let g_neg = g(&neg);
                for j in 0..m {
                    table.eval_all(omega[j], &mut herm[j * (max_order + 1)..(j + 1) * (max_order + 1)]);
                }
                for (i, v) in indices.iter().enumerate() {
                    let mut basis = 1.0;
                    for (j, &k) in v.parts().iter().enumerate() {
                        basis *= herm[j * (max_order + 1) + k];
                    }
                    // H_k(-x) = (-1)^k H_k(x), so the antithetic partner picks
                    // up the parity sign of the order.
                    let sign = if v.order() % 2 == 0 { 1.0 } else { -1.0 };
                    let val = 0.5 * (g_pos + sign * g_neg) * basis;
                    acc.sum[i] += val;
                    acc.sum_sq[i] += val * val;
                }
                let g2 = 0.5 * (g_pos * g_pos + g_neg * g_neg);
                acc.g2_sum += g2;
                acc.g2_sum_sq += g2 * g2;
            }
            acc
        })
        .collect();

    let mut sum = vec![0.0; indices.len()];
    let mut sum_sq = vec![0.0; indices.len()];
    let (mut g2_sum, mut g2_sum_sq) = (0.0, 0.0);
    for b in &blocks {
        for i in 0..indices.len() {
            sum[i] += b.sum[i];
            sum_sq[i] += b.sum_sq[i];
        }
        g2_sum += b.g2_sum;
        g2_sum_sq += b.g2_sum_sq;
    }
    let n = n_pairs as f64;
    let finish = |s: f64, ss: f64| {
        let mean = s / n;
        let var = (ss / n - mean * mean).max(0.0);
        CoefficientEstimate {
            estimate: mean,
            std_error: (var / n).sqrt(),
        }
    };
    let coeffs = sum
        .iter()
        .zip(&sum_sq)
        .map(|(&s, &ss)| finish(s, ss))
        .collect();
    Ok((coeffs, finish(g2_sum, g2_sum_sq)))
}

/// Monte Carlo Hermite coefficient C_v of a square-integrable functional,
/// with antithetic pairing. Deterministic given the seed.
pub fn hermite_coefficient<G>(
    g: &G,
    v: &MultiIndex,
    n_samples: u64,
    seed: u64,
) -> Result<CoefficientEstimate>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let (coeffs, _) = mc_project(g, v.len(), std::slice::from_ref(v), n_samples, seed)?;
    Ok(coeffs[0])
}

/// Estimates every coefficient of order <= `max_order` in one pass and
/// assembles rank and Parseval diagnostics.
pub fn expand<G>(
    g: &G,
    m: usize,
    max_order: usize,
    n_samples: u64,
    seed: u64,
) -> Result<ExpansionReport>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    expand_with_threshold(g, m, max_order, n_samples, seed, DEFAULT_RANK_Z)
}

pub fn expand_with_threshold<G>(
    g: &G,
    m: usize,
    max_order: usize,
    n_samples: u64,
    seed: u64,
    rank_threshold: f64,
) -> Result<ExpansionReport>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let mut indices = Vec::new();
    for kappa in 0..=max_order {
        indices.extend(enumerate_multi_indices(m, kappa));
    }
    let (coeffs, g_squared) = mc_project(g, m, &indices, n_samples, seed)?;
    let coefficients: Vec<(MultiIndex, CoefficientEstimate)> =
        indices.into_iter().zip(coeffs).collect();

    let mut hermite_rank = None;
    for kappa in 1..=max_order {
        let significant = coefficients
            .iter()
            .filter(|(v, _)| v.order() == kappa)
            .any(|(_, c)| c.significant(rank_threshold));
        if significant {
            hermite_rank = Some(kappa);
            break;
        }
    }

    let mut parseval_partial = Vec::with_capacity(max_order + 1);
    let mut cum = 0.0;
    for kappa in 0..=max_order {
        for (v, c) in coefficients.iter().filter(|(v, _)| v.order() == kappa) {
            cum += c.estimate * c.estimate / v.factorial()?;
        }
        parseval_partial.push((kappa, cum));
    }

    Ok(ExpansionReport {
        dim: m,
        max_order,
        coefficients,
        hermite_rank,
        rank_threshold,
        parseval_partial,
        g_squared,
        n_samples,
        seed,
    })
}

/// Smallest order kappa >= 1 whose coefficients are detectably nonzero, or
/// `None` if every order up to `max_order` is consistent with zero.
pub fn hermite_rank<G>(
    g: &G,
    m: usize,
    max_order: usize,
    n_samples: u64,
    seed: u64,
) -> Result<Option<usize>>
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    Ok(expand(g, m, max_order, n_samples, seed)?.hermite_rank)
}

/// Normalization constant of the rank-2 coefficients of the F-field
/// indicator:
/// c4(a, n, m) = (na/(m-n))^{n/2} Gamma(m/2)
///             / ((1 + na/(m-n))^{m/2} Gamma((m-n)/2) Gamma(n/2)).
pub fn c4(a: f64, n: usize, m: usize) -> Result<f64> {
    if n == 0 || n >= m {
        return Err(Error::Domain(format!(
            "c4 requires 1 <= n < m, got n={n}, m={m}"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("c4 requires a > 0, got {a}")));
    }
    let nf = n as f64;
    let mf = m as f64;
    let mnf = (m - n) as f64;
    let ratio = nf * a / mnf;
    let ln_val = 0.5 * nf * ratio.ln() + ln_gamma(0.5 * mf)?
        - 0.5 * mf * ratio.ln_1p()
        - ln_gamma(0.5 * mnf)?
        - ln_gamma(0.5 * nf)?;
    Ok(ln_val.exp())
}

/// Closed-form rank-2 Hermite coefficient of the indicator of {F_{n,m-n} > a}:
/// zero unless some k_j = 2, then 2 c4 / n on numerator slots and
/// -2 c4 / (m - n) on denominator slots.
pub fn closed_form_cv_f_indicator(v: &MultiIndex, a: f64, n: usize, m: usize) -> Result<f64> {
    if v.order() != 2 {
        return Err(Error::Domain(format!(
            "closed-form coefficients exist only at order 2, got |v| = {}",
            v.order()
        )));
    }
    if v.len() != m {
        return Err(Error::Shape(format!(
            "index {v} does not match m = {m} components"
        )));
    }
    let c = c4(a, n, m)?;
    match v.parts().iter().position(|&k| k == 2) {
        None => Ok(0.0),
        Some(j) if j < n => Ok(2.0 * c / n as f64),
        Some(_) => Ok(-2.0 * c / (m - n) as f64),
    }
}

/// Indicator of the excursion event {F_{n,m-n}(omega) > a} as a functional of
/// the m-vector of component values.
pub fn f_indicator(a: f64, n: usize, m: usize) -> impl Fn(&[f64]) -> f64 + Sync + Clone {
    move |omega: &[f64]| {
        debug_assert_eq!(omega.len(), m);
        let num: f64 = omega[..n].iter().map(|w| w * w).sum();
        let den: f64 = omega[n..].iter().map(|w| w * w).sum();
        // (num/n) / (den/(m-n)) > a, rearranged to avoid the 0/0 corner.
        if num * (m - n) as f64 > a * den * n as f64 {
            1.0
        } else {
            0.0
        }
    }
}
