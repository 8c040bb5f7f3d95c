//! Reproducible Monte Carlo experiment driver: case presets, per-arm
//! excursion-area collection with deterministic seed streams, two-sample
//! statistics and Q-Q exports, and the variance-scaling diagnostic of the
//! reduction principle.

use crate::covariance::{CovarianceModel, SvKind};
use crate::error::{Error, Result};
use crate::field::{
    fisher_snedecor_field, FieldSampler, LatticeSpec, DEFAULT_WAVE_COUNT,
};
use crate::hermite::{closed_form_cv_f_indicator, enumerate_multi_indices, MultiIndex};
use crate::minkowski::{centered_sojourn, excursion_area, rank2_statistic};
use crate::reduction::{variance_asymptote, ComponentParams, WindowShape};
use crate::rng::mix_seed;
use crate::special::std_normal_quantile;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const DEFAULT_GRID: usize = 128;
pub const DEFAULT_REPS: usize = 200;
pub const DEFAULT_LEVEL: f64 = 1.0;
pub const DEFAULT_MASTER_SEED: u64 = 3;

/// One experimental arm: a vector model and its F-transform split.
#[derive(Debug, Clone)]
pub struct Arm {
    pub label: String,
    pub models: Vec<CovarianceModel>,
    pub numerator: usize,
}

impl Arm {
    pub fn new(label: impl Into<String>, models: Vec<CovarianceModel>, numerator: usize) -> Self {
        Self {
            label: label.into(),
            models,
            numerator,
        }
    }
}

/// Fully resolved experiment configuration. Identical configurations with the
/// same master seed produce bit-identical outputs.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub case_label: String,
    pub grid: LatticeSpec,
    pub arms: Vec<Arm>,
    pub level: f64,
    pub n_realizations: usize,
    pub master_seed: u64,
    pub wave_count: usize,
}

impl ExperimentConfig {
    /// Vector Cauchy model with mixed decay exponents (0.65, 0.8, 0.9) against
    /// single-exponent arms at each of those values.
    pub fn case1(grid_n: usize, reps: usize, seed: u64) -> Result<Self> {
        Self::mixed_cauchy_case("case1", &[0.65, 0.8, 0.9], grid_n, reps, seed)
    }

    /// Vector Cauchy model with strongly separated exponents (0.1, 0.5, 0.9);
    /// the reduction conditions fail here.
    pub fn case2(grid_n: usize, reps: usize, seed: u64) -> Result<Self> {
        Self::mixed_cauchy_case("case2", &[0.1, 0.5, 0.9], grid_n, reps, seed)
    }

    /// Cauchy components at alpha = 0.5 against cyclic Bessel components with
    /// the same hyperbolic decay rate.
    pub fn case3(grid_n: usize, reps: usize, seed: u64) -> Result<Self> {
        let grid = LatticeSpec::square(grid_n, 1.0)?;
        let cauchy = CovarianceModel::cauchy(0.5)?;
        let bessel = CovarianceModel::bessel(0.0)?;
        let config = Self {
            case_label: "case3".into(),
            grid,
            arms: vec![
                Arm::new("a_cauchy0.5", vec![cauchy; 3], 1),
                Arm::new("c_bessel0", vec![bessel; 3], 1),
            ],
            level: DEFAULT_LEVEL,
            n_realizations: reps,
            master_seed: seed,
            wave_count: DEFAULT_WAVE_COUNT,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn preset(case: u8, grid_n: usize, reps: usize, seed: u64) -> Result<Self> {
        match case {
            1 => Self::case1(grid_n, reps, seed),
            2 => Self::case2(grid_n, reps, seed),
            3 => Self::case3(grid_n, reps, seed),
            other => Err(Error::Config(format!("unknown case preset {other}"))),
        }
    }

    fn mixed_cauchy_case(
        label: &str,
        alphas: &[f64; 3],
        grid_n: usize,
        reps: usize,
        seed: u64,
    ) -> Result<Self> {
        let grid = LatticeSpec::square(grid_n, 1.0)?;
        let mixed: Vec<CovarianceModel> = alphas
            .iter()
            .map(|&a| CovarianceModel::cauchy(a))
            .collect::<Result<_>>()?;
        let mut arms = vec![Arm::new("b_mixed", mixed, 1)];
        for &a in alphas {
            arms.push(Arm::new(
                format!("a_{a}"),
                vec![CovarianceModel::cauchy(a)?; 3],
                1,
            ));
        }
        let config = Self {
            case_label: label.into(),
            grid,
            arms,
            level: DEFAULT_LEVEL,
            n_realizations: reps,
            master_seed: seed,
            wave_count: DEFAULT_WAVE_COUNT,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_realizations < 2 {
            return Err(Error::Config(format!(
                "need at least 2 realizations, got {}",
                self.n_realizations
            )));
        }
        if self.arms.is_empty() {
            return Err(Error::Config("no arms configured".into()));
        }
        for arm in &self.arms {
            let m = arm.models.len();
            if m < 2 || arm.numerator == 0 || arm.numerator >= m {
                return Err(Error::Config(format!(
                    "arm {}: split must satisfy 1 <= n < m, got n={}, m={m}",
                    arm.label, arm.numerator
                )));
            }
        }
        Ok(())
    }

    /// Fully resolved configuration as `key = value` text.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case = {}", self.case_label);
        let _ = writeln!(out, "grid_nx = {}", self.grid.n_x);
        let _ = writeln!(out, "grid_ny = {}", self.grid.n_y);
        let _ = writeln!(out, "dx = {}", self.grid.dx);
        let _ = writeln!(out, "level = {}", self.level);
        let _ = writeln!(out, "realizations = {}", self.n_realizations);
        let _ = writeln!(out, "master_seed = {}", self.master_seed);
        let _ = writeln!(out, "wave_count = {}", self.wave_count);
        for (i, arm) in self.arms.iter().enumerate() {
            let _ = writeln!(out, "arm{}.label = {}", i, arm.label);
            let _ = writeln!(out, "arm{}.numerator = {}", i, arm.numerator);
            for (j, model) in arm.models.iter().enumerate() {
                let _ = writeln!(out, "arm{}.component{} = {}", i, j, model.config_string());
            }
        }
        out
    }
}

/// Per-realization record of one arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationRecord {
    pub index: usize,
    pub seed: u64,
    pub area: f64,
    pub fraction: f64,
    pub clipped_cells: usize,
}

/// Collected excursion statistics of one arm.
#[derive(Debug, Clone)]
pub struct ArmResult {
    pub label: String,
    /// Realization-order records (the CSV rows).
    pub records: Vec<RealizationRecord>,
    /// Areas sorted ascending, for distributional statistics.
    pub areas_sorted: Vec<f64>,
    pub mean_area: f64,
    pub var_area: f64,
    pub mean_fraction: f64,
    /// Sampler construction failure (embedding inadmissible), if any.
    pub failure: Option<String>,
}

impl ArmResult {
    fn failed(label: &str, message: String) -> Self {
        Self {
            label: label.to_string(),
            records: Vec::new(),
            areas_sorted: Vec::new(),
            mean_area: f64::NAN,
            var_area: f64::NAN,
            mean_fraction: f64::NAN,
            failure: Some(message),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }
}

/// Runs every arm of the experiment. An arm whose sampler construction fails
/// (inadmissible embedding) is reported in its result rather than aborting
/// the remaining arms; realizations are parallel with per-realization seeds
/// derived from (master_seed, arm index, realization index), merged in
/// realization order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ArmResult>> {
    config.validate()?;
    let mut results = Vec::with_capacity(config.arms.len());
    for (arm_idx, arm) in config.arms.iter().enumerate() {
        let samplers: std::result::Result<Vec<FieldSampler>, Error> = arm
            .models
            .iter()
            .map(|m| FieldSampler::with_wave_count(config.grid, *m, config.wave_count))
            .collect();
        let samplers = match samplers {
            Ok(s) => s,
            Err(e) => {
                log::error!("arm {} aborted: {e}", arm.label);
                results.push(ArmResult::failed(&arm.label, e.to_string()));
                continue;
            }
        };
        let arm_seed = mix_seed(config.master_seed, arm_idx as u64);
        let level = config.level;
        let numerator = arm.numerator;
        let records: Result<Vec<RealizationRecord>> = (0..config.n_realizations)
            .into_par_iter()
            .map(|i| {
                let seed = mix_seed(arm_seed, i as u64);
                let components: Vec<_> = samplers
                    .iter()
                    .enumerate()
                    .map(|(j, s)| s.sample(seed, j as u64))
                    .collect();
                let field = fisher_snedecor_field(&components, numerator)?;
                let summary = excursion_area(&field, level);
                Ok(RealizationRecord {
                    index: i,
                    seed,
                    area: summary.area,
                    fraction: summary.fraction,
                    clipped_cells: summary.clipped_cells,
                })
            })
            .collect();
        let records = records?;
        let mut areas_sorted: Vec<f64> = records.iter().map(|r| r.area).collect();
        areas_sorted.sort_by(|a, b| a.total_cmp(b));
        let n = records.len() as f64;
        let mean_area = records.iter().map(|r| r.area).sum::<f64>() / n;
        let var_area = records
            .iter()
            .map(|r| (r.area - mean_area).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        let mean_fraction = records.iter().map(|r| r.fraction).sum::<f64>() / n;
        results.push(ArmResult {
            label: arm.label.clone(),
            records,
            areas_sorted,
            mean_area,
            var_area,
            mean_fraction,
            failure: None,
        });
    }
    Ok(results)
}

/// Two-sample Kolmogorov-Smirnov result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    /// Asymptotic p-value from the Kolmogorov series at
    /// lambda = sqrt(nm/(n+m)) D.
    pub p_value: f64,
}

/// Sup-distance between the empirical cdfs of two samples (any input order;
/// sorted copies are made), with the asymptotic p-value.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> Result<KsResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Domain("ks_two_sample requires nonempty samples".into()));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    ys.sort_by(|a, b| a.total_cmp(b));
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut stat = 0.0f64;
    while i < n && j < m {
        let t = xs[i].min(ys[j]);
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        stat = stat.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n as f64 * m as f64) / (n + m) as f64;
    Ok(KsResult {
        statistic: stat,
        p_value: kolmogorov_tail(ne.sqrt() * stat),
    })
}

/// Complementary Kolmogorov distribution Q(lambda) = P(K > lambda).
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 1e-10 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Dual theta series, fast for small lambda.
        let t = (-std::f64::consts::PI * std::f64::consts::PI / (8.0 * lambda * lambda)).exp();
        let cdf = (2.0 * std::f64::consts::PI).sqrt() / lambda
            * (t + t.powi(9) + t.powi(25) + t.powi(49));
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        for k in 1..=100 {
            let term = (-2.0 * (k as f64 * lambda).powi(2)).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-18 {
                break;
            }
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// Critical value of the two-sample statistic at significance `alpha`:
/// c(alpha) sqrt((n + m)/(n m)) with c(alpha) = sqrt(-ln(alpha/2)/2).
pub fn ks_critical_value(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Subtract the mean and divide by the (n-1) standard deviation.
pub fn standardize(xs: &[f64]) -> Vec<f64> {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    if sd == 0.0 {
        return xs.iter().map(|v| v - mean).collect();
    }
    xs.iter().map(|v| (v - mean) / sd).collect()
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let pos = p * n as f64 - 0.5;
    if pos <= 0.0 {
        return sorted[0];
    }
    if pos >= (n - 1) as f64 {
        return sorted[n - 1];
    }
    let k = pos.floor() as usize;
    let frac = pos - k as f64;
    sorted[k] + frac * (sorted[k + 1] - sorted[k])
}

/// Matched empirical quantiles of two samples at probabilities (i - 1/2)/N,
/// N = min(len x, len y), linearly interpolated within each sample.
pub fn qq_data(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    ys.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len().min(ys.len());
    (0..n)
        .map(|i| {
            let p = (i as f64 + 0.5) / n as f64;
            (quantile_sorted(&xs, p), quantile_sorted(&ys, p))
        })
        .collect()
}

/// Normal Q-Q data: standard-normal quantiles against standardized order
/// statistics. A constant sample is flagged rather than divided by zero.
#[derive(Debug, Clone)]
pub struct NormalQqData {
    pub points: Vec<(f64, f64)>,
    pub zero_variance: bool,
}

pub fn normal_qq_data(x: &[f64]) -> Result<NormalQqData> {
    if x.is_empty() {
        return Err(Error::Domain("normal_qq_data requires a nonempty sample".into()));
    }
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0).max(1.0);
    let sd = var.sqrt();
    let zero_variance = !(sd > 0.0);
    if zero_variance {
        log::warn!("normal_qq_data: zero-variance sample, emitting degenerate line");
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let points = (0..n)
        .map(|i| {
            let p = (i as f64 + 0.5) / n as f64;
            let z = std_normal_quantile(p)?;
            let q = if zero_variance {
                sorted[i] - mean
            } else {
                (sorted[i] - mean) / sd
            };
            Ok((z, q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalQqData {
        points,
        zero_variance,
    })
}

/// Pearson correlation coefficient.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len()) as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// One row of the variance-scaling diagnostic.
#[derive(Debug, Clone, Copy)]
pub struct ScalingRow {
    /// Window side (grid n at dx = 1).
    pub r: usize,
    pub var_sojourn: f64,
    pub var_rank2: f64,
    /// var_rank2 / var_sojourn; tends to 1 from below as r grows.
    pub ratio: f64,
    /// Jackknife standard error of the ratio.
    pub ratio_se: f64,
    /// Leading-order analytic prediction of var_rank2.
    pub analytic: f64,
    /// Pearson correlation between the centered sojourn and its rank-2
    /// projection across realizations.
    pub correlation: f64,
}

fn sample_var(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// Jackknife standard error of var(y)/var(x).
fn jackknife_ratio_se(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let nf = n as f64;
    let (sx, sxx) = x.iter().fold((0.0, 0.0), |(s, ss), &v| (s + v, ss + v * v));
    let (sy, syy) = y.iter().fold((0.0, 0.0), |(s, ss), &v| (s + v, ss + v * v));
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let nm = nf - 1.0;
        let vx = ((sxx - x[i] * x[i]) - (sx - x[i]).powi(2) / nm) / (nm - 1.0);
        let vy = ((syy - y[i] * y[i]) - (sy - y[i]).powi(2) / nm) / (nm - 1.0);
        ratios.push(vy / vx);
    }
    let mean = ratios.iter().sum::<f64>() / nf;
    let ss = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>();
    ((nf - 1.0) / nf * ss).sqrt()
}

/// Extracts the power-law tail parameters of a model, when it has them.
fn lrd_exponent(model: &CovarianceModel) -> Option<(f64, SvKind)> {
    match *model {
        CovarianceModel::Cauchy { alpha } => Some((alpha, SvKind::ConstantOne)),
        CovarianceModel::PowerLawSv { alpha, sv } => Some((alpha, sv)),
        _ => None,
    }
}

/// Monte Carlo variances of the centered sojourn measure and of its rank-2
/// Hermite projection across window scales, with the analytic prediction and
/// their per-realization correlation.
///
/// Grids are r x r at dx = 1, so r is the physical window side and maps to
/// the unit-square homothety scale.
pub fn variance_scaling_report(
    models: &[CovarianceModel],
    numerator: usize,
    level: f64,
    r_list: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<ScalingRow>> {
    if r_list.len() < 3 {
        return Err(Error::Config("need at least 3 window scales".into()));
    }
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("window scales must be ascending".into()));
    }
    let m = models.len();
    let tail: Option<Vec<(f64, SvKind)>> = models.iter().map(lrd_exponent).collect();
    let tail = tail.ok_or_else(|| {
        Error::Config(
            "variance scaling needs power-law components (cauchy or powerlaw_sv)".into(),
        )
    })?;
    let params = ComponentParams::new(
        tail.iter().map(|t| t.0).collect(),
        tail.iter().map(|t| t.1).collect(),
        numerator,
        level,
    )?;
    let coeffs: Vec<(MultiIndex, f64)> = enumerate_multi_indices(m, 2)
        .into_iter()
        .map(|v| {
            let c = closed_form_cv_f_indicator(&v, level, numerator, m)?;
            Ok((v, c))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(r_list.len());
    for (ri, &r) in r_list.iter().enumerate() {
        let spec = LatticeSpec::square(r, 1.0)?;
        let samplers: Vec<FieldSampler> = models
            .iter()
            .map(|mm| FieldSampler::new(spec, *mm))
            .collect::<Result<_>>()?;
        let base = mix_seed(seed, 0x5ca1e_u64 + ri as u64);
        let pairs: Result<Vec<(f64, f64)>> = (0..reps)
            .into_par_iter()
            .map(|i| {
                let rseed = mix_seed(base, i as u64);
                let comps: Vec<_> = samplers
                    .iter()
                    .enumerate()
                    .map(|(j, s)| s.sample(rseed, j as u64))
                    .collect();
                let f = fisher_snedecor_field(&comps, numerator)?;
                let cs = centered_sojourn(&f, level, numerator, m)?;
                let k2 = rank2_statistic(&comps, numerator, level)?;
                Ok((cs, k2))
            })
            .collect();
        let pairs = pairs?;
        let cs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let k2: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let var_sojourn = sample_var(&cs);
        let var_rank2 = sample_var(&k2);
        rows.push(ScalingRow {
            r,
            var_sojourn,
            var_rank2,
            ratio: var_rank2 / var_sojourn,
            ratio_se: jackknife_ratio_se(&cs, &k2),
            analytic: variance_asymptote(
                &params,
                WindowShape::UnitSquare,
                &coeffs,
                r as f64,
                2,
            )?,
            correlation: pearson_correlation(&cs, &k2),
        });
    }
    Ok(rows)
}

/// Formats a float for CSV with full round-trip precision.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Writes arms.csv, ks.csv, the per-pair qq files and config.echo into `dir`.
/// Returns the paths written. KS statistics are computed on per-arm
/// standardized areas; Q-Q pairs are raw areas.
pub fn write_experiment_outputs(
    dir: &Path,
    config: &ExperimentConfig,
    results: &[ArmResult],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let mut arms_csv = String::from("arm,seed,area,fraction\n");
    for arm in results {
        for rec in &arm.records {
            let _ = writeln!(
                arms_csv,
                "{},{},{},{}",
                arm.label,
                rec.seed,
                fmt_f64(rec.area),
                fmt_f64(rec.fraction)
            );
        }
    }
    let arms_path = dir.join("arms.csv");
    fs::write(&arms_path, arms_csv)?;
    written.push(arms_path);

    let ok: Vec<&ArmResult> = results.iter().filter(|a| !a.is_failed()).collect();
    let mut ks_csv = String::from("arm_x,arm_y,statistic,p\n");
    for i in 0..ok.len() {
        for j in (i + 1)..ok.len() {
            let x = standardize(&ok[i].areas_sorted);
            let y = standardize(&ok[j].areas_sorted);
            let ks = ks_two_sample(&x, &y)?;
            let _ = writeln!(
                ks_csv,
                "{},{},{},{}",
                ok[i].label,
                ok[j].label,
                fmt_f64(ks.statistic),
                fmt_f64(ks.p_value)
            );
        }
    }
    let ks_path = dir.join("ks.csv");
    fs::write(&ks_path, ks_csv)?;
    written.push(ks_path);

    for i in 0..ok.len() {
        for j in (i + 1)..ok.len() {
            let mut qq_csv = String::from("q_x,q_y\n");
            for (qx, qy) in qq_data(&ok[i].areas_sorted, &ok[j].areas_sorted) {
                let _ = writeln!(qq_csv, "{},{}", fmt_f64(qx), fmt_f64(qy));
            }
            let name = format!(
                "qq_{}_{}.csv",
                sanitize_label(&ok[i].label),
                sanitize_label(&ok[j].label)
            );
            let path = dir.join(name);
            fs::write(&path, qq_csv)?;
            written.push(path);
        }
    }

    let mut echo = config.echo();
    for arm in results {
        if let Some(failure) = &arm.failure {
            let _ = writeln!(echo, "failure.{} = {}", sanitize_label(&arm.label), failure);
        }
    }
    let failures = results.iter().filter(|a| a.is_failed()).count();
    let _ = writeln!(echo, "failed_arms = {failures}");
    let echo_path = dir.join("config.echo");
    fs::write(&echo_path, echo)?;
    written.push(echo_path);

    Ok(written)
}

fn sanitize_label(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect()
}
