//! Command-line driver: field simulation and export, excursion masks, Hermite
//! expansion reports, variance scaling diagnostics, inequality checkers and
//! the Monte Carlo case experiments.
//!
//! Exit codes: 0 success, 2 embedding failure, 3 configuration error.

use clap::{Args, Parser, Subcommand};
use sojourn::covariance::{CovarianceModel, SvKind};
use sojourn::error::Error;
use sojourn::field::{
    read_field_binary, simulate_gaussian, write_field_binary, write_field_csv, write_mask_csv,
    write_mask_pgm, LatticeSpec,
};
use sojourn::harness::{
    run_experiment, variance_scaling_report, write_experiment_outputs, ExperimentConfig,
};
use sojourn::hermite::{closed_form_cv_f_indicator, expand, f_indicator, MultiIndex};
use sojourn::minkowski::{excursion_area, excursion_mask};
use sojourn::reduction::{
    c1_exponent, check_gap_inequality, check_product_bound, default_product_grid, WindowShape,
};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sojourn",
    about = "Long-range dependent random fields: simulation, excursion sets and diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one field and dump it (binary + metadata, optional CSV/PGM).
    Simulate(SimulateArgs),
    /// Excursion mask and area summary of a field at a level.
    Excursion(ExcursionArgs),
    /// Hermite expansion report of the F-field indicator.
    Hermite(HermiteArgs),
    /// Variance-scaling diagnostic across window sizes.
    Variance(VarianceArgs),
    /// Brute-force checks of the multi-index gap and product-bound
    /// inequalities.
    Lemmas(LemmasArgs),
    /// Run a Monte Carlo case experiment and write its csv outputs.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Covariance model, e.g. "kind=cauchy alpha=0.65".
    #[arg(long)]
    model: String,
    /// Grid points per axis.
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// Grid points along y (defaults to --grid).
    #[arg(long)]
    grid_y: Option<usize>,
    /// Physical spacing.
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Also write an x,y,value CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ExcursionArgs {
    /// Field dump produced by `simulate` (alternative to --model).
    #[arg(long, conflicts_with = "model")]
    input: Option<PathBuf>,
    /// Simulate inline instead of reading a dump.
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value_t = 128)]
    grid: usize,
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Excursion level a.
    #[arg(long, default_value_t = 1.0)]
    level: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HermiteArgs {
    /// Excursion level a of the indicator.
    #[arg(long, default_value_t = 1.0)]
    level: f64,
    /// Numerator component count n.
    #[arg(long, default_value_t = 1)]
    numerator: usize,
    /// Total component count m.
    #[arg(long, default_value_t = 3)]
    components: usize,
    #[arg(long, default_value_t = 6)]
    max_order: usize,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VarianceArgs {
    /// Component decay exponents (Cauchy models), comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.65, 0.8, 0.9])]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    numerator: usize,
    #[arg(long, default_value_t = 1.0)]
    level: f64,
    /// Window sides, comma separated, ascending.
    #[arg(long, value_delimiter = ',', default_values_t = vec![16, 32, 64, 128])]
    r_list: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LemmasArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.65, 0.8, 0.9])]
    alphas: Vec<f64>,
    /// Base order l0.
    #[arg(long, default_value_t = 2)]
    l0: usize,
    /// Base multi-index, comma separated, order l0.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 0, 0])]
    k: Vec<usize>,
    #[arg(long, default_value_t = 6)]
    l_max: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Case preset: 1, 2 or 3.
    #[arg(long)]
    case: u8,
    #[arg(long, default_value_t = 128)]
    grid: usize,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = sojourn::harness::DEFAULT_MASTER_SEED)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests exit cleanly; bad arguments are
            // configuration errors.
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EmbeddingNotPd { .. } => 2,
        Error::Config(_) | Error::Domain(_) | Error::Shape(_) => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> sojourn::Result<()> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Excursion(args) => excursion(args),
        Command::Hermite(args) => hermite(args),
        Command::Variance(args) => variance(args),
        Command::Lemmas(args) => lemmas(args),
        Command::Experiment(args) => experiment(args),
    }
}

fn simulate(args: SimulateArgs) -> sojourn::Result<()> {
    let model = CovarianceModel::parse(&args.model)?;
    let spec = LatticeSpec::new(args.grid, args.grid_y.unwrap_or(args.grid), args.dx)?;
    let field = simulate_gaussian(spec, model, args.seed)?;
    fs::create_dir_all(&args.out)?;
    let bin = args.out.join("field.bin");
    write_field_binary(&field, &bin)?;
    println!("wrote {}", bin.display());
    if args.csv {
        let csv = args.out.join("field.csv");
        write_field_csv(&field, &csv)?;
        println!("wrote {}", csv.display());
    }
    Ok(())
}

fn excursion(args: ExcursionArgs) -> sojourn::Result<()> {
    let field = match (&args.input, &args.model) {
        (Some(path), None) => read_field_binary(path)?,
        (None, Some(model)) => {
            let model = CovarianceModel::parse(model)?;
            let spec = LatticeSpec::square(args.grid, args.dx)?;
            simulate_gaussian(spec, model, args.seed)?
        }
        _ => {
            return Err(Error::Config(
                "excursion needs exactly one of --input or --model".into(),
            ))
        }
    };
    fs::create_dir_all(&args.out)?;
    let summary = excursion_area(&field, args.level);
    let mask = excursion_mask(&field, args.level);
    write_mask_pgm(&mask, field.spec.n_x, field.spec.n_y, &args.out.join("mask.pgm"))?;
    write_mask_csv(&mask, field.spec.n_x, field.spec.n_y, &args.out.join("mask.csv"))?;
    let mut csv = String::from("seed,r,a,area,fraction,clipped_cells\n");
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{}",
        field.seed,
        field.spec.n_x as f64 * field.spec.dx,
        summary.level,
        summary.area,
        summary.fraction,
        summary.clipped_cells
    );
    fs::write(args.out.join("summary.csv"), csv)?;
    println!(
        "excursion area {} of window {} (fraction {:.6}, clipped {})",
        summary.area, summary.window_area, summary.fraction, summary.clipped_cells
    );
    Ok(())
}

fn hermite(args: HermiteArgs) -> sojourn::Result<()> {
    let (a, n, m) = (args.level, args.numerator, args.components);
    if n == 0 || n >= m {
        return Err(Error::Config(format!(
            "need 1 <= numerator < components, got n={n}, m={m}"
        )));
    }
    let g = f_indicator(a, n, m);
    let report = expand(&g, m, args.max_order, args.samples, args.seed)?;
    fs::create_dir_all(&args.out)?;

    let mut csv = String::new();
    for j in 1..=m {
        let _ = write!(csv, "k{j},");
    }
    csv.push_str("estimate,std_error,closed_form_if_any\n");
    for (v, c) in &report.coefficients {
        for &k in v.parts() {
            let _ = write!(csv, "{k},");
        }
        let closed = if v.order() == 2 {
            format!("{}", closed_form_cv_f_indicator(v, a, n, m)?)
        } else {
            String::new()
        };
        let _ = writeln!(csv, "{},{},{}", c.estimate, c.std_error, closed);
    }
    fs::write(args.out.join("report.csv"), csv)?;

    let mut text = String::new();
    let _ = writeln!(text, "functional = f_indicator(a={a}, n={n}, m={m})");
    let _ = writeln!(text, "samples = {}", report.n_samples);
    let _ = writeln!(text, "seed = {}", report.seed);
    let _ = writeln!(text, "max_order = {}", report.max_order);
    match report.hermite_rank {
        Some(r) => {
            let _ = writeln!(text, "hermite_rank = {r}");
        }
        None => {
            let _ = writeln!(text, "hermite_rank = not_found");
        }
    }
    let _ = writeln!(
        text,
        "g_squared = {} +- {}",
        report.g_squared.estimate, report.g_squared.std_error
    );
    for (kappa, partial) in &report.parseval_partial {
        let _ = writeln!(text, "parseval_partial[{kappa}] = {partial}");
    }
    let _ = writeln!(text, "parseval_gap = {}", report.parseval_gap());
    fs::write(args.out.join("report.txt"), text)?;
    println!(
        "hermite rank {:?}, parseval gap {:.6}",
        report.hermite_rank,
        report.parseval_gap()
    );
    Ok(())
}

fn variance(args: VarianceArgs) -> sojourn::Result<()> {
    let models: Vec<CovarianceModel> = args
        .alphas
        .iter()
        .map(|&a| CovarianceModel::cauchy(a))
        .collect::<sojourn::Result<_>>()?;
    let rows = variance_scaling_report(
        &models,
        args.numerator,
        args.level,
        &args.r_list,
        args.reps,
        args.seed,
    )?;
    fs::create_dir_all(&args.out)?;
    let mut csv = String::from("r,var_sojourn,var_rank2,ratio,ratio_se,analytic,correlation\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row.r, row.var_sojourn, row.var_rank2, row.ratio, row.ratio_se, row.analytic,
            row.correlation
        );
    }
    fs::write(args.out.join("scaling.csv"), csv)?;

    // c1 table over the rank-2 indices, with the deterministic lattice oracle
    // for reference.
    let mut c1_csv = String::from("alphas,k,c1,oracle_c1,rel_err\n");
    let alphas_str = args
        .alphas
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(";");
    for v in sojourn::hermite::enumerate_multi_indices(args.alphas.len(), 2) {
        let s: f64 = args
            .alphas
            .iter()
            .zip(v.parts())
            .map(|(&a, &k)| a * k as f64)
            .sum();
        if s >= 2.0 {
            continue;
        }
        let ours = c1_exponent(WindowShape::UnitSquare, s, 2)?;
        let oracle = lattice_c1_oracle(s, 512);
        let k_str = v
            .parts()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(
            c1_csv,
            "{},{},{},{},{}",
            alphas_str,
            k_str,
            ours,
            oracle,
            (ours - oracle).abs() / ours
        );
    }
    fs::write(args.out.join("c1_table.csv"), c1_csv)?;
    for row in &rows {
        println!(
            "r={:4}  var_sojourn={:.4e}  var_rank2={:.4e}  ratio={:.4} (se {:.4})  analytic={:.4e}  corr={:.4}",
            row.r, row.var_sojourn, row.var_rank2, row.ratio, row.ratio_se, row.analytic,
            row.correlation
        );
    }
    Ok(())
}

/// Deterministic unit-square pair-sum oracle for the c1 table.
fn lattice_c1_oracle(s: f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let nn = n as i64;
    let mut acc = 0.0;
    for a in -(nn - 1)..nn {
        for b in -(nn - 1)..nn {
            if a == 0 && b == 0 {
                continue;
            }
            let mult = ((nn - a.abs()) * (nn - b.abs())) as f64;
            let d = h * ((a * a + b * b) as f64).sqrt();
            acc += mult * d.powf(-s);
        }
    }
    acc * h.powi(4)
}

fn lemmas(args: LemmasArgs) -> sojourn::Result<()> {
    fs::create_dir_all(&args.out)?;
    let base = MultiIndex::new(args.k.clone());
    let mut text = String::new();
    let _ = writeln!(text, "alphas = {:?}", args.alphas);
    let _ = writeln!(text, "l0 = {}", args.l0);
    let _ = writeln!(text, "k_l0 = {base}");
    let _ = writeln!(text, "l_max = {}", args.l_max);
    match check_gap_inequality(&args.alphas, args.l0, &base, args.l_max) {
        Ok(report) => {
            let _ = writeln!(text, "status = verified");
            let _ = writeln!(text, "base_sum = {}", report.base_sum);
            let _ = writeln!(text, "bound = {}", report.bound);
            let _ = writeln!(text, "delta = {}", report.delta);
            let _ = writeln!(
                text,
                "min_gap = {} at order {} index {}",
                report.min_gap, report.min_gap_order, report.min_gap_index
            );
            let _ = writeln!(text, "indices_checked = {}", report.indices_checked);
            let _ = writeln!(
                text,
                "all_gaps_at_least_delta = {}",
                report.all_gaps_at_least_delta
            );
            let _ = writeln!(
                text,
                "ratio_condition (max/min <= 1 + 1/l0): {} ({} vs {})",
                report.ratio_condition_holds, report.ratio_lhs, report.ratio_rhs
            );
        }
        Err(Error::HypothesisFailed { lhs, rhs, detail }) => {
            let _ = writeln!(text, "status = hypothesis_failed");
            let _ = writeln!(text, "lhs = {lhs}");
            let _ = writeln!(text, "rhs = {rhs}");
            let _ = writeln!(text, "detail = {detail}");
        }
        Err(other) => return Err(other),
    }
    fs::write(args.out.join("gap_check.txt"), &text)?;
    print!("{text}");

    let kinds = vec![SvKind::ConstantOne; args.alphas.len()];
    let grid = default_product_grid();
    let mut text = String::new();
    match check_product_bound(&args.alphas, &kinds, args.l0, &base, args.l_max, &grid) {
        Ok(report) => {
            let _ = writeln!(text, "status = verified");
            let _ = writeln!(
                text,
                "sup_ratio = {} at z = {} (order {}, index {})",
                report.sup_ratio, report.sup_at_z, report.sup_at_order, report.sup_at_index
            );
            let _ = writeln!(text, "ratio_at_zmin = {}", report.ratio_at_zmin);
            let _ = writeln!(text, "max_ratio_at_zmax = {}", report.max_ratio_at_zmax);
            let _ = writeln!(text, "grid_len = {}", report.grid_len);
        }
        Err(Error::HypothesisFailed { lhs, rhs, detail }) => {
            let _ = writeln!(text, "status = hypothesis_failed");
            let _ = writeln!(text, "lhs = {lhs}");
            let _ = writeln!(text, "rhs = {rhs}");
            let _ = writeln!(text, "detail = {detail}");
        }
        Err(other) => return Err(other),
    }
    fs::write(args.out.join("product_bound.txt"), &text)?;
    print!("{text}");
    Ok(())
}

fn experiment(args: ExperimentArgs) -> sojourn::Result<()> {
    let config = ExperimentConfig::preset(args.case, args.grid, args.reps, args.seed)?;
    let results = run_experiment(&config)?;
    let written = write_experiment_outputs(&args.out, &config, &results)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    for arm in &results {
        match &arm.failure {
            Some(msg) => println!("arm {}: FAILED ({msg})", arm.label),
            None => println!(
                "arm {}: {} realizations, mean fraction {:.6}",
                arm.label,
                arm.records.len(),
                arm.mean_fraction
            ),
        }
    }
    if results.iter().any(|a| a.is_failed()) {
        return Err(Error::EmbeddingNotPd {
            min_eig: f64::NAN,
            max_eig: f64::NAN,
            tolerance: sojourn::field::DEFAULT_EMBED_TOLERANCE,
            doublings: sojourn::field::MAX_DOUBLINGS,
        });
    }
    Ok(())
}
