//! Stationary field synthesis on regular 2D lattices, assembly of independent
//! vector components, and the Fisher-Snedecor transform with its marginal
//! distribution functions.

mod embedding;
mod io;
mod wave;

pub use embedding::{CirculantEmbedding, DEFAULT_EMBED_TOLERANCE, MAX_DOUBLINGS};
pub use io::{
    read_field_binary, write_field_binary, write_field_csv, write_mask_csv, write_mask_pgm,
};
pub use wave::{sample_bessel_wave, DEFAULT_WAVE_COUNT};

use crate::covariance::CovarianceModel;
use crate::error::{Error, Result};
use crate::special::incomplete_beta;

/// Denominators below this are treated as the measure-zero event "denominator
/// vanished" and produce the +inf sentinel.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Regular 2D grid with physical spacing.
///
/// The grid covers the window [0, n_x dx] x [0, n_y dx] with one node per
/// cell; covariance arguments are physical distances (index distance times
/// dx).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub n_x: usize,
    pub n_y: usize,
    pub dx: f64,
}

impl LatticeSpec {
    pub fn new(n_x: usize, n_y: usize, dx: f64) -> Result<Self> {
        if n_x < 2 || n_y < 2 {
            return Err(Error::Config(format!(
                "lattice needs at least 2 points per axis, got {n_x}x{n_y}"
            )));
        }
        if !(dx > 0.0) {
            return Err(Error::Config(format!("dx must be positive, got {dx}")));
        }
        Ok(Self { n_x, n_y, dx })
    }

    pub fn square(n: usize, dx: f64) -> Result<Self> {
        Self::new(n, n, dx)
    }

    pub fn n_points(&self) -> usize {
        self.n_x * self.n_y
    }

    /// Physical window area, one dx^2 cell per node.
    pub fn window_area(&self) -> f64 {
        self.n_points() as f64 * self.dx * self.dx
    }
}

/// What a field is a realization of.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    Gaussian(CovarianceModel),
    FisherSnedecor { numerator: usize, total: usize },
}

/// One realization of a scalar field on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    pub spec: LatticeSpec,
    /// Row-major values, index `iy * n_x + ix`.
    pub values: Vec<f64>,
    pub seed: u64,
    pub kind: FieldKind,
}

impl LatticeField {
    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.spec.n_x + ix]
    }
}

/// Specification of a vector field: m independent components plus the
/// numerator count n of the F-transform split.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldSpec {
    pub components: Vec<CovarianceModel>,
    pub numerator: usize,
}

impl VectorFieldSpec {
    pub fn new(components: Vec<CovarianceModel>, numerator: usize) -> Result<Self> {
        let m = components.len();
        if m < 2 {
            return Err(Error::Config(format!(
                "vector field needs at least 2 components, got {m}"
            )));
        }
        if numerator == 0 || numerator >= m {
            return Err(Error::Config(format!(
                "numerator count must satisfy 1 <= n < m, got n={numerator}, m={m}"
            )));
        }
        Ok(Self {
            components,
            numerator,
        })
    }

    pub fn total(&self) -> usize {
        self.components.len()
    }
}

/// Prepared per-component sampler: spectral factorization for embeddable
/// models, wave superposition for the Bessel family.
pub enum FieldSampler {
    Circulant(CirculantEmbedding),
    BesselWave {
        spec: LatticeSpec,
        nu: f64,
        n_waves: usize,
    },
}

impl FieldSampler {
    pub fn new(spec: LatticeSpec, model: CovarianceModel) -> Result<Self> {
        Self::with_wave_count(spec, model, DEFAULT_WAVE_COUNT)
    }

    pub fn with_wave_count(
        spec: LatticeSpec,
        model: CovarianceModel,
        n_waves: usize,
    ) -> Result<Self> {
        match model {
            CovarianceModel::Bessel { nu } => Ok(FieldSampler::BesselWave { spec, nu, n_waves }),
            other => Ok(FieldSampler::Circulant(CirculantEmbedding::new(
                spec, other,
            )?)),
        }
    }

    pub fn sample(&self, seed: u64, stream: u64) -> LatticeField {
        match self {
            FieldSampler::Circulant(e) => e.sample(seed, stream),
            FieldSampler::BesselWave { spec, nu, n_waves } => {
                sample_bessel_wave(*spec, *nu, *n_waves, seed, stream)
            }
        }
    }

    pub fn spec(&self) -> LatticeSpec {
        match self {
            FieldSampler::Circulant(e) => e.spec(),
            FieldSampler::BesselWave { spec, .. } => *spec,
        }
    }
}

/// One realization of a zero-mean unit-variance stationary Gaussian field
/// whose lattice covariance is evaluate(model, |x-y|). Deterministic given
/// (spec, model, seed).
pub fn simulate_gaussian(
    spec: LatticeSpec,
    model: CovarianceModel,
    seed: u64,
) -> Result<LatticeField> {
    Ok(FieldSampler::new(spec, model)?.sample(seed, 0))
}

/// m independent component realizations; component j draws from the stream
/// derived from (seed, j).
pub fn simulate_vector(
    spec: LatticeSpec,
    vspec: &VectorFieldSpec,
    seed: u64,
) -> Result<Vec<LatticeField>> {
    vspec
        .components
        .iter()
        .enumerate()
        .map(|(j, model)| Ok(FieldSampler::new(spec, *model)?.sample(seed, j as u64)))
        .collect()
}

/// Pointwise Fisher-Snedecor transform
/// F = ((v_1^2 + ... + v_n^2)/n) / ((v_{n+1}^2 + ... + v_m^2)/(m-n)).
///
/// Vanishing denominators (probability zero, possible in floating point)
/// become +inf sentinels; excursion statistics exclude and count them.
pub fn fisher_snedecor_field(components: &[LatticeField], numerator: usize) -> Result<LatticeField> {
    let m = components.len();
    if m < 2 || numerator == 0 || numerator >= m {
        return Err(Error::Config(format!(
            "fisher_snedecor_field requires 1 <= n < m with m >= 2, got n={numerator}, m={m}"
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
    let n_points = spec.n_points();
    let mut values = Vec::with_capacity(n_points);
    let mut sentinels = 0usize;
    let inv_n = 1.0 / numerator as f64;
    let inv_mn = 1.0 / (m - numerator) as f64;
    for idx in 0..n_points {
        let mut num = 0.0;
        for c in &components[..numerator] {
            num += c.values[idx] * c.values[idx];
        }
        let mut den = 0.0;
        for c in &components[numerator..] {
            den += c.values[idx] * c.values[idx];
        }
        if den < DENOMINATOR_FLOOR {
            sentinels += 1;
            values.push(f64::INFINITY);
        } else {
            values.push((num * inv_n) / (den * inv_mn));
        }
    }
    if sentinels > 0 {
        log::warn!("fisher_snedecor_field: {sentinels} vanishing denominators replaced by +inf");
    }
    Ok(LatticeField {
        spec,
        values,
        seed: components[0].seed,
        kind: FieldKind::FisherSnedecor {
            numerator,
            total: m,
        },
    })
}

/// Density of the Fisher-Snedecor marginal with (n, m-n) degrees of freedom.
pub fn f_pdf(u: f64, n: usize, m: usize) -> Result<f64> {
    check_f_params(n, m)?;
    if !(u >= 0.0) {
        return Err(Error::Domain(format!("f_pdf requires u >= 0, got {u}")));
    }
    let nf = n as f64;
    let mnf = (m - n) as f64;
    let mf = m as f64;
    if u == 0.0 {
        // u^{n/2-1} endpoint: infinite for n = 1, finite positive for n = 2.
        return Ok(match n {
            1 => f64::INFINITY,
            2 => {
                let ln_c = crate::special::ln_gamma(0.5 * mf)?
                    - crate::special::ln_gamma(0.5 * nf)?
                    - crate::special::ln_gamma(0.5 * mnf)?;
                (ln_c.exp()) * nf.powf(0.5 * nf) * mnf.powf(0.5 * mnf) / mnf.powf(0.5 * mf)
            }
            _ => 0.0,
        });
    }
    let ln_c = crate::special::ln_gamma(0.5 * mf)?
        - crate::special::ln_gamma(0.5 * nf)?
        - crate::special::ln_gamma(0.5 * mnf)?;
    let ln_h = ln_c
        + 0.5 * nf * nf.ln()
        + 0.5 * mnf * mnf.ln()
        + (0.5 * nf - 1.0) * u.ln()
        - 0.5 * mf * (mnf + nf * u).ln();
    Ok(ln_h.exp())
}

/// Cumulative distribution H(u) = I_{nu/(m-n+nu)}(n/2, (m-n)/2).
pub fn f_cdf(u: f64, n: usize, m: usize) -> Result<f64> {
    check_f_params(n, m)?;
    if !(u >= 0.0) {
        return Err(Error::Domain(format!("f_cdf requires u >= 0, got {u}")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let mnf = (m - n) as f64;
    let mu = nf * u / (mnf + nf * u);
    incomplete_beta(mu, 0.5 * nf, 0.5 * mnf)
}

fn check_f_params(n: usize, m: usize) -> Result<()> {
    if n == 0 || n >= m {
        return Err(Error::Domain(format!(
            "F distribution requires 1 <= n < m, got n={n}, m={m}"
        )));
    }
    Ok(())
}
