//! Adaptive Gauss-Kronrod quadrature (G7/K15).
//!
//! Used for normalization constants, distribution checks and the
//! singular-endpoint integrals behind the variance asymptotics.

/// Kronrod-15 abscissae on [0, 1] side (symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Kronrod-15 weights.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss-7 weights (for the embedded error estimate).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7/K15 panel: returns (kronrod_value, |kronrod - gauss|, int |f|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut result_k = WGK[7] * fc;
    let mut result_g = WG[3] * fc;
    let mut result_abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let (fl, fr) = (f(center - dx), f(center + dx));
        result_k += WGK[j] * (fl + fr);
        result_abs += WGK[j] * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            result_g += WG[j / 2] * (fl + fr);
        }
    }
    (
        result_k * half,
        (result_k - result_g).abs() * half.abs(),
        result_abs * half.abs(),
    )
}

/// Adaptive integral of `f` over [a, b].
///
/// Bisects panels until the embedded error estimate meets its share of
/// `max(abs_tol, rel_tol * |integral|)`. A panel whose error estimate is at
/// the round-off floor of its own magnitude is accepted rather than split
/// further, so integrable endpoint singularities terminate cheaply.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (whole, _, _) = gk15(f, a, b);
    let scale = whole.abs().max(abs_tol);
    adaptive(f, a, b, rel_tol * scale + abs_tol, 0)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err, resabs) = gk15(f, a, b);
    if err <= tol || err <= 1e-14 * resabs || depth >= 48 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, 0.5 * tol, depth + 1) + adaptive(f, mid, b, 0.5 * tol, depth + 1)
}

/// Integral of `f` over [0, inf) via the substitution u = t/(1-t).
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: &F, rel_tol: f64, abs_tol: f64) -> f64 {
    let g = |t: f64| {
        let one_minus = 1.0 - t;
        f(t / one_minus) / (one_minus * one_minus)
    };
    integrate(&g, 0.0, 1.0, rel_tol, abs_tol)
}
