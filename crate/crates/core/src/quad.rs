//! Quadrature and extrapolation helpers.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub(crate) const GK_NODES: usize = 15;

/// The 15 Kronrod abscissae mapped onto `[a, b]`.
pub(crate) fn gk15_nodes(a: f64, b: f64) -> [f64; GK_NODES] {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [0.0; GK_NODES];
    for i in 0..7 {
        out[2 * i] = mid - half * XGK[i];
        out[2 * i + 1] = mid + half * XGK[i];
    }
    out[14] = mid;
    out
}

/// Combines integrand values at [`gk15_nodes`] into the Kronrod estimate and
/// the Kronrod-minus-Gauss error estimate.
pub(crate) fn gk15_combine(a: f64, b: f64, values: &[Complex64]) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let mut kronrod = WGK[7] * values[14];
    let mut gauss = WG[3] * values[14];
    for i in 0..7 {
        let pair = values[2 * i] + values[2 * i + 1];
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// One accepted Gauss-Kronrod panel carrying `K` integrals at once.
#[derive(Debug, Clone)]
pub(crate) struct Panel<const K: usize> {
    pub a: f64,
    pub b: f64,
    pub integral: [Complex64; K],
}

/// Adaptive Gauss-Kronrod over `[breaks[0], breaks[last]]`, never crossing a
/// breakpoint. The integrand is evaluated in batches: `eval` receives all
/// pending nodes at once, in increasing order, and returns `K` values per node.
/// A panel is accepted when each component's error estimate is below
/// `rtol * scale[k]` times the panel's share of the interval, where `scale`
/// is the integral of the modulus over the whole range.
pub(crate) fn adaptive_gk15<const K: usize, F>(breaks: &[f64], mut eval: F, rtol: f64) -> Result<Vec<Panel<K>>>
where
    F: FnMut(&[f64]) -> Result<Vec<[Complex64; K]>>,
{
    let mut pending: Vec<(f64, f64)> = breaks.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect();
    let total = breaks.last().copied().unwrap_or(0.0) - breaks.first().copied().unwrap_or(0.0);
    let mut accepted: Vec<Panel<K>> = Vec::new();
    let mut scale: Option<[f64; K]> = None;
    for _round in 0..40 {
        if pending.is_empty() {
            accepted.sort_by(|p, q| p.a.total_cmp(&q.a));
            return Ok(accepted);
        }
        let mut nodes: Vec<(f64, usize, usize)> = Vec::with_capacity(pending.len() * GK_NODES);
        for (p, &(a, b)) in pending.iter().enumerate() {
            for (j, x) in gk15_nodes(a, b).into_iter().enumerate() {
                nodes.push((x, p, j));
            }
        }
        nodes.sort_by(|u, v| u.0.total_cmp(&v.0));
        let xs: Vec<f64> = nodes.iter().map(|n| n.0).collect();
        let vals = eval(&xs)?;
        let mut table = vec![[[Complex64::new(0.0, 0.0); K]; GK_NODES]; pending.len()];
        for (&(_, p, j), v) in nodes.iter().zip(vals) {
            table[p][j] = v;
        }
        if scale.is_none() {
            let mut s = [0.0; K];
            for (p, &(a, b)) in pending.iter().enumerate() {
                for (k, sk) in s.iter_mut().enumerate() {
                    let mods: Vec<Complex64> = table[p].iter().map(|v| Complex64::new(v[k].norm(), 0.0)).collect();
                    *sk += gk15_combine(a, b, &mods).0.re;
                }
            }
            scale = Some(s);
        }
        let s = scale.expect("scale set");
        let mut next = Vec::new();
        for (p, &(a, b)) in pending.iter().enumerate() {
            let mut integral = [Complex64::new(0.0, 0.0); K];
            let mut ok = true;
            for k in 0..K {
                let column: Vec<Complex64> = table[p].iter().map(|v| v[k]).collect();
                let (val, err) = gk15_combine(a, b, &column);
                if !val.is_finite() {
                    return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
                }
                integral[k] = val;
                let allowed = rtol * s[k].max(1e-300) * ((b - a) / total).max(1e-3);
                if err > allowed {
                    ok = false;
                }
            }
            if ok || (b - a) < 1e-9 * total {
                accepted.push(Panel { a, b, integral });
            } else {
                let m = 0.5 * (a + b);
                next.push((a, m));
                next.push((m, b));
            }
        }
        pending = next;
    }
    Err(Error::Quadrature("adaptive Gauss-Kronrod exceeded its refinement budget".into()))
}

/// Mean of a `2 pi`-periodic function by the trapezoidal rule, doubling the
/// node count until two successive estimates differ by less than `tol` times
/// the mean modulus. Starts at 16 nodes and gives up beyond `max_nodes`.
pub(crate) fn periodic_mean<F>(f: F, tol: f64, max_nodes: usize) -> Result<(Complex64, usize)>
where
    F: Fn(f64) -> Complex64,
{
    let tau = std::f64::consts::TAU;
    let mut n = 16usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for j in 0..n {
        let v = f(tau * j as f64 / n as f64);
        sum += v;
        abs_sum += v.norm();
    }
    let mut estimate = sum / n as f64;
    while 2 * n <= max_nodes {
        for j in 0..n {
            let v = f(tau * (2 * j + 1) as f64 / (2 * n) as f64);
            sum += v;
            abs_sum += v.norm();
        }
        n *= 2;
        let next = sum / n as f64;
        let scale = abs_sum / n as f64;
        if !next.is_finite() {
            return Err(Error::Quadrature("non-finite boundary integrand".into()));
        }
        if (next - estimate).norm() <= tol * scale.max(1e-300) {
            return Ok((next, n));
        }
        estimate = next;
    }
    Err(Error::Quadrature(format!(
        "trapezoidal rule not converged with {n} nodes"
    )))
}

/// Result of a limit extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Generalized Richardson extrapolation of samples `v(h_m)`, `h_m = h_0 r^m`,
/// under the model `v(h) = L + sum_k a_k h^{p_k}`. Exponents may be complex.
/// The error estimate is the change produced by the last elimination.
pub(crate) fn richardson(samples: &[Complex64], exponents: &[Complex64], ratio: f64) -> Extrapolated {
    let mut row: Vec<Complex64> = samples.to_vec();
    let mut previous_last = *row.last().expect("at least one sample");
    let levels = exponents.len().min(samples.len().saturating_sub(1));
    for &p in exponents.iter().take(levels) {
        let r = (p * ratio.ln()).exp();
        let next: Vec<Complex64> = row.windows(2).map(|w| (w[1] - r * w[0]) / (1.0 - r)).collect();
        previous_last = *row.last().expect("nonempty");
        row = next;
    }
    let value = *row.last().expect("nonempty");
    Extrapolated {
        value,
        error_estimate: (value - previous_last).norm(),
    }
}
