//! Radial eigenfunctions of `L`: solutions of
//!
//! ```text
//! q'' + (m_α coth t + 2 m_2α coth 2t) q' + (ρ² - λ²) q = (n² / sinh² t) q
//! ```
//!
//! with `n = 0` for K-invariant functions. Two bases are used. The spherical
//! function `φ_λ` is regular at `t = 0` with `φ_λ(0) = 1`. The Frobenius
//! solutions `Q_λ = y^{ρ+λ} h_λ(y)`, `y = e^{-t}`, have a pure boundary
//! exponent and are computed from their power series in `y²` while
//! `y <= 1/2`, then continued inward by numerical integration.

use num_complex::Complex64;

use crate::cfunction::CFunction;
use crate::error::{Error, Result};
use crate::ode::{self, State};
use crate::quad::{richardson, Extrapolated};
use crate::space::{coord_y_of_t, RankOneSpace};
use crate::special::hyp2f1_series;

/// Relative tolerance of every radial ODE integration.
pub const ODE_RTOL: f64 = 1e-14;

/// Boundary coordinate at which the series hands over to the integrator.
pub const SERIES_RADIUS: f64 = 0.5;

/// Default truncation tolerance of the Frobenius series.
pub const SERIES_TOL: f64 = 1e-16;

/// Largest `t` at which `φ_λ` is taken from its Taylor expansion.
pub const PHI_SERIES_LIMIT: f64 = 0.01;

/// Candidate matching points for connection problems.
pub const MATCHING_GRID: [f64; 6] = [0.7, 0.8, 0.9, 1.0, 1.1, 1.2];

const EXCLUSION: f64 = 1e-6;
const MAX_TERMS: usize = 20_000;

/// Frobenius solution `y^{ρ+λ} Σ a_j y^j` at the boundary. Only even powers
/// occur; `coefficients` lists every power so index equals exponent offset.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeries {
    pub lambda: Complex64,
    pub angular: u32,
    pub exponent: Complex64,
    pub coefficients: Vec<Complex64>,
    pub truncation: usize,
    pub valid_radius: f64,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn check_frobenius_exponent(lambda: Complex64) -> Result<()> {
    let two = 2.0 * lambda;
    let n = (-two.re).round();
    if n >= 1.0 && (two + n).norm() < EXCLUSION {
        return Err(Error::ResonantExponent {
            two_lambda: two,
            lattice: "negative integers",
        });
    }
    Ok(())
}

fn check_fundamental_system(lambda: Complex64) -> Result<()> {
    let two = 2.0 * lambda;
    if (two - Complex64::new(two.re.round(), 0.0)).norm() < EXCLUSION {
        return Err(Error::ResonantExponent {
            two_lambda: two,
            lattice: "integers",
        });
    }
    Ok(())
}

impl FrobeniusSeries {
    /// Solves the coefficient recursion with angular momentum `n`.
    pub fn new(space: &RankOneSpace, lambda: Complex64, angular: u32, tol: f64) -> Result<Self> {
        check_frobenius_exponent(lambda)?;
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("series tolerance must be positive, got {tol}")));
        }
        let s = space.rho() + lambda;
        let ma = space.m_alpha() as f64;
        let m2 = space.m_2alpha() as f64;
        let n2 = (angular as f64).powi(2);
        let r2 = SERIES_RADIUS * SERIES_RADIUS;

        // Running sums over j < k of w_j = (2j + s) b_j (all j and by parity),
        // of b_j and of j b_j.
        let mut b = vec![Complex64::new(1.0, 0.0)];
        let mut w_all = s;
        let mut w_par = [s, zero()];
        let mut s0 = Complex64::new(1.0, 0.0);
        let mut s1 = zero();
        let mut magnitude: f64 = 1.0;
        let mut quiet = 0;
        let mut k = 1usize;
        loop {
            if k > MAX_TERMS {
                return Err(Error::InvalidParameter(format!(
                    "Frobenius series for λ = {lambda} did not reach tolerance {tol:e}"
                )));
            }
            let kf = k as f64;
            let rhs = 2.0 * ma * w_all + 4.0 * m2 * w_par[k % 2] + 4.0 * n2 * (kf * s0 - s1);
            let bk = rhs / (2.0 * kf * (2.0 * kf + 2.0 * lambda));
            b.push(bk);
            w_all += (2.0 * kf + s) * bk;
            w_par[k % 2] += (2.0 * kf + s) * bk;
            s0 += bk;
            s1 += kf * bk;
            let term = bk.norm() * r2.powi(k as i32);
            magnitude = magnitude.max(term);
            if term < tol * magnitude {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
        }
        let mut coefficients = Vec::with_capacity(2 * b.len() - 1);
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                coefficients.push(zero());
            }
            coefficients.push(*bj);
        }
        Ok(Self {
            lambda,
            angular,
            exponent: s,
            truncation: coefficients.len() - 1,
            coefficients,
            valid_radius: SERIES_RADIUS,
        })
    }

    /// `(w, θw)` with `θ = y d/dy`, for `y` inside the valid radius.
    fn eval_y(&self, y: f64) -> (Complex64, Complex64) {
        let y2 = y * y;
        let mut h = zero();
        let mut dh = zero();
        for (j, a) in self.coefficients.iter().enumerate().rev().step_by(2) {
            h = h * y2 + a;
            dh = dh * y2 + (self.exponent + j as f64) * a;
        }
        let lead = (self.exponent * y.ln()).exp();
        (lead * h, lead * dh)
    }

    /// Value and `t`-derivative at `t`, requiring `e^{-t} <= valid_radius`.
    pub fn sample(&self, t: f64) -> Result<RadialSample> {
        let y = coord_y_of_t(t)?;
        if y > self.valid_radius * (1.0 + 1e-14) {
            return Err(Error::Domain {
                what: "y",
                value: y,
                domain: "(0, valid_radius]",
            });
        }
        let (w, theta_w) = self.eval_y(y);
        Ok(RadialSample {
            t,
            value: w,
            derivative: -theta_w,
        })
    }
}

/// Frobenius series of `Q_λ` for the K-invariant equation.
pub fn frobenius_q(space: &RankOneSpace, lambda: Complex64, tol: f64) -> Result<FrobeniusSeries> {
    FrobeniusSeries::new(space, lambda, 0, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub t: f64,
    pub value: Complex64,
    pub derivative: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// The spherical function `φ_λ`.
    Phi,
    /// `Q_λ`.
    QPlus,
    /// `Q_{-λ}`.
    QMinus,
    /// Radial profile of the Poisson transform of the `n`-th K-type.
    KType(i32),
    /// Integrated from caller-supplied initial data.
    Integrated,
    /// Sampled from an external evaluation, such as a boundary quadrature.
    Sampled,
    /// Linear combination of other solutions.
    Combination,
}

/// A solution of the radial equation known at sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub lambda: Complex64,
    pub angular: u32,
    pub samples: Vec<RadialSample>,
    pub provenance: Provenance,
    /// Largest local error estimate accepted by the integrator, if one ran.
    pub residual_bound: Option<f64>,
}

impl RadialSolution {
    /// `a * self + b * other`, sample by sample on a common grid.
    pub fn combine(a: Complex64, x: &Self, b: Complex64, z: &Self) -> Result<Self> {
        if x.lambda != z.lambda || x.angular != z.angular || x.samples.len() != z.samples.len() {
            return Err(Error::InvalidParameter("solutions do not share λ, angular index and grid".into()));
        }
        let mut samples = Vec::with_capacity(x.samples.len());
        for (p, q) in x.samples.iter().zip(&z.samples) {
            if p.t != q.t {
                return Err(Error::InvalidParameter("solutions sampled on different grids".into()));
            }
            samples.push(RadialSample {
                t: p.t,
                value: a * p.value + b * q.value,
                derivative: a * p.derivative + b * q.derivative,
            });
        }
        let residual_bound = match (x.residual_bound, z.residual_bound) {
            (None, None) => None,
            (u, v) => Some(u.unwrap_or(0.0).max(v.unwrap_or(0.0))),
        };
        Ok(Self {
            lambda: x.lambda,
            angular: x.angular,
            samples,
            provenance: Provenance::Combination,
            residual_bound,
        })
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.value).collect()
    }
}

fn rhs(space: &RankOneSpace, lambda: Complex64, angular: u32) -> impl Fn(f64, &State) -> State {
    let k = space.rho() * space.rho() - lambda * lambda;
    let n2 = (angular as f64).powi(2);
    let space = *space;
    move |t, y| {
        let mut acc = -space.log_density_rate(t) * y[1] - k * y[0];
        if n2 != 0.0 {
            acc += n2 / t.sinh().powi(2) * y[0];
        }
        [y[1], acc]
    }
}

/// Integrates from `(t0, init)` to sorted outputs on one side of `t0`.
fn integrate_one_side(
    space: &RankOneSpace,
    lambda: Complex64,
    angular: u32,
    t0: f64,
    init: State,
    outputs: &[f64],
) -> Result<(Vec<State>, f64)> {
    let traj = ode::integrate(rhs(space, lambda, angular), t0, init, outputs, ODE_RTOL)?;
    Ok((traj.states, traj.max_local_error))
}

/// Evaluates a solution known at `(t0, init)` at arbitrary positive times,
/// returned in the input order.
fn continue_from(
    space: &RankOneSpace,
    lambda: Complex64,
    angular: u32,
    t0: f64,
    init: State,
    ts: &[f64],
) -> Result<(Vec<RadialSample>, f64)> {
    let mut out = vec![
        RadialSample {
            t: 0.0,
            value: zero(),
            derivative: zero()
        };
        ts.len()
    ];
    let mut bound: f64 = 0.0;
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&i, &j| ts[i].total_cmp(&ts[j]));
    let (below, above): (Vec<usize>, Vec<usize>) = order.into_iter().partition(|&i| ts[i] < t0);
    let below: Vec<usize> = below.into_iter().rev().collect();
    for side in [below, above] {
        if side.is_empty() {
            continue;
        }
        let times: Vec<f64> = side.iter().map(|&i| ts[i]).collect();
        let (states, err) = integrate_one_side(space, lambda, angular, t0, init, &times)?;
        bound = bound.max(err);
        for (&i, s) in side.iter().zip(states) {
            out[i] = RadialSample {
                t: ts[i],
                value: s[0],
                derivative: s[1],
            };
        }
    }
    Ok((out, bound))
}

fn check_times(ts: &[f64], allow_zero: bool) -> Result<()> {
    for &t in ts {
        let ok = t.is_finite() && (t > 0.0 || (allow_zero && t == 0.0));
        if !ok {
            return Err(Error::Domain {
                what: "t",
                value: t,
                domain: if allow_zero { "[0, inf)" } else { "(0, inf)" },
            });
        }
    }
    Ok(())
}

/// Integrates the radial equation, optionally with the angular potential
/// `n² / sinh² t`, from initial data at `t_start` to the requested times.
pub fn integrate_radial_ode(
    space: &RankOneSpace,
    lambda: Complex64,
    potential_n: Option<u32>,
    t_start: f64,
    init: (Complex64, Complex64),
    t_out: &[f64],
) -> Result<RadialSolution> {
    check_times(&[t_start], false)?;
    check_times(t_out, false)?;
    if !(init.0.is_finite() && init.1.is_finite()) {
        return Err(Error::InvalidParameter("initial data must be finite".into()));
    }
    let angular = potential_n.unwrap_or(0);
    let (samples, bound) = continue_from(space, lambda, angular, t_start, [init.0, init.1], t_out)?;
    Ok(RadialSolution {
        lambda,
        angular,
        samples,
        provenance: Provenance::Integrated,
        residual_bound: Some(bound),
    })
}

/// Samples of the Frobenius solution `y^{ρ+λ}(1 + O(y²))` with angular index
/// `n`, at arbitrary positive times.
pub fn frobenius_samples(space: &RankOneSpace, lambda: Complex64, angular: u32, ts: &[f64]) -> Result<(Vec<RadialSample>, Option<f64>)> {
    check_times(ts, false)?;
    let series = FrobeniusSeries::new(space, lambda, angular, SERIES_TOL)?;
    let t_switch = -SERIES_RADIUS.ln();
    let mut out = Vec::with_capacity(ts.len());
    let inner: Vec<usize> = (0..ts.len()).filter(|&i| ts[i] < t_switch).collect();
    let mut bound = None;
    let mut inner_samples = Vec::new();
    if !inner.is_empty() {
        let start = series.sample(t_switch)?;
        let times: Vec<f64> = inner.iter().map(|&i| ts[i]).collect();
        let (s, b) = continue_from(space, lambda, angular, t_switch, [start.value, start.derivative], &times)?;
        inner_samples = s;
        bound = Some(b);
    }
    let mut next_inner = inner_samples.into_iter();
    for &t in ts {
        if t < t_switch {
            out.push(next_inner.next().expect("one inner sample per inner time"));
        } else {
            out.push(series.sample(t)?);
        }
    }
    Ok((out, bound))
}

/// `Q_λ` sampled at the given times.
pub fn q_solution(space: &RankOneSpace, lambda: Complex64, ts: &[f64]) -> Result<RadialSolution> {
    let (samples, residual_bound) = frobenius_samples(space, lambda, 0, ts)?;
    Ok(RadialSolution {
        lambda,
        angular: 0,
        samples,
        provenance: Provenance::QPlus,
        residual_bound,
    })
}

/// `Q_λ(t)`.
pub fn eval_q(space: &RankOneSpace, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(frobenius_samples(space, lambda, 0, &[t])?.0[0].value)
}

/// Taylor data of `φ_λ` near the origin through the Jacobi form
/// `φ_λ(t) = ₂F₁((ρ+λ)/2, (ρ-λ)/2; dim/2; -sinh² t)`.
fn phi_series(space: &RankOneSpace, lambda: Complex64, t: f64) -> RadialSample {
    let rho = space.rho();
    let a = (rho + lambda) / 2.0;
    let b = (rho - lambda) / 2.0;
    let c = Complex64::new(space.dim() as f64 / 2.0, 0.0);
    let z = Complex64::new(-t.sinh().powi(2), 0.0);
    let value = hyp2f1_series(a, b, c, z);
    let dz = -(2.0 * t).sinh();
    let derivative = a * b / c * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z) * dz;
    RadialSample { t, value, derivative }
}

/// Samples of `φ_λ` at nonnegative times, in input order.
pub fn phi_samples(space: &RankOneSpace, lambda: Complex64, ts: &[f64]) -> Result<(Vec<RadialSample>, Option<f64>)> {
    check_times(ts, true)?;
    let outer: Vec<usize> = (0..ts.len()).filter(|&i| ts[i] > PHI_SERIES_LIMIT).collect();
    let mut bound = None;
    let mut outer_samples = Vec::new().into_iter();
    if !outer.is_empty() {
        let start = phi_series(space, lambda, PHI_SERIES_LIMIT);
        let times: Vec<f64> = outer.iter().map(|&i| ts[i]).collect();
        let (s, b) = continue_from(space, lambda, 0, PHI_SERIES_LIMIT, [start.value, start.derivative], &times)?;
        outer_samples = s.into_iter();
        bound = Some(b);
    }
    let out = ts
        .iter()
        .map(|&t| {
            if t > PHI_SERIES_LIMIT {
                outer_samples.next().expect("one outer sample per outer time")
            } else {
                phi_series(space, lambda, t)
            }
        })
        .collect();
    Ok((out, bound))
}

/// `φ_λ` sampled at the given times.
pub fn phi_solution(space: &RankOneSpace, lambda: Complex64, ts: &[f64]) -> Result<RadialSolution> {
    let (samples, residual_bound) = phi_samples(space, lambda, ts)?;
    Ok(RadialSolution {
        lambda,
        angular: 0,
        samples,
        provenance: Provenance::Phi,
        residual_bound,
    })
}

/// `φ_λ(t)`.
pub fn eval_phi(space: &RankOneSpace, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(phi_samples(space, lambda, &[t])?.0[0].value)
}

/// Coefficients of a solution in the Frobenius basis,
/// `sol = a_minus Q_{-λ} + a_plus Q_λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Connection {
    pub a_minus: Complex64,
    pub a_plus: Complex64,
    pub t_match: f64,
    pub condition: f64,
}

/// Largest condition number accepted in a matching solve.
pub const MAX_CONDITION: f64 = 1e12;

fn condition_2x2(m: [[Complex64; 2]; 2]) -> f64 {
    let fro2: f64 = m.iter().flatten().map(|v| v.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // σ₁² + σ₂² = ‖M‖_F², σ₁σ₂ = |det M|
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let s1 = ((fro2 + disc) / 2.0).sqrt();
    s1 * s1 / det
}

/// Solves the connection problem for `sol` against `(Q_{-λ}, Q_λ)` at the
/// best-conditioned point of [`MATCHING_GRID`].
pub fn connection_coefficients(space: &RankOneSpace, lambda: Complex64, sol: &RadialSolution) -> Result<Connection> {
    check_fundamental_system(lambda)?;
    if (sol.lambda - lambda).norm() > 1e-14 * lambda.norm().max(1.0) && (sol.lambda + lambda).norm() > 1e-14 * lambda.norm().max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "solution has spectral parameter {} but λ = {lambda}",
            sol.lambda
        )));
    }
    let anchor = sol
        .samples
        .iter()
        .filter(|s| s.t > 0.0)
        .min_by(|p, q| (p.t - 1.0).abs().total_cmp(&(q.t - 1.0).abs()))
        .ok_or_else(|| Error::InvalidParameter("solution has no samples at positive t".into()))?;
    let (at_grid, _) = continue_from(
        space,
        lambda,
        sol.angular,
        anchor.t,
        [anchor.value, anchor.derivative],
        &MATCHING_GRID,
    )?;
    let (qm, _) = frobenius_samples(space, -lambda, sol.angular, &MATCHING_GRID)?;
    let (qp, _) = frobenius_samples(space, lambda, sol.angular, &MATCHING_GRID)?;

    let mut best: Option<Connection> = None;
    for i in 0..MATCHING_GRID.len() {
        let (m, p, s) = (qm[i], qp[i], at_grid[i]);
        let nm = (m.value.norm_sqr() + m.derivative.norm_sqr()).sqrt();
        let np = (p.value.norm_sqr() + p.derivative.norm_sqr()).sqrt();
        let mat = [[m.value / nm, p.value / np], [m.derivative / nm, p.derivative / np]];
        let cond = condition_2x2(mat);
        if best.is_none_or(|b| cond < b.condition) {
            let det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0];
            let x0 = (s.value * mat[1][1] - mat[0][1] * s.derivative) / det;
            let x1 = (mat[0][0] * s.derivative - mat[1][0] * s.value) / det;
            best = Some(Connection {
                a_minus: x0 / nm,
                a_plus: x1 / np,
                t_match: MATCHING_GRID[i],
                condition: cond,
            });
        }
    }
    let best = best.expect("nonempty matching grid");
    if !(best.condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned {
            condition: best.condition,
        });
    }
    Ok(best)
}

/// Extrapolated `lim_{t→0} J(e^{-t}) Q̇_λ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianLimit {
    pub value: Complex64,
    pub error_estimate: f64,
}

const WRONSKIAN_T0: f64 = 1e-3;
const WRONSKIAN_LEVELS: usize = 7;

/// Richardson extrapolation of `J Q̇_λ` on `t_m = 10^{-3} 2^{-m}`. The
/// expansion at the origin carries `t²`, `t^dim` and, in even dimension,
/// `t^{dim} log t` corrections.
pub fn wronskian_limit(space: &RankOneSpace, lambda: Complex64) -> Result<WronskianLimit> {
    let ts: Vec<f64> = (0..WRONSKIAN_LEVELS).map(|m| WRONSKIAN_T0 * 0.5f64.powi(m as i32)).collect();
    let (samples, _) = frobenius_samples(space, lambda, 0, &ts)?;
    let vals: Vec<Complex64> = samples.iter().map(|s| space.density_j_of_t(s.t) * s.derivative).collect();
    let exps: Vec<Complex64> = [2.0, 3.0, 4.0, 5.0].iter().map(|&p| Complex64::new(p, 0.0)).collect();
    let Extrapolated { value, error_estimate } = richardson(&vals, &exps, 0.5);
    if !value.is_finite() || error_estimate > 1e-4 * value.norm() {
        return Err(Error::Extrapolation {
            value,
            estimate: error_estimate,
        });
    }
    Ok(WronskianLimit { value, error_estimate })
}

/// `-2λ c(λ)`, the exact value of the Wronskian limit.
pub fn wronskian_exact(space: &RankOneSpace, lambda: Complex64) -> Result<Complex64> {
    Ok(-2.0 * lambda * CFunction::new(*space).eval(lambda)?)
}
