//! The Poincaré disk model of `H²` (with `κ = 1`, `ρ = 1/2`) and closed-form
//! `H³` fixtures.
//!
//! Points are `z` with `|z| < 1`, the origin is `z = 0`, boundary points are
//! angles `θ`. The horocycle bracket is
//! `A(z, θ) = log((1 - |z|²) / |z - e^{iθ}|²)` and the Poisson kernel is
//! `e^{(ρ+λ) A(z, θ)}`. A point at geodesic distance `t` from the origin has
//! `|z| = tanh(t/2)`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::boundary::boundary_pair;
use crate::cfunction::CFunction;
use crate::error::{Error, Result};
use crate::quad::periodic_mean;
use crate::radial::{integrate_radial_ode, Provenance, RadialSample, RadialSolution};
use crate::space::RankOneSpace;
use crate::special::hyp2f1_series;

const RHO: f64 = 0.5;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Stability threshold of the boundary quadratures.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Node budget of the boundary quadratures.
pub const MAX_BOUNDARY_NODES: usize = 1 << 20;

/// Radius up to which K-type profiles come from the hypergeometric series.
const KTYPE_SERIES_LIMIT: f64 = 0.25;

/// `H²` as a rank-one space.
pub fn h2() -> RankOneSpace {
    RankOneSpace::real_hyperbolic(2).expect("H^2 is valid")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain {
                what: "|z|",
                value: z.norm(),
                domain: "[0, 1)",
            });
        }
        Ok(Self { z })
    }

    pub fn origin() -> Self {
        Self {
            z: Complex64::new(0.0, 0.0),
        }
    }

    /// The point at distance `t` from the origin in direction `beta`.
    pub fn polar(t: f64, beta: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain {
                what: "t",
                value: t,
                domain: "[0, inf)",
            });
        }
        Self::new(Complex64::from_polar((t / 2.0).tanh(), beta))
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// `1 - |z|²`, computed without cancellation near the boundary.
    fn conformal_factor(&self) -> f64 {
        let r = self.z.norm();
        (1.0 - r) * (1.0 + r)
    }
}

/// A boundary point, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAngle {
    theta: f64,
}

impl BoundaryAngle {
    pub fn new(theta: f64) -> Self {
        Self {
            theta: theta.rem_euclid(TAU),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Finite Fourier series `Σ a_n e^{inθ}` on the boundary circle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierSeries {
    pub terms: Vec<(i32, Complex64)>,
}

impl FourierSeries {
    pub fn mode(n: i32) -> Self {
        Self {
            terms: vec![(n, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn constant() -> Self {
        Self::mode(0)
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(n, a)| a * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }
}

/// Geodesic distance `arccosh(1 + 2|z₁-z₂|² / ((1-|z₁|²)(1-|z₂|²)))`,
/// evaluated as `2 asinh(|z₁-z₂| / √((1-|z₁|²)(1-|z₂|²)))`.
pub fn distance(z1: DiskPoint, z2: DiskPoint) -> f64 {
    let x = (z1.z - z2.z).norm() / (z1.conformal_factor() * z2.conformal_factor()).sqrt();
    2.0 * x.asinh()
}

/// `A(z, θ) = log(1 - |z|²) - log|z - e^{iθ}|²`.
pub fn horocycle_bracket(z: DiskPoint, theta: BoundaryAngle) -> f64 {
    let gap = (z.z - Complex64::from_polar(1.0, theta.theta)).norm();
    z.conformal_factor().ln() - 2.0 * gap.ln()
}

/// `e^{(ρ+λ) A(z, θ)}`.
pub fn poisson_kernel(lambda: Complex64, z: DiskPoint, theta: BoundaryAngle) -> Complex64 {
    ((RHO + lambda) * horocycle_bracket(z, theta)).exp()
}

/// A boundary integral together with the trapezoidal node count it needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryIntegral {
    pub value: Complex64,
    pub nodes: usize,
}

/// `(P_λ f)(z) = (1/2π) ∫ e^{(ρ+λ)A(z,θ)} f(θ) dθ`.
pub fn poisson_transform(lambda: Complex64, f: &FourierSeries, z: DiskPoint) -> Result<BoundaryIntegral> {
    let (value, nodes) = periodic_mean(
        |th| poisson_kernel(lambda, z, BoundaryAngle::new(th)) * f.eval(th),
        BOUNDARY_TOL,
        MAX_BOUNDARY_NODES,
    )?;
    Ok(BoundaryIntegral { value, nodes })
}

/// Value and `t`-derivative of `P_λ f` along the geodesic ray at angle
/// `beta`, at distance `t > 0`.
pub fn poisson_transform_radial(lambda: Complex64, f: &FourierSeries, beta: f64, t: f64) -> Result<RadialSample> {
    let z = DiskPoint::polar(t, beta)?;
    let r = z.z.norm();
    let dr_dt = (1.0 - r) * (1.0 + r) / 2.0;
    let s = RHO + lambda;
    let pair = |th: f64| {
        let cos = (th - beta).cos();
        let gap2 = 1.0 - 2.0 * r * cos + r * r;
        let da_dr = -2.0 * r / ((1.0 - r) * (1.0 + r)) - (2.0 * r - 2.0 * cos) / gap2;
        let k = poisson_kernel(lambda, z, BoundaryAngle::new(th)) * f.eval(th);
        (k, s * da_dr * dr_dt * k)
    };
    let (value, _) = periodic_mean(|th| pair(th).0, BOUNDARY_TOL, MAX_BOUNDARY_NODES)?;
    let (derivative, _) = periodic_mean(|th| pair(th).1, BOUNDARY_TOL, MAX_BOUNDARY_NODES)?;
    Ok(RadialSample { t, value, derivative })
}

/// Radial sampling of `P_λ(e^{inθ})` along the ray `θ = 0`, as a solution of
/// the K-type equation with angular index `|n|`.
pub fn poisson_mode_solution(lambda: Complex64, n: i32, ts: &[f64]) -> Result<RadialSolution> {
    let f = FourierSeries::mode(n);
    let samples = ts
        .iter()
        .map(|&t| poisson_transform_radial(lambda, &f, 0.0, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialSolution {
        lambda,
        angular: n.unsigned_abs(),
        samples,
        provenance: Provenance::Sampled,
        residual_bound: None,
    })
}

/// Regular solution `tanh^{|n|}(t/2) ₂F₁(½-λ, ½+λ; 1+|n|; -sinh²(t/2))` of
/// the K-type equation, with its derivative.
fn ktype_series(lambda: Complex64, n: u32, t: f64) -> (Complex64, Complex64) {
    let mu = n as f64;
    let a = 0.5 - lambda;
    let b = 0.5 + lambda;
    let c = Complex64::new(1.0 + mu, 0.0);
    let z = Complex64::new(-(t / 2.0).sinh().powi(2), 0.0);
    let f = hyp2f1_series(a, b, c, z);
    let df = a * b / c * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z);
    let th = (t / 2.0).tanh();
    let lead = th.powi(n as i32);
    let dlead = if n == 0 {
        0.0
    } else {
        mu * th.powi(n as i32 - 1) * 0.5 / (t / 2.0).cosh().powi(2)
    };
    let dz = -t.sinh() / 2.0;
    (lead * f, dlead * f + lead * df * dz)
}

/// Radial factor `f_{λ,n}` of `P_λ(e^{inθ}) = f_{λ,n}(t) e^{inθ}`, at the
/// given times, normalized so that its boundary value `a₋` is `c(λ)`.
pub fn ktype_solution(lambda: Complex64, n: i32, ts: &[f64]) -> Result<RadialSolution> {
    let space = h2();
    let m = n.unsigned_abs();
    let t0 = KTYPE_SERIES_LIMIT;
    let (v0, d0) = ktype_series(lambda, m, t0);
    let raw = integrate_radial_ode(&space, lambda, Some(m), t0, (v0, d0), &[1.0])?;
    let pair = boundary_pair(&space, lambda, &raw)?;
    let size = pair.a_minus.norm() + pair.a_plus.norm();
    if !(pair.a_minus.norm() > 1e-13 * size) {
        return Err(Error::Normalization(format!(
            "K-type {n} at λ = {lambda}: boundary coefficient a_minus vanishes ({:e})",
            pair.a_minus.norm()
        )));
    }
    let scale = CFunction::new(space).eval(lambda)? / pair.a_minus;
    let (inner, outer): (Vec<usize>, Vec<usize>) = (0..ts.len()).partition(|&i| ts[i] <= t0);
    let mut samples = vec![
        RadialSample {
            t: 0.0,
            value: Complex64::new(0.0, 0.0),
            derivative: Complex64::new(0.0, 0.0),
        };
        ts.len()
    ];
    for &i in &inner {
        let t = ts[i];
        if !(t >= 0.0) {
            return Err(Error::Domain {
                what: "t",
                value: t,
                domain: "[0, inf)",
            });
        }
        let (v, d) = ktype_series(lambda, m, t);
        samples[i] = RadialSample {
            t,
            value: scale * v,
            derivative: scale * d,
        };
    }
    let mut residual_bound = None;
    if !outer.is_empty() {
        let times: Vec<f64> = outer.iter().map(|&i| ts[i]).collect();
        let sol = integrate_radial_ode(&space, lambda, Some(m), t0, (scale * v0, scale * d0), &times)?;
        residual_bound = sol.residual_bound;
        for (&i, s) in outer.iter().zip(sol.samples) {
            samples[i] = s;
        }
    }
    Ok(RadialSolution {
        lambda,
        angular: m,
        samples,
        provenance: Provenance::KType(n),
        residual_bound,
    })
}

/// `f_{λ,n}(t)`.
pub fn ktype_radial_profile(lambda: Complex64, n: i32, t: f64) -> Result<Complex64> {
    Ok(ktype_solution(lambda, n, &[t])?.samples[0].value)
}

/// Right-hand side of the resolvent-difference identity on `H²`:
/// `[i / (2κζ c(iζ)c(-iζ))] (1/2π) ∫ e^{(ρ+iζ)A(z₁,θ)} e^{(ρ-iζ)A(z₂,θ)} dθ`.
pub fn resolvent_difference_quadrature(zeta: Complex64, z1: DiskPoint, z2: DiskPoint) -> Result<BoundaryIntegral> {
    let space = h2();
    let czz = CFunction::new(space).czz(zeta)?;
    if czz.norm() == 0.0 || zeta.norm() == 0.0 {
        return Err(Error::Pole { at: zeta, order: 1 });
    }
    let (mean, nodes) = periodic_mean(
        |th| {
            let b = BoundaryAngle::new(th);
            poisson_kernel(I * zeta, z1, b) * poisson_kernel(-I * zeta, z2, b)
        },
        BOUNDARY_TOL,
        MAX_BOUNDARY_NODES,
    )?;
    Ok(BoundaryIntegral {
        value: I / (2.0 * space.kappa() * zeta * czz) * mean,
        nodes,
    })
}

/// Numerical rank of a sampled residue kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct RankEstimate {
    pub rank: usize,
    /// `σ_rank / σ_{rank+1}`; infinite when every singular value is kept.
    pub gap: f64,
    pub singular_values: Vec<f64>,
}

/// Quasi-random interior points with `|z| <= 0.6` (golden-ratio sequence,
/// area-uniform in radius).
pub fn sample_points(count: usize) -> Vec<DiskPoint> {
    const G1: f64 = 0.618_033_988_749_894_8;
    const G2: f64 = 0.754_877_666_246_692_7;
    (1..=count)
        .map(|j| {
            let r = 0.6 * (j as f64 * G1).fract().sqrt();
            let a = TAU * (j as f64 * G2).fract();
            DiskPoint::new(Complex64::from_polar(r, a)).expect("inside the disk")
        })
        .collect()
}

/// Rank of `M[j,l] = e^{(ρ+iζ)A(z_j,θ_l)} = e^{-kA(z_j,θ_l)}` at the `k`-th
/// resonance `ζ = i(1/2 + k)` of `H²`: singular values above
/// `svd_threshold · σ_max` are counted.
pub fn residue_rank(k: u32, n_points: usize, n_angles: usize, svd_threshold: f64) -> Result<RankEstimate> {
    let need = 4 * k as usize + 4;
    if n_points < need || n_angles < need {
        return Err(Error::InvalidParameter(format!(
            "residue_rank at k = {k} needs at least {need} points and angles"
        )));
    }
    if !(svd_threshold > 0.0 && svd_threshold < 1.0) {
        return Err(Error::InvalidParameter(format!("threshold {svd_threshold} outside (0, 1)")));
    }
    let points = sample_points(n_points);
    let m = DMatrix::from_fn(n_points, n_angles, |j, l| {
        let theta = BoundaryAngle::new(TAU * l as f64 / n_angles as f64);
        (-(k as f64) * horocycle_bracket(points[j], theta)).exp()
    });
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cutoff = svd_threshold * sv[0];
    let rank = sv.iter().take_while(|&&s| s > cutoff).count();
    let gap = match sv.get(rank) {
        Some(&next) if next > 0.0 => sv[rank - 1] / next,
        _ => f64::INFINITY,
    };
    if gap < 1e2 {
        return Err(Error::IndeterminateRank { gap });
    }
    Ok(RankEstimate {
        rank,
        gap,
        singular_values: sv,
    })
}

/// Closed forms on `H³` (`ρ = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3Oracle {
    pub phi: Complex64,
    pub q: Complex64,
    /// `1/λ`; absent at the pole `λ = 0`.
    pub c: Option<Complex64>,
}

/// `φ = sinh(λt)/(λ sinh t)`, `Q = e^{-(1+λ)t}/(1-e^{-2t})`, `c = 1/λ`.
pub fn oracle_h3(lambda: Complex64, t: f64) -> Result<H3Oracle> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            domain: "(0, inf)",
        });
    }
    let lt = lambda * t;
    // sinh(x)/x, by its series near the removable point
    let shc = if lt.norm() < 1e-4 {
        1.0 + lt * lt / 6.0
    } else {
        lt.sinh() / lt
    };
    Ok(H3Oracle {
        phi: shc * t / t.sinh(),
        q: (-(1.0 + lambda) * t).exp() / -(-2.0 * t).exp_m1(),
        c: (lambda.norm() > 0.0).then(|| 1.0 / lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::eval_phi;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn distance_basics() {
        assert_eq!(distance(DiskPoint::origin(), DiskPoint::origin()), 0.0);
        for r in [0.1, 0.5, 0.9, 0.999] {
            let d = distance(DiskPoint::origin(), pt(r, 0.0));
            assert!((d - ((1.0 + r) / (1.0 - r)).ln()).abs() < 1e-13 * d);
            let via_acosh = (1.0 + 2.0 * r * r / (1.0 - r * r)).acosh();
            assert!((d - via_acosh).abs() < 1e-9 * d);
        }
        let (a, b) = (pt(0.2, -0.4), pt(-0.5, 0.1));
        assert_eq!(distance(a, b), distance(b, a));
        assert!(DiskPoint::new(c(0.6, 0.8)).is_err());
        let p = DiskPoint::polar(1.3, 0.4).unwrap();
        assert!((distance(DiskPoint::origin(), p) - 1.3).abs() < 1e-14);
    }

    #[test]
    fn bracket_and_mean_value() {
        for th in [0.0, 1.0, 4.0] {
            assert_eq!(horocycle_bracket(DiskPoint::origin(), BoundaryAngle::new(th)), 0.0);
        }
        let z = pt(0.3, 0.2);
        let one = poisson_transform(c(RHO, 0.0), &FourierSeries::constant(), z).unwrap();
        assert!((one.value - 1.0).norm() < 1e-12);
        let near = DiskPoint::new(c(1.0 - 1e-15, 0.0)).unwrap();
        assert!(horocycle_bracket(near, BoundaryAngle::new(std::f64::consts::PI)).is_finite());
    }

    #[test]
    fn mean_value_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let z = DiskPoint::new(Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU))).unwrap();
            let v = poisson_transform(c(RHO, 0.0), &FourierSeries::constant(), z).unwrap().value;
            assert!((v - 1.0).norm() < 1e-12, "{v}");
        }
    }

    fn stencil_residual(lambda: Complex64, z: Complex64, theta: f64, h: f64) -> f64 {
        let theta = BoundaryAngle::new(theta);
        let u = |w: Complex64| poisson_kernel(lambda, DiskPoint::new(w).unwrap(), theta);
        let lap = (u(z + h) + u(z - h) + u(z + c(0.0, h)) + u(z - c(0.0, h)) - 4.0 * u(z)) / (h * h);
        let delta = -(1.0 - z.norm_sqr()).powi(2) / 4.0 * lap;
        ((delta - (0.25 - lambda * lambda) * u(z)) / u(z)).norm()
    }

    #[test]
    fn poisson_kernel_is_an_eigenfunction() {
        assert!(stencil_residual(c(0.8, 0.0), c(0.4, 0.0), 0.7, 1e-3) < 1e-6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..TAU));
            let lam = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let theta = rng.gen_range(0.0..TAU);
            let r = stencil_residual(lam, z, theta, 1e-4);
            assert!(r < 1e-6, "z={z} λ={lam} r={r:e}");
        }
    }

    #[test]
    fn poisson_transform_of_one_is_spherical() {
        let s = h2();
        for lam in [c(0.3, 0.0), c(1.2, -0.7), c(0.0, 2.0)] {
            let z = pt(0.5, -0.3);
            let v = poisson_transform(lam, &FourierSeries::constant(), z).unwrap().value;
            let phi = eval_phi(&s, lam, distance(DiskPoint::origin(), z)).unwrap();
            assert!((v - phi).norm() < 1e-9 * phi.norm());
        }
    }

    #[test]
    fn rotation_equivariance() {
        let lam = c(0.6, 0.4);
        let n = 3;
        let z = pt(0.45, 0.1);
        let beta = 1.1;
        let rotated = DiskPoint::new(z.z() * Complex64::from_polar(1.0, beta)).unwrap();
        let f = FourierSeries::mode(n);
        let a = poisson_transform(lam, &f, rotated).unwrap().value;
        let b = poisson_transform(lam, &f, z).unwrap().value * Complex64::from_polar(1.0, n as f64 * beta);
        assert!((a - b).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn ktype_profiles() {
        let lam = c(0.9, 0.0);
        let s = h2();
        for t in [0.1, 0.6, 2.0] {
            let a = ktype_radial_profile(lam, 0, t).unwrap();
            let b = eval_phi(&s, lam, t).unwrap();
            assert!((a - b).norm() < 1e-10 * b.norm(), "t={t}");
        }
        for t in [0.15, 0.8, 1.7, 3.0] {
            let f = ktype_radial_profile(lam, 2, t).unwrap();
            let p = poisson_transform(lam, &FourierSeries::mode(2), DiskPoint::polar(t, 0.0).unwrap()).unwrap().value;
            assert!((f - p).norm() < 1e-8 * p.norm(), "t={t}: {f} vs {p}");
        }
        let (t1, t2) = (1e-4, 2e-4);
        let f1 = ktype_radial_profile(lam, 3, t1).unwrap().norm();
        let f2 = ktype_radial_profile(lam, 3, t2).unwrap().norm();
        let slope = (f2 / f1).ln() / (t2 / t1).ln();
        assert!((slope - 3.0).abs() < 1e-3, "slope {slope}");
    }

    #[test]
    fn radial_derivative_of_the_transform() {
        let lam = c(0.7, 0.2);
        let f = FourierSeries::mode(-2);
        let t = 1.3;
        let s = poisson_transform_radial(lam, &f, 0.5, t).unwrap();
        let h = 1e-4;
        let at = |t: f64| poisson_transform(lam, &f, DiskPoint::polar(t, 0.5).unwrap()).unwrap().value;
        let fd = (at(t + h) - at(t - h)) / (2.0 * h);
        assert!((fd - s.derivative).norm() < 1e-7 * s.derivative.norm());
    }

    #[test]
    fn quadrature_identity_reduces_at_origin() {
        let s = h2();
        let zeta = c(1.1, -0.2);
        let z2 = pt(0.3, 0.4);
        let t = distance(DiskPoint::origin(), z2);
        let q = resolvent_difference_quadrature(zeta, DiskPoint::origin(), z2).unwrap().value;
        let r = crate::resolvent::resolvent_difference_spherical(&s, zeta, t).unwrap();
        assert!((q - r).norm() < 1e-10 * r.norm());
    }

    #[test]
    fn quadrature_identity_general_pair() {
        let s = h2();
        let zeta = c(1.1, 0.0);
        let (z1, z2) = (pt(0.2, 0.0), pt(0.0, 0.3));
        let q = resolvent_difference_quadrature(zeta, z1, z2).unwrap();
        let k = crate::resolvent::resolvent_difference(&s, zeta, distance(z1, z2)).unwrap();
        assert!((q.value - k).norm() < 1e-6 * k.norm());
        let swapped = resolvent_difference_quadrature(zeta, z2, z1).unwrap().value;
        assert!((swapped - q.value).norm() < 1e-10 * k.norm());
    }

    #[test]
    fn residue_ranks() {
        for k in 0..3u32 {
            let est = residue_rank(k, 24, 32, 1e-9).unwrap();
            assert_eq!(est.rank, 2 * k as usize + 1);
            assert!(est.gap >= 1e6, "k={k} gap {:e}", est.gap);
        }
        assert!(residue_rank(2, 8, 32, 1e-9).is_err());
    }

    #[test]
    fn h3_oracle_identities() {
        let o = oracle_h3(c(2.0, 0.0), 1.0).unwrap();
        assert!((o.phi - 1f64.cosh()).norm() < 1e-14);
        for lam in [c(0.5, 0.0), c(1.0, 1.0), c(-0.3, 2.0)] {
            for t in [0.5, 1.0, 3.0] {
                let p = oracle_h3(lam, t).unwrap();
                let m = oracle_h3(-lam, t).unwrap();
                let conn = m.c.unwrap() * p.q + p.c.unwrap() * m.q;
                assert!((p.phi - conn).norm() < 1e-13 * p.phi.norm().max(1.0));
            }
        }
        let z = oracle_h3(c(0.0, 0.0), 0.8).unwrap();
        assert!((z.phi - 0.8 / 0.8f64.sinh()).norm() < 1e-15);
        assert!(z.c.is_none());
    }
}
