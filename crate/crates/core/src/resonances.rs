//! Resonances: the zeros of `c(iζ)c(-iζ)` in `Im ζ > 0`, where the continued
//! resolvent has simple poles. They lie on the progression `ζ = i(ρ + jk)`,
//! with `j = 1` when `m_2α = 0` and `m_α` is odd, `j = 2` when `m_2α ≠ 0`,
//! and there are none when `m_2α = 0` and `m_α` is even.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::cfunction::CFunction;
use crate::error::{Error, Result};
use crate::model_h2::residue_rank;
use crate::radial::eval_phi;
use crate::resolvent::ResolventKernel;
use crate::space::RankOneSpace;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Certification bounds for a polished zero.
pub const CZZ_ZERO_TOL: f64 = 1e-12;
pub const CZZ_SLOPE_MIN: f64 = 1e-8;

/// Radius and node count of the residue contour.
pub const CONTOUR_RADIUS: f64 = 1e-2;
pub const CONTOUR_NODES: usize = 64;

const NEWTON_SEED_OFFSET: f64 = 1e-3;
const NEWTON_MAX_ITER: usize = 50;
const RANK_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceRecord {
    pub zeta: Complex64,
    pub k: u32,
    pub residue_scalar: Complex64,
    pub multiplicity_estimate: Option<usize>,
}

fn is_h2(space: &RankOneSpace) -> bool {
    space.m_alpha() == 1 && space.m_2alpha() == 0
}

fn newton(cf: &CFunction, seed: Complex64) -> Result<Complex64> {
    let mut z = seed + Complex64::new(0.0, NEWTON_SEED_OFFSET);
    for _ in 0..NEWTON_MAX_ITER {
        let f = cf.czz(z)?;
        if f.norm() == 0.0 {
            return Ok(z);
        }
        let step = f / cf.czz_derivative(z)?;
        z -= step;
        if !z.is_finite() || (z - seed).norm() > 0.25 {
            return Err(Error::Enumeration(format!("Newton iteration from {seed} diverged")));
        }
        if step.norm() <= 1e-15 * z.norm() {
            return Ok(z);
        }
    }
    Err(Error::Enumeration(format!("Newton iteration from {seed} did not converge")))
}

/// Winding number of `czz` around the rectangle `[-w, w] × [lo, hi]`.
fn winding(cf: &CFunction, w: f64, lo: f64, hi: f64) -> Result<i64> {
    let corners = [
        Complex64::new(-w, lo),
        Complex64::new(w, lo),
        Complex64::new(w, hi),
        Complex64::new(-w, hi),
    ];
    let mut total = 0.0;
    let mut prev = cf.czz(corners[0])?;
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        let n = ((b - a).norm() * 200.0).ceil() as usize;
        for j in 1..=n {
            let v = cf.czz(a + (b - a) * (j as f64 / n as f64))?;
            let turn = (v / prev).arg();
            if turn.abs() > 1.0 {
                return Err(Error::Enumeration("argument-principle contour is too coarse".into()));
            }
            total += turn;
            prev = v;
        }
    }
    Ok((total / TAU).round() as i64)
}

/// Cross-checks the predicted zeros against the Laurent classification of
/// the half-lattice on the imaginary axis and against the argument
/// principle on a strip around it.
fn guard_against_missed_zeros(cf: &CFunction, predicted: &[Complex64]) -> Result<()> {
    let top = predicted.last().map_or(0.0, |z| z.im) + 0.25;
    let mut expected = 0i64;
    let mut zeros = Vec::new();
    let mut m = 1;
    while (m as f64) / 2.0 < top {
        let z = Complex64::new(0.0, m as f64 / 2.0);
        let order = cf.czz_order(z);
        expected += order as i64;
        if order > 0 {
            zeros.push((z, order));
        }
        m += 1;
    }
    let consistent = zeros.len() == predicted.len()
        && zeros
            .iter()
            .zip(predicted)
            .all(|(&(a, order), b)| order == 1 && (a - b).norm() < 1e-12);
    if !consistent {
        return Err(Error::Enumeration(format!(
            "Laurent classification finds zeros {:?}, progression predicts {predicted:?}",
            zeros.iter().map(|z| z.0).collect::<Vec<_>>()
        )));
    }
    let counted = winding(cf, 0.3, 0.1, top)?;
    if counted != expected {
        return Err(Error::Enumeration(format!(
            "argument principle counts {counted} zeros minus poles, lattice predicts {expected}"
        )));
    }
    Ok(())
}

/// `-1 / (2κζ c'(iζ) c(-iζ))`.
pub fn residue_scalar(space: &RankOneSpace, zeta: Complex64) -> Result<Complex64> {
    let cf = CFunction::new(*space);
    let dc = cf.derivative(I * zeta)?;
    let cm = cf.eval(-I * zeta)?;
    Ok(-1.0 / (2.0 * space.kappa() * zeta * dc * cm))
}

/// The first `count` resonances, Newton-polished and certified.
pub fn enumerate(space: &RankOneSpace, count: usize) -> Result<Vec<ResonanceRecord>> {
    let cf = CFunction::new(*space);
    let predicted = cf.predicted_zeros(count);
    if predicted.is_empty() {
        return Ok(Vec::new());
    }
    guard_against_missed_zeros(&cf, &predicted)?;
    predicted
        .iter()
        .enumerate()
        .map(|(k, &seed)| {
            let zeta = newton(&cf, seed)?;
            let value = cf.czz(zeta)?.norm();
            let slope = cf.czz_derivative(zeta)?.norm();
            if !(value < CZZ_ZERO_TOL && slope > CZZ_SLOPE_MIN) {
                return Err(Error::Enumeration(format!(
                    "certification failed at {zeta}: |czz| = {value:e}, |czz'| = {slope:e}"
                )));
            }
            let k = k as u32;
            let multiplicity_estimate = if is_h2(space) {
                let n = (4 * k as usize + 8).max(24);
                residue_rank(k, n, n, RANK_THRESHOLD).ok().map(|r| r.rank)
            } else {
                None
            };
            Ok(ResonanceRecord {
                zeta,
                k,
                residue_scalar: residue_scalar(space, zeta)?,
                multiplicity_estimate,
            })
        })
        .collect()
}

/// `residue_scalar · φ_{iζ}(t)`, the radial section of the residue of the
/// resolvent kernel.
pub fn residue_kernel(space: &RankOneSpace, rec: &ResonanceRecord, t: f64) -> Result<Complex64> {
    Ok(rec.residue_scalar * eval_phi(space, I * rec.zeta, t)?)
}

/// Zeroth and first moments `(1/2πi)∮ (ζ-ζ₀)^m R_ζ(t) dζ / φ_{iζ₀}(t)` on a
/// circle of radius [`CONTOUR_RADIUS`] around the resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourResidue {
    pub residue: Complex64,
    pub second_moment: Complex64,
}

pub fn contour_residue(space: &RankOneSpace, zeta0: Complex64, t: f64) -> Result<ContourResidue> {
    let phi = eval_phi(space, I * zeta0, t)?;
    let mut first = Complex64::new(0.0, 0.0);
    let mut second = Complex64::new(0.0, 0.0);
    for j in 0..CONTOUR_NODES {
        let u = Complex64::from_polar(CONTOUR_RADIUS, TAU * j as f64 / CONTOUR_NODES as f64);
        let k = ResolventKernel::new(space, zeta0 + u)?.value(t)?;
        // dζ / (2πi) = u dθ / 2π
        first += k * u;
        second += k * u * u;
    }
    let n = CONTOUR_NODES as f64;
    Ok(ContourResidue {
        residue: first / (n * phi),
        second_moment: second / (n * phi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolvent::kernel;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn progressions() {
        let h2 = RankOneSpace::real_hyperbolic(2).unwrap();
        let got = enumerate(&h2, 3).unwrap();
        for (k, r) in got.iter().enumerate() {
            assert!((r.zeta - c(0.0, 0.5 + k as f64)).norm() < 1e-10);
            assert_eq!(r.k, k as u32);
            assert!(r.residue_scalar.norm() > 0.0);
            assert_eq!(r.multiplicity_estimate, Some(2 * k + 1));
        }
        assert!(enumerate(&RankOneSpace::real_hyperbolic(3).unwrap(), 5).unwrap().is_empty());
        let ch2 = RankOneSpace::complex_hyperbolic(2).unwrap();
        let got = enumerate(&ch2, 2).unwrap();
        assert!((got[0].zeta - c(0.0, 2.0)).norm() < 1e-10);
        assert!((got[1].zeta - c(0.0, 4.0)).norm() < 1e-10);
        assert!(got.iter().all(|r| r.multiplicity_estimate.is_none()));
        assert!(enumerate(&h2, 0).unwrap().is_empty());
    }

    #[test]
    fn every_family_certifies() {
        for s in [
            RankOneSpace::real_hyperbolic(4).unwrap(),
            RankOneSpace::quaternionic_hyperbolic(2).unwrap(),
            RankOneSpace::octonionic_plane(),
            RankOneSpace::complex_hyperbolic(3).unwrap(),
        ] {
            let got = enumerate(&s, 4).unwrap();
            assert_eq!(got.len(), 4, "{s}");
        }
    }

    #[test]
    fn h2_residue_closed_form() {
        // c(λ) = Γ(λ)/(√π Γ(λ+1/2)) on H²; at ζ = i/2, c(-iζ) = c(1/2) = 1 and
        // c'(-1/2) = Γ(-1/2)/√π · 1 (the zero comes from 1/Γ(0))
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        let rs = residue_scalar(&s, c(0.0, 0.5)).unwrap();
        let dc = -2.0 * std::f64::consts::PI.sqrt() / std::f64::consts::PI.sqrt();
        let expected = -1.0 / (2.0 * c(0.0, 0.5) * dc);
        assert!((rs - expected).norm() < 1e-13, "{rs} vs {expected}");
    }

    #[test]
    fn contour_matches_formula() {
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        for rec in enumerate(&s, 2).unwrap() {
            let cr = contour_residue(&s, rec.zeta, 1.0).unwrap();
            assert!((cr.residue - rec.residue_scalar).norm() < 1e-6 * rec.residue_scalar.norm());
            assert!(cr.second_moment.norm() < 1e-8 * cr.residue.norm());
        }
        let ch2 = RankOneSpace::complex_hyperbolic(2).unwrap();
        let rec = enumerate(&ch2, 1).unwrap()[0];
        let cr = contour_residue(&ch2, rec.zeta, 0.7).unwrap();
        assert!((cr.residue - rec.residue_scalar).norm() < 1e-6 * rec.residue_scalar.norm());
    }

    #[test]
    fn residue_kernel_properties() {
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        let rec = enumerate(&s, 2).unwrap()[1];
        let phi = |t| eval_phi(&s, I * rec.zeta, t).unwrap();
        let ratios: Vec<Complex64> = [0.5, 1.0, 2.0].iter().map(|&t| residue_kernel(&s, &rec, t).unwrap() / phi(t)).collect();
        for r in &ratios {
            assert!((r - ratios[0]).norm() < 1e-10 * ratios[0].norm());
        }
        let near_zero = residue_kernel(&s, &rec, 1e-6).unwrap();
        assert!((near_zero - rec.residue_scalar).norm() < 1e-9 * rec.residue_scalar.norm());
        for t in [0.5, 1.5] {
            // (ζ'-ζ)R_ζ' along the imaginary axis, Richardson in the offset; the
            // offset stays clear of the exponent exclusion zone around ζ
            let scaled = |d: f64| c(0.0, d) * kernel(&s, rec.zeta + c(0.0, d), t).unwrap();
            let lim = 2.0 * scaled(5e-6) - scaled(1e-5);
            let rk = residue_kernel(&s, &rec, t).unwrap();
            assert!((lim - rk).norm() < 1e-6 * rk.norm(), "{lim} vs {rk}");
        }
    }

    #[test]
    fn guard_detects_inconsistent_predictions() {
        let cf = CFunction::new(RankOneSpace::real_hyperbolic(2).unwrap());
        assert!(guard_against_missed_zeros(&cf, &[c(0.0, 0.5), c(0.0, 2.5)]).is_err());
        assert!(guard_against_missed_zeros(&cf, &[c(0.0, 0.5), c(0.0, 1.5)]).is_ok());
    }
}
