//! The resolvent `R_ζ = (Δ - ⟨ρ,ρ⟩ - ⟨ζ,ζ⟩)^{-1}` of the Laplacian `Δ = κL`,
//! holomorphic in `Im ζ < 0` and continued meromorphically. Its kernel depends
//! on the separation `t` of its arguments only:
//!
//! ```text
//! R_ζ(t) = Q_{iζ}(t) / (2iκζ c(iζ)).
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cfunction::CFunction;
use crate::error::{Error, Result};
use crate::quad::adaptive_gk15;
use crate::radial::{frobenius_samples, phi_samples, RadialSample};
use crate::space::RankOneSpace;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance of the Green-representation quadrature.
pub const QUADRATURE_RTOL: f64 = 1e-10;

/// Step of the finite-difference residual check in [`apply_radial`].
pub const RESIDUAL_STEP: f64 = 1e-3;

/// The continued resolvent kernel at one spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventKernel {
    space: RankOneSpace,
    pub zeta: Complex64,
    pub normalization: Complex64,
}

impl ResolventKernel {
    /// Fails with a pole signal where `c(iζ)` vanishes.
    pub fn new(space: &RankOneSpace, zeta: Complex64) -> Result<Self> {
        let cf = CFunction::new(*space);
        let lambda = I * zeta;
        let l = cf.laurent(lambda);
        // ζ c(iζ) near ζ0: the leading term of c in λ rotated to ζ, times ζ.
        let at_origin = zeta.norm() < 1e-300;
        let order = l.order + i32::from(at_origin);
        let coeff = l.coeff * I.powi(l.order) * if at_origin { Complex64::new(1.0, 0.0) } else { zeta };
        let normalization = match order {
            o if o > 0 => {
                return Err(Error::Pole {
                    at: zeta,
                    order: o as u32,
                })
            }
            0 => 1.0 / (2.0 * I * space.kappa() * coeff),
            _ => Complex64::new(0.0, 0.0),
        };
        Ok(Self {
            space: *space,
            zeta,
            normalization,
        })
    }

    pub fn space(&self) -> &RankOneSpace {
        &self.space
    }

    /// Kernel values at the given separations.
    pub fn values(&self, ts: &[f64]) -> Result<Vec<Complex64>> {
        let (q, _) = frobenius_samples(&self.space, I * self.zeta, 0, ts)?;
        Ok(q.iter().map(|s| self.normalization * s.value).collect())
    }

    pub fn value(&self, t: f64) -> Result<Complex64> {
        Ok(self.values(&[t])?[0])
    }
}

/// `R_ζ(t)`.
pub fn kernel(space: &RankOneSpace, zeta: Complex64, t: f64) -> Result<Complex64> {
    ResolventKernel::new(space, zeta)?.value(t)
}

/// `R_{-ζ}(t) - R_ζ(t)`.
pub fn resolvent_difference(space: &RankOneSpace, zeta: Complex64, t: f64) -> Result<Complex64> {
    Ok(kernel(space, -zeta, t)? - kernel(space, zeta, t)?)
}

/// The spherical form `i φ_{iζ}(t) / (2κζ c(iζ) c(-iζ))` of the resolvent
/// difference.
pub fn resolvent_difference_spherical(space: &RankOneSpace, zeta: Complex64, t: f64) -> Result<Complex64> {
    let czz = CFunction::new(*space).czz(zeta)?;
    let (phi, _) = phi_samples(space, I * zeta, &[t])?;
    Ok(I * phi[0].value / (2.0 * space.kappa() * zeta * czz))
}

fn spectral_zeta(space: &RankOneSpace, s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain {
            what: "s",
            value: s,
            domain: "(0, inf)",
        });
    }
    Ok((s / space.kappa()).sqrt())
}

/// Density of the spectral measure of `Δ - ⟨ρ,ρ⟩` at `s > 0`, as a kernel in
/// the separation: `(R_{-ζ} - R_ζ)(t) / (2πi)` with `ζ = √(s/κ)`.
pub fn spectral_density_kernel(space: &RankOneSpace, s: f64, t: f64) -> Result<Complex64> {
    let zeta = Complex64::new(spectral_zeta(space, s)?, 0.0);
    Ok(resolvent_difference(space, zeta, t)? / (2.0 * PI * I))
}

/// `φ_{iζ}(t) / (4πκζ |c(iζ)|²)`, the same density through the Plancherel weight.
pub fn spectral_density_spherical(space: &RankOneSpace, s: f64, t: f64) -> Result<f64> {
    let zeta = spectral_zeta(space, s)?;
    let weight = CFunction::new(*space).plancherel_density(zeta)?;
    let (phi, _) = phi_samples(space, Complex64::new(0.0, zeta), &[t])?;
    Ok(phi[0].value.re * weight / (4.0 * PI * space.kappa() * zeta))
}

/// Result of applying the resolvent to compactly supported radial data.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialResolvent {
    pub zeta: Complex64,
    pub samples: Vec<RadialSample>,
    /// `max |κ(L - ρ² - ζ²)u - f|` over the outputs, from a five-point
    /// difference of `u'`; outputs closer to the origin than the stencil
    /// are skipped.
    pub residual: f64,
}

/// `u = R_ζ f` for radial `f` supported in `support = [t_a, t_b]`, by the
/// Green representation
/// `u(t) = N [Q(t) ∫₀ᵗ φ f J + φ(t) ∫ₜ^∞ Q f J]`, `Q = Q_{iζ}`, `φ = φ_{iζ}`,
/// `N = 1/(2iκζ c(iζ))`.
pub fn apply_radial<F>(space: &RankOneSpace, zeta: Complex64, f: F, support: (f64, f64), ts: &[f64]) -> Result<RadialResolvent>
where
    F: Fn(f64) -> Complex64,
{
    let (ta, tb) = support;
    if !(ta > 0.0 && tb > ta && tb.is_finite()) {
        return Err(Error::InvalidParameter(format!("support [{ta}, {tb}] must satisfy 0 < t_a < t_b < inf")));
    }
    let rk = ResolventKernel::new(space, zeta)?;
    let lambda = I * zeta;
    let h = RESIDUAL_STEP;

    let mut eval_points: Vec<f64> = Vec::new();
    for &t in ts {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain {
                what: "t",
                value: t,
                domain: "(0, inf)",
            });
        }
        eval_points.push(t);
        if t > 2.0 * h {
            eval_points.extend([t - 2.0 * h, t - h, t + h, t + 2.0 * h]);
        }
    }
    let mut breaks: Vec<f64> = vec![ta, tb];
    breaks.extend(eval_points.iter().copied().filter(|&t| t > ta && t < tb));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let density = |t: f64| space.density_j_of_t(t);
    let panels = adaptive_gk15::<2, _>(
        &breaks,
        |xs| {
            let (phi, _) = phi_samples(space, lambda, xs)?;
            let (q, _) = frobenius_samples(space, lambda, 0, xs)?;
            Ok(xs
                .iter()
                .zip(phi.iter().zip(&q))
                .map(|(&x, (p, q))| {
                    let w = f(x) * density(x);
                    [p.value * w, q.value * w]
                })
                .collect())
        },
        QUADRATURE_RTOL,
    )?;

    let (phi, _) = phi_samples(space, lambda, &eval_points)?;
    let (q, _) = frobenius_samples(space, lambda, 0, &eval_points)?;
    let n = rk.normalization;
    let green: Vec<RadialSample> = eval_points
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let inner: Complex64 = panels.iter().filter(|p| p.b <= t).map(|p| p.integral[0]).sum();
            let outer: Complex64 = panels.iter().filter(|p| p.a >= t).map(|p| p.integral[1]).sum();
            RadialSample {
                t,
                value: n * (q[i].value * inner + phi[i].value * outer),
                derivative: n * (q[i].derivative * inner + phi[i].derivative * outer),
            }
        })
        .collect();

    let shift = space.rho() * space.rho() + zeta * zeta;
    let mut samples = Vec::with_capacity(ts.len());
    let mut residual: f64 = 0.0;
    let mut idx = 0;
    for &t in ts {
        let centre = green[idx];
        samples.push(centre);
        if t > 2.0 * h {
            let d = &green[idx + 1..idx + 5];
            let second = (d[0].derivative - 8.0 * d[1].derivative + 8.0 * d[2].derivative - d[3].derivative) / (12.0 * h);
            let lu = -(second + space.log_density_rate(t) * centre.derivative);
            let r = space.kappa() * (lu - shift * centre.value) - f(t);
            residual = residual.max(r.norm());
            idx += 5;
        } else {
            idx += 1;
        }
    }
    Ok(RadialResolvent {
        zeta,
        samples,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn families() -> Vec<RankOneSpace> {
        vec![
            RankOneSpace::real_hyperbolic(2).unwrap(),
            RankOneSpace::real_hyperbolic(3).unwrap(),
            RankOneSpace::complex_hyperbolic(2).unwrap(),
            RankOneSpace::quaternionic_hyperbolic(2).unwrap(),
            RankOneSpace::octonionic_plane(),
        ]
    }

    fn bump(t: f64) -> Complex64 {
        let x = 2.0 * t - 3.0;
        if x.abs() >= 1.0 {
            c(0.0, 0.0)
        } else {
            c((-1.0 / (1.0 - x * x)).exp(), 0.0)
        }
    }

    #[test]
    fn h3_kernel_closed_form() {
        let s = RankOneSpace::real_hyperbolic(3).unwrap();
        for zeta in [c(0.7, -0.4), c(1.3, 0.0), c(-0.2, 0.9), c(0.0, 0.0)] {
            for t in [0.3, 1.0, 4.0] {
                let k = kernel(&s, zeta, t).unwrap();
                let exact = (-I * zeta * t).exp() / (4.0 * t.sinh());
                assert!((k - exact).norm() < 1e-10 * exact.norm(), "ζ={zeta} t={t}");
            }
        }
    }

    #[test]
    fn h3_difference_closed_form() {
        let s = RankOneSpace::real_hyperbolic(3).unwrap();
        let zeta = c(1.1, -0.3);
        let t = 1.7;
        let d = resolvent_difference(&s, zeta, t).unwrap();
        let exact = I * (zeta * t).sin() / (2.0 * t.sinh());
        assert!((d - exact).norm() < 1e-10 * exact.norm());
        assert!((resolvent_difference(&s, -zeta, t).unwrap() + d).norm() < 1e-14 * d.norm());
    }

    #[test]
    fn difference_matches_spherical_form() {
        for s in families() {
            let zeta = c(1.3, 0.0);
            let d = resolvent_difference(&s, zeta, 2.0).unwrap();
            let sph = resolvent_difference_spherical(&s, zeta, 2.0).unwrap();
            assert!((d - sph).norm() < 1e-10 * sph.norm(), "{s}: {d} vs {sph}");
        }
    }

    #[test]
    fn resonance_is_a_pole() {
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        assert!(matches!(kernel(&s, c(0.0, 0.5), 1.0), Err(Error::Pole { order: 1, .. })));
        assert!(matches!(kernel(&s, c(0.0, 2.5), 1.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn kernel_is_holomorphic_in_the_physical_half_plane() {
        for s in families() {
            for i in 0..20 {
                for j in 0..20 {
                    let zeta = c(-3.0 + 6.0 * i as f64 / 19.0, -0.05 - 3.0 * j as f64 / 19.0);
                    let k = kernel(&s, zeta, 0.8);
                    assert!(k.as_ref().is_ok_and(|v| v.is_finite()), "{s} ζ={zeta}: {k:?}");
                }
            }
        }
    }

    #[test]
    fn spectral_density_is_real_and_matches_plancherel_form() {
        for s in families() {
            // away from the origin, where the kernel difference cancels heavily in high dimension
            for (sv, t) in [(0.4, 1.5), (1.0, 1.0), (3.0, 2.5)] {
                let k = spectral_density_kernel(&s, sv, t).unwrap();
                let p = spectral_density_spherical(&s, sv, t).unwrap();
                assert!(k.im.abs() < 1e-12 * k.norm().max(1e-300), "{s}: {k}");
                assert!((k.re - p).abs() < 1e-10 * p.abs(), "{s}: {k} vs {p}");
            }
        }
        let h3 = RankOneSpace::real_hyperbolic(3).unwrap();
        let v = spectral_density_kernel(&h3, 1.0, 1.0).unwrap().re;
        assert!((v - 1f64.sin() / (4.0 * PI * 1f64.sinh())).abs() < 1e-12);
        assert!(spectral_density_kernel(&h3, 0.0, 1.0).is_err());
    }

    #[test]
    fn apply_radial_inverts_the_operator() {
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        let zeta = c(0.8, -0.6);
        let ts: Vec<f64> = (0..=40).map(|k| 0.1 + 9.9 * k as f64 / 40.0).collect();
        let out = apply_radial(&s, zeta, bump, (1.0, 2.0), &ts).unwrap();
        assert!(out.residual < 1e-7, "residual {:e}", out.residual);

        // beyond the support u is a multiple of Q_{iζ}
        let tail: Vec<&RadialSample> = out.samples.iter().filter(|p| p.t > 2.0).collect();
        let q = ResolventKernel::new(&s, zeta).unwrap().values(&tail.iter().map(|p| p.t).collect::<Vec<_>>()).unwrap();
        let ratio0 = tail[0].value / q[0];
        for (p, k) in tail.iter().zip(&q) {
            assert!((p.value / k - ratio0).norm() < 1e-9 * ratio0.norm());
        }

        let zero = apply_radial(&s, zeta, |_| c(0.0, 0.0), (1.0, 2.0), &[0.5, 3.0]).unwrap();
        assert!(zero.samples.iter().all(|p| p.value.norm() == 0.0));
    }

    #[test]
    fn apply_radial_across_the_physical_half_plane() {
        for s in [RankOneSpace::complex_hyperbolic(2).unwrap(), RankOneSpace::real_hyperbolic(3).unwrap()] {
            for zeta in [c(0.3, -0.2), c(-1.5, -1.0), c(2.0, -0.1)] {
                let ts = [0.2, 1.0, 1.4, 2.0, 3.5, 8.0];
                let out = apply_radial(&s, zeta, bump, (1.0, 2.0), &ts).unwrap();
                assert!(out.residual < 1e-7, "{s} ζ={zeta} residual {:e}", out.residual);
            }
        }
    }
}
