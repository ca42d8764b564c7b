//! The scattering matrix `S_ζ`, sending the incoming boundary value
//! `bv_{ρ-iζ}` of an eigenfunction to the outgoing one `bv_{ρ+iζ}`.
//!
//! On the spherical vector it acts by the scalar `s(ζ) = c(-iζ)/c(iζ)`; on
//! the boundary Fourier modes of `H²` by the eigenvalues [`ktype_eigenvalue`],
//! obtained from a connection solve of the K-type radial equation. Its poles
//! split into resonances (`Im ζ > 0`) and poles of the standard intertwiner
//! (`ζ ∈ -(i/2)ℕ`).

use num_complex::Complex64;

use crate::boundary::{boundary_pair, BoundaryPair};
use crate::cfunction::{CFunction, Laurent};
use crate::error::{Error, Result};
use crate::model_h2::{h2, ktype_solution};
use crate::resonances::{enumerate, ResonanceRecord};
use crate::space::RankOneSpace;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Grid spacing of the sign-change scan for `1/s` on the imaginary axis.
pub const AXIS_SCAN_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    Resonance,
    Intertwiner,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPole {
    pub zeta: Complex64,
    pub kind: PoleKind,
    /// Residue of `s` at the pole.
    pub residue_scalar: Complex64,
}

/// Leading Laurent term of `s` at `ζ`.
pub fn scalar_laurent(space: &RankOneSpace, zeta: Complex64) -> Laurent {
    let cf = CFunction::new(*space);
    let num = cf.rotated_laurent(zeta, -1.0);
    let den = cf.rotated_laurent(zeta, 1.0);
    Laurent {
        order: num.order - den.order,
        coeff: num.coeff / den.coeff,
    }
}

/// `s(ζ) = c(-iζ)/c(iζ)`; at `ζ = 0` the (finite) limit.
pub fn scalar(space: &RankOneSpace, zeta: Complex64) -> Result<Complex64> {
    scalar_laurent(space, zeta).value(zeta)
}

/// Residue of `s` at a simple pole.
pub fn scalar_residue(space: &RankOneSpace, zeta: Complex64) -> Result<Complex64> {
    let l = scalar_laurent(space, zeta);
    if l.order != -1 {
        return Err(Error::InvalidParameter(format!(
            "s has Laurent order {} at {zeta}, not a simple pole",
            l.order
        )));
    }
    Ok(l.coeff)
}

fn check_ktype_parameter(zeta: Complex64) -> Result<Complex64> {
    let two_lambda = 2.0 * I * zeta;
    let nearest = two_lambda.re.round();
    if (two_lambda - nearest).norm() < 1e-6 {
        return Err(Error::ResonantExponent {
            two_lambda,
            lattice: "integers",
        });
    }
    Ok(I * zeta)
}

/// Boundary values of the K-type profile `f_{iζ,n}` on `H²`.
pub fn ktype_boundary_pair(zeta: Complex64, n: i32) -> Result<BoundaryPair> {
    let lambda = check_ktype_parameter(zeta)?;
    let sol = ktype_solution(lambda, n, &[1.0])?;
    boundary_pair(&h2(), lambda, &sol)
}

/// Eigenvalue of `S_ζ` on the mode `e^{inθ}` of `H²`: `a₊/a₋` of the K-type
/// profile at `λ = iζ`.
pub fn ktype_eigenvalue(zeta: Complex64, n: i32) -> Result<Complex64> {
    let pair = ktype_boundary_pair(zeta, n)?;
    Ok(pair.a_plus / pair.a_minus)
}

/// Poles of `s` on the segment `ζ = iy`, `|y| <= y_max`, found as sign
/// changes of the real function `y ↦ 1/s(iy) = c(-y)/c(y)`, refined by
/// bisection, snapped to the half-integer lattice and confirmed by the
/// Laurent order. Sign changes at zeros of `s` are discarded.
pub fn axis_poles(space: &RankOneSpace, y_max: f64) -> Result<Vec<Complex64>> {
    let cf = CFunction::new(*space);
    let inv = |y: f64| -> Result<f64> {
        let v = cf.eval(Complex64::new(-y, 0.0))? / cf.eval(Complex64::new(y, 0.0))?;
        Ok(v.re)
    };
    // midpoints of a grid overshooting ±y_max, so endpoint poles are bracketed
    let n = (y_max / AXIS_SCAN_STEP).ceil() as i64;
    let ys: Vec<f64> = (-n - 1..=n).map(|j| AXIS_SCAN_STEP * (j as f64 + 0.5)).collect();
    let vals = ys.iter().map(|&y| inv(y)).collect::<Result<Vec<_>>>()?;
    let mut poles = Vec::new();
    for j in 1..ys.len() {
        if vals[j - 1].signum() == vals[j].signum() {
            continue;
        }
        let (mut a, mut b, fa) = (ys[j - 1], ys[j], vals[j - 1]);
        // stop well outside the pole-snapping radius of the lattice
        for _ in 0..24 {
            let m = 0.5 * (a + b);
            // a pole signal means the midpoint hit the lattice point itself
            let fm = match inv(m) {
                Ok(v) => v,
                Err(Error::Pole { .. }) => f64::NAN,
                Err(e) => return Err(e),
            };
            if fm == 0.0 || !fm.is_finite() {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        let y = 0.5 * (a + b);
        let snapped = (2.0 * y).round() / 2.0;
        if (y - snapped).abs() > 1e-8 {
            return Err(Error::Enumeration(format!("sign change of 1/s off the half-lattice at ζ = {y}i")));
        }
        let zeta = Complex64::new(0.0, snapped);
        if snapped.abs() <= y_max && scalar_laurent(space, zeta).order < 0 {
            poles.push(zeta);
        }
    }
    Ok(poles)
}

/// Kind of a pole of `s`, or `None` when `ζ` is not a pole of either kind.
pub fn classify(space: &RankOneSpace, resonances: &[ResonanceRecord], zeta: Complex64) -> Option<PoleKind> {
    if scalar_laurent(space, zeta).order >= 0 {
        return None;
    }
    if zeta.im > 0.0 {
        resonances
            .iter()
            .any(|r| (r.zeta - zeta).norm() < 1e-10)
            .then_some(PoleKind::Resonance)
    } else if zeta.im < 0.0 && zeta.re == 0.0 && (2.0 * zeta.im).fract() == 0.0 {
        Some(PoleKind::Intertwiner)
    } else {
        None
    }
}

/// The first `count` resonances together with the lower half-plane poles
/// among `ζ = -ik/2`, `k = 1..count`.
pub fn classify_poles(space: &RankOneSpace, count: usize) -> Result<Vec<ScatteringPole>> {
    let mut out = Vec::new();
    for rec in enumerate(space, count)? {
        out.push(ScatteringPole {
            zeta: rec.zeta,
            kind: PoleKind::Resonance,
            residue_scalar: scalar_residue(space, rec.zeta)?,
        });
    }
    for k in 1..=count {
        let zeta = Complex64::new(0.0, -(k as f64) / 2.0);
        if scalar_laurent(space, zeta).order < 0 {
            out.push(ScatteringPole {
                zeta,
                kind: PoleKind::Intertwiner,
                residue_scalar: scalar_residue(space, zeta)?,
            });
        }
    }
    Ok(out)
}

/// Both sides of `Res s(ζ) = 2iκζ c(-iζ) · residue_scalar · bv_{ρ+iζ} φ_{iζ}`
/// at an `H²` resonance, with `bv_{ρ+iζ} φ_{iζ} = c(-iζ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueRelation {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub relative_gap: f64,
}

pub fn residue_relation_check(rec: &ResonanceRecord) -> Result<ResidueRelation> {
    let space = h2();
    let cf = CFunction::new(space);
    let lhs = scalar_residue(&space, rec.zeta)?;
    let bv = cf.eval(-I * rec.zeta)?;
    let rhs = 2.0 * I * space.kappa() * rec.zeta * bv * rec.residue_scalar * bv;
    Ok(ResidueRelation {
        lhs,
        rhs,
        relative_gap: (lhs - rhs).norm() / lhs.norm(),
    })
}
