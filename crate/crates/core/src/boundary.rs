//! Boundary values of radial eigenfunctions.
//!
//! A tempered solution of `(L - ρ² + λ²) u = 0` with `2λ ∉ ℤ` has the
//! expansion `u = a₋ y^{ρ-λ}(1 + O(y²)) + a₊ y^{ρ+λ}(1 + O(y²))`; the
//! coefficients `a₋ = bv_{ρ-λ} u` and `a₊ = bv_{ρ+λ} u` are its boundary
//! values. [`boundary_pair`] extracts both by a connection solve against the
//! Frobenius basis, [`bv_limit`] the leading one as a Fatou-type limit.
//!
//! # Indicial polynomials
//!
//! In the boundary coordinate `L = -θ² + 2ρθ + O(y²)` with `θ = y d/dy`, so
//! the indicial polynomial is `I(s) = -s² + 2ρs` and the admissible exponents
//! of eigenfunctions solve `I(s) = ρ² - λ²`, i.e. `s = ρ ± λ`. Conjugating by
//! `y^{ρ+λ}` gives `L_λ` with indicial polynomial `I_λ(s) = -s(s - 2λ)`.
//!
//! Substituting `Q_λ = y^{ρ+λ} Σ b_k y^{2k}` turns each power of `y²` into
//! one step of a triangular recursion whose diagonal is `-I_λ(-2k)`: the
//! coefficient `b_k` is determined by the lower ones precisely when
//! `I_λ(-2k) ≠ 0`. That index shift is the same one that removes
//! delta-layers at the boundary one normal order at a time, which is why
//! the exclusion set of the series is the zero set of `I_λ` on the negative
//! integers, `2λ ∈ -ℕ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{richardson, Extrapolated};
use crate::radial::{connection_coefficients, RadialSolution};
use crate::space::RankOneSpace;

/// Minimal number of halvings in a [`bv_limit`] sample set.
pub const BV_MIN_LEVELS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPair {
    pub a_minus: Complex64,
    pub a_plus: Complex64,
    pub lambda: Complex64,
    pub condition: f64,
}

/// `I(s) = -s² + 2ρs`.
pub fn indicial(space: &RankOneSpace, s: Complex64) -> Complex64 {
    -s * s + 2.0 * space.rho() * s
}

/// `I_λ(s) = -s(s - 2λ)`.
pub fn indicial_shifted(lambda: Complex64, s: Complex64) -> Complex64 {
    -s * (s - 2.0 * lambda)
}

/// Exponents of the corrections to `y^{-ρ+λ} u(y)`: the integers and
/// `2λ + j`, sorted by real part, with coincidences merged.
fn correction_exponents(lambda: Complex64, count: usize) -> Vec<Complex64> {
    let mut exps: Vec<Complex64> = (1..=count)
        .map(|j| Complex64::new(j as f64, 0.0))
        .chain((0..count).map(|j| 2.0 * lambda + j as f64))
        .collect();
    exps.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut merged: Vec<Complex64> = Vec::with_capacity(count);
    for e in exps {
        if merged.iter().all(|m| (m - e).norm() > 1e-3) {
            merged.push(e);
        }
    }
    merged.truncate(count);
    merged
}

/// Leading boundary value `lim_{y→0} y^{-ρ+λ} u(y)` from samples `u(y_m)` at
/// `y_m = y0 2^{-m}`, `m = 0..M`, by generalized Richardson extrapolation.
pub fn bv_limit(space: &RankOneSpace, lambda: Complex64, y0: f64, values: &[Complex64]) -> Result<Extrapolated> {
    if lambda.re < 0.25 {
        return Err(Error::Dominance { re_lambda: lambda.re });
    }
    if values.len() < BV_MIN_LEVELS + 1 {
        return Err(Error::InvalidParameter(format!(
            "bv_limit needs at least {} samples, got {}",
            BV_MIN_LEVELS + 1,
            values.len()
        )));
    }
    if !(y0 > 0.0 && y0 < 1.0) {
        return Err(Error::Domain {
            what: "y0",
            value: y0,
            domain: "(0, 1)",
        });
    }
    let scaled: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(m, u)| {
            let y = y0 * 0.5f64.powi(m as i32);
            u * ((lambda - space.rho()) * y.ln()).exp()
        })
        .collect();
    let exps = correction_exponents(lambda, values.len() - 1);
    Ok(richardson(&scaled, &exps, 0.5))
}

/// Both boundary values of `sol` through the connection problem.
pub fn boundary_pair(space: &RankOneSpace, lambda: Complex64, sol: &RadialSolution) -> Result<BoundaryPair> {
    let con = connection_coefficients(space, lambda, sol)?;
    Ok(BoundaryPair {
        a_minus: con.a_minus,
        a_plus: con.a_plus,
        lambda,
        condition: con.condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfunction::CFunction;
    use crate::radial::{frobenius_q, phi_solution, q_solution, FrobeniusSeries, RadialSolution};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn indicial_roots() {
        let s = RankOneSpace::complex_hyperbolic(2).unwrap();
        assert_eq!(indicial(&s, c(0.0, 0.0)), c(0.0, 0.0));
        assert!(indicial(&s, c(2.0 * s.rho(), 0.0)).norm() < 1e-15);
        let lam = c(0.7, -1.1);
        for root in [s.rho() + lam, s.rho() - lam] {
            let v = indicial(&s, root) - s.rho() * s.rho() + lam * lam;
            assert!(v.norm() < 1e-13);
        }
        assert_eq!(indicial_shifted(c(1.0, 0.0), c(-1.0, 0.0)), c(-3.0, 0.0));
        assert!(indicial_shifted(lam, 2.0 * lam).norm() < 1e-15);
    }

    #[test]
    fn recursion_diagonal_is_the_shifted_indicial_polynomial() {
        let s = RankOneSpace::quaternionic_hyperbolic(2).unwrap();
        let lam = c(0.4, 0.9);
        for n in [0u32, 2] {
            let series = FrobeniusSeries::new(&s, lam, n, 1e-16).unwrap();
            let rhs = 2.0 * s.m_alpha() as f64 * (s.rho() + lam) + 4.0 * (n * n) as f64;
            let lhs = -indicial_shifted(lam, c(-2.0, 0.0)) * series.coefficients[2];
            assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
        }
    }

    #[test]
    fn limit_of_pure_power_and_spherical_function() {
        let s = RankOneSpace::real_hyperbolic(2).unwrap();
        let lam = c(0.9, 0.3);
        let y0 = 0.2;
        let levels = 9;
        let ys: Vec<f64> = (0..levels).map(|m| y0 * 0.5f64.powi(m)).collect();
        let pure: Vec<Complex64> = ys.iter().map(|&y| ((s.rho() - lam) * y.ln()).exp()).collect();
        assert!((bv_limit(&s, lam, y0, &pure).unwrap().value - 1.0).norm() < 1e-14);

        let ts: Vec<f64> = ys.iter().map(|y| -y.ln()).collect();
        let phi = phi_solution(&s, lam, &ts).unwrap().values();
        let expected = CFunction::new(s).eval(lam).unwrap();
        let got = bv_limit(&s, lam, y0, &phi).unwrap();
        assert!((got.value - expected).norm() < 1e-6 * expected.norm(), "{} vs {expected}", got.value);

        let q = q_solution(&s, lam, &ts).unwrap().values();
        assert!(bv_limit(&s, lam, y0, &q).unwrap().value.norm() < 1e-6);

        assert!(matches!(bv_limit(&s, c(0.2, 0.0), y0, &pure), Err(Error::Dominance { .. })));
        assert!(bv_limit(&s, lam, y0, &pure[..5]).is_err());
    }

    #[test]
    fn extraction_routes_agree() {
        for s in [RankOneSpace::real_hyperbolic(2).unwrap(), RankOneSpace::octonionic_plane()] {
            for lam in [c(0.3, 0.2), c(1.1, -0.5), c(1.9, 0.0)] {
                let ys: Vec<f64> = (0..9).map(|m| 0.2 * 0.5f64.powi(m)).collect();
                let ts: Vec<f64> = ys.iter().map(|y| -y.ln()).collect();
                let sol = phi_solution(&s, lam, &ts).unwrap();
                let lim = bv_limit(&s, lam, 0.2, &sol.values()).unwrap().value;
                let pair = boundary_pair(&s, lam, &sol).unwrap();
                assert!((lim - pair.a_minus).norm() < 1e-5 * pair.a_minus.norm(), "{s} {lam}: {lim} vs {}", pair.a_minus);
            }
        }
    }

    #[test]
    fn pair_of_basis_and_spherical_function() {
        let s = RankOneSpace::complex_hyperbolic(2).unwrap();
        let lam = c(0.65, 0.4);
        let cf = CFunction::new(s);
        let p = boundary_pair(&s, lam, &phi_solution(&s, lam, &[1.0]).unwrap()).unwrap();
        assert!((p.a_minus - cf.eval(lam).unwrap()).norm() < 1e-10);
        assert!((p.a_plus - cf.eval(-lam).unwrap()).norm() < 1e-10);
        let q = boundary_pair(&s, lam, &q_solution(&s, lam, &[1.0]).unwrap()).unwrap();
        assert!(q.a_minus.norm() < 1e-12 && (q.a_plus - 1.0).norm() < 1e-12);
        assert!(frobenius_q(&s, lam, 1e-16).is_ok());
    }

    #[test]
    fn pair_is_linear() {
        let s = RankOneSpace::quaternionic_hyperbolic(2).unwrap();
        let lam = c(1.2, 0.7);
        let ts = [0.9, 1.5];
        let u = phi_solution(&s, lam, &ts).unwrap();
        let v = q_solution(&s, lam, &ts).unwrap();
        let (a, b) = (c(0.3, -2.0), c(1.5, 0.25));
        let w = RadialSolution::combine(a, &u, b, &v).unwrap();
        let pu = boundary_pair(&s, lam, &u).unwrap();
        let pv = boundary_pair(&s, lam, &v).unwrap();
        let pw = boundary_pair(&s, lam, &w).unwrap();
        let em = pw.a_minus - (a * pu.a_minus + b * pv.a_minus);
        let ep = pw.a_plus - (a * pu.a_plus + b * pv.a_plus);
        assert!(em.norm() < 1e-12 * pw.a_minus.norm().max(1.0));
        assert!(ep.norm() < 1e-12 * pw.a_plus.norm().max(1.0));
    }
}
