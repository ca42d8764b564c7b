//! The Harish-Chandra c-function of a rank-one space, continued meromorphically:
//!
//! ```text
//! c(λ) = c0 Γ(λ) 2^{-λ} / ( Γ((m_α/2 + 1 + λ)/2) Γ((m_α/2 + m_2α + λ)/2) ),   c(ρ) = 1.
//! ```
//!
//! Evaluation happens in log space. At lattice points where numerator and
//! denominator Gamma factors have poles, the leading Laurent term is assembled
//! from the residues of the individual factors, so zeros, poles and removable
//! points are classified exactly instead of being sampled.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

pub use crate::special::log_gamma;
use crate::error::{Error, Result};
use crate::space::RankOneSpace;
use crate::special::{digamma, gamma_laurent, nonpositive_integer, POLE_SNAP};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Leading Laurent term `coeff * eps^order` of a function at a point.
///
/// Positive order is a zero of that order, negative order a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Laurent {
    pub order: i32,
    pub coeff: Complex64,
}

impl Laurent {
    /// Finite value at the point, or a pole signal.
    pub fn value(&self, at: Complex64) -> Result<Complex64> {
        match self.order {
            o if o < 0 => Err(Error::Pole {
                at,
                order: (-o) as u32,
            }),
            0 => Ok(self.coeff),
            _ => Ok(Complex64::new(0.0, 0.0)),
        }
    }
}

/// Normalized c-function evaluator for one space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CFunction {
    space: RankOneSpace,
    log_c0: Complex64,
}

impl CFunction {
    pub fn new(space: RankOneSpace) -> Self {
        let mut cf = Self {
            space,
            log_c0: Complex64::new(0.0, 0.0),
        };
        let at_rho = cf.laurent(Complex64::new(space.rho(), 0.0));
        debug_assert_eq!(at_rho.order, 0);
        cf.log_c0 = -at_rho.coeff.ln();
        cf
    }

    pub fn space(&self) -> &RankOneSpace {
        &self.space
    }

    pub fn c0(&self) -> Complex64 {
        self.log_c0.exp()
    }

    fn shifts(&self) -> (f64, f64) {
        let ma = self.space.m_alpha() as f64;
        (ma / 2.0 + 1.0, ma / 2.0 + self.space.m_2alpha() as f64)
    }

    /// Leading Laurent term of `c` at `lambda` in the variable `lambda - lambda0`.
    pub fn laurent(&self, lambda: Complex64) -> Laurent {
        let (a, b) = self.shifts();
        // snap once in the λ-plane so the three Gamma factors agree on the lattice point
        let lambda = self
            .nearby_lattice_point(lambda, POLE_SNAP * (1.0 + lambda.norm()))
            .unwrap_or(lambda);
        let num = gamma_laurent(lambda);
        let den_a = gamma_laurent((lambda + a) / 2.0);
        let den_b = gamma_laurent((lambda + b) / 2.0);
        let order = num.order - den_a.order - den_b.order;
        // Γ(u0 + eps/2) = C (eps/2)^o contributes C 2^{-o} per unit eps.
        let log_coeff = self.log_c0 + num.log_coeff - lambda * LN_2
            - (den_a.log_coeff - den_a.order as f64 * LN_2)
            - (den_b.log_coeff - den_b.order as f64 * LN_2);
        Laurent {
            order,
            coeff: log_coeff.exp(),
        }
    }

    /// `c(lambda)`; poles are reported with their order.
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        self.laurent(lambda).value(lambda)
    }

    /// Nonpositive-integer lattice point of one of the Gamma arguments within
    /// `radius` of `lambda`, mapped back to the lambda-plane.
    fn nearby_lattice_point(&self, lambda: Complex64, radius: f64) -> Option<Complex64> {
        let (a, b) = self.shifts();
        let snap = |u: Complex64| {
            let n = (-u.re).round();
            (n >= 0.0 && (u + n).norm() < radius).then_some(-n)
        };
        if let Some(n) = snap(lambda) {
            return Some(Complex64::new(n, 0.0));
        }
        for shift in [a, b] {
            if let Some(n) = snap((lambda + shift) / 2.0) {
                return Some(Complex64::new(2.0 * n - shift, 0.0));
            }
        }
        None
    }

    fn log_derivative(&self, lambda: Complex64) -> Result<Complex64> {
        let (a, b) = self.shifts();
        Ok(digamma(lambda)? - LN_2 - 0.5 * digamma((lambda + a) / 2.0)? - 0.5 * digamma((lambda + b) / 2.0)?)
    }

    /// Derivative `c'(lambda)`.
    ///
    /// Away from the Gamma lattice this is `c * (log c)'` with digamma terms.
    /// Near a lattice point where `c` is holomorphic (zeros and removable
    /// cancellations) the logarithmic derivative degenerates, so the Cauchy
    /// integral over a circle of radius 0.1 is used instead.
    pub fn derivative(&self, lambda: Complex64) -> Result<Complex64> {
        let local = self.laurent(lambda);
        if local.order < 0 {
            return Err(Error::Pole {
                at: lambda,
                order: (1 - local.order) as u32,
            });
        }
        if let Some(p) = self.nearby_lattice_point(lambda, 1e-3) {
            if self.laurent(p).order >= 0 {
                return Ok(self.cauchy_derivative(lambda, 0.1));
            }
        }
        Ok(local.coeff * self.log_derivative(lambda)?)
    }

    fn cauchy_derivative(&self, center: Complex64, radius: f64) -> Complex64 {
        const NODES: usize = 64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..NODES {
            let u = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / NODES as f64);
            let v = self.eval(center + radius * u).expect("circle avoids poles of c");
            acc += v / u;
        }
        acc / (NODES as f64 * radius)
    }

    /// Laurent term of `zeta -> c(sign * i * zeta)` at `zeta`.
    pub(crate) fn rotated_laurent(&self, zeta: Complex64, sign: f64) -> Laurent {
        let l = self.laurent(sign * I * zeta);
        Laurent {
            order: l.order,
            coeff: l.coeff * (sign * I).powi(l.order),
        }
    }

    /// Laurent term of `czz(zeta) = c(i zeta) c(-i zeta)` at `zeta`.
    pub fn czz_laurent(&self, zeta: Complex64) -> Laurent {
        let p = self.rotated_laurent(zeta, 1.0);
        let m = self.rotated_laurent(zeta, -1.0);
        Laurent {
            order: p.order + m.order,
            coeff: p.coeff * m.coeff,
        }
    }

    /// `c(i zeta) c(-i zeta)`, even in `zeta`.
    pub fn czz(&self, zeta: Complex64) -> Result<Complex64> {
        self.czz_laurent(zeta).value(zeta)
    }

    /// `d/dzeta [c(i zeta) c(-i zeta)]`.
    pub fn czz_derivative(&self, zeta: Complex64) -> Result<Complex64> {
        let plus = self.eval(I * zeta)?;
        let minus = self.eval(-I * zeta)?;
        let dplus = self.derivative(I * zeta)?;
        let dminus = self.derivative(-I * zeta)?;
        Ok(I * (dplus * minus - plus * dminus))
    }

    /// Plancherel density `1 / |c(i zeta)|^2` for real `zeta > 0`.
    ///
    /// The spectral measure of the shifted Laplacian carries the additional
    /// factor `1 / (4 pi kappa zeta)`.
    pub fn plancherel_density(&self, zeta: f64) -> Result<f64> {
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::Domain {
                what: "zeta",
                value: zeta,
                domain: "(0, inf)",
            });
        }
        Ok(1.0 / self.eval(Complex64::new(0.0, zeta))?.norm_sqr())
    }

    /// Step `j` of the zero progression `zeta = i (rho + j k)` of `czz` in the
    /// upper half-plane, or `None` when `czz` has no zeros.
    pub fn zero_step(&self) -> Option<f64> {
        match (self.space.m_2alpha(), self.space.m_alpha() % 2) {
            (0, 0) => None,
            (0, _) => Some(1.0),
            _ => Some(2.0),
        }
    }

    /// Predicted zeros of `czz` in `Im zeta > 0`, in increasing order.
    pub fn predicted_zeros(&self, count: usize) -> Vec<Complex64> {
        match self.zero_step() {
            None => Vec::new(),
            Some(j) => (0..count)
                .map(|k| Complex64::new(0.0, self.space.rho() + j * k as f64))
                .collect(),
        }
    }

    /// Order of `czz` at a point of the imaginary axis (zero when regular).
    pub fn czz_order(&self, zeta: Complex64) -> i32 {
        self.czz_laurent(zeta).order
    }

    /// Whether `lambda` sits on a Gamma lattice point of this c-function.
    pub fn on_lattice(&self, lambda: Complex64) -> bool {
        let (a, b) = self.shifts();
        nonpositive_integer(lambda).is_some()
            || nonpositive_integer((lambda + a) / 2.0).is_some()
            || nonpositive_integer((lambda + b) / 2.0).is_some()
    }
}
