//! Root data and radial geometry of a rank-one symmetric space.
//!
//! A space is determined by the multiplicities `(m_alpha, m_2alpha)` of the
//! restricted roots and by the Killing-form norm `kappa = <alpha, alpha>`.
//! With `kappa = 1` the operator `L = kappa^{-1} Delta` is the Laplacian and
//! `t` is geodesic distance from the origin. The boundary coordinate is
//! `y = e^{-t}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Rank-one Riemannian symmetric space of noncompact type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneSpace {
    m_alpha: u32,
    m_2alpha: u32,
    kappa: f64,
}

impl RankOneSpace {
    pub fn new(m_alpha: u32, m_2alpha: u32, kappa: f64) -> Result<Self> {
        if m_alpha == 0 {
            return Err(Error::InvalidParameter(
                "multiplicity m_alpha must be positive".into(),
            ));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Killing norm kappa must be positive and finite, got {kappa}"
            )));
        }
        Ok(Self {
            m_alpha,
            m_2alpha,
            kappa,
        })
    }

    /// Real hyperbolic space `H^n`, `n >= 2`.
    pub fn real_hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("H^n needs n >= 2, got {n}")));
        }
        Self::new(n - 1, 0, 1.0)
    }

    /// Complex hyperbolic space `CH^n`, `n >= 2`.
    pub fn complex_hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("CH^n needs n >= 2, got {n}")));
        }
        Self::new(2 * (n - 1), 1, 1.0)
    }

    /// Quaternionic hyperbolic space `HH^n`, `n >= 2`.
    pub fn quaternionic_hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("HH^n needs n >= 2, got {n}")));
        }
        Self::new(4 * (n - 1), 3, 1.0)
    }

    /// The octonionic hyperbolic plane.
    pub fn octonionic_plane() -> Self {
        Self {
            m_alpha: 8,
            m_2alpha: 7,
            kappa: 1.0,
        }
    }

    pub fn with_kappa(self, kappa: f64) -> Result<Self> {
        Self::new(self.m_alpha, self.m_2alpha, kappa)
    }

    pub fn m_alpha(&self) -> u32 {
        self.m_alpha
    }

    pub fn m_2alpha(&self) -> u32 {
        self.m_2alpha
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Half-sum of positive roots, `(m_alpha + 2 m_2alpha) / 2`.
    pub fn rho(&self) -> f64 {
        (self.m_alpha as f64 + 2.0 * self.m_2alpha as f64) / 2.0
    }

    pub fn dim(&self) -> u32 {
        1 + self.m_alpha + self.m_2alpha
    }

    /// Radial density `J(y) = y^{-2 rho} (1 - y^2)^{m_alpha} (1 - y^4)^{m_2alpha}`.
    pub fn density_j(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y < 1.0) {
            return Err(Error::Domain {
                what: "y",
                value: y,
                domain: "(0, 1)",
            });
        }
        Ok(self.density_j_of_t(coord_t_of_y(y)?))
    }

    /// `J` as a function of `t`: `(2 sinh t)^{m_alpha} (2 sinh 2t)^{m_2alpha}`.
    pub(crate) fn density_j_of_t(&self, t: f64) -> f64 {
        (2.0 * t.sinh()).powi(self.m_alpha as i32) * (2.0 * (2.0 * t).sinh()).powi(self.m_2alpha as i32)
    }

    /// `d/dt log J = m_alpha coth t + 2 m_2alpha coth 2t`.
    pub fn log_density_rate(&self, t: f64) -> f64 {
        self.m_alpha as f64 / t.tanh() + 2.0 * self.m_2alpha as f64 / (2.0 * t).tanh()
    }

    /// Family identifier as accepted by [`FromStr`], when the space is a named one.
    pub fn family_id(&self) -> String {
        let (ma, m2) = (self.m_alpha, self.m_2alpha);
        match m2 {
            0 => match ma {
                1 => "h2".into(),
                2 => "h3".into(),
                _ => format!("hn:{}", ma + 1),
            },
            1 if ma % 2 == 0 => format!("chn:{}", ma / 2 + 1),
            3 if ma % 4 == 0 => format!("hhn:{}", ma / 4 + 1),
            7 if ma == 8 => "oh2".into(),
            _ => format!("m:{ma},{m2}"),
        }
    }
}

impl fmt::Display for RankOneSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (m_alpha={}, m_2alpha={}, kappa={})",
            self.family_id(),
            self.m_alpha,
            self.m_2alpha,
            self.kappa
        )
    }
}

/// Parses `h2`, `h3`, `hn:<n>`, `chn:<n>`, `hhn:<n>`, `oh2`.
impl FromStr for RankOneSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown space identifier `{s}`"));
        match s {
            "h2" => return Self::real_hyperbolic(2),
            "h3" => return Self::real_hyperbolic(3),
            "oh2" => return Ok(Self::octonionic_plane()),
            _ => {}
        }
        let (family, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        match family {
            "hn" => Self::real_hyperbolic(n),
            "chn" => Self::complex_hyperbolic(n),
            "hhn" => Self::quaternionic_hyperbolic(n),
            _ => Err(bad()),
        }
    }
}

pub fn coord_y_of_t(t: f64) -> Result<f64> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(Error::Domain {
            what: "t",
            value: t,
            domain: "(0, inf)",
        });
    }
    Ok((-t).exp())
}

pub fn coord_t_of_y(y: f64) -> Result<f64> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain {
            what: "y",
            value: y,
            domain: "(0, 1)",
        });
    }
    Ok(-y.ln())
}
