use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
///
/// Every operation fails loudly instead of returning a silently degraded
/// value; the variants carry enough context to tell which precondition broke.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} lies outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("pole of order {order} at {at}")]
    Pole { at: Complex64, order: u32 },

    #[error("resonant exponent: 2λ = {two_lambda} is within the exclusion zone of {lattice}")]
    ResonantExponent {
        two_lambda: Complex64,
        lattice: &'static str,
    },

    #[error("ill-conditioned connection problem (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("step size underflow at t = {t}")]
    Stiffness { t: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("extrapolation did not converge (value {value}, error estimate {estimate:e})")]
    Extrapolation { value: Complex64, estimate: f64 },

    #[error("leading exponent not dominant enough for limit extraction (Re λ = {re_lambda} < 0.25)")]
    Dominance { re_lambda: f64 },

    #[error("normalization failed: {0}")]
    Normalization(String),

    #[error("indeterminate numerical rank (singular value gap {gap:e})")]
    IndeterminateRank { gap: f64 },

    #[error("resonance enumeration failed: {0}")]
    Enumeration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
