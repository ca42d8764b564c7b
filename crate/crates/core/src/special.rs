//! Complex Gamma-family functions used by the c-function.
//!
//! `log_gamma` is a Lanczos approximation (g = 7, nine terms) on
//! `Re z >= 1/2`, continued to the left half-plane by reflection. The branch
//! is the one analytic on `C \ (-inf, 0]` and real on the positive axis.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Distance below which an argument is treated as sitting exactly on a pole.
pub(crate) const POLE_SNAP: f64 = 1e-12;

/// If `z` is (numerically) a nonpositive integer `-n`, returns `n`.
pub fn nonpositive_integer(z: Complex64) -> Option<u64> {
    if z.im.abs() > POLE_SNAP || z.re > POLE_SNAP {
        return None;
    }
    let n = (-z.re).round();
    ((z.re + n).abs() <= POLE_SNAP * (1.0 + n)).then_some(n as u64)
}

fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        a += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    HALF_LN_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// `sin(pi z)` with the argument reduced by the nearest integer, so the
/// relative accuracy holds near the zeros.
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let s = (PI * (z - n)).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

/// Principal logarithm of `sin(pi z)`, safe against overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = PI * z;
    let raw = if w.im.abs() < 30.0 {
        sin_pi(z).ln()
    } else if w.im > 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i), and e^{2iw} is tiny here
        -Complex64::i() * w + (Complex64::new(-1.0, 0.0) + (Complex64::i() * 2.0 * w).exp()).ln()
            - Complex64::new(LN_2, PI / 2.0)
    } else {
        Complex64::i() * w + (Complex64::new(1.0, 0.0) - (-Complex64::i() * 2.0 * w).exp()).ln()
            - Complex64::new(LN_2, PI / 2.0)
    };
    let turns = (raw.im / (2.0 * PI)).round();
    Complex64::new(raw.re, raw.im - 2.0 * PI * turns)
}

/// Log-Gamma on the standard branch (analytic off the negative real axis).
///
/// Fails with [`Error::Pole`] at nonpositive integers.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole { at: z, order: 1 });
    }
    if z.re >= 0.5 {
        return Ok(lanczos_log_gamma(z));
    }
    if z.im == 0.0 {
        // On the real axis take the limit from above: Im log Gamma(x + i0) = -pi ceil(-x).
        let x = z.re;
        let modulus = LN_PI - sin_pi(Complex64::new(x, 0.0)).re.abs().ln() - lanczos_log_gamma(Complex64::new(1.0 - x, 0.0)).re;
        return Ok(Complex64::new(modulus, -PI * (-x).ceil().max(0.0)));
    }
    let reflected = LN_PI - ln_sin_pi(z) - lanczos_log_gamma(1.0 - z);
    // Principal Log sin(pi z) jumps across Re z = -1/2 - 2j; restore continuity.
    let m = (0.5 * z.re + 0.25).floor();
    let shift = if z.im >= 0.0 { m } else { -m };
    Ok(reflected + Complex64::new(0.0, 2.0 * PI * shift))
}

/// Gamma function.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

fn cot_pi(z: Complex64) -> Complex64 {
    let w = PI * (z - z.re.round());
    let i = Complex64::i();
    if w.im >= 0.0 {
        let e = (2.0 * i * w).exp();
        -i * (1.0 + e) / (1.0 - e)
    } else {
        let e = (-2.0 * i * w).exp();
        i * (1.0 + e) / (1.0 - e)
    }
}

/// Digamma function psi = Gamma'/Gamma.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole { at: z, order: 1 });
    }
    if z.re < 0.5 {
        return Ok(digamma(1.0 - z)? - PI * cot_pi(z));
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Bernoulli tail B_{2k} / (2k z^{2k}), k = 1..7
    const TAIL: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for c in TAIL {
        series += c * p;
        p *= inv2;
    }
    Ok(acc + z.ln() - 0.5 * inv - series)
}

/// Leading Laurent term of `Gamma(z0 + eps) = exp(log_coeff) * eps^order + ...`.
///
/// At a pole `z0 = -n` the order is `-1` and the coefficient is `(-1)^n / n!`;
/// elsewhere the order is zero and the coefficient is `Gamma(z0)` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaLaurent {
    pub order: i32,
    pub log_coeff: Complex64,
}

pub fn gamma_laurent(z0: Complex64) -> GammaLaurent {
    match nonpositive_integer(z0) {
        Some(n) => {
            let log_fact = lanczos_log_gamma(Complex64::new(n as f64 + 1.0, 0.0));
            let sign = if n % 2 == 1 { PI } else { 0.0 };
            GammaLaurent {
                order: -1,
                log_coeff: Complex64::new(-log_fact.re, sign),
            }
        }
        None => GammaLaurent {
            order: 0,
            log_coeff: log_gamma(z0).expect("non-pole argument"),
        },
    }
}

/// Gauss series 2F1(a, b; c; z) for |z| well inside the unit disk.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..10_000u32 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && k > 2.0 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Stirling series after an upward shift; the shift uses a sum of principal
    /// logarithms, which is analytic off (-inf, 0] and so selects the same branch.
    fn stirling_oracle(z: Complex64) -> Complex64 {
        let mut w = z;
        let mut shift = Complex64::new(0.0, 0.0);
        while w.norm() < 40.0 || w.re < 20.0 {
            shift += w.ln();
            w += 1.0;
        }
        let inv = 1.0 / w;
        let inv2 = inv * inv;
        let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
        (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift
    }

    #[test]
    fn log_gamma_trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!((log_gamma(c(4.0, 0.0)).unwrap() - c(6f64.ln(), 0.0)).norm() < 1e-13);
        let g = (2.0 * log_gamma(c(0.5, 0.0)).unwrap()).exp();
        assert!((g - c(PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_matches_stirling_oracle_across_the_plane() {
        let mut worst: f64 = 0.0;
        for i in -12..=12 {
            for j in -12..=12 {
                let z = c(i as f64 * 0.83 + 0.11, j as f64 * 0.97 + 0.03);
                if nonpositive_integer(z).is_some() {
                    continue;
                }
                let diff = log_gamma(z).unwrap() - stirling_oracle(z);
                worst = worst.max(diff.norm());
            }
        }
        assert!(worst < 1e-12, "worst abs deviation {worst:e}");
    }

    #[test]
    fn log_gamma_negative_axis_branch_from_above() {
        // Gamma(-2.5) = -(8/15) sqrt(pi); above the cut Im log Gamma(x) = -3 pi.
        let v = log_gamma(c(-2.5, 0.0)).unwrap();
        let expected = c((8.0 / 15.0 * PI.sqrt()).ln(), -3.0 * PI);
        assert!((v - expected).norm() < 1e-12, "{v}");
    }

    #[test]
    fn log_gamma_pole_is_signalled() {
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { order: 1, .. })));
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn large_imaginary_part_does_not_overflow() {
        let z = c(-3.3, 150.0);
        let diff = log_gamma(z).unwrap() - stirling_oracle(z);
        assert!(diff.norm() < 1e-10, "{diff}");
    }

    #[test]
    fn digamma_matches_finite_difference_of_log_gamma() {
        for z in [c(0.3, 0.2), c(-1.7, 0.4), c(5.0, -3.0), c(-0.4, -2.2), c(2.5, 0.0)] {
            let h = 1e-5;
            let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
            let d = digamma(z).unwrap();
            assert!((fd - d).norm() < 1e-8 * (1.0 + d.norm()), "z={z} {fd} vs {d}");
        }
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap() + euler).norm() < 1e-14);
    }

    #[test]
    fn laurent_at_poles() {
        let l = gamma_laurent(c(-3.0, 0.0));
        assert_eq!(l.order, -1);
        // residue of Gamma at -3 is -1/6
        assert!((l.log_coeff.exp() - c(-1.0 / 6.0, 0.0)).norm() < 1e-14);
        let eps = 1e-7;
        let near = gamma(c(-3.0 + eps, 0.0)).unwrap() * eps;
        assert!((near - l.log_coeff.exp()).norm() < 1e-6);
        assert_eq!(gamma_laurent(c(2.0, 0.0)).order, 0);
    }

    #[test]
    fn hypergeometric_series_elementary_cases() {
        // 2F1(1, 1; 2; z) = -ln(1 - z) / z
        let z = c(0.3, -0.1);
        let v = hyp2f1_series(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z);
        let expected = -(1.0 - z).ln() / z;
        assert!((v - expected).norm() < 1e-15);
    }
}
