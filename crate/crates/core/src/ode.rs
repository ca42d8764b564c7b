//! Adaptive Runge-Kutta-Fehlberg 7(8) integrator for two-component complex
//! systems. The solution is advanced with the eighth-order weights; the
//! embedded seventh-order pair supplies the local error estimate.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type State = [Complex64; 2];

const STAGES: usize = 13;

const C: [f64; STAGES] = [
    0.0,
    2.0 / 27.0,
    1.0 / 9.0,
    1.0 / 6.0,
    5.0 / 12.0,
    0.5,
    5.0 / 6.0,
    1.0 / 6.0,
    2.0 / 3.0,
    1.0 / 3.0,
    1.0,
    0.0,
    1.0,
];

const A: [[f64; 12]; STAGES] = [
    [0.0; 12],
    [2.0 / 27.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 36.0, 1.0 / 12.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 24.0, 0.0, 1.0 / 8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0, 0.0, 0.0, 0.0, 0.0],
    [
        -91.0 / 108.0,
        0.0,
        0.0,
        23.0 / 108.0,
        -976.0 / 135.0,
        311.0 / 54.0,
        -19.0 / 60.0,
        17.0 / 6.0,
        -1.0 / 12.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2383.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -301.0 / 82.0,
        2133.0 / 4100.0,
        45.0 / 82.0,
        45.0 / 164.0,
        18.0 / 41.0,
        0.0,
        0.0,
    ],
    [3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0, 3.0 / 41.0, 6.0 / 41.0, 0.0, 0.0],
    [
        -1777.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -289.0 / 82.0,
        2193.0 / 4100.0,
        51.0 / 82.0,
        33.0 / 164.0,
        12.0 / 41.0,
        0.0,
        1.0,
    ],
];

// eighth-order weights
const B: [f64; STAGES] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    34.0 / 105.0,
    9.0 / 35.0,
    9.0 / 35.0,
    9.0 / 280.0,
    9.0 / 280.0,
    0.0,
    41.0 / 840.0,
    41.0 / 840.0,
];

const ERR_WEIGHT: f64 = 41.0 / 840.0;

/// Outcome of an integration run.
#[derive(Debug, Clone)]
pub(crate) struct Trajectory {
    pub states: Vec<State>,
    /// Largest accepted local error estimate, relative to the state norm.
    pub max_local_error: f64,
}

fn norm(y: &State) -> f64 {
    y[0].norm().max(y[1].norm())
}

/// Integrates `y' = rhs(t, y)` from `(t0, y0)` and reports the state at each
/// output time. Outputs must be monotone in the direction of integration.
pub(crate) fn integrate<F>(rhs: F, t0: f64, y0: State, outputs: &[f64], rtol: f64) -> Result<Trajectory>
where
    F: Fn(f64, &State) -> State,
{
    let mut states = Vec::with_capacity(outputs.len());
    let mut t = t0;
    let mut y = y0;
    let mut max_local_error: f64 = 0.0;
    let Some(&last) = outputs.last() else {
        return Ok(Trajectory {
            states,
            max_local_error,
        });
    };
    let dir = if last >= t0 { 1.0 } else { -1.0 };
    let mut h = dir * (0.05 * (last - t0).abs()).clamp(1e-6, 0.05).min(0.05 * t0.abs().max(1e-3));
    let mut k = [[Complex64::new(0.0, 0.0); 2]; STAGES];

    for &target in outputs {
        debug_assert!(dir * (target - t) >= -1e-15, "outputs must be monotone");
        while dir * (target - t) > 0.0 {
            let remaining = target - t;
            let clipped = remaining.abs() <= h.abs();
            let step = if clipped { remaining } else { h };

            for s in 0..STAGES {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        ys[0] += step * a * kj[0];
                        ys[1] += step * a * kj[1];
                    }
                }
                k[s] = rhs(t + C[s] * step, &ys);
            }
            let mut y_new = y;
            for (s, ks) in k.iter().enumerate() {
                if B[s] != 0.0 {
                    y_new[0] += step * B[s] * ks[0];
                    y_new[1] += step * B[s] * ks[1];
                }
            }
            let err = [
                step * ERR_WEIGHT * (k[0][0] + k[10][0] - k[11][0] - k[12][0]),
                step * ERR_WEIGHT * (k[0][1] + k[10][1] - k[11][1] - k[12][1]),
            ];
            let scale = 1e-300 + rtol * norm(&y).max(norm(&y_new));
            let ratio = norm(&err) / scale;
            if !ratio.is_finite() {
                return Err(Error::Stiffness { t });
            }
            let factor = if ratio == 0.0 {
                5.0
            } else {
                (0.9 * ratio.powf(-1.0 / 8.0)).clamp(0.2, 5.0)
            };
            if ratio <= 1.0 {
                t = if clipped { target } else { t + step };
                y = y_new;
                max_local_error = max_local_error.max(ratio * rtol);
                if !clipped || factor < 1.0 {
                    h = step * factor;
                }
            } else {
                h = step * factor;
            }
            if h.abs() < 1e-14 * t.abs().max(1e-8) {
                return Err(Error::Stiffness { t });
            }
        }
        states.push(y);
    }
    Ok(Trajectory {
        states,
        max_local_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableau_consistency() {
        for s in 0..STAGES {
            let row: f64 = A[s].iter().sum();
            assert!((row - C[s]).abs() < 1e-14, "row {s}");
        }
        assert!((B.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn harmonic_oscillator_forward_and_backward() {
        let omega = Complex64::new(1.3, 0.2);
        let rhs = |_t: f64, y: &State| [y[1], -omega * omega * y[0]];
        let y0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let outs = [0.5, 1.0, 7.0];
        let traj = integrate(rhs, 0.0, y0, &outs, 1e-12).unwrap();
        for (t, y) in outs.iter().zip(&traj.states) {
            let exact = (omega * *t).cos();
            assert!((y[0] - exact).norm() < 1e-10 * exact.norm().max(1.0), "t={t}");
        }
        let back = integrate(rhs, 7.0, traj.states[2], &[1.0], 1e-12).unwrap();
        assert!((back.states[0][0] - traj.states[1][0]).norm() < 1e-9);
    }

    #[test]
    fn zero_initial_data_stays_zero() {
        let rhs = |t: f64, y: &State| [y[1], -y[0] / t];
        let z = [Complex64::new(0.0, 0.0); 2];
        let traj = integrate(rhs, 1.0, z, &[2.0, 3.0], 1e-12).unwrap();
        assert!(traj.states.iter().all(|s| s[0] == z[0] && s[1] == z[1]));
    }
}
