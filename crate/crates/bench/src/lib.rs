//! Benchmark fixtures for `hyperscatter`.

use hyperscatter::RankOneSpace;
use num_complex::Complex64;

/// The families timed by every benchmark.
pub fn families() -> Vec<RankOneSpace> {
    ["h2", "h3", "chn:2", "hhn:2", "oh2"]
        .iter()
        .map(|s| s.parse().expect("named family"))
        .collect()
}

/// A fixed spectral parameter off every pole lattice.
pub fn lambda() -> Complex64 {
    Complex64::new(0.9, 0.35)
}
