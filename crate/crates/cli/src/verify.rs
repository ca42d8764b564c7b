use std::f64::consts::TAU;

use hyperscatter::boundary::{boundary_pair, bv_limit};
use hyperscatter::model_h2::{
    distance, h2, poisson_mode_solution, poisson_transform, resolvent_difference_quadrature, residue_rank, DiskPoint,
    FourierSeries,
};
use hyperscatter::radial::{eval_phi, eval_q, wronskian_exact, wronskian_limit};
use hyperscatter::resolvent::resolvent_difference;
use hyperscatter::resonances::{contour_residue, enumerate};
use hyperscatter::scattering::{axis_poles, classify, ktype_eigenvalue, residue_relation_check, scalar};
use hyperscatter::{CFunction, RankOneSpace, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Suite;
use crate::table::{Cell, Table};

/// Lattice-avoiding 5×5 grid of spectral parameters.
pub const LAMBDA_RE: [f64; 5] = [0.3, 0.9, 1.6, 2.1, 2.7];
pub const LAMBDA_IM: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
pub const CONNECTION_T: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

pub fn lambda_grid() -> Vec<Complex64> {
    LAMBDA_RE
        .iter()
        .flat_map(|&re| LAMBDA_IM.iter().map(move |&im| Complex64::new(re, im)))
        .collect()
}

pub fn families() -> Vec<RankOneSpace> {
    ["h2", "h3", "chn:2", "hhn:2", "oh2"]
        .iter()
        .map(|s| s.parse().expect("named family"))
        .collect()
}

enum Bound {
    Below(f64),
    AtLeast(f64),
}

struct Check {
    space: String,
    case: String,
    value: Result<f64>,
    bound: Bound,
}

impl Check {
    fn below(space: &RankOneSpace, case: String, value: Result<f64>, tol: f64) -> Self {
        Self {
            space: space.family_id(),
            case,
            value,
            bound: Bound::Below(tol),
        }
    }

    fn at_least(space: &RankOneSpace, case: String, value: Result<f64>, min: f64) -> Self {
        Self {
            space: space.family_id(),
            case,
            value,
            bound: Bound::AtLeast(min),
        }
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn connection(space: &RankOneSpace) -> Vec<Check> {
    let cf = CFunction::new(*space);
    let mut out = Vec::new();
    for l in lambda_grid() {
        for t in CONNECTION_T {
            let value = (|| {
                let phi = eval_phi(space, l, t)?;
                let conn = cf.eval(-l)? * eval_q(space, l, t)? + cf.eval(l)? * eval_q(space, -l, t)?;
                Ok(rel(conn, phi))
            })();
            out.push(Check::below(space, format!("lambda={l} t={t}"), value, 1e-8));
        }
    }
    out
}

fn wronskian(space: &RankOneSpace) -> Vec<Check> {
    lambda_grid()
        .into_iter()
        .map(|l| {
            let value = (|| Ok(rel(wronskian_limit(space, l)?.value, wronskian_exact(space, l)?)))();
            Check::below(space, format!("lambda={l}"), value, 1e-6)
        })
        .collect()
}

fn h3_oracles() -> Vec<Check> {
    let s = RankOneSpace::real_hyperbolic(3).expect("H^3");
    let cf = CFunction::new(s);
    let mut out = Vec::new();
    for l in [Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0)] {
        for t in [0.5, 1.0, 3.0f64] {
            let y = (-t).exp();
            let phi = (l * t).sinh() / (l * t.sinh());
            let q = (y.ln() * (1.0 + l)).exp() / (1.0 - y * y);
            out.push(Check::below(&s, format!("phi lambda={l} t={t}"), eval_phi(&s, l, t).map(|v| rel(v, phi)), 1e-10));
            out.push(Check::below(&s, format!("Q lambda={l} t={t}"), eval_q(&s, l, t).map(|v| rel(v, q)), 1e-10));
        }
        out.push(Check::below(&s, format!("c lambda={l}"), cf.eval(l).map(|v| rel(v, 1.0 / l)), 1e-10));
    }
    out
}

/// `i(ρ + jk)` from the root multiplicities alone.
fn progression(space: &RankOneSpace, count: usize) -> Vec<Complex64> {
    let step = match (space.m_2alpha(), space.m_alpha() % 2) {
        (0, 0) => return Vec::new(),
        (0, _) => 1.0,
        _ => 2.0,
    };
    (0..count).map(|k| Complex64::new(0.0, space.rho() + step * k as f64)).collect()
}

fn resonance_table(space: &RankOneSpace) -> Vec<Check> {
    let count = if space.family_id() == "h2" { 10 } else { 5 };
    let expected = progression(space, count);
    match enumerate(space, count) {
        Err(e) => vec![Check::below(space, "enumerate".into(), Err(e), 0.0)],
        Ok(got) if expected.is_empty() => {
            vec![Check::below(space, "no resonances".into(), Ok(got.len() as f64), 0.5)]
        }
        Ok(got) => {
            let mut out = vec![Check::below(
                space,
                "count".into(),
                Ok((got.len() as f64 - expected.len() as f64).abs()),
                0.5,
            )];
            for (r, e) in got.iter().zip(&expected) {
                out.push(Check::below(space, format!("k={}", r.k), Ok((r.zeta - e).norm()), 1e-10));
            }
            out
        }
    }
}

fn random_disk_point(rng: &mut ChaCha8Rng) -> DiskPoint {
    DiskPoint::new(Complex64::from_polar(0.7 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())).expect("inside")
}

/// Random `ζ` with `|ζ| <= 2`, away from the origin and from the imaginary
/// half-lattice where the kernels are singular.
fn random_zeta(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::from_polar(2.0 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
        let lattice = Complex64::new(0.0, (2.0 * z.im).round() / 2.0);
        if z.norm() > 0.1 && (z - lattice).norm() > 0.05 {
            return z;
        }
    }
}

fn quadrature() -> Vec<Check> {
    let s = h2();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    (0..10)
        .map(|j| {
            let zeta = random_zeta(&mut rng);
            let (z1, z2) = (random_disk_point(&mut rng), random_disk_point(&mut rng));
            let value = (|| {
                let lhs = resolvent_difference(&s, zeta, distance(z1, z2))?;
                let rhs = resolvent_difference_quadrature(zeta, z1, z2)?;
                if rhs.nodes > 2048 {
                    return Ok(f64::INFINITY);
                }
                Ok(rel(rhs.value, lhs))
            })();
            Check::below(&s, format!("sample {j} zeta={zeta:.4}"), value, 1e-5)
        })
        .collect()
}

fn fatou() -> Vec<Check> {
    let s = h2();
    let cf = CFunction::new(s);
    let beta = 0.3;
    let mut out = Vec::new();
    for l in [Complex64::new(0.7, 0.0), Complex64::new(1.1, 0.0)] {
        let c = cf.eval(l).expect("regular");
        for n in -4..=4 {
            let f = FourierSeries::mode(n);
            let extrapolated = (|| {
                let values = (0..=8)
                    .map(|m| {
                        let t = -(0.2 * 0.5f64.powi(m)).ln();
                        Ok(poisson_transform(l, &f, DiskPoint::polar(t, beta)?)?.value)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let limit = bv_limit(&s, l, 0.2, &values)?.value;
                Ok(rel(limit, c * Complex64::from_polar(1.0, n as f64 * beta)))
            })();
            out.push(Check::below(&s, format!("limit lambda={l} n={n}"), extrapolated, 1e-3));
            let connected = (|| {
                let sol = poisson_mode_solution(l, n, &[1.0])?;
                Ok(rel(boundary_pair(&s, l, &sol)?.a_minus, c))
            })();
            out.push(Check::below(&s, format!("connection lambda={l} n={n}"), connected, 1e-6));
        }
    }
    out
}

fn scattering(space: &RankOneSpace) -> Vec<Check> {
    let mut out = Vec::new();
    let inversion = (|| {
        let mut worst = 0.0f64;
        for a in 0..10 {
            for b in 0..10 {
                let z = Complex64::new(-2.25 + 0.5 * a as f64, -2.2 + 0.45 * b as f64);
                worst = worst.max((scalar(space, z)? * scalar(space, -z)? - 1.0).norm());
            }
        }
        Ok(worst)
    })();
    out.push(Check::below(space, "inversion grid 10x10".into(), inversion, 1e-10));
    for x in [0.5, 1.0, 3.0] {
        let v = scalar(space, Complex64::new(x, 0.0)).map(|s| (s.norm() - 1.0).abs());
        out.push(Check::below(space, format!("unitarity zeta={x}"), v, 1e-10));
    }
    match space.family_id().as_str() {
        "h3" => {
            for z in [Complex64::new(0.4, 0.0), Complex64::new(1.0, -2.0), Complex64::new(0.0, 0.7)] {
                let v = scalar(space, z).map(|s| (s + 1.0).norm());
                out.push(Check::below(space, format!("minus one zeta={z}"), v, 1e-12));
            }
        }
        "h2" => {
            for z in [Complex64::new(0.8, 0.0), Complex64::new(1.2, 0.0), Complex64::new(0.9, 0.2)] {
                let v = (|| Ok(rel(ktype_eigenvalue(z, 0)?, scalar(space, z)?)))();
                out.push(Check::below(space, format!("ktype n=0 zeta={z}"), v, 1e-8));
            }
        }
        _ => {}
    }
    out
}

fn rank() -> Vec<Check> {
    let s = h2();
    let mut out = Vec::new();
    for k in 0..3u32 {
        match residue_rank(k, 24, 32, 1e-9) {
            Ok(est) => {
                let miss = (est.rank as f64 - (2 * k + 1) as f64).abs();
                out.push(Check::below(&s, format!("rank k={k}"), Ok(miss), 0.5));
                out.push(Check::at_least(&s, format!("gap k={k}"), Ok(est.gap), 1e6));
            }
            Err(e) => out.push(Check::below(&s, format!("rank k={k}"), Err(e), 0.5)),
        }
    }
    out
}

fn residue() -> Vec<Check> {
    let s = h2();
    let recs = match enumerate(&s, 2) {
        Ok(r) => r,
        Err(e) => return vec![Check::below(&s, "enumerate".into(), Err(e), 0.0)],
    };
    let mut out = Vec::new();
    for rec in recs {
        let contour = contour_residue(&s, rec.zeta, 1.0);
        out.push(Check::below(
            &s,
            format!("contour k={}", rec.k),
            contour.as_ref().map(|c| rel(c.residue, rec.residue_scalar)).map_err(Clone::clone),
            1e-6,
        ));
        out.push(Check::below(
            &s,
            format!("simplicity k={}", rec.k),
            contour.map(|c| c.second_moment.norm() / c.residue.norm()),
            1e-8,
        ));
        out.push(Check::below(
            &s,
            format!("relation k={}", rec.k),
            residue_relation_check(&rec).map(|r| r.relative_gap),
            1e-8,
        ));
    }
    out
}

fn poles(space: &RankOneSpace) -> Vec<Check> {
    let run = || -> Result<(f64, f64, f64)> {
        let found = axis_poles(space, 5.0)?;
        let res = enumerate(space, 12)?;
        let unclassified = found.iter().filter(|&&p| classify(space, &res, p).is_none()).count();
        let upper: Vec<Complex64> = found.iter().copied().filter(|p| p.im > 0.0).collect();
        let listed: Vec<Complex64> = res.iter().map(|r| r.zeta).filter(|z| z.im <= 5.0).collect();
        let mismatch = upper.len() != listed.len() || upper.iter().zip(&listed).any(|(a, b)| (a - b).norm() > 1e-10);
        let at_zero = found.iter().any(|p| p.norm() == 0.0);
        Ok((unclassified as f64, mismatch as u8 as f64, at_zero as u8 as f64))
    };
    match run() {
        Ok((u, m, z)) => vec![
            Check::below(space, "unclassified poles".into(), Ok(u), 0.5),
            Check::below(space, "upper poles vs resonances".into(), Ok(m), 0.5),
            Check::below(space, "pole at zero".into(), Ok(z), 0.5),
        ],
        Err(e) => vec![Check::below(space, "axis scan".into(), Err(e), 0.5)],
    }
}

fn default_spaces(suite: Suite) -> Vec<RankOneSpace> {
    match suite {
        Suite::Resonances => ["h2", "h3", "chn:2"].iter().map(|s| s.parse().expect("named")).collect(),
        _ => families(),
    }
}

fn checks(space: Option<&RankOneSpace>, suite: Suite) -> Vec<Check> {
    let spaces = space.map_or_else(|| default_spaces(suite), |s| vec![*s]);
    match suite {
        Suite::Connection => spaces.iter().flat_map(connection).collect(),
        Suite::Wronskian => spaces.iter().flat_map(wronskian).collect(),
        Suite::H3 => h3_oracles(),
        Suite::Resonances => spaces.iter().flat_map(resonance_table).collect(),
        Suite::Quadrature => quadrature(),
        Suite::Fatou => fatou(),
        Suite::Scattering => spaces.iter().flat_map(scattering).collect(),
        Suite::Rank => rank(),
        Suite::Residue => residue(),
        Suite::Poles => spaces.iter().flat_map(poles).collect(),
    }
}

/// One row per check: measured value, bound, and `pass`/`fail`, or an
/// error row when the computation itself failed.
pub fn run_suites(space: Option<&RankOneSpace>, suites: &[Suite]) -> Table {
    let label = space.map_or_else(|| "default".to_string(), |s| s.family_id());
    let mut t = Table::new("verify", &label, &["suite", "space", "case", "value", "bound", "relation"]);
    for &suite in suites {
        for c in checks(space, suite) {
            let (bound, relation) = match c.bound {
                Bound::Below(b) => (b, "<"),
                Bound::AtLeast(b) => (b, ">="),
            };
            let keys = vec![Cell::from(suite.name()), Cell::from(c.space), Cell::from(c.case)];
            match c.value {
                Ok(v) => {
                    let pass = match c.bound {
                        Bound::Below(b) => v < b,
                        Bound::AtLeast(b) => v >= b,
                    };
                    let mut row = keys;
                    row.extend([Cell::Float(v), Cell::Float(bound), Cell::from(relation)]);
                    t.push(row, if pass { "pass" } else { "fail" });
                }
                Err(e) => {
                    let mut row = keys;
                    row.extend([Cell::Empty, Cell::Float(bound), Cell::from(relation)]);
                    t.push(row, format!("error: {e}"));
                }
            }
        }
    }
    t
}
