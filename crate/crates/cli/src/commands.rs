use hyperscatter::model_h2::h2;
use hyperscatter::radial::eval_phi;
use hyperscatter::resolvent::ResolventKernel;
use hyperscatter::resonances::enumerate;
use hyperscatter::scattering::{ktype_eigenvalue, scalar};
use hyperscatter::{CFunction, RankOneSpace};
use num_complex::Complex64;

use crate::config::{Command, RunConfig};
use crate::table::{complex, Cell, Table};
use crate::verify::run_suites;

fn status<T>(r: &hyperscatter::Result<T>) -> String {
    match r {
        Ok(_) => "ok".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn with_value(mut keys: Vec<Cell>, r: &hyperscatter::Result<Complex64>) -> Vec<Cell> {
    if let Ok(v) = r {
        keys.extend(complex(*v));
    }
    keys
}

fn cfun(space: &RankOneSpace, lambdas: &[Complex64]) -> Table {
    let cf = CFunction::new(*space);
    let mut t = Table::new("cfun", &space.family_id(), &["lambda_re", "lambda_im", "c_re", "c_im"]);
    for &l in lambdas {
        let r = cf.eval(l);
        t.push(with_value(complex(l).to_vec(), &r), status(&r));
    }
    t
}

fn phi(space: &RankOneSpace, lambdas: &[Complex64], ts: &[f64]) -> Table {
    let mut t = Table::new("phi", &space.family_id(), &["lambda_re", "lambda_im", "t", "phi_re", "phi_im"]);
    for &l in lambdas {
        for &x in ts {
            let r = eval_phi(space, l, x);
            let mut keys = complex(l).to_vec();
            keys.push(Cell::Float(x));
            t.push(with_value(keys, &r), status(&r));
        }
    }
    t
}

fn kernel(space: &RankOneSpace, zetas: &[Complex64], ts: &[f64]) -> Table {
    let mut t = Table::new("kernel", &space.family_id(), &["zeta_re", "zeta_im", "t", "kernel_re", "kernel_im"]);
    for &z in zetas {
        let k = ResolventKernel::new(space, z);
        for &x in ts {
            let r = k.as_ref().map_err(Clone::clone).and_then(|k| k.value(x));
            let mut keys = complex(z).to_vec();
            keys.push(Cell::Float(x));
            t.push(with_value(keys, &r), status(&r));
        }
    }
    t
}

fn resonances(space: &RankOneSpace, count: usize) -> Table {
    let mut t = Table::new(
        "resonances",
        &space.family_id(),
        &["k", "zeta_re", "zeta_im", "residue_re", "residue_im", "multiplicity"],
    );
    match enumerate(space, count) {
        Ok(recs) => {
            for r in recs {
                let mut row = vec![Cell::Int(r.k as i64)];
                row.extend(complex(r.zeta));
                row.extend(complex(r.residue_scalar));
                row.push(r.multiplicity_estimate.map_or(Cell::Empty, |m| Cell::Int(m as i64)));
                t.push(row, "ok");
            }
        }
        Err(e) => t.push(vec![], format!("error: {e}")),
    }
    t
}

fn plancherel(space: &RankOneSpace, zetas: &[f64]) -> Table {
    let cf = CFunction::new(*space);
    let mut t = Table::new("plancherel", &space.family_id(), &["zeta", "density"]);
    for &z in zetas {
        let r = cf.plancherel_density(z);
        let mut row = vec![Cell::Float(z)];
        if let Ok(d) = r {
            row.push(Cell::Float(d));
        }
        t.push(row, status(&r));
    }
    t
}

fn scattering(space: &RankOneSpace, zetas: &[Complex64], modes: &[i32]) -> Table {
    let mut t = Table::new("scattering", &space.family_id(), &["zeta_re", "zeta_im", "mode", "s_re", "s_im"]);
    for &z in zetas {
        let r = scalar(space, z);
        let mut keys = complex(z).to_vec();
        keys.push(Cell::Empty);
        t.push(with_value(keys, &r), status(&r));
        for &n in modes {
            debug_assert_eq!(space.family_id(), h2().family_id());
            let r = ktype_eigenvalue(z, n);
            let mut keys = complex(z).to_vec();
            keys.push(Cell::Int(n as i64));
            t.push(with_value(keys, &r), status(&r));
        }
    }
    t
}

/// Runs a validated configuration. The exit code is 0 when every row is
/// `ok`/`pass` and 1 otherwise.
pub fn run_command(cfg: &RunConfig) -> (Table, i32) {
    let space = cfg.space.as_ref();
    let need = || *space.expect("non-verify commands carry a space");
    let table = match &cfg.command {
        Command::Cfun { lambda } => cfun(&need(), lambda),
        Command::Phi { lambda, t } => phi(&need(), lambda, t),
        Command::Kernel { zeta, t } => kernel(&need(), zeta, t),
        Command::Resonances { count } => resonances(&need(), *count),
        Command::Plancherel { zeta } => plancherel(&need(), zeta),
        Command::Scattering { zeta, modes } => scattering(&need(), zeta, modes),
        Command::Verify { suites } => run_suites(space, suites),
    };
    let code = if table.all_ok() { 0 } else { 1 };
    (table, code)
}
