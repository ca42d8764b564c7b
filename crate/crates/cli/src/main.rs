use std::io::Write;
use std::process::ExitCode;

use hyperscatter_cli::{parse_args, run_command};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => e.exit(),
    };
    let (table, code) = run_command(&cfg);
    let text = table.render(cfg.format);
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("hyperscatter: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
