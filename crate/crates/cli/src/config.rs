use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperscatter::RankOneSpace;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Connection,
    Wronskian,
    H3,
    Resonances,
    Quadrature,
    Fatou,
    Scattering,
    Rank,
    Residue,
    Poles,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Connection => "connection",
            Suite::Wronskian => "wronskian",
            Suite::H3 => "h3",
            Suite::Resonances => "resonances",
            Suite::Quadrature => "quadrature",
            Suite::Fatou => "fatou",
            Suite::Scattering => "scattering",
            Suite::Rank => "rank",
            Suite::Residue => "residue",
            Suite::Poles => "poles",
        }
    }

    /// The one space a suite is tied to, if any.
    pub fn fixed_space(self) -> Option<&'static str> {
        match self {
            Suite::H3 => Some("h3"),
            Suite::Quadrature | Suite::Fatou | Suite::Rank | Suite::Residue => Some("h2"),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Cfun { lambda: Vec<Complex64> },
    Phi { lambda: Vec<Complex64>, t: Vec<f64> },
    Kernel { zeta: Vec<Complex64>, t: Vec<f64> },
    Resonances { count: usize },
    Plancherel { zeta: Vec<f64> },
    Scattering { zeta: Vec<Complex64>, modes: Vec<i32> },
    Verify { suites: Vec<Suite> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cfun { .. } => "cfun",
            Command::Phi { .. } => "phi",
            Command::Kernel { .. } => "kernel",
            Command::Resonances { .. } => "resonances",
            Command::Plancherel { .. } => "plancherel",
            Command::Scattering { .. } => "scattering",
            Command::Verify { .. } => "verify",
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `None` only for `verify` without `--space`, where each suite uses its
    /// default families.
    pub space: Option<RankOneSpace>,
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "hyperscatter", version, about = "Spectral scattering tables on rank-one symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: OutputFormat,

    /// Write the table to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpaceArg {
    /// h2, h3, hn:<n>, chn:<n>, hhn:<n> or oh2.
    #[arg(long, value_parser = parse_space)]
    space: RankOneSpace,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// The c-function at a list of λ.
    Cfun {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Vec<Complex64>,
    },
    /// Spherical function φ_λ(t).
    Phi {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Vec<Complex64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_real)]
        t: Vec<f64>,
    },
    /// Resolvent kernel R_ζ(t).
    Kernel {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        zeta: Vec<Complex64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_real)]
        t: Vec<f64>,
    },
    /// The first resonances with residues and multiplicities.
    Resonances {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        count: usize,
    },
    /// Plancherel density 1/|c(iζ)|² at real ζ.
    Plancherel {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_real)]
        zeta: Vec<f64>,
    },
    /// Scattering scalar c(-iζ)/c(iζ), and K-type eigenvalues on h2.
    Scattering {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        zeta: Vec<Complex64>,
        /// Boundary Fourier modes (h2 only).
        #[arg(long = "mode", value_delimiter = ',', allow_hyphen_values = true)]
        modes: Vec<i32>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_parser = parse_space)]
        space: Option<RankOneSpace>,
        #[arg(long, value_enum, required_unless_present = "all", conflicts_with = "all")]
        suite: Option<Suite>,
        #[arg(long)]
        all: bool,
    },
}

fn parse_space(s: &str) -> Result<RankOneSpace, String> {
    s.parse::<RankOneSpace>().map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z: Complex64 = s.trim().parse().map_err(|_| format!("`{s}` is not a complex number (forms: 1.5, -2i, 0.9+0.2i)"))?;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a real number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn sorted_complex(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v.dedup();
    v
}

fn sorted_real(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Parses a full argument vector (program name first). Usage errors carry
/// clap's exit code 2; `--help` and `--version` come back as errors too,
/// with exit code 0.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let usage = |msg: String| clap::Error::raw(clap::error::ErrorKind::ValueValidation, msg + "\n");
    let (space, command) = match cli.command {
        Sub::Cfun { space, lambda } => (Some(space.space), Command::Cfun { lambda: sorted_complex(lambda) }),
        Sub::Phi { space, lambda, t } => (
            Some(space.space),
            Command::Phi {
                lambda: sorted_complex(lambda),
                t: sorted_real(t),
            },
        ),
        Sub::Kernel { space, zeta, t } => (
            Some(space.space),
            Command::Kernel {
                zeta: sorted_complex(zeta),
                t: sorted_real(t),
            },
        ),
        Sub::Resonances { space, count } => (Some(space.space), Command::Resonances { count }),
        Sub::Plancherel { space, zeta } => (Some(space.space), Command::Plancherel { zeta: sorted_real(zeta) }),
        Sub::Scattering { space, zeta, modes } => {
            if !modes.is_empty() && space.space.family_id() != "h2" {
                return Err(usage(format!("--mode is only available on h2, not {}", space.space.family_id())));
            }
            let mut modes = modes;
            modes.sort();
            modes.dedup();
            (
                Some(space.space),
                Command::Scattering {
                    zeta: sorted_complex(zeta),
                    modes,
                },
            )
        }
        Sub::Verify { space, suite, all } => {
            let accepts = |s: &Suite| match (s.fixed_space(), &space) {
                (Some(fixed), Some(sp)) => sp.family_id() == fixed,
                _ => true,
            };
            let suites = match suite {
                Some(s) if !accepts(&s) => {
                    return Err(usage(format!(
                        "suite `{}` runs on {} only",
                        s.name(),
                        s.fixed_space().unwrap_or_default()
                    )));
                }
                Some(s) => vec![s],
                // --all with --space keeps the suites that apply to that space
                None => Suite::value_variants().iter().copied().filter(accepts).collect(),
            };
            debug_assert!(all || suites.len() == 1);
            (space, Command::Verify { suites })
        }
    };
    Ok(RunConfig {
        space,
        command,
        format: cli.format,
        out: cli.out,
    })
}
