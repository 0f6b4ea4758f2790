//! `crep`: constraint emission, reduction, Phi queries, certificates and the
//! self-test suite.

mod emit;

use clap::{Args, Parser, Subcommand};
use crep_core::algebra::{ParamPoint, QField};
use crep_core::positivity::{certify, phi_oracle, phi_table, pick_c1, CertifyOutcome, Density};
use crep_core::selftest::{run_selftest, SelftestOptions};
use crep_core::Error;
use std::io::Write;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_FINDINGS: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "crep", version, about = "Exact pipeline for parametric entropy-power concavity proofs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "latex")]
    json: bool,
    /// Emit LaTeX.
    #[arg(long, global = true)]
    latex: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the equational constraints and the trace inequality.
    Constraints,
    /// Reduce the target form to A1 m2^2 + A2 m2 m5 + A3 m5^2.
    Reduce,
    /// Decide Phi(n, p, mu) by the table and by the exact oracle.
    Phi(PointArgs),
    /// Build an SOS certificate at a point.
    Certify {
        #[command(flatten)]
        point: PointArgs,
        /// Multiplier c1 <= 0; chosen automatically when absent.
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<String>,
    },
    /// Table verdicts over a grid, one line per (n, p).
    Table {
        #[arg(long, value_name = "coarse|default|fine", default_value = "default")]
        grid_density: Density,
        /// Restrict to one n.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Run every exact check and the grid sweeps.
    Selftest {
        #[arg(long, value_name = "coarse|default|fine", default_value = "default")]
        grid_density: Density,
        /// Perturb one coefficient of the hardcoded target (mutation check).
        #[arg(long, hide = true)]
        perturb_target: bool,
    },
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long)]
    n: u32,
    /// Exact number: a/b or a/b+c/d*sqrt(17).
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

fn exact(name: &str, s: &str) -> Result<QField, String> {
    s.parse::<QField>().map_err(|e| format!("--{name}: {e}"))
}

impl PointArgs {
    fn point(&self) -> Result<ParamPoint, String> {
        let p = exact("p", &self.p)?;
        let mu = exact("mu", &self.mu)?;
        ParamPoint::new(self.n, p, mu).map_err(|e| e.to_string())
    }
}

/// Output text and exit status of one invocation.
struct Outcome {
    text: String,
    code: u8,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome { text: format!("error: {msg}\n"), code: EXIT_USAGE }
}

fn core_error(e: Error) -> Outcome {
    usage(e)
}

fn run(cli: &Cli) -> Outcome {
    let fmt = if cli.json {
        Format::Json
    } else if cli.latex {
        Format::Latex
    } else {
        Format::Text
    };
    match &cli.command {
        Command::Constraints => match crep_core::constraints::generate_all_constraints() {
            Ok(cs) => Outcome { text: emit::constraints(&cs, fmt), code: 0 },
            Err(e) => core_error(e),
        },
        Command::Reduce => match crep_core::reduction::reduction() {
            Ok(r) => Outcome { text: emit::reduction(r, fmt), code: 0 },
            Err(e) => core_error(e),
        },
        Command::Phi(pa) => {
            let x = match pa.point() {
                Ok(x) => x,
                Err(e) => return usage(e),
            };
            let (table, oracle) = match (phi_table(&x), phi_oracle(&x)) {
                (Ok(t), Ok(o)) => (t, o),
                (Err(e), _) | (_, Err(e)) => return core_error(e),
            };
            let suggested = table.suggested_c1.clone().or_else(|| pick_c1(&oracle.c1_set));
            let code = if oracle.feasible { 0 } else { EXIT_INFEASIBLE };
            Outcome { text: emit::phi(&x, &table, &oracle, suggested.as_ref(), fmt), code }
        }
        Command::Certify { point, c1 } => {
            let x = match point.point() {
                Ok(x) => x,
                Err(e) => return usage(e),
            };
            let c1 = match c1.as_deref().map(|s| exact("c1", s)).transpose() {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match certify(&x, c1) {
                Ok(CertifyOutcome::Certified(c)) => match c.verify() {
                    Ok(verified) => Outcome { text: emit::certificate(&c, verified, fmt), code: 0 },
                    Err(e) => core_error(e),
                },
                Ok(CertifyOutcome::Infeasible(r)) => Outcome { text: emit::infeasible(&r, fmt), code: EXIT_INFEASIBLE },
                Err(e) => core_error(e),
            }
        }
        Command::Table { grid_density, n } => match emit::table(*grid_density, *n, fmt) {
            Ok(text) => Outcome { text, code: 0 },
            Err(e) => core_error(e),
        },
        Command::Selftest { grid_density, perturb_target } => {
            let rep = run_selftest(SelftestOptions { density: *grid_density, perturb_target: *perturb_target });
            let code = if rep.is_clean() { 0 } else { EXIT_FINDINGS };
            Outcome { text: emit::report(&rep, fmt), code }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&cli);
    if out.code == EXIT_USAGE {
        eprint!("{}", out.text);
        return ExitCode::from(EXIT_USAGE);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(out.code)
}
