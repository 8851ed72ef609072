//! Command-line front end: parameter sweeps, table and figure data, and the
//! randomised verification suite. Every data command writes CSV.

mod figures;
mod sweep;
mod table;
mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use figures::{
    figure_table, table1, FigureId, CURVE_TWO_J, TABLE_TWO_J, XXX_FIELD_SETS, XXZ_FIELD_B1,
    XXZ_FIELD_SETS,
};
pub use sweep::{sweep_table, Output, SweepSpec, TGrid};
pub use table::{Cell, Table};
pub use verify::{run_verify, verify_reports, SuiteReport, VerifyConfig};

use crate::error::{invalid_argument, Result};
use crate::models::ModelParams;

#[derive(Debug, Parser)]
#[command(
    name = "axialq",
    version,
    about = "LQU and LQFI of spin-(j,1/2) systems with axial symmetry"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate correlations over a grid of spins and temperatures.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// XXX ground-state values for the tabulated spins.
    Table1(OutArg),
    /// Data behind one figure (1-10, panels 1a/1b, 2a/2b, 8a/8b).
    Figure(FigureArgs),
    /// Cross-check closed forms against the dense oracle on random inputs.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Xxx,
    Xxz,
    Xxzfield,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file; `-` writes to stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// XXX coupling.
    #[arg(long, default_value_t = 1.0)]
    pub j0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub jz: f64,
    /// Transverse coupling of the XXZ models.
    #[arg(long = "j", default_value_t = 1.0)]
    pub jxy: f64,
    /// Field on the spin-j.
    #[arg(long, default_value_t = 0.0)]
    pub b1: f64,
    /// Field on the spin-1/2.
    #[arg(long, default_value_t = 0.0)]
    pub b2: f64,
    /// Use `J₀ S·s` instead of `J₀ S·s / (2|S|)` for the XXX model.
    #[arg(long)]
    pub unnormalized: bool,
    /// Values of 2j, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub two_j: Vec<u32>,
    #[arg(long, default_value_t = 0.01)]
    pub t_start: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t_stop: f64,
    #[arg(long, default_value_t = 100)]
    pub t_count: usize,
    /// Space temperatures logarithmically.
    #[arg(long)]
    pub t_log: bool,
    /// Zero-temperature limit instead of a temperature grid.
    #[arg(long, conflicts_with_all = ["t_start", "t_stop", "t_count", "t_log"])]
    pub ground: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "f,u")]
    pub outputs: Vec<Output>,
    #[command(flatten)]
    pub out: OutArg,
}

impl SweepArgs {
    pub fn spec(&self) -> SweepSpec {
        let model = match self.model {
            ModelKind::Xxx => ModelParams::Xxx {
                j0: self.j0,
                normalized: !self.unnormalized,
            },
            ModelKind::Xxz => ModelParams::Xxz {
                jz: self.jz,
                jxy: self.jxy,
            },
            ModelKind::Xxzfield => ModelParams::XxzField {
                jz: self.jz,
                jxy: self.jxy,
                b1: self.b1,
                b2: self.b2,
            },
        };
        let grid = if self.ground {
            TGrid::Ground
        } else {
            TGrid::Points {
                start: self.t_start,
                stop: self.t_stop,
                count: self.t_count,
                log: self.t_log,
            }
        };
        SweepSpec {
            model,
            two_j: self.two_j.clone(),
            grid,
            outputs: self.outputs.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub id: String,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub max_two_j: u32,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn emit(table: &Table, out: &OutArg, stdout: &mut dyn Write) -> Result<()> {
    if out.out == "-" {
        table.write_csv(stdout)
    } else {
        let path = PathBuf::from(&out.out);
        let file = File::create(&path)
            .map_err(|e| invalid_argument(format!("cannot create {}: {e}", path.display())))?;
        table.write_csv(BufWriter::new(file))
    }
}

/// Runs a parsed command. Returns `false` only when verification fails.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Sweep(a) => emit(&sweep_table(&a.spec())?, &a.out, stdout)?,
        Command::Table1(o) => emit(&table1()?, o, stdout)?,
        Command::Figure(a) => emit(&figure_table(a.id.parse()?)?, &a.out, stdout)?,
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                max_two_j: a.max_two_j,
                samples: a.samples,
                tol: a.tol,
                seed: a.seed,
            };
            return run_verify(&cfg, stdout);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("axialq").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_sweep_with_negative_coupling() {
        let cli = parse(&[
            "sweep",
            "--model",
            "xxz",
            "--jz",
            "-1",
            "--j",
            "1.1",
            "--two-j",
            "1,2",
            "--ground",
            "--outputs",
            "f,u,f0",
        ]);
        let Command::Sweep(a) = &cli.command else {
            panic!("expected sweep");
        };
        let spec = a.spec();
        assert_eq!(spec.model, ModelParams::Xxz { jz: -1.0, jxy: 1.1 });
        assert_eq!(spec.two_j, vec![1, 2]);
        assert_eq!(spec.grid, TGrid::Ground);
        assert_eq!(spec.outputs, vec![Output::F, Output::U, Output::F0]);
    }

    #[test]
    fn ground_conflicts_with_grid() {
        let r = Cli::try_parse_from([
            "axialq",
            "sweep",
            "--model",
            "xxx",
            "--two-j",
            "1",
            "--ground",
            "--t-count",
            "3",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn sweep_writes_csv() {
        let cli = parse(&[
            "sweep",
            "--model",
            "xxx",
            "--two-j",
            "2",
            "--t-start",
            "1",
            "--t-count",
            "1",
        ]);
        let mut out = Vec::new();
        assert!(run(&cli, &mut out).unwrap());
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("model,two_j,t,j0,f,u"));
        assert!(lines
            .next()
            .unwrap()
            .starts_with("xxx,2,1.0000000000000000e0,"));
    }
}
