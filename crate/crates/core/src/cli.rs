//! Command-line front end.
//!
//! Every subcommand builds a [`Table`] that is written as semicolon CSV
//! (default) or an aligned text table, to stdout or to `--out`.
//! Exit codes: 0 success, 1 domain/guard error or failed verification,
//! 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{domain, Result};
use crate::exact_chain::{
    evolve, tv_between, tv_curve, tv_to_uniform, PermIndex, SparseScaledMatrix,
};
use crate::format::{g12, Table};
use crate::partitions::EXACT_DIM_CAP;
use crate::profile::{
    c_grid, comparison_bound_at, comparison_bound_with_m, cutoff_times, default_truncation,
    l2_bound, profile_curve,
};
use crate::spectra::{eigenvalues, Chain};
use crate::verify::verify_table;

#[derive(Debug, Parser)]
#[command(
    name = "shuffle-profile",
    version,
    about = "Spectra, comparison bounds and limit profiles of transposition shuffles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Pretty,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues with multiplicities, one row per (partition, eigenvalue).
    Spectrum {
        #[arg(long, value_enum)]
        chain: Chain,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Comparison bound between the two chains at their cutoff times.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Cutoff rank for the reported decomposition.
        #[arg(long = "M")]
        m: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The four truncated sums of the comparison bound.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long = "M")]
        m: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Poisson limit profile on a grid of window parameters.
    Profile {
        #[arg(long, allow_negative_numbers = true)]
        c_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        c_max: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact distance to uniform from the identity, t = 0..=t-max.
    ExactTv {
        #[arg(long, value_enum)]
        chain: Chain,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact distances at the cutoff times against the comparison bound.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classical l2 bound of one chain at its cutoff times.
    L2 {
        #[arg(long, value_enum)]
        chain: Chain,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        c_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        c_max: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the identity suite at one deck size.
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum { output, .. }
            | Command::Bound { output, .. }
            | Command::Decompose { output, .. }
            | Command::Profile { output, .. }
            | Command::ExactTv { output, .. }
            | Command::Compare { output, .. }
            | Command::L2 { output, .. }
            | Command::Verify { output, .. } => output,
        }
    }
}

fn spectrum_table(chain: Chain, n: usize) -> Result<Table> {
    if !(2..=EXACT_DIM_CAP).contains(&n) {
        return Err(domain(format!(
            "spectrum supports 2 <= n <= {EXACT_DIM_CAP}, got {n}"
        )));
    }
    let mut table = Table::new(["partition", "eigenvalue", "multiplicity", "chain"]);
    for (lambda, eig, mult) in eigenvalues(chain, n)? {
        table.push(vec![
            lambda.to_string(),
            g12(*eig.numer() as f64 / *eig.denom() as f64),
            mult.exact()?.to_string(),
            chain.to_string(),
        ]);
    }
    Ok(table)
}

fn bound_table(n: usize, c: f64, m: usize, with_total: bool) -> Result<Table> {
    let r = comparison_bound_with_m(n, c, m)?;
    let mut table = if with_total {
        Table::new([
            "n", "c", "t", "tstar", "total", "term1", "term2", "term3", "term4",
        ])
    } else {
        Table::new([
            "n", "c", "M", "t", "tstar", "term1", "term2", "term3", "term4",
        ])
    };
    let mut row = vec![r.n.to_string(), g12(r.c)];
    if !with_total {
        row.push(r.m.to_string());
    }
    row.extend([r.t.to_string(), r.t_star.to_string()]);
    if with_total {
        row.push(g12(r.total));
    }
    row.extend(r.parts.iter().map(|&x| g12(x)));
    table.push(row);
    Ok(table)
}

fn compare_table(n: usize, c: f64) -> Result<Table> {
    let ct = cutoff_times(n, c)?;
    let id = PermIndex::identity(n);
    let star = evolve(
        &SparseScaledMatrix::build(Chain::StarTranspositions, n)?,
        id,
        ct.t_star,
    )?;
    let rt = evolve(
        &SparseScaledMatrix::build(Chain::RandomTranspositions, n)?,
        id,
        ct.t,
    )?;
    let (tv_star, tv_rt) = (tv_to_uniform(&star), tv_to_uniform(&rt));
    let mut table = Table::new([
        "n", "c", "t", "tstar", "tv_star", "tv_rt", "gap", "tv_pair", "bound",
    ]);
    table.push(vec![
        n.to_string(),
        g12(c),
        ct.t.to_string(),
        ct.t_star.to_string(),
        g12(tv_star),
        g12(tv_rt),
        g12((tv_star - tv_rt).abs()),
        g12(tv_between(&star, &rt)?),
        g12(comparison_bound_at(n, ct.t, ct.t_star)?),
    ]);
    Ok(table)
}

fn l2_table(chain: Chain, n: usize, c_min: f64, c_max: f64, step: f64) -> Result<Table> {
    let mut table = Table::new(["n", "chain", "c", "t", "bound"]);
    for c in c_grid(c_min, c_max, step)? {
        let ct = cutoff_times(n, c)?;
        let t = match chain {
            Chain::RandomTranspositions => ct.t,
            Chain::StarTranspositions => ct.t_star,
        };
        table.push(vec![
            n.to_string(),
            chain.to_string(),
            g12(c),
            t.to_string(),
            g12(l2_bound(chain, n, t)?),
        ]);
    }
    Ok(table)
}

/// Builds the output table; the flag is false when verification failed.
pub fn execute(command: &Command) -> Result<(Table, bool)> {
    let table = match *command {
        Command::Spectrum { chain, n, .. } => spectrum_table(chain, n)?,
        Command::Bound { n, c, m, .. } => {
            bound_table(n, c, m.unwrap_or_else(|| default_truncation(n)), true)?
        }
        Command::Decompose { n, c, m, .. } => bound_table(n, c, m, false)?,
        Command::Profile {
            c_min, c_max, step, ..
        } => {
            let mut table = Table::new(["c", "phi"]);
            for p in profile_curve(c_min, c_max, step)? {
                table.push(vec![g12(p.c), g12(p.value)]);
            }
            table
        }
        Command::ExactTv {
            chain, n, t_max, ..
        } => {
            let mut table = Table::new(["n", "chain", "t", "tv"]);
            for (t, tv) in tv_curve(chain, n, t_max)?.into_iter().enumerate() {
                table.push(vec![
                    n.to_string(),
                    chain.to_string(),
                    t.to_string(),
                    g12(tv),
                ]);
            }
            table
        }
        Command::Compare { n, c, .. } => compare_table(n, c)?,
        Command::L2 {
            chain,
            n,
            c_min,
            c_max,
            step,
            ..
        } => l2_table(chain, n, c_min, c_max, step)?,
        Command::Verify { n, .. } => return verify_table(n),
    };
    Ok((table, true))
}

fn emit(output: &OutputArgs, table: &Table, stdout: &mut dyn Write) -> Result<()> {
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Pretty => table.to_pretty(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli.command).and_then(|(table, ok)| {
        emit(cli.command.output(), &table, stdout)?;
        Ok(ok)
    }) {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(stderr, "verification failed");
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
