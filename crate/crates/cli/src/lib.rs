//! The `ama` command line.
//!
//! [`run`] takes its streams as arguments so the whole surface can be driven
//! in-process from tests. Exit codes: 0 success, 1 failure, 2 usage error.

mod commands;
mod table;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ama", version, about = "Aesthetic measures for screen layouts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score one layout document (`-` reads stdin).
    Evaluate {
        layout: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Reject fields the document schema does not name.
        #[arg(long)]
        strict: bool,
    },
    /// Score every layout in the given files and directories.
    Batch {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Competition-rank the rows of a results table by one column.
    Rank {
        results: PathBuf,
        #[arg(long, default_value = "av")]
        column: String,
        /// Rank smallest first.
        #[arg(long)]
        ascending: bool,
        /// Rank separately within groups named by the label text before the
        /// last occurrence of this separator (`main-g1` with `-` is in `main`).
        #[arg(long)]
        group_sep: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Extract a layout from a PBM/PGM object-model image.
    Ingest {
        image: PathBuf,
        /// Foreground is darker than this sample value (default maxval/2).
        #[arg(long)]
        threshold: Option<f64>,
        /// Treat bright pixels as foreground.
        #[arg(long)]
        invert: bool,
        /// Drop components with fewer pixels.
        #[arg(long, default_value_t = 4)]
        min_area: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search object positions toward an objective.
    Optimize(OptimizeArgs),
    /// One-way ANOVA over a `group,value` CSV.
    Anova {
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Spearman correlation of two `label,rank` tables.
    CompareRanks {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "rank")]
        column: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "AMA_PORT", default_value_t = ama_service::DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Allowed CORS origin; any origin when omitted.
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("objective").required(true).args(["maximize", "target_av", "target"])))]
struct OptimizeArgs {
    layout: PathBuf,
    /// Maximize a weighted sum; requires --weights.
    #[arg(long, requires = "weights")]
    maximize: bool,
    /// balance,equilibrium,symmetry,sequence,rhythm
    #[arg(long, value_parser = parse_five)]
    weights: Option<[f64; 5]>,
    #[arg(long)]
    target_av: Option<f64>,
    /// balance,equilibrium,symmetry,sequence,rhythm
    #[arg(long, value_parser = parse_five)]
    target: Option<[f64; 5]>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20_000)]
    iters: u64,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    cooling: Option<f64>,
    #[arg(long)]
    move_scale: Option<f64>,
    #[arg(long)]
    no_overlap: bool,
    /// Write the best layout here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the best-so-far trace as CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn parse_five(s: &str) -> Result<[f64; 5], String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
        .collect::<Result<Vec<_>, _>>()?;
    let n = values.len();
    values
        .try_into()
        .map_err(|_| format!("expected 5 comma-separated values, got {n}"))
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match commands::dispatch(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e:#}");
            EXIT_FAILURE
        }
    }
}
