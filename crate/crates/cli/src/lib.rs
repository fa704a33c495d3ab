//! Command-line front end: description files in, reports and graphs out.

pub mod build;
pub mod commands;
pub mod description;
pub mod dot;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::commands::{Command, Graph, Outcome, Overrides};
use crate::error::CliError;

/// Environment variable naming a directory for relative `--out` paths.
pub const OUT_DIR_VAR: &str = "NOLOOP_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "noloop", version, about = "Analyse bound quiver algebras: resolutions, HH0, traces and loop certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for randomized lifts
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Resolution depth
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Degree cap for the admissibility search
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Full analysis with consistency audit
    Analyze {
        input: PathBuf,
        /// Also analyse the quotient for this vertex set (repeatable)
        #[arg(long = "lambda-e")]
        lambda_e: Vec<String>,
    },
    /// HH0 of the algebra, optionally of a quotient
    Hh0 {
        input: PathBuf,
        #[arg(long)]
        e: Option<String>,
    },
    /// Minimal projective resolution of a simple module
    Resolve {
        input: PathBuf,
        #[arg(long)]
        simple: String,
        /// Resolve over the opposite algebra
        #[arg(long)]
        opposite: bool,
    },
    /// e-trace of a module endomorphism
    Trace {
        input: PathBuf,
        #[arg(long)]
        e: String,
        /// simple:V,..  projective:V,..  regular  radical:V,..  ideal:ELEMENT
        #[arg(long)]
        module: String,
        /// identity  zero  scalar:C  left:ELEMENT
        #[arg(long, default_value = "identity")]
        endo: String,
    },
    /// Primitive oriented cycles and their freeness
    Cycles {
        input: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Certificates of infinite dimension only
    Certify { input: PathBuf },
    /// Graphviz renderings
    Dot {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        graph: GraphArg,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum GraphArg {
    Quiver,
    Ext,
    Both,
}

impl Sub {
    fn split(&self) -> (&Path, Command, Option<usize>) {
        match self {
            Sub::Analyze { input, lambda_e } => (input, Command::Analyze { lambda_e: lambda_e.clone() }, None),
            Sub::Hh0 { input, e } => (input, Command::Hh0 { e: e.clone() }, None),
            Sub::Resolve { input, simple, opposite } => (input, Command::Resolve { simple: simple.clone(), opposite: *opposite }, None),
            Sub::Trace { input, e, module, endo } => {
                (input, Command::Trace { e: e.clone(), module: module.clone(), endo: endo.clone() }, None)
            }
            Sub::Cycles { input, max } => (input, Command::Cycles, *max),
            Sub::Certify { input } => (input, Command::Certify, None),
            Sub::Dot { input, graph } => {
                let graph = match graph {
                    GraphArg::Quiver => Graph::Quiver,
                    GraphArg::Ext => Graph::Ext,
                    GraphArg::Both => Graph::Both,
                };
                (input, Command::Dot { graph }, None)
            }
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn out_path(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

/// Parses, runs and returns the outcome without printing anything.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (input, cmd, cycle_max) = cli.command.split();
    let text = read_input(input)?;
    let d = description::parse(&text)?;
    let overrides = Overrides { seed: cli.global.seed, depth: cli.global.depth, cap: cli.global.cap, cycle_max };
    let run = || commands::run(&d, &input.display().to_string(), &cmd, &overrides);
    match cli.global.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Entry point: returns the process exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let body = if cli.global.json { outcome.document.to_json() } else { outcome.text };
    match &cli.global.out {
        Some(out) => {
            let path = out_path(out);
            if let Err(e) = std::fs::write(&path, body) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            if stdout.write_all(body.as_bytes()).is_err() {
                return 1;
            }
        }
    }
    0
}
