//! Command-line front end: argument parsing, input loading, output.

pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{execute, CliError, Command};
use input::{parse_field, parse_spec, CollectionSpec};
use report::{ErrorReport, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "starfold", version, about = "Exact checks for fold-product ideals of linear forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    /// Largest degree to check; the default is recorded in the report.
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    /// `rational`, `prime:p`, or `p`; overrides the document's field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Turn verdicts into the exit code.
    #[arg(long, global = true)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Generators of I_a and their degrees.
    Gens {
        /// Collection document; `-` or absent reads standard input.
        input: Option<PathBuf>,
        #[arg(short, long)]
        a: usize,
    },
    /// Primary components of I_a with containment and equality checks.
    Decompose {
        input: Option<PathBuf>,
        #[arg(short, long)]
        a: usize,
    },
    /// Betti table, regularity and linear-resolution verdict of I_a.
    Betti {
        input: Option<PathBuf>,
        #[arg(short, long)]
        a: usize,
    },
    /// Generalized Hamming weights and heights of every I_a.
    Ghw { input: Option<PathBuf> },
    /// Star configuration of codimension c and its m-th symbolic power.
    Star {
        input: Option<PathBuf>,
        #[arg(short, long)]
        c: usize,
        #[arg(short, long)]
        m: usize,
    },
    /// Containment table of the coordinate star configuration.
    Resurgence {
        #[arg(short, long)]
        s: usize,
        #[arg(short, long)]
        c: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 6)]
        r_max: usize,
        /// Arrangement to compare against the monomial model.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Largest m and r for the arrangement comparison.
        #[arg(long, default_value_t = 3)]
        phi_max: usize,
    },
}

fn load(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<CollectionSpec, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::usage(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Ok(parse_spec(&text)?)
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<(report::Report, report::Table), CliError> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    let bound = cli.degree_bound;
    let (command, path) = match &cli.command {
        Sub::Gens { input, a } => (Command::Gens { a: *a, bound }, Some(input)),
        Sub::Decompose { input, a } => (Command::Decompose { a: *a, bound }, Some(input)),
        Sub::Betti { input, a } => (Command::Betti { a: *a, bound }, Some(input)),
        Sub::Ghw { input } => (Command::Ghw, Some(input)),
        Sub::Star { input, c, m } => (Command::Star { c: *c, m: *m, bound }, Some(input)),
        Sub::Resurgence { s, c, m_max, r_max, spec, phi_max } => {
            let cmd = Command::Resurgence { s: *s, c: *c, m_max: *m_max, r_max: *r_max, phi_max: *phi_max, bound };
            (cmd, spec.as_ref().map(|_| spec))
        }
    };
    let spec = match path {
        Some(p) => Some(load(p, stdin)?),
        None => None,
    };
    execute(&command, spec.as_ref(), field)
}

fn command_name(sub: &Sub) -> &'static str {
    match sub {
        Sub::Gens { .. } => "gens",
        Sub::Decompose { .. } => "decompose",
        Sub::Betti { .. } => "betti",
        Sub::Ghw { .. } => "ghw",
        Sub::Star { .. } => "star",
        Sub::Resurgence { .. } => "resurgence",
    }
}

/// Runs the tool on `args` and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok((report, table)) => {
            let written = match cli.format {
                Format::Json => stdout.write_all(report.to_json().as_bytes()),
                Format::Csv => table.write_csv(&mut *stdout),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if cli.check {
                report.check_status()
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let doc = ErrorReport { command: command_name(&cli.command).into(), error: e.body() };
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("error report serializes"));
            let _ = writeln!(stderr, "error: {}", e.message);
            e.exit_code
        }
    }
}
