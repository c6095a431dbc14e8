//! Instance parsing, command dispatch and report emission for the `rzeta`
//! binary.
//!
//! Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 an
//! infinite Reidemeister number inside the requested window.

pub mod instance;
pub mod render;
pub mod validate;

use std::fmt;

use rzeta_core::{classify_instance, Error, Policy};

pub use instance::{parse_instance, InstanceFile, Options};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Invariant(String),
    /// First iterate with an infinite Reidemeister number, and the report
    /// body to emit for it.
    NotTame(u64, String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::NotTame(..) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
            CliError::NotTame(n, _) => write!(f, "not tame: R(phi^{n}) is infinite"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Parse(_) => CliError::Parse(e.to_string()),
            Error::NotTame(n) => CliError::NotTame(n, String::new()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Rnum,
    Zeta,
    Classify,
}

/// Effective run parameters: command-line flags over file options over
/// defaults.
pub fn resolve(flags: Options, file: Options) -> Policy {
    let o = flags.or(file);
    let d = Policy::default();
    Policy {
        max_n: o.max_n.unwrap_or(d.max_n),
        window: o.window.unwrap_or(d.window),
        samples: o.samples.unwrap_or(d.samples),
        growth_windows: d.growth_windows,
    }
}

fn attach_report(e: CliError, kind: &str) -> CliError {
    match e {
        CliError::NotTame(n, _) => CliError::NotTame(n, render::to_text(&render::not_tame_json(kind, n))),
        other => other,
    }
}

/// Runs one command on the text of an instance file and returns the body to
/// print.
pub fn run(cmd: Command, input: &str, flags: Options, format: Format, max_dim: usize) -> Result<String, CliError> {
    let file = parse_instance(input, max_dim)?;
    let policy = resolve(flags, file.options);
    let kind = file.instance.kind();
    let body = match cmd {
        Command::Rnum => {
            let rows = render::rnum_rows(&file.instance, policy.max_n)?;
            match format {
                Format::Csv => render::csv_table(["n", "R_n"], rows),
                Format::Json => render::to_text(&render::rnum_json(kind, &rows)),
            }
        }
        Command::Zeta => {
            let z = render::zeta_output(&file.instance, policy.window).map_err(|e| attach_report(e, kind))?;
            match format {
                Format::Csv => render::csv_table(["k", "c_k"], z.coeffs.iter().enumerate()),
                Format::Json => render::to_text(&render::zeta_json(kind, &z)),
            }
        }
        Command::Classify => {
            let rep = classify_instance(&file.instance, &policy).map_err(|e| attach_report(e.into(), kind))?;
            match format {
                Format::Csv => {
                    let seq = rep.evidence.as_ref().map(|e| e.sequence.as_slice()).unwrap_or(&[]);
                    render::csv_table(["n", "R_n"], seq.iter().enumerate().map(|(i, r)| (i + 1, r)))
                }
                Format::Json => render::to_text(&render::classify_json(kind, &rep)),
            }
        }
    };
    Ok(body)
}
