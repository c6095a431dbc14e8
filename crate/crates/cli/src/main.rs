use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rzeta::validate::validate_report;
use rzeta::{instance, run, CliError, Command, Format, Options};

#[derive(Parser)]
#[command(name = "rzeta", version, about = "Reidemeister numbers and zeta functions of group endomorphisms")]
struct Cli {
    /// Number of iterates R(1..N) to compute or keep as evidence [default: 32]
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Zeta coefficients handed to rational reconstruction [default: 32]
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Coprime multipliers checked per certificate exponent [default: 5]
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reidemeister numbers R(n) for n = 1..max-n
    Rnum { file: PathBuf },
    /// Zeta series over the window and its rational reconstruction
    Zeta { file: PathBuf },
    /// Rational / natural-boundary classification with evidence
    Classify { file: PathBuf },
    /// Re-parse a report produced by this tool and re-check it
    Check { file: PathBuf },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let (cmd, path) = match &cli.cmd {
        Cmd::Rnum { file } => (Command::Rnum, file),
        Cmd::Zeta { file } => (Command::Zeta, file),
        Cmd::Classify { file } => (Command::Classify, file),
        Cmd::Check { file } => {
            let kind = validate_report(&read_input(file)?)?;
            return Ok(format!("ok {kind}\n"));
        }
    };
    let max_dim = instance::max_dim_from_env(std::env::var("TZ_MAX_DIM").ok().as_deref())?;
    let flags = Options {
        max_n: cli.max_n,
        window: cli.window,
        samples: cli.samples,
    };
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    run(cmd, &read_input(path)?, flags, format, max_dim)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    match execute(cli) {
        Ok(body) => {
            let _ = out.write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::NotTame(_, body) = &e {
                let _ = out.write_all(body.as_bytes());
            }
            eprintln!("rzeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
