use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use pdiv_cli::{emit, parse_file, parse_weight, render_text, run, write_atomic, CliError, Command, Flags};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact computations with polyhedral divisors.
///
/// Exit codes: 0 computed, 2 computed with hypothesis violations,
/// 3 inconclusive search, 1 input error.
#[derive(Parser, Debug)]
#[command(name = "pdiv", version)]
struct Cli {
    command: Command,
    /// Input document (JSON).
    input: PathBuf,
    /// Largest multiple tried when testing sharpness.
    #[arg(long, default_value_t = pdiv_cli::DEFAULT_K_BOUND)]
    k_bound: u32,
    /// Half-width of the box of weights and exponents searched.
    #[arg(long, default_value_t = pdiv_cli::DEFAULT_WINDOW)]
    window: i64,
    /// Weight such as `6` or `1/2,-1`.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    if cli.window < 0 {
        return Err(CliError::Usage("--window must be nonnegative".into()));
    }
    let weight = cli.weight.as_deref().map(parse_weight).transpose()?;
    let flags = Flags { k_bound: cli.k_bound, window: cli.window, weight };
    let doc = parse_file(&cli.input)?;
    let outcome = run(cli.command, &flags, &doc)?;
    let bytes = match cli.format {
        Format::Json => emit(&outcome.report),
        Format::Text => render_text(&outcome.report).into_bytes(),
    };
    match &cli.output {
        Some(p) => write_atomic(p, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("pdiv: {e}");
            ExitCode::from(1)
        }
    }
}
