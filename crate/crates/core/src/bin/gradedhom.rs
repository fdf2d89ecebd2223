use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gradedhom::cli::{run_source, Flags, Format};

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Check graded homotopy structures and thick morphisms described in a `.gk` problem file.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Problem file.
    file: PathBuf,
    /// Highest bracket arity checked.
    #[arg(long, default_value_t = 4)]
    arity: usize,
    /// Truncation order for pullbacks and Hamilton-Jacobi checks.
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// Seed for randomized oracle checks.
    #[arg(long, default_value_t = Flags::default().seed)]
    oracle_seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Print only failures and the summary.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {}", args.file.display(), e);
            return ExitCode::from(2);
        }
    };
    let flags = Flags { arity: args.arity, order: args.order, seed: args.oracle_seed };
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let (out, code) = run_source(&text, &flags, format, args.quiet);
    if code == 2 {
        eprint!("{}", out);
    } else {
        print!("{}", out);
    }
    ExitCode::from(code as u8)
}
