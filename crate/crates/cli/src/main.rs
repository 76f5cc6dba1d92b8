use clap::{Parser, Subcommand, ValueEnum};
use derint_cli::scenario::InputError;
use derint_cli::{run_file, verify_corpus, RunOptions, EXIT_INPUT, EXIT_MISMATCH, EXIT_PASS};
use derint_core::koszul::Window;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "derint", version, about = "Exact checks for Lagrangian intersections, local systems and torus GIT")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        file: PathBuf,
        /// Homological and internal bounds, e.g. `4,10`.
        #[arg(long, value_parser = parse_window)]
        window: Option<Window>,
        /// Truncation order for Poincaré series.
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every `.scn` file of a directory in file-name order.
    Verify {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (k, d) = s.split_once(',').ok_or("expected K,D")?;
    let k = k.trim().parse::<usize>().map_err(|e| format!("K: {e}"))?;
    let d = d.trim().parse::<i64>().map_err(|e| format!("D: {e}"))?;
    Ok(Window::new(k, d))
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<i32, InputError> {
    match cli.command {
        Command::Run { file, window, truncate, format, report } => {
            let r = run_file(&file, &RunOptions { window, truncate })?;
            let text = match format {
                Format::Table => r.to_table(),
                Format::Machine => r.to_machine() + "\n",
            };
            emit(&text, report.as_deref())?;
            Ok(if r.passed() { EXIT_PASS } else { EXIT_MISMATCH })
        }
        Command::Verify { dir, format, report, jobs } => {
            let s = verify_corpus(&dir, jobs)?;
            let text = match format {
                Format::Table => s.to_table(),
                Format::Machine => s.to_machine() + "\n",
            };
            emit(&text, report.as_deref())?;
            for e in s.entries.iter().filter(|e| e.status == "error") {
                eprintln!("error: {}", e.error.as_deref().unwrap_or_default());
            }
            Ok(s.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = execute(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    });
    ExitCode::from(code as u8)
}
