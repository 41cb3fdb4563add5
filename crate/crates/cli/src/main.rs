use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use paulian_cli::codefile::{parse_json, read_text, ModeName, StateBlock};
use paulian_cli::{load_code_file, run, CliError, Command, Flags, Format};

#[derive(Parser)]
#[command(name = "paulian", version, about = "Paulian stabilizer groups for arbitrary quantum codes")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Knill-Laflamme test and detection classes of the declared errors
    Check(Common),
    /// Syndrome table, stabilizer generators, and their certification
    Synthesize(Common),
    /// Single-shot syndrome extraction and recovery of a supplied state
    Measure {
        #[command(flatten)]
        common: Common,
        /// JSON state block to use instead of the one in the code file
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Monte Carlo error-correction trials
    Simulate(Common),
    /// Concatenate an outer and an inner binary code
    Concat {
        outer: PathBuf,
        inner: PathBuf,
        #[command(flatten)]
        flags: Shared,
    },
}

#[derive(Args)]
struct Common {
    /// Code file
    file: PathBuf,
    #[command(flatten)]
    flags: Shared,
}

#[derive(Args)]
struct Shared {
    /// Numerical tolerance [default: 1e-9]
    #[arg(long)]
    tol: Option<f64>,
    /// Syndrome-space layout
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Monte Carlo trials [default: 1000]
    #[arg(long)]
    trials: Option<u64>,
    /// Random seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Write the output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Minimal,
    ExtendedFull,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

fn execute(cli: Cli) -> Result<Option<CliError>, CliError> {
    let (command, paths, shared, state) = match cli.command {
        Sub::Check(c) => (Command::Check, vec![c.file], c.flags, None),
        Sub::Synthesize(c) => (Command::Synthesize, vec![c.file], c.flags, None),
        Sub::Measure { common, state } => (Command::Measure, vec![common.file], common.flags, state),
        Sub::Simulate(c) => (Command::Simulate, vec![c.file], c.flags, None),
        Sub::Concat { outer, inner, flags } => (Command::Concat, vec![outer, inner], flags, None),
    };
    if let Some(t) = shared.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Validation(vec![format!("--tol must be positive, got {t}")]));
        }
    }
    let mut files = Vec::with_capacity(paths.len());
    for path in &paths {
        let (file, warnings) = load_code_file(path)?;
        for w in warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
        files.push(file);
    }
    let state = match state {
        Some(path) => {
            let mut block: StateBlock = parse_json(&read_text(&path)?, &path.display().to_string())?;
            for v in [&mut block.logical, &mut block.ambient].into_iter().flatten() {
                let n = v.iter().map(|a| a[0] * a[0] + a[1] * a[1]).sum::<f64>().sqrt();
                if n > 0.0 {
                    v.iter_mut().for_each(|a| *a = [a[0] / n, a[1] / n]);
                }
            }
            Some(block)
        }
        None => None,
    };
    let flags = Flags {
        tol: shared.tol,
        mode: shared.mode.map(|m| match m {
            ModeArg::Minimal => ModeName::Minimal,
            ModeArg::ExtendedFull => ModeName::ExtendedFull,
        }),
        trials: shared.trials,
        seed: shared.seed,
        state,
    };
    let format = match shared.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    let outcome = run(command, &files, &flags, format)?;
    let text = outcome.output.render(format)?;
    match &shared.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let failure = match execute(cli) {
        Ok(status) => status,
        Err(e) => Some(e),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
