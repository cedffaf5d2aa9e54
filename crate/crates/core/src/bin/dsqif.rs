use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use dsqif::scenario::{load_scenario, run_scenario, Report};
use dsqif::Error;

#[derive(Parser)]
#[command(name = "dsqif", version, about = "Belief-based information flow analysis of small programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more scenario files and report the flow of each interaction.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Scenario file; repeat to run several in parallel.
    #[arg(long = "scenario", required = true)]
    scenarios: Vec<PathBuf>,
    /// Overrides the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the loop iteration limit.
    #[arg(long = "max-loop-iters")]
    max_loop_iters: Option<usize>,
    /// Overrides the loop residual tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Include every intermediate mass.
    #[arg(long)]
    trace: bool,
}

fn analyze(path: &PathBuf, args: &AnalyzeArgs) -> Result<Report, Error> {
    let mut s = load_scenario(path)?;
    if let Some(seed) = args.seed {
        s.config.seed = seed;
    }
    if let Some(n) = args.max_loop_iters {
        s.config.limits.max_iterations = n;
    }
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Scenario(format!("tolerance must be positive, got {t}")));
        }
        s.config.limits.tolerance = t;
    }
    run_scenario(&s)
}

fn main() -> ExitCode {
    let Command::Analyze(args) = Cli::parse().command;
    let results: Vec<Result<Report, Error>> = thread::scope(|scope| {
        let handles: Vec<_> = args.scenarios.iter().map(|p| scope.spawn(|| analyze(p, &args))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Internal("scenario run panicked".into()))))
            .collect()
    });

    let mut out = std::io::stdout().lock();
    let mut code = 0;
    let mut json = Vec::new();
    for (path, result) in args.scenarios.iter().zip(results) {
        match result {
            Ok(report) => match args.format {
                Format::Table => {
                    let _ = write!(out, "{}", report.render_table(args.trace));
                }
                Format::Json => json.push(report.to_json(args.trace)),
            },
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                if code == 0 {
                    code = e.exit_code();
                }
            }
        }
    }
    let doc = match json.len() {
        0 => None,
        1 => json.pop(),
        _ => Some(serde_json::Value::Array(json)),
    };
    if let Some(doc) = doc {
        // A closed pipe is not worth a panic.
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    }
    ExitCode::from(code as u8)
}
