use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use zonocalc_cli::{run, Artifacts, CliError, RunConfig, COMMANDS};

/// Exact box splines, partition functions and Todd-operator inversion.
#[derive(Parser, Debug)]
#[command(name = "zonocalc", version)]
struct Args {
    /// One of: box, multispline, partition, dm-basis, vertices, invert,
    /// brion-vergne, index, verify, sample.
    command: String,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write CSV samplings on a grid of this resolution per axis.
    #[arg(long, value_name = "RES")]
    emit_grid: Option<usize>,
}

fn init_threads() {
    if let Some(n) = std::env::var("ZONOCALC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(args: &Args) -> Result<i32, CliError> {
    if !COMMANDS.contains(&args.command.as_str()) {
        return Err(CliError::Config(format!(
            "unknown command `{}`; expected one of {}",
            args.command,
            COMMANDS.join(", ")
        )));
    }
    let cfg = RunConfig::load(&args.config)?;
    let dir = args
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut artifacts = Artifacts::new(&dir)?;
    let outcome = run(&args.command, &cfg, &mut artifacts, args.emit_grid)?;
    for p in artifacts.written() {
        println!("wrote {}", p.display());
    }
    Ok(outcome.code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    init_threads();
    match execute(&args) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => {
            eprintln!("verification mismatch");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("zonocalc: {e}");
            ExitCode::from(2)
        }
    }
}
