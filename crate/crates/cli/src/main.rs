use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ph_biarc::StreamMode;
use ph_biarc_cli::{convergence, demo_stream, eval_json, interpolate_file, AnalyticCurve, CliError};

#[derive(Parser)]
#[command(name = "ph-biarc", version, about = "C2 PH quintic biarc splines from streamed data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Hermite,
    Points,
}

#[derive(Subcommand)]
enum Command {
    /// Refinement study on an analytic test curve.
    Convergence {
        /// helix, torus, lissajous, zerocurv, or 1-4.
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 0)]
        kmin: u32,
        #[arg(long, default_value_t = 9)]
        kmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolate records from a text file.
    Interpolate {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Run the six-point streaming demo.
    DemoStream {
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Evaluate a saved spline.
    Eval {
        #[arg(long)]
        in_json: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Convergence { curve, kmin, kmax, out } => {
            let curve: AnalyticCurve = curve.parse()?;
            let rows = convergence::run_convergence(curve, kmin, kmax)?;
            let csv = convergence::write_convergence_csv(&rows);
            match out {
                Some(path) => ph_biarc_cli::io::write_text(&path, &csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Interpolate { mode, input, out_json, out_csv } => {
            let mode = match mode {
                Mode::Hermite => StreamMode::Hermite,
                Mode::Points => StreamMode::Points,
            };
            let spline = interpolate_file(&input, mode, out_json.as_deref(), out_csv.as_deref())?;
            eprintln!("{} segments", spline.segments.len());
        }
        Command::DemoStream { outdir } => {
            let spline = demo_stream(&outdir)?;
            eprintln!("{} segments written to {}", spline.segments.len(), outdir.display());
        }
        Command::Eval { in_json, at } => {
            let p = eval_json(&in_json, at)?;
            println!("{at},{},{},{}", p.x, p.y, p.z);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
