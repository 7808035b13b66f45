use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ohsawa_cli::{emit_report, exit, parse_t_grid, run_analyze, AnalyzeOptions, Format};
use ohsawa_core::shell_oracle::{default_t_grid, DEFAULT_SAMPLES, DEFAULT_SEED};
use ohsawa_core::Execution;

#[derive(Parser)]
#[command(name = "ohsawa", version, about = "Ohsawa-norm singularity analysis of toric psh functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    CsvBundle,
}

#[derive(Clone)]
struct TGrid(Vec<f64>);

fn parse_grid(s: &str) -> Result<TGrid, String> {
    parse_t_grid(s).map(TGrid)
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the Newton body described by a JSON spec.
    Analyze {
        spec: PathBuf,
        /// Evaluate the shell integrals and classify their trend.
        #[arg(long)]
        shell: bool,
        /// Run the calculus checks on the volume function.
        #[arg(long)]
        checks: bool,
        /// Comma-separated shell levels, decreasing geometrically.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        t_grid: Option<TGrid>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output directory; the JSON report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Run every loop on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INVALID_INPUT as u8 } else { 0 });
        }
    };
    let Command::Analyze { spec, shell, checks, t_grid, samples, seed, out, format, sequential } = cli.command;
    let opts = AnalyzeOptions {
        shell,
        checks,
        t_grid: t_grid.map_or_else(default_t_grid, |g| g.0),
        samples,
        seed,
        exec: if sequential { Execution::Sequential } else { Execution::default() },
    };
    let format = match format {
        FormatArg::Json => Format::Json,
        FormatArg::CsvBundle => Format::CsvBundle,
    };
    if format == Format::CsvBundle && out.is_none() {
        eprintln!("error: --format csv-bundle needs --out");
        return ExitCode::from(exit::INVALID_INPUT as u8);
    }
    let result = run_analyze(&spec, &opts).and_then(|report| {
        emit_report(&report, format, out.as_deref())?;
        if out.is_none() {
            print!("{}", report.to_json());
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
