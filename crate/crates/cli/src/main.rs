use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mirrorplan::analysis::DEFAULT_GRID_SIZE;
use mirrorplan_cli::commands::{self, CliError};
use mirrorplan_cli::service::{self, AppState};

#[derive(Parser)]
#[command(name = "mirrorplan", version, about = "Optimize single-camera multi-mirror arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the optimizer and write pareto.csv, trace.csv, evaluations.csv,
    /// selected.json, arrangement.svg and the C-point analysis grids.
    Optimize {
        #[arg(long)]
        config: PathBuf,
        /// Overrides hs.seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Cells per axis of the density and contour grids.
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid_size: usize,
    },
    /// Evaluate one design and print the arrangement as JSON.
    Evaluate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long = "theta1-deg", allow_negative_numbers = true)]
        theta1_deg: f64,
    },
    /// Draw a solution JSON (selected.json or evaluate output) as SVG.
    Render {
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the HTTP+JSON API.
    Serve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Also write each finished job's files below the output directory.
        #[arg(long)]
        write_through: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Optimize { config, seed, grid_size } => {
            let mut cfg = commands::load_config(&config)?;
            if let Some(seed) = seed {
                cfg.hs.seed = seed;
            }
            for path in commands::optimize(&cfg, grid_size)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Evaluate { config, a, b, c, theta1_deg } => {
            let cfg = commands::load_config(&config)?;
            let doc = commands::evaluate(&cfg, a, b, c, theta1_deg)?;
            println!("{}", serde_json::to_string_pretty(&doc).expect("solution serializes"));
            Ok(())
        }
        Command::Render { solution, out } => commands::render(&solution, &out),
        Command::Serve { config, port, host, write_through } => {
            let cfg = commands::load_config(&config)?;
            let root = write_through.then(|| commands::output_dir(&cfg));
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::new(1, e.to_string()))?;
            runtime.block_on(service::serve(AppState::new(cfg, root), &host, port))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { CliError::INVALID_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
