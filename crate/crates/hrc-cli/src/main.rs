use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hrc_cli::commands::{self, FitKind, NoisePort, PortSelection};
use hrc_cli::config::RunConfig;
use hrc_cli::output::Provenance;
use hrc_cli::{tool_version, CliError};

/// Frequency-domain simulator and parameter-fitting toolkit for a
/// hybrid readout cavity speedmeter.
#[derive(Parser)]
#[command(name = "hrc", version, about)]
struct Cli {
    /// Path to a TOML run configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for generated artifacts.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Seed recorded in artifact provenance.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-mode splitting and intra-cavity intensity sweep.
    Resonance,
    /// Sideband transfer coefficients over the frequency grid.
    Tf {
        /// Output port to summarize: 1, 2, or both.
        #[arg(long, default_value = "both")]
        port: PortSelection,
    },
    /// Quantum noise budget of both readout ports.
    Noise {
        /// Homodyne angle, rad.
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        zeta: f64,
        /// Port whose total is summarized: 1 or 2.
        #[arg(long, default_value = "2")]
        port: NoisePort,
        /// Combine both ports to cancel positional back-action.
        #[arg(long)]
        optimal_readout: bool,
    },
    /// Multimode membrane force-to-output transfer.
    Membrane,
    /// Sensitivity comparison of meter topologies, in SQL units.
    Compare,
    /// Fit model parameters to measured data.
    Fit {
        /// Model to fit.
        #[arg(long, value_enum)]
        kind: FitKind,
        /// Input CSV path.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: &Cli) -> hrc_cli::Result<String> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => {
            let cfg = RunConfig::default();
            cfg.validate()?;
            cfg
        }
    };
    let prov = Provenance {
        tool_version: tool_version(),
        config_hash: cfg.content_hash(),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Resonance => commands::run_resonance(&cfg, &prov, &cli.out_dir),
        Command::Tf { port } => commands::run_tf(&cfg, &prov, &cli.out_dir, *port),
        Command::Noise {
            zeta,
            port,
            optimal_readout,
        } => commands::run_noise(&cfg, &prov, &cli.out_dir, *zeta, *port, *optimal_readout),
        Command::Membrane => commands::run_membrane(&cfg, &prov, &cli.out_dir),
        Command::Compare => commands::run_compare(&cfg, &prov, &cli.out_dir),
        Command::Fit { kind, input, out } => commands::run_fit(&cfg, *kind, input, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("hrc: {err}");
            ExitCode::from(match err {
                CliError::Validation(_) => 2u8,
                CliError::Numerical(_) => 3u8,
            })
        }
    }
}
