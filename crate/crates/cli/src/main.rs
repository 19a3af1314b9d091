use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand as ClapSubcommand, ValueEnum};
use shellav_cli::{run, CliError, Format, RunConfig, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "shellav", version, about = "Averaged shelling numbers of crystals, quasicrystals and random tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
    Both,
}

#[derive(ClapSubcommand, Debug)]
enum Command {
    /// Central shelling of the square lattice, shells 1..=mmax.
    Central {
        #[arg(long, default_value_t = 16)]
        mmax: u64,
    },
    /// Silver mean chain.
    Chain {
        #[arg(long)]
        rmax: f64,
    },
    /// Rhombic Penrose vertex set.
    Penrose {
        #[arg(long)]
        rmax: f64,
    },
    /// Perfect Ammann-Beenker vertex set; with --order, counted on that periodic approximant.
    Ammann {
        #[arg(long)]
        rmax: f64,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Ammann-Beenker random tiling from simpleton flips on a periodic approximant.
    AmmannRandom {
        #[arg(long, default_value_t = 3.5)]
        rmax: f64,
        #[arg(long, default_value_t = 5)]
        order: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000.0)]
        flips_per_vertex: f64,
        #[arg(long, default_value_t = 1)]
        replicas: usize,
    },
}

fn config(cli: Cli) -> RunConfig {
    let command = match cli.command {
        Command::Central { mmax } => Subcommand::Central { mmax },
        Command::Chain { rmax } => Subcommand::Chain { rmax },
        Command::Penrose { rmax } => Subcommand::Penrose { rmax },
        Command::Ammann { rmax, order } => Subcommand::Ammann { rmax, order },
        Command::AmmannRandom {
            rmax,
            order,
            seed,
            flips_per_vertex,
            replicas,
        } => Subcommand::AmmannRandom {
            rmax,
            order,
            seed,
            flips_per_vertex,
            replicas,
        },
    };
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Svg => Format::Svg,
        FormatArg::Both => Format::Both,
    };
    RunConfig {
        command,
        output: cli.out,
        format,
    }
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SHELLAV_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SHELLAV_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Inconsistent(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads().and_then(|_| run(&config(cli)));
    match result {
        Ok(Some(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("shellav: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
