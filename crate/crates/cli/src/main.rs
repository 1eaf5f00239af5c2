//! `magictrap`: rovibrational levels, polarizability scans, hyperfine maps
//! and magic-condition searches driven by a TOML run configuration.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Report;
use crate::config::Loaded;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "magictrap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound levels of the ground and excited curves.
    SolveRovib(Common),
    /// Real polarizability against detuning, one curve per J.
    AlphaScan(Common),
    /// Imaginary polarizability against laser wavenumber.
    ImagScan(Common),
    /// Hyperfine energies and polarizabilities against polarization angle.
    HyperfineScan(Common),
    /// Magic detuning or magic polarization angle.
    MagicFind(Common),
    /// Γ of the v'=0 line from a known crossing.
    Calibrate(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Config file, or `narb-defaults` for the bundled one.
    #[arg(long)]
    config: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads for scans (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Replace one config value, e.g. `--override fields.e_field_kv_cm=0.5`.
    #[arg(long = "override", value_name = "SECTION.KEY=VALUE")]
    overrides: Vec<String>,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common, fn(&Loaded) -> Result<Report, CliError>) {
        match self {
            Command::SolveRovib(c) => ("solve-rovib", c, commands::solve_rovib),
            Command::AlphaScan(c) => ("alpha-scan", c, commands::alpha_scan),
            Command::ImagScan(c) => ("imag-scan", c, commands::imag_scan),
            Command::HyperfineScan(c) => ("hyperfine-scan", c, commands::hyperfine_scan),
            Command::MagicFind(c) => ("magic-find", c, commands::magic_find),
            Command::Calibrate(c) => ("calibrate", c, commands::calibrate),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, common, command) = cli.command.parts();
    let loaded = config::load(&common.config, &common.overrides)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(CliError::Config("`--threads` must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {:?} threads: {e}", common.threads)))?;
    let report = pool.install(|| command(&loaded))?;

    std::fs::create_dir_all(&common.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", common.out.display())))?;
    let csv = commands::output_path(&common.out, name);
    output::emit_csv(&report.table, &csv)?;
    let dump = common.out.join("effective-config.toml");
    std::fs::write(&dump, config::dump(&loaded.config)?)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", dump.display())))?;
    println!("{}", report.summary);
    println!(
        "wrote {} ({} rows) and {}",
        csv.display(),
        report.table.rows.len(),
        dump.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("magictrap: {e}");
            e.exit_code()
        }
    }
}
