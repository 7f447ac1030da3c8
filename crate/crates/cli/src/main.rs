//! `twospin`: figure data, sweeps, spectra and ion-trap plans for the
//! two-qubit common-bath model.

mod output;
mod params;
mod scenarios;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use params::Params;
use scenarios::Scenario;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] twospin::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use twospin::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(
                E::Domain(_) | E::InvalidRates(_) | E::InvalidState(_) | E::InvalidCoefficients(_) | E::Config(_),
            ) => 2,
            CliError::Model(E::Io { .. }) | CliError::Io { .. } => 1,
            CliError::Model(_) | CliError::Json(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "twospin", version, about = "Dissipative entanglement of two qubits in a common bath")]
struct Cli {
    #[arg(long, value_enum)]
    scenario: Scenario,
    /// Parameter override, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Flat TOML file of parameters, applied before --set.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads for sweeps; all cores when absent.
    #[arg(long)]
    threads: Option<usize>,
    /// Print the scenario's keys with defaults and exit.
    #[arg(long)]
    keys: bool,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let keys = cli.scenario.keys();
    if cli.keys {
        for k in keys {
            println!("{:<18} {:<20} {}", k.name, k.default, k.help);
        }
        return Ok(());
    }
    let mut params = Params::defaults(keys);
    if let Some(path) = &cli.config {
        params.load(keys, path)?;
    }
    for pair in &cli.set {
        params.set_pair(keys, pair)?;
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let result = cli.scenario.run(&params)?;
    let json = matches!(cli.format, Format::Json);
    let (path, sink): (String, Box<dyn Write>) = match &cli.out {
        Some(p) => {
            let f = File::create(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            (p.display().to_string(), Box::new(BufWriter::new(f)))
        }
        None => ("<stdout>".into(), Box::new(std::io::stdout().lock())),
    };
    let mut sink = sink;
    result
        .write(&mut sink, json)
        .and_then(|_| sink.flush())
        .map_err(|source| CliError::Io { path, source })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
