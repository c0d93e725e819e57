use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cosk_cli::{exit, run, CliError, Command, Format, Model, RunConfig, Source};

#[derive(Parser, Debug)]
#[command(name = "cosk", version, about = "Curvature operator of the second kind: spectra, classification, verification")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Built-in tensor: sphere, flat, near_sphere, fubini_study
    #[arg(long, global = true)]
    model: Option<Model>,

    /// Tensor file ({"n": .., "components": [[i, j, k, l, value], ..]})
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Dimension; `verify` accepts a comma-separated list
    #[arg(long = "n", global = true, value_delimiter = ',')]
    n: Vec<usize>,

    #[arg(long, global = true, env = "COSK_SEED", default_value_t = 0)]
    seed: u64,

    /// Random tensors per dimension and check
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Symmetry tolerance for loaded tensors
    #[arg(long, global = true, default_value_t = cosk_core::DEFAULT_TOL)]
    tol: f64,

    /// Override θ(n) for classification (exploratory)
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Cone index α
    #[arg(long, global = true, default_value_t = 2.0)]
    alpha: f64,

    /// Weyl amplitude of near_sphere
    #[arg(long, global = true, default_value_t = 0.05)]
    epsilon: f64,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// json or csv
    #[arg(long, global = true, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Eigenvalues of the curvature operator of the second kind
    Spectrum,
    /// Flat / round sphere / extremal profile / inconclusive verdict
    Classify,
    /// Run the verification suite
    Verify,
}

impl Cli {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let command = match self.command {
            Cmd::Spectrum => Command::Spectrum,
            Cmd::Classify => Command::Classify,
            Cmd::Verify => Command::Verify,
        };
        let source = match (self.model, self.input) {
            (Some(_), Some(_)) => return Err(CliError::usage("--model and --input are mutually exclusive")),
            (Some(m), None) => Some(Source::Model(m)),
            (None, Some(p)) => Some(Source::Input(p)),
            (None, None) => None,
        };
        let cfg = RunConfig {
            command,
            source,
            dims: self.n,
            seed: self.seed,
            trials: self.trials,
            tol: self.tol,
            theta: self.theta,
            alpha: self.alpha,
            epsilon: self.epsilon,
            out: self.out,
            format: self.format,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::new(exit::SUITE_FAILED, format!("cannot write report: {e}"));
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(io_err),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(io_err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.into_config().and_then(|cfg| {
        let out = run(&cfg)?;
        emit(&cfg, &out.body)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            if let Some(msg) = out.message {
                eprintln!("cosk: {msg}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("cosk: error: {e}");
            ExitCode::from(e.code)
        }
    }
}
