use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const DEFAULT_DIMS: [usize; 5] = [4, 5, 8, 9, 10];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Classify,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Sphere,
    Flat,
    NearSphere,
    FubiniStudy,
}

impl FromStr for Model {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "sphere" => Ok(Self::Sphere),
            "flat" => Ok(Self::Flat),
            "near_sphere" => Ok(Self::NearSphere),
            "fubini_study" => Ok(Self::FubiniStudy),
            other => Err(CliError::usage(format!(
                "unknown model '{other}' (expected sphere, flat, near_sphere or fubini_study)"
            ))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sphere => "sphere",
            Self::Flat => "flat",
            Self::NearSphere => "near_sphere",
            Self::FubiniStudy => "fubini_study",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Model(Model),
    Input(PathBuf),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(CliError::usage(format!("unknown format '{other}' (expected json or csv)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Required by `spectrum` and `classify`; optional extra for `verify`.
    pub source: Option<Source>,
    /// Dimensions. A model takes exactly one; `verify` runs each.
    pub dims: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    /// Symmetry tolerance applied to loaded tensors.
    pub tol: f64,
    pub theta: Option<f64>,
    pub alpha: f64,
    /// Weyl amplitude of the `near_sphere` model.
    pub epsilon: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            source: None,
            dims: Vec::new(),
            seed: 0,
            trials: 100,
            tol: cosk_core::DEFAULT_TOL,
            theta: None,
            alpha: 2.0,
            epsilon: 0.05,
            out: None,
            format: Format::Json,
        }
    }

    pub fn with_model(mut self, model: Model, n: usize) -> Self {
        self.source = Some(Source::Model(model));
        self.dims = vec![n];
        self
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0) {
            return Err(CliError::usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.trials == 0 {
            return Err(CliError::usage("--trials must be at least 1"));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(CliError::usage(format!("--epsilon must be non-negative, got {}", self.epsilon)));
        }
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(CliError::usage(format!("--alpha must be at least 1, got {}", self.alpha)));
        }
        if let Some(t) = self.theta {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::usage(format!("--theta must be non-negative, got {t}")));
            }
        }
        match (&self.source, self.command) {
            (None, Command::Spectrum | Command::Classify) => {
                Err(CliError::usage("a tensor source is required: pass --model or --input"))
            }
            (Some(Source::Model(_)), Command::Spectrum | Command::Classify) if self.dims.len() != 1 => {
                Err(CliError::usage("built-in models need exactly one dimension via --n"))
            }
            (Some(Source::Model(_)), Command::Verify) if self.dims.len() != 1 => {
                Err(CliError::usage("verify with --model needs exactly one dimension via --n"))
            }
            (Some(Source::Input(_)), _) if self.dims.len() > 1 => {
                Err(CliError::usage("--input takes its dimension from the file; pass at most one --n"))
            }
            _ => Ok(()),
        }
    }

    /// Dimensions the verification suite runs over.
    pub fn suite_dims(&self) -> Vec<usize> {
        match (&self.source, self.dims.is_empty()) {
            (None, false) => self.dims.clone(),
            (None, true) => DEFAULT_DIMS.to_vec(),
            // a supplied tensor narrows nothing: the suite still runs the defaults
            (Some(_), _) => DEFAULT_DIMS.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        let base = RunConfig::new(Command::Verify);
        assert!(base.validate().is_ok());
        let mut c = base.clone();
        c.tol = 0.0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = base;
        c.theta = Some(-0.1);
        assert!(c.validate().is_err());
    }

    #[test]
    fn source_rules() {
        assert!(RunConfig::new(Command::Spectrum).validate().is_err());
        let mut c = RunConfig::new(Command::Classify).with_model(Model::Sphere, 5);
        assert!(c.validate().is_ok());
        c.dims = vec![4, 5];
        assert!(c.validate().is_err());
        c.dims.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn parses_names() {
        assert_eq!("fubini_study".parse::<Model>().unwrap(), Model::FubiniStudy);
        assert!("torus".parse::<Model>().is_err());
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!(Model::NearSphere.to_string(), "near_sphere");
    }
}
