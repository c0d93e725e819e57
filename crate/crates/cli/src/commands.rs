use cosk_core::bochner::{classify_with, Classification, ClassifyOptions, VerdictKind};
use cosk_core::second_kind::{analyze, SpectrumExport};
use cosk_core::tensor::CurvatureTensor;
use serde::Serialize;
use serde_json::Value;

use crate::config::{Command, Format, RunConfig, Source};
use crate::error::{exit, CliError, CliResult};
use crate::models::{build_model, load_tensor};
use crate::suite::{run_suite, SuiteOptions, SuiteReport};

/// The tensor named by `--model` or `--input`, plus a label for reports.
pub fn source_tensor(cfg: &RunConfig) -> CliResult<Option<(String, CurvatureTensor)>> {
    match &cfg.source {
        None => Ok(None),
        Some(Source::Model(m)) => {
            let n = *cfg
                .dims
                .first()
                .ok_or_else(|| CliError::usage("built-in models need --n"))?;
            Ok(Some((format!("{m} (n = {n})"), build_model(*m, n, cfg.seed, cfg.epsilon)?)))
        }
        Some(Source::Input(path)) => {
            let r = load_tensor(path, cfg.tol)?;
            if let Some(&n) = cfg.dims.first() {
                if n != r.n() {
                    return Err(CliError::usage(format!(
                        "--n {n} does not match the file's n = {}",
                        r.n()
                    )));
                }
            }
            Ok(Some((path.display().to_string(), r)))
        }
    }
}

fn required_tensor(cfg: &RunConfig) -> CliResult<CurvatureTensor> {
    cfg.validate()?;
    source_tensor(cfg)?
        .map(|(_, r)| r)
        .ok_or_else(|| CliError::usage("a tensor source is required: pass --model or --input"))
}

pub fn cmd_spectrum(cfg: &RunConfig) -> CliResult<SpectrumExport> {
    let r = required_tensor(cfg)?;
    let (_, spec) = analyze(&r)?;
    Ok(spec.export())
}

pub fn cmd_classify(cfg: &RunConfig) -> CliResult<Classification> {
    let r = required_tensor(cfg)?;
    let opts = ClassifyOptions {
        alpha: cfg.alpha,
        theta: cfg.theta,
    };
    Ok(classify_with(&r, opts)?)
}

/// Runs the suite. A supplied tensor is validated first (so symmetry
/// defects exit with code 3) and then checked alongside the suite.
pub fn cmd_verify(cfg: &RunConfig) -> CliResult<SuiteReport> {
    cfg.validate()?;
    let supplied = source_tensor(cfg)?;
    let opts = SuiteOptions {
        dims: cfg.suite_dims(),
        trials: cfg.trials,
        seed: cfg.seed,
        ..Default::default()
    };
    let report = run_suite(&opts, supplied.as_ref().map(|(l, r)| (l.as_str(), r)))?;
    Ok(report)
}

/// Output text, exit code and an optional message for stderr.
#[derive(Debug)]
pub struct Rendered {
    pub body: String,
    pub code: u8,
    pub message: Option<String>,
}

pub fn run(cfg: &RunConfig) -> CliResult<Rendered> {
    match cfg.command {
        Command::Spectrum => {
            let spec = cmd_spectrum(cfg)?;
            let body = match cfg.format {
                Format::Json => to_json(&spec)?,
                Format::Csv => {
                    let rows = spec.values.iter().enumerate().map(|(i, v)| [i.to_string(), v.to_string()]);
                    to_csv(&["index", "value"], rows)?
                }
            };
            Ok(Rendered {
                body,
                code: exit::OK,
                message: None,
            })
        }
        Command::Classify => {
            let c = cmd_classify(cfg)?;
            let not_applicable = c.verdict.verdict == VerdictKind::NotApplicable;
            let body = match cfg.format {
                Format::Json => to_json(&c)?,
                Format::Csv => {
                    let mut rows = Vec::new();
                    flatten("", &serde_json::to_value(&c).map_err(json_err)?, &mut rows);
                    to_csv(&["field", "value"], rows)?
                }
            };
            Ok(Rendered {
                body,
                code: if not_applicable { exit::NOT_APPLICABLE } else { exit::OK },
                message: not_applicable.then(|| format!("not applicable: {}", c.verdict.details)),
            })
        }
        Command::Verify => {
            let rep = cmd_verify(cfg)?;
            let body = match cfg.format {
                Format::Json => to_json(&rep)?,
                Format::Csv => {
                    let rows = rep.checks.iter().map(|c| {
                        let v = serde_json::to_value(c.relation).unwrap_or(Value::Null);
                        [
                            c.name.clone(),
                            c.n.map(|n| n.to_string()).unwrap_or_default(),
                            c.passed.to_string(),
                            c.measured.map(|m| m.to_string()).unwrap_or_default(),
                            v.as_str().unwrap_or_default().to_string(),
                            c.threshold.to_string(),
                            c.samples.to_string(),
                            c.detail.clone(),
                        ]
                    });
                    to_csv(
                        &["check", "n", "passed", "measured", "relation", "threshold", "samples", "detail"],
                        rows,
                    )?
                }
            };
            Ok(Rendered {
                body,
                code: if rep.passed { exit::OK } else { exit::SUITE_FAILED },
                message: rep.first_failure.map(|f| format!("first failing check: {f}")),
            })
        }
    }
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::new(exit::SUITE_FAILED, format!("cannot serialize report: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(json_err)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<const K: usize, I>(header: &[&str; K], rows: I) -> CliResult<String>
where
    I: IntoIterator,
    I::Item: IntoIterator,
    <I::Item as IntoIterator>::Item: AsRef<[u8]>,
{
    let csv_err = |e: csv::Error| CliError::new(exit::SUITE_FAILED, format!("cannot write csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::new(exit::SUITE_FAILED, format!("cannot write csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::new(exit::SUITE_FAILED, e.to_string()))
}

/// Dotted paths to leaves: `report.cone.margin`, `spectrum.3`.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<[String; 2]>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out);
            }
        }
        Value::Null => out.push([prefix.to_string(), String::new()]),
        Value::String(s) => out.push([prefix.to_string(), s.clone()]),
        other => out.push([prefix.to_string(), other.to_string()]),
    }
}
