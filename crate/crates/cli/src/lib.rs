//! Batch driver for `cosk-core`: built-in models, tensor files, the
//! verification suite, and JSON / CSV reports.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod models;
pub mod suite;

pub use commands::{cmd_classify, cmd_spectrum, cmd_verify, run, Rendered};
pub use config::{Command, Format, Model, RunConfig, Source};
pub use error::{exit, CliError, CliResult};
