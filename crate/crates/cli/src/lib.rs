//! Command-line front end: configuration, named experiment recipes and
//! CSV/gnuplot output.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod recipes;

pub use commands::{parse_args, run, usage, Command, Invocation};
pub use config::Config;
pub use error::{CliError, CliResult};
pub use recipes::{Plan, Recipe};
