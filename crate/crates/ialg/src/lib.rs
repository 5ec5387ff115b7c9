//! Script front end for `ialg-core`: parse a script, run it, and render
//! the results as JSON or exported tables.

pub mod error;
pub mod exec;
pub mod export;
pub mod json;
pub mod script;

pub use error::CliError;
pub use exec::{execute, Options, RunResult, DEFAULT_MAX_ORDER};
pub use script::{parse_inline, parse_script, render, Script};
