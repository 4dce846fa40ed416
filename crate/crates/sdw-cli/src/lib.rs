//! Session DSL front end for the graded commutative-algebra kernel:
//! parsing, evaluation and report rendering. The `sdw` binary wraps
//! [`run_file`].

pub mod ast;
pub mod parser;
pub mod session;

use session::{Config, RunOutcome, SessionError};

pub use parser::parse_session;
pub use session::{render_json, render_text, run_session};

/// Parses and runs a session file.
pub fn run_file(path: &str, config: &Config) -> Result<RunOutcome, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let session = parse_session(&text).map_err(|e| format!("{path}:{e}"))?;
    run_session(&session, config).map_err(|SessionError(m)| format!("{path}: {m}"))
}
