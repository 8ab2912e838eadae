//! JSON document formats and command layer for the `bilens` CLI.
//!
//! Every input and output is a single JSON object with one payload key
//! (`set`, `fn`, `object`, `lens`, `adaptor`, `cospan`, `cone`, `span`,
//! `adjunct`, `factors`, or a result key) plus an optional `sets` array
//! that defines, by name, the finite sets the payload refers to. Functions
//! and lenses reference sets by name only, so a document either bundles
//! its set definitions or relies on files preloaded with `--sets`.
//!
//! Output is deterministic: sets are listed in first-use order, tables in
//! domain order, and maps preserve insertion order.

pub mod commands;
pub mod context;
pub mod json;
pub mod pretty;

/// How a successfully executed command should exit.
///
/// `Finding` means a verifier or law check produced a counterexample (the
/// witness is in the printed JSON): exit code 1. Malformed input and
/// endpoint mismatches are [`CliError`]s instead: exit code 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Finding,
}

/// A command's printed value and exit disposition.
pub struct CommandResult {
    pub value: serde_json::Value,
    pub outcome: Outcome,
}

/// Input-side failures: unreadable files, malformed JSON, schema
/// violations, unknown names, endpoint mismatches. All exit with code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(format!("io error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(format!("invalid json: {e}"))
    }
}

pub(crate) fn input_err(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}
