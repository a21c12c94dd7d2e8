//! Script language, command line and example gallery for the measuring
//! toolkit in `cind_core`.

pub mod dsl;
pub mod gallery;
pub mod json;
pub mod prune;

use cind_core::{Bounds, Status};

pub use dsl::{Outcome, ScriptError};

/// Parses and runs a script.
pub fn run_text(text: &str, bounds: &Bounds) -> Result<Outcome, ScriptError> {
    let parsed = dsl::parse(text)?;
    dsl::run(&parsed, bounds)
}

/// Process exit code for an outcome: 0 all hold, 1 a check failed, 3 a
/// budget ran out.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Budget => 3,
    }
}

/// Exit code for a script that could not be run: 3 for an exhausted budget,
/// 2 otherwise.
pub fn error_exit_code(e: &ScriptError) -> i32 {
    match e {
        ScriptError::Budget { .. } => 3,
        _ => 2,
    }
}

/// One line per check, witnesses indented below, then a summary.
pub fn render_outcome(outcome: &Outcome) -> String {
    let mut out = String::new();
    for c in &outcome.checks {
        let r = &c.report;
        out.push_str(&format!("{} {} {}: {}\n", c.pos, r.claim, r.instance, r.status));
        for w in &r.witnesses {
            out.push_str(&format!("    {}\n", w));
        }
    }
    out.push_str(&format!("{} checks: {}\n", outcome.checks.len(), outcome.status()));
    out
}
