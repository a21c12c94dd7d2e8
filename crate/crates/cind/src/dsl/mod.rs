//! The script language: lexer, parser, printer, name resolution and the
//! interpreter that runs `check` commands.

pub mod ast;
mod elab;
pub mod interp;
pub mod lexer;
pub mod parser;
mod printer;

use std::fmt;

pub use ast::{Decl, SExpr, Script};
pub use elab::elaborate;
pub use interp::{run, CheckOutcome, Outcome};
pub use lexer::Pos;
pub use parser::{parse, parse_term, Parsed};

/// A syntax error with the set of tokens that would have been accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(pos: Pos, expected: Vec<String>, found: &str) -> Self {
        ParseError { pos, expected, found: found.to_string() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found {}", self.pos, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{pos}: unresolved name `{name}`")]
    Unresolved { pos: Pos, name: String },
    #[error("{pos}: {message}")]
    Kind { pos: Pos, message: String },
    #[error("{pos}: {message}")]
    Eval { pos: Pos, message: String },
    #[error("{pos}: {message}")]
    Budget { pos: Pos, message: String },
}

impl ScriptError {
    pub fn pos(&self) -> Pos {
        match self {
            ScriptError::Parse(e) => e.pos,
            ScriptError::Unresolved { pos, .. }
            | ScriptError::Kind { pos, .. }
            | ScriptError::Eval { pos, .. }
            | ScriptError::Budget { pos, .. } => *pos,
        }
    }
}
