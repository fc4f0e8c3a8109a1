use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::kernel::TypeError;

/// A 1-based line/column position in a source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub pos: Pos,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(pos: Pos, expected: &str, found: &str) -> Self {
        ParseError {
            pos,
            expected: BTreeSet::from([expected.to_string()]),
            found: found.to_string(),
        }
    }

    pub fn one_of(pos: Pos, expected: &[&str], found: &str) -> Self {
        ParseError {
            pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.to_string(),
        }
    }
}

fn expected_list(set: &BTreeSet<String>) -> String {
    let items: Vec<&str> = set.iter().map(String::as_str).collect();
    match items.as_slice() {
        [one] => one.to_string(),
        _ => format!("one of {}", items.join(", ")),
    }
}

/// A failure while turning a parsed file into kernel terms, or a kernel
/// rejection of a declaration.
#[derive(Clone, Debug, Error)]
#[error("{pos}: {error}")]
pub struct CheckError {
    pub pos: Pos,
    pub error: TypeError,
}

#[derive(Clone, Debug, Error)]
pub enum FrontendError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Check(#[from] CheckError),
}
