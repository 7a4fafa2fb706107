//! Plain-text concept-class files.
//!
//! ```text
//! # the chain on three points
//! n=3
//! 000
//! 001
//! 011
//! 111
//! ```
//!
//! The header `n=<int>` comes first; every following non-blank line holds one
//! concept as an `n`-character string over `{0,1}`. `#` starts a comment that
//! runs to the end of the line. Repeated concepts are rejected.

use std::path::Path;

use crate::concept::{Concept, ConceptClass, MAX_INSTANCES};
use crate::error::{Error, Result};

pub fn parse_class(text: &str) -> Result<ConceptClass> {
    let mut n: Option<usize> = None;
    let mut concepts: Vec<(usize, Concept)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match n {
            None => {
                let value = line
                    .strip_prefix("n=")
                    .ok_or_else(|| err(format!("expected header `n=<int>`, found {line:?}")))?;
                let parsed: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("invalid instance count {value:?}")))?;
                if !(1..=MAX_INSTANCES).contains(&parsed) {
                    return Err(err(format!("n = {parsed} is outside 1..={MAX_INSTANCES}")));
                }
                n = Some(parsed);
            }
            Some(n) => {
                if line.len() != n {
                    return Err(err(format!(
                        "concept {line:?} has length {}, expected {n}",
                        line.len()
                    )));
                }
                let c = Concept::parse(line).ok_or_else(|| {
                    err(format!(
                        "concept {line:?} contains characters other than 0/1"
                    ))
                })?;
                if let Some((first, _)) = concepts.iter().find(|(_, seen)| *seen == c) {
                    return Err(err(format!(
                        "duplicate concept {line} (first seen on line {first})"
                    )));
                }
                concepts.push((line_no, c));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        message: "missing header `n=<int>`".into(),
    })?;
    ConceptClass::new(n, concepts.into_iter().map(|(_, c)| c))
}

pub fn write_class(class: &ConceptClass) -> String {
    let mut out = format!("n={}\n", class.n());
    for c in class.iter() {
        out.push_str(&c.render(class.n()));
        out.push('\n');
    }
    out
}

/// Reads a class file. I/O failures are reported as a parse error on line 0.
pub fn read_class_file(path: &Path) -> Result<ConceptClass> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_class(&text)
}
