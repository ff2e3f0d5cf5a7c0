// SPDX-License-Identifier: Apache-2.0

use alloc::string::{String, ToString};
use core::fmt;

use super::Circuit;

/// How to treat gate names other than `cnot` and `t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Any other gate is an error.
    #[default]
    Strict,
    /// Single-qubit gates other than `t` are dropped; other unknown gates are
    /// still errors.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownGate(String),
    Arity { gate: String, expected: usize, found: usize },
    InvalidQubitId(String),
    IdenticalOperands(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnknownGate(g) => write!(f, "unknown gate `{g}`"),
            ParseErrorKind::Arity { gate, expected, found } => {
                write!(f, "`{gate}` takes {expected} operand(s), found {found}")
            }
            ParseErrorKind::InvalidQubitId(id) => write!(f, "invalid qubit id `{id}`"),
            ParseErrorKind::IdenticalOperands(id) => {
                write!(f, "CNOT operands must differ, got `{id}` twice")
            }
        }
    }
}

impl core::error::Error for ParseError {}

fn valid_id(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the textual circuit format in strict mode.
///
/// Statements are separated by `;` or newlines, tokens by whitespace, and `#`
/// starts a comment running to the end of the line. Gate names are
/// case-insensitive: `cnot <control> <target>` and `t <qubit>`.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    parse_circuit_with(text, ParseMode::Strict)
}

pub fn parse_circuit_with(text: &str, mode: ParseMode) -> Result<Circuit, ParseError> {
    let mut circuit = Circuit::new();
    for (line_no, raw) in text.split('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in line.split(';') {
            // (column, token), columns 1-based in chars
            let mut toks = tokens(stmt, offset);
            offset += stmt.chars().count() + 1;
            let Some((col, name)) = toks.next() else { continue };
            let operands: alloc::vec::Vec<(usize, &str)> = toks.collect();
            let err = |column, kind| ParseError { line: line_no + 1, column, kind };
            let lower = name.to_ascii_lowercase();
            let expected = match lower.as_str() {
                "cnot" => 2,
                "t" => 1,
                _ if mode == ParseMode::Lenient && operands.len() == 1 => {
                    let (c, id) = operands[0];
                    if !valid_id(id) {
                        return Err(err(c, ParseErrorKind::InvalidQubitId(id.to_string())));
                    }
                    continue;
                }
                _ => return Err(err(col, ParseErrorKind::UnknownGate(name.to_string()))),
            };
            if operands.len() != expected {
                return Err(err(
                    col,
                    ParseErrorKind::Arity { gate: name.to_string(), expected, found: operands.len() },
                ));
            }
            for &(c, id) in &operands {
                if !valid_id(id) {
                    return Err(err(c, ParseErrorKind::InvalidQubitId(id.to_string())));
                }
            }
            if expected == 2 {
                let (c1, a) = operands[0];
                let (_, b) = operands[1];
                if a == b {
                    return Err(err(c1, ParseErrorKind::IdenticalOperands(a.to_string())));
                }
                circuit.cnot(a, b).expect("operands checked");
            } else {
                circuit.t(operands[0].1).expect("operand checked");
            }
        }
    }
    Ok(circuit)
}

fn tokens(stmt: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut chars = 0usize;
    let mut start: Option<(usize, usize)> = None;
    let mut out = alloc::vec::Vec::new();
    for (byte, ch) in stmt.char_indices() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push((offset + c + 1, &stmt[b..byte]));
            }
        } else if start.is_none() {
            start = Some((byte, chars));
        }
        chars += 1;
    }
    if let Some((b, c)) = start {
        out.push((offset + c + 1, &stmt[b..]));
    }
    out.into_iter()
}
