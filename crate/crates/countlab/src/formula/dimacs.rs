//! DIMACS CNF input and output.

use thiserror::Error;

use super::{CnfFormula, FormulaError};

/// Parse errors, each naming the offending line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    ClauseBeforeHeader { line: usize },
    #[error("line {line}: unexpected token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {source}")]
    InvalidClause { line: usize, source: FormulaError },
    #[error("line {line}: clause not terminated by 0")]
    UnterminatedClause { line: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
}

/// Parses DIMACS CNF text: optional `c` comment lines, one
/// `p cnf <vars> <clauses>` header, then zero-terminated clauses.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut formula: Option<CnfFormula> = None;
    let mut declared_clauses = 0usize;
    let mut current: Vec<i32> = Vec::new();
    let mut comments: Vec<String> = Vec::new();
    let mut last_line = 0usize;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "c" || trimmed.starts_with("c ") {
            comments.push(trimmed.strip_prefix('c').unwrap().trim_start().to_string());
            continue;
        }
        if trimmed.starts_with('p') {
            if formula.is_some() {
                return Err(DimacsError::MalformedHeader {
                    line: lineno,
                    msg: "duplicate header".to_string(),
                });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(DimacsError::MalformedHeader {
                    line: lineno,
                    msg: format!("expected `p cnf <vars> <clauses>`, got {trimmed:?}"),
                });
            }
            let num_vars: u32 = fields[2]
                .parse()
                .map_err(|_| DimacsError::MalformedHeader {
                    line: lineno,
                    msg: format!("bad variable count {:?}", fields[2]),
                })?;
            if num_vars == 0 {
                return Err(DimacsError::MalformedHeader {
                    line: lineno,
                    msg: "variable count must be positive".to_string(),
                });
            }
            declared_clauses = fields[3]
                .parse()
                .map_err(|_| DimacsError::MalformedHeader {
                    line: lineno,
                    msg: format!("bad clause count {:?}", fields[3]),
                })?;
            formula = Some(CnfFormula::new(num_vars));
            continue;
        }

        let f = formula
            .as_mut()
            .ok_or(DimacsError::ClauseBeforeHeader { line: lineno })?;
        for token in trimmed.split_whitespace() {
            let value: i32 = token.parse().map_err(|_| DimacsError::BadToken {
                line: lineno,
                token: token.to_string(),
            })?;
            if value == 0 {
                f.add_clause_dimacs(&current)
                    .map_err(|source| DimacsError::InvalidClause {
                        line: lineno,
                        source,
                    })?;
                current.clear();
            } else {
                current.push(value);
            }
        }
    }

    let mut formula = formula.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause { line: last_line });
    }
    if formula.num_clauses() != declared_clauses {
        return Err(DimacsError::ClauseCountMismatch {
            declared: declared_clauses,
            found: formula.num_clauses(),
        });
    }
    for comment in comments {
        formula.push_comment(comment);
    }
    Ok(formula)
}

/// Emits DIMACS text; inverse of [`parse_dimacs`] up to comment placement.
pub fn emit_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    for comment in formula.comments() {
        out.push_str("c ");
        out.push_str(comment);
        out.push('\n');
    }
    out.push_str(&format!(
        "p cnf {} {}\n",
        formula.num_vars(),
        formula.num_clauses()
    ));
    for clause in formula.clauses() {
        for &lit in clause {
            out.push_str(&format!("{} ", lit.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}

impl CnfFormula {
    /// Shorthand for [`emit_dimacs`].
    pub fn to_dimacs(&self) -> String {
        emit_dimacs(self)
    }
}
