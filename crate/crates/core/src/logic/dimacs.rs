use std::fmt::Write as _;

use super::cnf::{Clause, Cnf, Lit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header, expected `p cnf <vars> <clauses>`")]
    MalformedHeader { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds declared variable count {num_vars}")]
    LiteralOutOfRange { line: usize, lit: i64, num_vars: u32 },
    #[error("last clause is not terminated by 0")]
    MissingTerminator,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

/// Parses DIMACS CNF. Clauses may span lines; each ends at a `0`.
pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut open = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<u32>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::MalformedHeader { line: line_no })?);
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for tok in line.split_whitespace() {
            let code: i64 = tok.parse().map_err(|_| DimacsError::InvalidToken {
                line: line_no,
                token: tok.to_string(),
            })?;
            if code == 0 {
                clauses.push(Clause::new(current.drain(..)));
                open = false;
                continue;
            }
            if code.unsigned_abs() > num_vars as u64 {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    lit: code,
                    num_vars,
                });
            }
            current.push(Lit::from_dimacs(code as i32).expect("nonzero in range"));
            open = true;
        }
    }

    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if open {
        return Err(DimacsError::MissingTerminator);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    Ok(Cnf::new(num_vars, clauses).expect("bounds checked while parsing"))
}

pub fn write_dimacs(cnf: &Cnf) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.len()).unwrap();
    for c in cnf.clauses() {
        write_clause_line(&mut out, c);
    }
    out
}

/// One clause as space-separated literals ending in ` 0`; the empty clause
/// is a lone `0`.
pub fn write_clause_line(out: &mut String, clause: &Clause) {
    for l in clause.lits() {
        write!(out, "{l} ").unwrap();
    }
    out.push_str("0\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_formula() {
        let cnf = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0").unwrap();
        assert_eq!(cnf.num_vars(), 2);
        assert_eq!(
            cnf.clauses(),
            &[Clause::from_dimacs(&[1, 2]), Clause::from_dimacs(&[-1])]
        );
        assert_eq!(write_dimacs(&cnf), "p cnf 2 2\n1 2 0\n-1 0\n");
    }

    #[test]
    fn empty_formula() {
        let cnf = parse_dimacs("p cnf 1 0").unwrap();
        assert!(cnf.is_empty());
        assert_eq!(write_dimacs(&Cnf::default()), "p cnf 0 0\n");
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let cnf = parse_dimacs("c hello\np cnf 3 1\n1 -2\n 3 0\n").unwrap();
        assert_eq!(cnf.clauses()[0], Clause::from_dimacs(&[1, -2, 3]));
    }

    #[test]
    fn duplicate_literals_collapse() {
        let cnf = parse_dimacs("p cnf 2 1\n1 1 -2 1 0\n").unwrap();
        assert_eq!(cnf.clauses()[0].lits(), &[Lit::pos(1), Lit::neg(2)]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_dimacs("p cnf x 1\n1 0"),
            Err(DimacsError::MalformedHeader { line: 1 })
        );
        assert_eq!(parse_dimacs("1 0"), Err(DimacsError::MissingHeader));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n3 0"),
            Err(DimacsError::LiteralOutOfRange { lit: 3, .. })
        ));
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 2"),
            Err(DimacsError::MissingTerminator)
        );
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 2 0"),
            Err(DimacsError::ClauseCount {
                declared: 2,
                found: 1
            })
        );
    }
}
