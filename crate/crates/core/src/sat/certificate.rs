use crate::logic::{write_clause_line, Clause, Cnf, Lit};

/// A clausal refutation: each line must follow from the formula and the
/// earlier lines by reverse unit propagation, and the last line is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub lines: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("line {line}: literal {lit} is outside the formula's variables 1..={num_vars}")]
    UnknownVariable { line: usize, lit: i64, num_vars: u32 },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: clause is not terminated by 0")]
    MissingTerminator { line: usize },
}

impl Certificate {
    pub fn new(lines: Vec<Clause>) -> Certificate {
        Certificate { lines }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// One clause per line, 0-terminated; the final refutation line is `0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.lines {
            write_clause_line(&mut out, c);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, CertificateError> {
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut lits = Vec::new();
            let mut terminated = false;
            for tok in line.split_whitespace() {
                if terminated {
                    return Err(CertificateError::InvalidToken {
                        line: idx + 1,
                        token: tok.to_string(),
                    });
                }
                let code: i32 = tok.parse().map_err(|_| CertificateError::InvalidToken {
                    line: idx + 1,
                    token: tok.to_string(),
                })?;
                match Lit::from_dimacs(code) {
                    Some(l) => lits.push(l),
                    None if code == 0 => terminated = true,
                    None => {
                        return Err(CertificateError::InvalidToken {
                            line: idx + 1,
                            token: tok.to_string(),
                        })
                    }
                }
            }
            if !terminated {
                return Err(CertificateError::MissingTerminator { line: idx + 1 });
            }
            lines.push(Clause::new(lits));
        }
        Ok(Certificate { lines })
    }
}

/// Unit propagation over a growing clause database using occurrence lists.
/// Kept separate from the solver so checking does not reuse solving code.
struct RupChecker {
    clauses: Vec<Vec<Lit>>,
    /// For each literal index, the clauses containing that literal.
    occurs: Vec<Vec<usize>>,
    values: Vec<Option<bool>>,
    empty_present: bool,
}

impl RupChecker {
    fn new(num_vars: u32) -> RupChecker {
        RupChecker {
            clauses: Vec::new(),
            occurs: vec![Vec::new(); 2 * num_vars as usize],
            values: vec![None; num_vars as usize + 1],
            empty_present: false,
        }
    }

    fn add(&mut self, c: &Clause) {
        if c.is_tautology() {
            return;
        }
        if c.is_empty() {
            self.empty_present = true;
        }
        let id = self.clauses.len();
        for &l in c.lits() {
            self.occurs[l.index()].push(id);
        }
        self.clauses.push(c.lits().to_vec());
    }

    fn value(&self, l: Lit) -> Option<bool> {
        self.values[l.var() as usize].map(|b| b == l.is_positive())
    }

    /// True when assuming the negation of `c` leads to a conflict.
    fn implies(&mut self, c: &Clause) -> bool {
        if c.is_tautology() || self.empty_present {
            return true;
        }
        let mut trail: Vec<Lit> = Vec::new();
        let mut conflict = false;
        for &l in c.lits() {
            match self.value(!l) {
                Some(true) => {}
                Some(false) => {
                    conflict = true;
                    break;
                }
                None => {
                    self.values[l.var() as usize] = Some(!l.is_positive());
                    trail.push(!l);
                }
            }
        }
        // units of the database are found by a full scan once
        if !conflict {
            for i in 0..self.clauses.len() {
                if let Some(found) = self.examine(i, &mut trail) {
                    conflict = found;
                    if conflict {
                        break;
                    }
                }
            }
        }
        let mut head = 0;
        while !conflict && head < trail.len() {
            let falsified = !trail[head];
            head += 1;
            let watching = self.occurs[falsified.index()].clone();
            for i in watching {
                if self.examine(i, &mut trail) == Some(true) {
                    conflict = true;
                    break;
                }
            }
        }
        for l in trail {
            self.values[l.var() as usize] = None;
        }
        conflict
    }

    /// Inspects clause `i`: returns `Some(true)` on conflict, assigns and
    /// returns `Some(false)` when unit, `None` otherwise.
    fn examine(&mut self, i: usize, trail: &mut Vec<Lit>) -> Option<bool> {
        let mut open = None;
        let mut count = 0;
        for &l in &self.clauses[i] {
            match self.value(l) {
                Some(true) => return None,
                Some(false) => {}
                None => {
                    count += 1;
                    open = Some(l);
                    if count > 1 {
                        return None;
                    }
                }
            }
        }
        match open {
            None => Some(true),
            Some(l) => {
                self.values[l.var() as usize] = Some(l.is_positive());
                trail.push(l);
                Some(false)
            }
        }
    }
}

/// Checks a reverse-unit-propagation refutation of `cnf`.
pub fn check_certificate(cnf: &Cnf, cert: &Certificate) -> Result<bool, CertificateError> {
    let num_vars = cnf.num_vars();
    for (i, line) in cert.lines.iter().enumerate() {
        if let Some(l) = line.lits().iter().find(|l| l.var() > num_vars) {
            return Err(CertificateError::UnknownVariable {
                line: i + 1,
                lit: l.to_dimacs() as i64,
                num_vars,
            });
        }
    }
    match cert.lines.last() {
        Some(last) if last.is_empty() => {}
        _ => return Ok(false),
    }
    let mut checker = RupChecker::new(num_vars);
    for c in cnf.clauses() {
        checker.add(c);
    }
    for line in &cert.lines {
        if !checker.implies(line) {
            return Ok(false);
        }
        checker.add(line);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clash() -> Cnf {
        Cnf::new(1, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[-1])]).unwrap()
    }

    #[test]
    fn one_line_refutation() {
        let cert = Certificate::new(vec![Clause::empty()]);
        assert_eq!(check_certificate(&clash(), &cert), Ok(true));
    }

    #[test]
    fn last_line_must_be_empty() {
        let cert = Certificate::new(vec![Clause::from_dimacs(&[1])]);
        assert_eq!(check_certificate(&clash(), &cert), Ok(false));
        assert_eq!(check_certificate(&clash(), &Certificate::default()), Ok(false));
    }

    #[test]
    fn non_rup_line_rejected() {
        // "1" does not follow from (1 ∨ 2) by unit propagation
        let cnf = Cnf::new(2, vec![Clause::from_dimacs(&[1, 2])]).unwrap();
        let cert = Certificate::new(vec![Clause::from_dimacs(&[1]), Clause::empty()]);
        assert_eq!(check_certificate(&cnf, &cert), Ok(false));
    }

    #[test]
    fn unknown_variable_is_malformed() {
        let cert = Certificate::new(vec![Clause::from_dimacs(&[5]), Clause::empty()]);
        assert!(matches!(
            check_certificate(&clash(), &cert),
            Err(CertificateError::UnknownVariable { line: 1, lit: 5, .. })
        ));
    }

    #[test]
    fn text_format() {
        let cert = Certificate::new(vec![Clause::from_dimacs(&[-2, 3]), Clause::empty()]);
        let text = cert.to_text();
        assert_eq!(text, "-2 3 0\n0\n");
        assert_eq!(Certificate::parse(&text).unwrap(), cert);
        assert!(matches!(
            Certificate::parse("1 2\n"),
            Err(CertificateError::MissingTerminator { line: 1 })
        ));
        assert!(Certificate::parse("1 0 2\n").is_err());
    }
}
