use std::fmt;

use crate::logic::{Signature, TermError, Var};

use super::equation::Equation;
use super::lpo::Precedence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub equation: Equation,
}

/// Named equations over a signature, with the precedence used to orient them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSet {
    pub signature: Signature,
    pub precedence: Precedence,
    pub axioms: Vec<Axiom>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate axiom id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("unknown axiom set `{0}`")]
    UnknownSet(String),
    #[error("no axiom with id `{0}`")]
    UnknownAxiom(String),
}

impl AxiomSet {
    pub fn get(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    /// The subset with the given ids, in the set's own order.
    pub fn restrict(&self, ids: &[&str]) -> Result<AxiomSet, AxiomError> {
        if let Some(missing) = ids.iter().find(|id| self.get(id).is_none()) {
            return Err(AxiomError::UnknownAxiom(missing.to_string()));
        }
        Ok(AxiomSet {
            axioms: self
                .axioms
                .iter()
                .filter(|a| ids.contains(&a.id.as_str()))
                .cloned()
                .collect(),
            ..self.clone()
        })
    }

    pub fn equations(&self) -> impl Iterator<Item = &Equation> {
        self.axioms.iter().map(|a| &a.equation)
    }

    fn build(signature: Signature, precedence: Precedence, axioms: &[(&str, &str)]) -> AxiomSet {
        let axioms = axioms
            .iter()
            .map(|(id, src)| Axiom {
                id: id.to_string(),
                equation: Equation::parse(src, &signature).expect("built-in axiom parses"),
            })
            .collect();
        AxiomSet {
            signature,
            precedence,
            axioms,
        }
    }

    /// R1-R3 for `{v, -}` with the definitions of `0`, `1` and `^`.
    pub fn robbins() -> AxiomSet {
        let sig = Signature::boolean();
        let prec = Precedence::by_arity(&sig);
        AxiomSet::build(
            sig,
            prec,
            &[
                ("R1", "x v (y v z) = (x v y) v z"),
                ("R2", "x v y = y v x"),
                ("R3", "-(-(x v y) v -(x v -y)) = x"),
                ("Def1", "0 = -(x v -x)"),
                ("Def2", "1 = x v -x"),
                ("Def3", "x ^ y = -(-x v -y)"),
            ],
        )
    }

    /// Boolean algebra, B1-B10.
    pub fn boolean() -> AxiomSet {
        let sig = Signature::boolean();
        let prec = Precedence::by_arity(&sig);
        AxiomSet::build(
            sig,
            prec,
            &[
                ("B1", "x v (y v z) = (x v y) v z"),
                ("B2", "x v y = y v x"),
                ("B3", "x v (x ^ y) = x"),
                ("B4", "x ^ (y v z) = (x ^ y) v (x ^ z)"),
                ("B5", "x v -x = 1"),
                ("B6", "x ^ (y ^ z) = (x ^ y) ^ z"),
                ("B7", "x ^ y = y ^ x"),
                ("B8", "x ^ (x v z) = x"),
                ("B9", "x v (y ^ z) = (x v y) ^ (x v z)"),
                ("B10", "x ^ -x = 0"),
            ],
        )
    }

    /// Groups: associativity, left identity, left inverse; `i > * > e`.
    pub fn group() -> AxiomSet {
        let sig = Signature::group();
        let prec = Precedence::parse("i > * > e", &sig).expect("valid precedence");
        AxiomSet::build(
            sig,
            prec,
            &[
                ("G1", "(x * y) * z = x * (y * z)"),
                ("G2", "e * x = x"),
                ("G3", "i(x) * x = e"),
            ],
        )
    }

    pub fn builtin(name: &str) -> Result<AxiomSet, AxiomError> {
        match name {
            "robbins" => Ok(AxiomSet::robbins()),
            "boolean" => Ok(AxiomSet::boolean()),
            "group" => Ok(AxiomSet::group()),
            other => Err(AxiomError::UnknownSet(other.to_string())),
        }
    }

    /// Line-oriented axiom file:
    ///
    /// ```text
    /// # comment
    /// signature group          (optional: boolean | robbins | group | empty)
    /// constants a b
    /// functions f/1 g/2
    /// precedence i > * > e     (optional; default orders by arity)
    /// G1: (x * y) * z = x * (y * z)
    /// ```
    ///
    /// Without a `signature` line the base is the union of the boolean and
    /// group signatures. Declarations must precede the equations.
    pub fn parse(text: &str) -> Result<AxiomSet, AxiomError> {
        let mut sig: Option<Signature> = None;
        let mut extra = Signature::empty();
        let mut prec_text: Option<(usize, String)> = None;
        let mut eq_lines: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| AxiomError::Syntax { line: line_no, msg };
            let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let decl = !line.contains(':') || word == "precedence";
            if decl && !eq_lines.is_empty() {
                return Err(syntax("declarations must precede equations".into()));
            }
            match word {
                "signature" if decl => {
                    sig = Some(match rest.trim() {
                        "boolean" => Signature::boolean(),
                        "robbins" => Signature::robbins(),
                        "group" => Signature::group(),
                        "empty" => Signature::empty(),
                        other => return Err(syntax(format!("unknown signature `{other}`"))),
                    });
                }
                "constants" if decl => {
                    for name in rest.split_whitespace() {
                        check_name(name).map_err(&syntax)?;
                        extra = extra.with_symbol(name, 0);
                    }
                }
                "functions" if decl => {
                    for item in rest.split_whitespace() {
                        let (name, arity) = item
                            .rsplit_once('/')
                            .ok_or_else(|| syntax(format!("expected name/arity, got `{item}`")))?;
                        let arity: usize = arity
                            .parse()
                            .map_err(|_| syntax(format!("bad arity in `{item}`")))?;
                        check_name(name).map_err(&syntax)?;
                        extra = extra.with_symbol(name, arity);
                    }
                }
                "precedence" => prec_text = Some((line_no, rest.trim().to_string())),
                _ => {
                    let (id, eq) = line
                        .split_once(':')
                        .ok_or_else(|| syntax(format!("expected `ID: lhs = rhs`, got `{line}`")))?;
                    let id = id.trim();
                    if id.is_empty() || id.contains(char::is_whitespace) {
                        return Err(syntax(format!("bad axiom id `{id}`")));
                    }
                    if eq_lines.iter().any(|(_, seen, _)| seen == id) {
                        return Err(AxiomError::DuplicateId {
                            line: line_no,
                            id: id.to_string(),
                        });
                    }
                    eq_lines.push((line_no, id.to_string(), eq.trim().to_string()));
                }
            }
        }
        let signature = sig
            .unwrap_or_else(|| Signature::boolean().union(&Signature::group()))
            .union(&extra);
        let precedence = match prec_text {
            Some((line, t)) => Precedence::parse(&t, &signature).map_err(|e| AxiomError::Syntax {
                line,
                msg: e.to_string(),
            })?,
            None => Precedence::by_arity(&signature),
        };
        let mut axioms = Vec::new();
        for (line, id, src) in eq_lines {
            let equation = Equation::parse(&src, &signature).map_err(|e| AxiomError::Syntax {
                line,
                msg: e.to_string(),
            })?;
            axioms.push(Axiom { id, equation });
        }
        Ok(AxiomSet {
            signature,
            precedence,
            axioms,
        })
    }
}

fn check_name(name: &str) -> Result<(), String> {
    if Var::from_name(name).is_some() {
        return Err(format!("`{name}` is reserved for variables"));
    }
    let word = !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_');
    if word || matches!(name, "^" | "-" | "*") {
        Ok(())
    } else {
        Err(format!("bad symbol name `{name}`"))
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{}: {}", a.id, a.equation)?;
        }
        Ok(())
    }
}

/// Parses a goal equation, declaring any unknown identifier as a fresh
/// constant of `sig`. Returns the extended signature.
pub fn parse_goal(text: &str, sig: &Signature) -> Result<(Equation, Signature), TermError> {
    let mut sig = sig.clone();
    loop {
        match Equation::parse(text, &sig) {
            Ok(eq) => return Ok((eq, sig)),
            Err(TermError::UnknownSymbol { name, .. })
                if name.chars().all(|c| c.is_alphanumeric() || c == '_')
                    && sig.lookup(&name).is_none() =>
            {
                sig = sig.with_symbol(&name, 0);
            }
            Err(e) => return Err(e),
        }
    }
}
