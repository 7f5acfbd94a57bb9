use std::fmt;
use std::rc::Rc;

use crate::logic::{Position, Signature, Term, TermError, Var};

use super::axioms::{parse_goal, Axiom, AxiomSet};
use super::equation::Equation;
use super::subst::Substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Replace an instance of the axiom's left side by its right side.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "->",
            Direction::Backward => "<-",
        })
    }
}

/// One replacement: at `position`, the instance of axiom `axiom` under
/// `subst` is rewritten in `direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub axiom: String,
    pub position: Position,
    pub subst: Substitution,
    pub direction: Direction,
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.axiom,
            format_position(&self.position),
            self.subst,
            self.direction
        )
    }
}

/// Positions print 1-based and dot-separated; the root is `root`.
pub fn format_position(pos: &[usize]) -> String {
    if pos.is_empty() {
        "root".to_string()
    } else {
        pos.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub fn parse_position(text: &str) -> Option<Position> {
    if text == "root" {
        return Some(Vec::new());
    }
    text.split('.')
        .map(|p| p.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
        .collect()
}

/// A chain of axiom applications leading from a goal's left side to its
/// right side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqProof {
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("no subterm at position {0}")]
    BadPosition(String),
    #[error("expected `{expected}` at the position, found `{found}`")]
    BadInstance { expected: Term, found: Term },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofCheckError {
    #[error("step {step}: {error}")]
    Step { step: usize, error: StepError },
    #[error("proof ends at `{reached}`, goal right side is `{expected}`")]
    WrongEnd { reached: Term, expected: Term },
}

impl EqProof {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps to `start`, returning every intermediate term
    /// (`start` first).
    pub fn replay(&self, start: &Term, axioms: &[Axiom]) -> Result<Vec<Term>, ProofCheckError> {
        let mut terms = vec![start.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let cur = terms.last().expect("nonempty");
            let next = apply_step(cur, step, axioms).map_err(|error| ProofCheckError::Step {
                step: i + 1,
                error,
            })?;
            terms.push(next);
        }
        Ok(terms)
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}

fn apply_step(cur: &Term, step: &ProofStep, axioms: &[Axiom]) -> Result<Term, StepError> {
    let axiom = axioms
        .iter()
        .find(|a| a.id == step.axiom)
        .ok_or_else(|| StepError::UnknownAxiom(step.axiom.clone()))?;
    let (from, to) = match step.direction {
        Direction::Forward => (&axiom.equation.lhs, &axiom.equation.rhs),
        Direction::Backward => (&axiom.equation.rhs, &axiom.equation.lhs),
    };
    let found = cur
        .subterm(&step.position)
        .ok_or_else(|| StepError::BadPosition(format_position(&step.position)))?;
    let expected = step.subst.apply(from);
    if *found != expected {
        return Err(StepError::BadInstance {
            expected,
            found: found.clone(),
        });
    }
    Ok(cur
        .replace_at(&step.position, step.subst.apply(to))
        .expect("position exists"))
}

/// Replays `proof` from `goal.lhs` and reports the first failure.
pub fn check_proof_detailed(
    proof: &EqProof,
    axioms: &[Axiom],
    goal: &Equation,
) -> Result<(), ProofCheckError> {
    let terms = proof.replay(&goal.lhs, axioms)?;
    let reached = terms.last().expect("nonempty");
    if *reached != goal.rhs {
        return Err(ProofCheckError::WrongEnd {
            reached: reached.clone(),
            expected: goal.rhs.clone(),
        });
    }
    Ok(())
}

/// True iff replaying every step transforms `goal.lhs` into `goal.rhs`.
pub fn check_proof(proof: &EqProof, axioms: &[Axiom], goal: &Equation) -> bool {
    check_proof_detailed(proof, axioms, goal).is_ok()
}

/// A self-contained proof file: the axiom set it refers to, the goal, and
/// the steps.
///
/// ```text
/// axioms boolean
/// goal x v x = x
/// B8 2 [x := x; z := x] <-
/// B3 root [x := x; y := x v x] ->
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofDocument {
    /// A built-in set name or an axiom file path.
    pub axioms: String,
    pub goal: Equation,
    pub proof: EqProof,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofParseError {
    #[error("missing `axioms` line")]
    MissingAxioms,
    #[error("missing `goal` line")]
    MissingGoal,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {error}")]
    Term { line: usize, error: TermError },
}

impl ProofDocument {
    /// The value of the `axioms` header, needed to load the set before the
    /// rest of the file can be parsed.
    pub fn axioms_ref(text: &str) -> Result<String, ProofParseError> {
        content_lines(text)
            .find_map(|(_, l)| l.strip_prefix("axioms ").map(|r| r.trim().to_string()))
            .ok_or(ProofParseError::MissingAxioms)
    }

    pub fn parse(text: &str, set: &AxiomSet) -> Result<ProofDocument, ProofParseError> {
        let axioms = ProofDocument::axioms_ref(text)?;
        let mut goal: Option<(Equation, Signature)> = None;
        let mut steps = Vec::new();
        for (line, l) in content_lines(text) {
            if l.starts_with("axioms ") {
                continue;
            }
            if let Some(g) = l.strip_prefix("goal ") {
                let parsed = parse_goal(g, &set.signature)
                    .map_err(|error| ProofParseError::Term { line, error })?;
                goal = Some(parsed);
                continue;
            }
            let sig = &goal.as_ref().ok_or(ProofParseError::MissingGoal)?.1;
            steps.push(parse_step(l, sig, line)?);
        }
        let (goal, _) = goal.ok_or(ProofParseError::MissingGoal)?;
        Ok(ProofDocument {
            axioms,
            goal,
            proof: EqProof { steps },
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "axioms {}\ngoal {}\n{}",
            self.axioms,
            self.goal,
            self.proof.to_text()
        )
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_step(l: &str, sig: &Signature, line: usize) -> Result<ProofStep, ProofParseError> {
    let syntax = |msg: &str| ProofParseError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let open = l.find('[').ok_or_else(|| syntax("expected `[`"))?;
    let close = l.rfind(']').ok_or_else(|| syntax("expected `]`"))?;
    if close < open {
        return Err(syntax("expected `[...]`"));
    }
    let head: Vec<&str> = l[..open].split_whitespace().collect();
    let [axiom, pos] = head[..] else {
        return Err(syntax("expected `ID POSITION [SUBST] DIRECTION`"));
    };
    let position = parse_position(pos).ok_or_else(|| syntax("bad position"))?;
    let direction = match l[close + 1..].trim() {
        "->" => Direction::Forward,
        "<-" => Direction::Backward,
        _ => return Err(syntax("direction must be `->` or `<-`")),
    };
    let mut subst = Substitution::new();
    let body = l[open + 1..close].trim();
    if !body.is_empty() {
        for binding in body.split(';') {
            let (v, t) = binding
                .split_once(":=")
                .ok_or_else(|| syntax("expected `var := term`"))?;
            let var = Var::from_name(v.trim()).ok_or_else(|| syntax("bad variable"))?;
            let term =
                Term::parse(t, sig).map_err(|error| ProofParseError::Term { line, error })?;
            if subst.get(var).is_some() {
                return Err(syntax("variable bound twice"));
            }
            subst.insert(var, term);
        }
    }
    Ok(ProofStep {
        axiom: axiom.to_string(),
        position,
        subst,
        direction,
    })
}

/// Justification of a derived equation `lhs = rhs`, kept as a DAG during
/// completion and proof search and flattened into an [`EqProof`] on demand.
#[derive(Debug)]
pub(crate) struct Just {
    pub lhs: Term,
    pub rhs: Term,
    kind: JustKind,
}

pub(crate) type J = Rc<Just>;

#[derive(Debug)]
enum JustKind {
    Axiom { id: String, dir: Direction },
    Refl,
    Sym(J),
    Trans(J, J),
    Inst(J, Substitution),
    Cong(Position, J),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("proof exceeds {0} steps")]
pub struct ProofTooLong(pub usize);

impl Just {
    pub fn axiom(a: &Axiom) -> J {
        Rc::new(Just {
            lhs: a.equation.lhs.clone(),
            rhs: a.equation.rhs.clone(),
            kind: JustKind::Axiom {
                id: a.id.clone(),
                dir: Direction::Forward,
            },
        })
    }

    pub fn refl(t: &Term) -> J {
        Rc::new(Just {
            lhs: t.clone(),
            rhs: t.clone(),
            kind: JustKind::Refl,
        })
    }

    pub fn sym(j: &J) -> J {
        match &j.kind {
            JustKind::Refl => j.clone(),
            JustKind::Sym(inner) => inner.clone(),
            JustKind::Axiom { id, dir } => Rc::new(Just {
                lhs: j.rhs.clone(),
                rhs: j.lhs.clone(),
                kind: JustKind::Axiom {
                    id: id.clone(),
                    dir: dir.flip(),
                },
            }),
            _ => Rc::new(Just {
                lhs: j.rhs.clone(),
                rhs: j.lhs.clone(),
                kind: JustKind::Sym(j.clone()),
            }),
        }
    }

    pub fn trans(a: &J, b: &J) -> J {
        debug_assert_eq!(a.rhs, b.lhs);
        if matches!(a.kind, JustKind::Refl) {
            return b.clone();
        }
        if matches!(b.kind, JustKind::Refl) {
            return a.clone();
        }
        Rc::new(Just {
            lhs: a.lhs.clone(),
            rhs: b.rhs.clone(),
            kind: JustKind::Trans(a.clone(), b.clone()),
        })
    }

    pub fn inst(j: &J, sigma: &Substitution) -> J {
        if sigma.is_empty() {
            return j.clone();
        }
        Rc::new(Just {
            lhs: sigma.apply(&j.lhs),
            rhs: sigma.apply(&j.rhs),
            kind: JustKind::Inst(j.clone(), sigma.clone()),
        })
    }

    /// Lifts `j` into `context` at `pos`; `context` must have `j.lhs` there.
    pub fn cong(context: &Term, pos: &[usize], j: &J) -> J {
        if pos.is_empty() {
            return j.clone();
        }
        debug_assert_eq!(context.subterm(pos), Some(&j.lhs));
        Rc::new(Just {
            lhs: context.clone(),
            rhs: context.replace_at(pos, j.rhs.clone()).expect("valid position"),
            kind: JustKind::Cong(pos.to_vec(), j.clone()),
        })
    }

    pub fn equation(&self) -> Equation {
        Equation::new(self.lhs.clone(), self.rhs.clone())
    }

    pub fn flatten(&self, limit: usize) -> Result<EqProof, ProofTooLong> {
        let mut steps = Vec::new();
        self.emit(&Substitution::new(), &mut steps, limit)?;
        Ok(EqProof { steps })
    }

    fn emit(&self, theta: &Substitution, out: &mut Vec<ProofStep>, limit: usize) -> Result<(), ProofTooLong> {
        match &self.kind {
            JustKind::Refl => {}
            JustKind::Axiom { id, dir } => {
                if out.len() >= limit {
                    return Err(ProofTooLong(limit));
                }
                let eq = self.equation();
                out.push(ProofStep {
                    axiom: id.clone(),
                    position: Vec::new(),
                    subst: theta.restrict(&eq.vars()),
                    direction: *dir,
                });
            }
            JustKind::Sym(inner) => {
                let mut sub = Vec::new();
                inner.emit(theta, &mut sub, limit.saturating_sub(out.len()))?;
                out.extend(sub.into_iter().rev().map(|mut s| {
                    s.direction = s.direction.flip();
                    s
                }));
            }
            JustKind::Trans(a, b) => {
                a.emit(theta, out, limit)?;
                b.emit(theta, out, limit)?;
            }
            JustKind::Inst(inner, sigma) => inner.emit(&sigma.then(theta), out, limit)?,
            JustKind::Cong(pos, inner) => {
                let start = out.len();
                inner.emit(theta, out, limit)?;
                for s in &mut out[start..] {
                    let mut p = pos.clone();
                    p.extend_from_slice(&s.position);
                    s.position = p;
                }
            }
        }
        Ok(())
    }
}

/// Rewrites every substitution image with `back`; turns the skolem
/// constants of a goal back into its variables.
pub(crate) fn map_constants(proof: &EqProof, back: &dyn Fn(&Term) -> Term) -> EqProof {
    EqProof {
        steps: proof
            .steps
            .iter()
            .map(|s| ProofStep {
                axiom: s.axiom.clone(),
                position: s.position.clone(),
                subst: Substitution::from_pairs(s.subst.iter().map(|(v, t)| (v, back(t)))),
                direction: s.direction,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean() -> AxiomSet {
        AxiomSet::boolean()
    }

    fn doc(text: &str) -> ProofDocument {
        ProofDocument::parse(text, &boolean()).unwrap()
    }

    #[test]
    fn absorption_two_steps() {
        let d = doc("axioms boolean\ngoal a v a = a\nB8 2 [x := a; z := a] <-\nB3 root [x := a; y := a v a] ->\n");
        let set = boolean();
        assert_eq!(d.proof.len(), 2);
        assert!(check_proof(&d.proof, &set.axioms, &d.goal));
        let terms = d.proof.replay(&d.goal.lhs, &set.axioms).unwrap();
        assert_eq!(terms[1].to_string(), "a v (a ^ (a v a))");
    }

    #[test]
    fn commutativity_instance() {
        let d = doc("axioms boolean\ngoal a v b = b v a\nB2 root [x := a; y := b] ->\n");
        assert!(check_proof(&d.proof, &boolean().axioms, &d.goal));
    }

    #[test]
    fn wrong_position_is_diagnosed() {
        let d = doc("axioms boolean\ngoal a v a = a\nB8 1 [x := a; z := a] <-\nB3 root [x := a; y := a v a] ->\n");
        let err = check_proof_detailed(&d.proof, &boolean().axioms, &d.goal).unwrap_err();
        assert!(matches!(err, ProofCheckError::Step { step: 2, .. }), "{err}");
        assert!(!check_proof(&d.proof, &boolean().axioms, &d.goal));
    }

    #[test]
    fn text_round_trip() {
        let text = "axioms boolean\ngoal a v a = a\nB8 2 [x := a; z := a] <-\nB3 root [x := a; y := a v a] ->\n";
        assert_eq!(doc(text).to_text(), text);
    }

    #[test]
    fn positions() {
        assert_eq!(parse_position("root"), Some(vec![]));
        assert_eq!(parse_position("2.1"), Some(vec![1, 0]));
        assert_eq!(parse_position("0"), None);
        assert_eq!(format_position(&[1, 0]), "2.1");
    }

    #[test]
    fn flattening_replays() {
        let set = boolean();
        let b2 = Just::axiom(set.get("B2").unwrap());
        let b3 = Just::axiom(set.get("B3").unwrap());
        // (x ^ y) v x = x by commutativity then absorption
        let swapped = Just::inst(
            &b2,
            &Substitution::from_pairs([
                (Var(0), Term::parse("x ^ y", &set.signature).unwrap()),
                (Var(1), Term::var(0)),
            ]),
        );
        let j = Just::trans(&swapped, &b3);
        let p = j.flatten(100).unwrap();
        assert!(check_proof(&p, &set.axioms, &j.equation()));
        let back = Just::sym(&j).flatten(100).unwrap();
        assert!(check_proof(&back, &set.axioms, &j.equation().flipped()));
        let ctx = Term::parse("-((x ^ y) v x)", &set.signature).unwrap();
        let lifted = Just::cong(&ctx, &[0], &j);
        assert!(check_proof(&lifted.flatten(100).unwrap(), &set.axioms, &lifted.equation()));
    }
}
