use std::fmt;

use crate::logic::{Signature, Term, TermError, Var};

use super::lpo::{lpo_gt, Precedence};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    /// `lhs = rhs`, both sides in the term syntax.
    pub fn parse(text: &str, sig: &Signature) -> Result<Equation, TermError> {
        let mut parts = text.splitn(2, '=');
        let l = parts.next().unwrap_or("");
        let r = parts.next().ok_or(TermError::Syntax {
            pos: text.len(),
            msg: "expected `=`".into(),
        })?;
        if r.contains('=') {
            return Err(TermError::Syntax {
                pos: l.len() + 1 + r.find('=').unwrap_or(0),
                msg: "more than one `=`".into(),
            });
        }
        let lhs = Term::parse(l, sig)?;
        let rhs = Term::parse(r, sig).map_err(|e| shift_error(e, l.len() + 1))?;
        Ok(Equation { lhs, rhs })
    }

    pub fn flipped(&self) -> Equation {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.lhs.vars_in_order(&mut out);
        self.rhs.vars_in_order(&mut out);
        let mut seen = Vec::new();
        out.retain(|v| {
            let fresh = !seen.contains(v);
            seen.push(*v);
            fresh
        });
        out
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

fn shift_error(e: TermError, by: usize) -> TermError {
    match e {
        TermError::Syntax { pos, msg } => TermError::Syntax { pos: pos + by, msg },
        TermError::UnknownSymbol { name, pos } => TermError::UnknownSymbol {
            name,
            pos: pos + by,
        },
        other => other,
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An oriented equation `lhs -> rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RewriteRule {
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("left-hand side of `{0}` is a variable")]
    VariableLhs(Equation),
    #[error("right-hand side of `{0}` has variables not on the left")]
    ExtraVariables(Equation),
}

impl RewriteRule {
    pub fn new(lhs: Term, rhs: Term) -> Result<RewriteRule, RuleError> {
        if lhs.is_var() {
            return Err(RuleError::VariableLhs(Equation::new(lhs, rhs)));
        }
        if !rhs.vars().is_subset(&lhs.vars()) {
            return Err(RuleError::ExtraVariables(Equation::new(lhs, rhs)));
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Orients by LPO; `None` when neither side is greater.
    pub fn orient(eq: &Equation, prec: &Precedence) -> Option<RewriteRule> {
        if lpo_gt(&eq.lhs, &eq.rhs, prec) {
            Some(RewriteRule {
                lhs: eq.lhs.clone(),
                rhs: eq.rhs.clone(),
            })
        } else if lpo_gt(&eq.rhs, &eq.lhs, prec) {
            Some(RewriteRule {
                lhs: eq.rhs.clone(),
                rhs: eq.lhs.clone(),
            })
        } else {
            None
        }
    }

    pub fn equation(&self) -> Equation {
        Equation::new(self.lhs.clone(), self.rhs.clone())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lhs.max_var()
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
