use std::cmp::Ordering;
use std::fmt;

use crate::logic::{Signature, Symbol, Term};

/// A total order on symbols, listed from greatest to least. Symbols not
/// listed rank below every listed one and compare among themselves by name.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Precedence {
    order: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad precedence `{text}`: {msg}")]
pub struct PrecedenceError {
    pub text: String,
    pub msg: String,
}

impl Precedence {
    pub fn new(order: Vec<Symbol>) -> Precedence {
        Precedence { order }
    }

    /// `"i > * > e"`. Every named symbol must be in `sig`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Precedence, PrecedenceError> {
        let mut order = Vec::new();
        for part in text.split('>') {
            let name = part.trim();
            let err = |msg: String| PrecedenceError {
                text: text.to_string(),
                msg,
            };
            let (sym, _) = sig
                .lookup(name)
                .ok_or_else(|| err(format!("unknown symbol `{name}`")))?;
            if order.contains(&sym) {
                return Err(err(format!("`{name}` listed twice")));
            }
            order.push(sym);
        }
        Ok(Precedence { order })
    }

    /// Higher arity first, ties broken by name.
    pub fn by_arity(sig: &Signature) -> Precedence {
        let mut syms: Vec<(Symbol, usize)> = sig.symbols().collect();
        syms.sort_by(|(a, na), (b, nb)| {
            let rank = |n: usize| match n {
                1 => 2,
                0 => 0,
                _ => 1,
            };
            rank(*nb).cmp(&rank(*na)).then(a.cmp(b))
        });
        Precedence {
            order: syms.into_iter().map(|(s, _)| s).collect(),
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.order
    }

    /// Appends `sym` as the new least symbol.
    pub fn push_lowest(&mut self, sym: Symbol) {
        if !self.order.contains(&sym) {
            self.order.push(sym);
        }
    }

    pub fn compare(&self, f: Symbol, g: Symbol) -> Ordering {
        if f == g {
            return Ordering::Equal;
        }
        let pf = self.order.iter().position(|&s| s == f);
        let pg = self.order.iter().position(|&s| s == g);
        match (pf, pg) {
            (Some(a), Some(b)) => b.cmp(&a),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => f.cmp(&g),
        }
    }
}

impl fmt::Display for Precedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Strict lexicographic path order `s >lpo t`.
pub fn lpo_gt(s: &Term, t: &Term, prec: &Precedence) -> bool {
    match (s, t) {
        (Term::Var(_), _) => false,
        (Term::App(..), Term::Var(v)) => s.occurs(*v),
        (Term::App(f, ss), Term::App(g, ts)) => {
            if ss.iter().any(|si| si == t || lpo_gt(si, t, prec)) {
                return true;
            }
            match prec.compare(*f, *g) {
                Ordering::Greater => ts.iter().all(|tj| lpo_gt(s, tj, prec)),
                Ordering::Equal if ss.len() == ts.len() => {
                    match ss.iter().zip(ts).position(|(a, b)| a != b) {
                        None => false,
                        Some(i) => {
                            lpo_gt(&ss[i], &ts[i], prec)
                                && ts[i + 1..].iter().all(|tj| lpo_gt(s, tj, prec))
                        }
                    }
                }
                _ => false,
            }
        }
    }
}

/// The three-way LPO comparison; `None` when the terms are incomparable.
pub fn lpo_compare(s: &Term, t: &Term, prec: &Precedence) -> Option<Ordering> {
    if s == t {
        Some(Ordering::Equal)
    } else if lpo_gt(s, t, prec) {
        Some(Ordering::Greater)
    } else if lpo_gt(t, s, prec) {
        Some(Ordering::Less)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subterm_and_variables() {
        let sig = Signature::robbins();
        let prec = Precedence::parse("- > v", &sig).unwrap();
        let s = Term::parse("-(x v x)", &sig).unwrap();
        let t = Term::parse("x v x", &sig).unwrap();
        assert!(lpo_gt(&s, &t, &prec));
        assert!(!lpo_gt(&t, &s, &prec));
        assert!(!lpo_gt(&Term::var(0), &Term::var(1), &prec));
    }

    #[test]
    fn group_orientation() {
        let sig = Signature::group();
        let prec = Precedence::parse("i > * > e", &sig).unwrap();
        let p = |s: &str| Term::parse(s, &sig).unwrap();
        assert!(lpo_gt(&p("(x * y) * z"), &p("x * (y * z)"), &prec));
        assert!(lpo_gt(&p("i(x * y)"), &p("i(y) * i(x)"), &prec));
        assert!(lpo_gt(&p("i(x) * x"), &p("e"), &prec));
        assert_eq!(lpo_compare(&p("x * y"), &p("y * x"), &prec), None);
    }

    #[test]
    fn default_order() {
        let prec = Precedence::by_arity(&Signature::boolean());
        assert_eq!(prec.to_string(), "- > ^ > v > 0 > 1");
    }
}
