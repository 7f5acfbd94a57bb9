use std::collections::BTreeSet;
use std::fmt;

use super::signature::Signature;
use super::symbol::Symbol;

/// A term variable. Ids 0..=4 print as `x y z u w`; id `k >= 5` prints as
/// `x{k-5}`, so `x0` is id 5.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

const NAMED_VARS: [&str; 5] = ["x", "y", "z", "u", "w"];

impl Var {
    pub fn from_name(name: &str) -> Option<Var> {
        if let Some(i) = NAMED_VARS.iter().position(|&n| n == name) {
            return Some(Var(i as u32));
        }
        let digits = name.strip_prefix('x')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        // reject leading zeros so the printed form is canonical
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        digits
            .parse::<u32>()
            .ok()
            .and_then(|k| k.checked_add(NAMED_VARS.len() as u32))
            .map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match NAMED_VARS.get(self.0 as usize) {
            Some(n) => f.write_str(n),
            None => write!(f, "x{}", self.0 - NAMED_VARS.len() as u32),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A position in a term: the sequence of 0-based child indices from the root.
pub type Position = Vec<usize>;

/// A first-order term. Constants are applications with no arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(id: u32) -> Term {
        Term::Var(Var(id))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::intern(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::intern(name), args)
    }

    pub fn unary(name: &str, arg: Term) -> Term {
        Term::App(Symbol::intern(name), vec![arg])
    }

    pub fn binary(name: &str, l: Term, r: Term) -> Term {
        Term::App(Symbol::intern(name), vec![l, r])
    }

    pub fn or(l: Term, r: Term) -> Term {
        Term::App(Symbol::or(), vec![l, r])
    }

    pub fn and(l: Term, r: Term) -> Term {
        Term::App(Symbol::and(), vec![l, r])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(t: Term) -> Term {
        Term::App(Symbol::not(), vec![t])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Term, r: Term) -> Term {
        Term::App(Symbol::mul(), vec![l, r])
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Term, TermError> {
        parse_term(text, sig)
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn head(&self) -> Option<Symbol> {
        match self {
            Term::App(f, _) => Some(*f),
            Term::Var(_) => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            Term::Var(_) => &[],
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars_in_order(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_in_order(out)),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn symbols(&self, out: &mut BTreeSet<Symbol>) {
        if let Term::App(f, args) = self {
            out.insert(*f);
            args.iter().for_each(|a| a.symbols(out));
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in pos {
            cur = cur.args().get(i)?;
        }
        Some(cur)
    }

    /// Returns a copy with the subterm at `pos` replaced, or `None` when the
    /// position does not exist.
    pub fn replace_at(&self, pos: &[usize], with: Term) -> Option<Term> {
        match pos.split_first() {
            None => Some(with),
            Some((&i, rest)) => match self {
                Term::App(f, args) if i < args.len() => {
                    let mut args = args.clone();
                    args[i] = args[i].replace_at(rest, with)?;
                    Some(Term::App(*f, args))
                }
                _ => None,
            },
        }
    }

    /// All positions, in pre-order (root first, then children left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut out, false);
        out
    }

    /// Positions of non-variable subterms, in pre-order.
    pub fn app_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut out, true);
        out
    }

    fn walk_positions(&self, path: &mut Position, out: &mut Vec<Position>, apps_only: bool) {
        match self {
            Term::Var(_) => {
                if !apps_only {
                    out.push(path.clone());
                }
            }
            Term::App(_, args) => {
                out.push(path.clone());
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    a.walk_positions(path, out, apps_only);
                    path.pop();
                }
            }
        }
    }

    /// Checks the term against a signature: every symbol declared, with the
    /// declared arity.
    pub fn check_signature(&self, sig: &Signature) -> Result<(), TermError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                match sig.arity(*f) {
                    None => {
                        return Err(TermError::UnknownSymbol {
                            name: f.name().to_string(),
                            pos: 0,
                        })
                    }
                    Some(a) if a != args.len() => {
                        return Err(TermError::Arity {
                            name: f.name().to_string(),
                            expected: a,
                            found: args.len(),
                        })
                    }
                    _ => {}
                }
                args.iter().try_for_each(|a| a.check_signature(sig))
            }
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::App(f, args) if args.len() == 2 => f.infix_level().unwrap_or(5),
            Term::App(f, args) if args.len() == 1 && f.is_prefix_op() => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) if args.len() == 2 && s.infix_level().is_some() => {
                let (l, r) = (&args[0], &args[1]);
                let left_bare = l.head() == Some(*s) || l.level() > 3;
                let right_bare = r.level() > 3;
                write_wrapped(l, f, !left_bare)?;
                write!(f, " {s} ")?;
                write_wrapped(r, f, !right_bare)
            }
            Term::App(s, args) if args.len() == 1 && s.is_prefix_op() => {
                write!(f, "{s}")?;
                write_wrapped(&args[0], f, args[0].level() < 4)
            }
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

fn write_wrapped(t: &Term, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
    if parens {
        f.write_str("(")?;
        t.write(f)?;
        f.write_str(")")
    } else {
        t.write(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("symbol `{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Or,
    And,
    Not,
    Mul,
    LParen,
    RParen,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '∨' | '|' => Tok::Or,
            '∧' | '^' | '&' => Tok::And,
            '¬' | '-' | '~' => Tok::Not,
            '*' | '·' => Tok::Mul,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            c if c.is_alphanumeric() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                out.push((pos, if word == "v" { Tok::Or } else { Tok::Ident(word) }));
                i = j;
                continue;
            }
            other => {
                return Err(TermError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermError> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(TermError::Syntax {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn binary_sym(&self, tok: &Tok) -> Result<Symbol, TermError> {
        let name = match tok {
            Tok::Or => "v",
            Tok::And => "^",
            Tok::Mul => "*",
            _ => unreachable!(),
        };
        match self.sig.lookup(name) {
            Some((s, 2)) => Ok(s),
            _ => Err(TermError::UnknownSymbol {
                name: name.to_string(),
                pos: self.pos(),
            }),
        }
    }

    fn level(&mut self, tok: Tok) -> Result<Term, TermError> {
        let mut lhs = match tok {
            Tok::Or => self.level(Tok::And)?,
            Tok::And => self.level(Tok::Mul)?,
            _ => self.unary()?,
        };
        while self.peek() == Some(&tok) {
            let sym = self.binary_sym(&tok)?;
            self.at += 1;
            let rhs = match tok {
                Tok::Or => self.level(Tok::And)?,
                Tok::And => self.level(Tok::Mul)?,
                _ => self.unary()?,
            };
            lhs = Term::App(sym, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        if self.peek() == Some(&Tok::Not) {
            let pos = self.pos();
            self.at += 1;
            let sym = match self.sig.lookup("-") {
                Some((s, 1)) => s,
                _ => {
                    return Err(TermError::UnknownSymbol {
                        name: "-".into(),
                        pos,
                    })
                }
            };
            let arg = self.unary()?;
            return Ok(Term::App(sym, vec![arg]));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.level(Tok::Or)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(v) = Var::from_name(&name) {
                    if self.sig.lookup(&name).is_none() {
                        return Ok(Term::Var(v));
                    }
                }
                let (sym, arity) =
                    self.sig
                        .lookup(&name)
                        .ok_or_else(|| TermError::UnknownSymbol {
                            name: name.clone(),
                            pos,
                        })?;
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.at += 1;
                    args.push(self.level(Tok::Or)?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                        args.push(self.level(Tok::Or)?);
                    }
                    self.expect(Tok::RParen, "`)` or `,`")?;
                }
                if args.len() != arity {
                    return Err(TermError::Arity {
                        name,
                        expected: arity,
                        found: args.len(),
                    });
                }
                Ok(Term::App(sym, args))
            }
            Some(_) => Err(TermError::Syntax {
                pos,
                msg: "expected a term".into(),
            }),
            None => Err(TermError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses a term. `v`, `∨`, `|` are disjunction; `^`, `∧`, `&` conjunction;
/// `*`, `·` multiplication; `-`, `¬`, `~` prefix negation. All binary
/// operators are left-associative, binding loosest to tightest in that order.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, TermError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        sig,
    };
    let t = p.level(Tok::Or)?;
    if p.at != p.toks.len() {
        return Err(TermError::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(t)
}
