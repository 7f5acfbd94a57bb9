use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    /// Euclidean remainder; `a % 0 = a`.
    Mod,
    Min,
    Max,
}

impl BinOp {
    pub const ALL: [BinOp; 6] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Mod, BinOp::Min, BinOp::Max];

    fn apply(self, a: i64, b: i64) -> i64 {
        match self {
            BinOp::Add => a.wrapping_add(b),
            BinOp::Sub => a.wrapping_sub(b),
            BinOp::Mul => a.wrapping_mul(b),
            BinOp::Mod if b == 0 => a,
            BinOp::Mod => a.wrapping_rem_euclid(b),
            BinOp::Min => a.min(b),
            BinOp::Max => a.max(b),
        }
    }

    fn level(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Mod => 2,
            BinOp::Min | BinOp::Max => 3,
        }
    }

    fn token(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Mod => "%",
            BinOp::Min => "min",
            BinOp::Max => "max",
        }
    }
}

/// A priority program: maps a vector of `(Z/3)^n` to an integer rank.
///
/// Evaluation is total: indices wrap modulo `n`, arithmetic wraps on
/// overflow, and remainder by zero returns the left operand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PriorityExpr {
    Lit(i64),
    /// The dimension `n`.
    Dim,
    /// `v[e]`: the digit at index `e mod n`.
    Digit(Box<PriorityExpr>),
    Bin(BinOp, Box<PriorityExpr>, Box<PriorityExpr>),
}

impl PriorityExpr {
    pub fn bin(op: BinOp, a: PriorityExpr, b: PriorityExpr) -> PriorityExpr {
        PriorityExpr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn digit(i: i64) -> PriorityExpr {
        PriorityExpr::Digit(Box::new(PriorityExpr::Lit(i)))
    }

    pub fn parse(text: &str) -> Result<PriorityExpr, ExprError> {
        let toks = lex(text)?;
        let mut p = ExprParser {
            toks,
            at: 0,
            end: text.len(),
        };
        let e = p.sum()?;
        if p.at < p.toks.len() {
            return Err(ExprError {
                pos: p.pos(),
                msg: "trailing input".into(),
            });
        }
        Ok(e)
    }

    pub fn eval(&self, v: &[u8]) -> i64 {
        match self {
            PriorityExpr::Lit(k) => *k,
            PriorityExpr::Dim => v.len() as i64,
            PriorityExpr::Digit(e) => {
                if v.is_empty() {
                    return 0;
                }
                let i = e.eval(v).rem_euclid(v.len() as i64) as usize;
                v[i] as i64
            }
            PriorityExpr::Bin(op, a, b) => op.apply(a.eval(v), b.eval(v)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PriorityExpr::Lit(_) | PriorityExpr::Dim => 1,
            PriorityExpr::Digit(e) => 1 + e.size(),
            PriorityExpr::Bin(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PriorityExpr::Lit(_) | PriorityExpr::Dim => 0,
            PriorityExpr::Digit(e) => 1 + e.depth(),
            PriorityExpr::Bin(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Leaves (`Lit` and `Dim` nodes) in left-to-right order.
    pub fn leaves(&self) -> Vec<PriorityExpr> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<PriorityExpr>) {
        match self {
            PriorityExpr::Lit(_) | PriorityExpr::Dim => out.push(self.clone()),
            PriorityExpr::Digit(e) => e.collect_leaves(out),
            PriorityExpr::Bin(_, a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Subterm at a pre-order index (0 is the root).
    pub fn node(&self, mut index: usize) -> Option<&PriorityExpr> {
        self.node_inner(&mut index)
    }

    fn node_inner(&self, index: &mut usize) -> Option<&PriorityExpr> {
        if *index == 0 {
            return Some(self);
        }
        *index -= 1;
        match self {
            PriorityExpr::Lit(_) | PriorityExpr::Dim => None,
            PriorityExpr::Digit(e) => e.node_inner(index),
            PriorityExpr::Bin(_, a, b) => a.node_inner(index).or_else(|| b.node_inner(index)),
        }
    }

    /// Replaces the subterm at a pre-order index.
    pub fn replace_node(&self, index: usize, with: &PriorityExpr) -> PriorityExpr {
        let mut i = index;
        self.replace_inner(&mut i, with)
    }

    fn replace_inner(&self, index: &mut usize, with: &PriorityExpr) -> PriorityExpr {
        if *index == 0 {
            *index = usize::MAX;
            return with.clone();
        }
        if *index == usize::MAX {
            return self.clone();
        }
        *index -= 1;
        match self {
            PriorityExpr::Lit(_) | PriorityExpr::Dim => self.clone(),
            PriorityExpr::Digit(e) => PriorityExpr::Digit(Box::new(e.replace_inner(index, with))),
            PriorityExpr::Bin(op, a, b) => {
                let a = a.replace_inner(index, with);
                let b = b.replace_inner(index, with);
                PriorityExpr::bin(*op, a, b)
            }
        }
    }

    fn level(&self) -> u8 {
        match self {
            PriorityExpr::Bin(op, ..) => op.level(),
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorityExpr::Lit(k) => write!(f, "{k}"),
            PriorityExpr::Dim => f.write_str("n"),
            PriorityExpr::Digit(e) => {
                f.write_str("v[")?;
                e.write(f)?;
                f.write_str("]")
            }
            PriorityExpr::Bin(op @ (BinOp::Min | BinOp::Max), a, b) => {
                write!(f, "{}(", op.token())?;
                a.write(f)?;
                f.write_str(", ")?;
                b.write(f)?;
                f.write_str(")")
            }
            PriorityExpr::Bin(op, a, b) => {
                let lvl = op.level();
                wrap(a, f, a.level() < lvl)?;
                write!(f, " {} ", op.token())?;
                wrap(b, f, b.level() <= lvl)
            }
        }
    }
}

fn wrap(e: &PriorityExpr, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
    if parens {
        f.write_str("(")?;
        e.write(f)?;
        f.write_str(")")
    } else {
        e.write(f)
    }
}

impl fmt::Display for PriorityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

impl fmt::Debug for PriorityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("priority expression error at {pos}: {msg}")]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i128, usize),
    Word(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: i128 = text[start..i].parse().map_err(|_| ExprError {
                pos: start,
                msg: "integer literal out of range".into(),
            })?;
            out.push((start, Tok::Int(k, start)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Word(text[start..i].to_string())));
        } else if "+-*%()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn literal(k: i128, pos: usize) -> Result<PriorityExpr, ExprError> {
    i64::try_from(k).map(PriorityExpr::Lit).map_err(|_| ExprError {
        pos,
        msg: "integer literal out of range".into(),
    })
}

struct ExprParser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<PriorityExpr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym('+')) => BinOp::Add,
                Some(Tok::Sym('-')) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.at += 1;
            lhs = PriorityExpr::bin(op, lhs, self.product()?);
        }
    }

    fn product(&mut self) -> Result<PriorityExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym('*')) => BinOp::Mul,
                Some(Tok::Sym('%')) => BinOp::Mod,
                _ => return Ok(lhs),
            };
            self.at += 1;
            lhs = PriorityExpr::bin(op, lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<PriorityExpr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(k, pos)) => {
                self.at += 1;
                literal(k, pos)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                match self.peek().cloned() {
                    Some(Tok::Int(k, pos)) => {
                        self.at += 1;
                        literal(-k, pos)
                    }
                    _ => {
                        let e = self.factor()?;
                        Ok(PriorityExpr::bin(BinOp::Sub, PriorityExpr::Lit(0), e))
                    }
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Word(w)) => {
                self.at += 1;
                match w.as_str() {
                    "n" => Ok(PriorityExpr::Dim),
                    "v" => {
                        self.expect('[')?;
                        let e = self.sum()?;
                        self.expect(']')?;
                        Ok(PriorityExpr::Digit(Box::new(e)))
                    }
                    "min" | "max" => {
                        let op = if w == "min" { BinOp::Min } else { BinOp::Max };
                        self.expect('(')?;
                        let a = self.sum()?;
                        self.expect(',')?;
                        let b = self.sum()?;
                        self.expect(')')?;
                        Ok(PriorityExpr::bin(op, a, b))
                    }
                    _ => {
                        self.at -= 1;
                        self.err(&format!("unknown name `{w}`"))
                    }
                }
            }
            Some(_) => self.err("expected an expression"),
            None => self.err("unexpected end of input"),
        }
    }
}
