use super::formula::{ATerm, ArithFormula, ArithOp, Atom, Bound, BoundKind, CmpOp, Quantifier};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct FormulaError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Forall,
    Exists,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Dot,
    Comma,
    LParen,
    RParen,
    Cmp(CmpOp),
    Op(ArithOp),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |k: usize| chars.get(k).map(|&(_, c)| c);
    while i < chars.len() {
        let (pos, c) = chars[i];
        let two: String = chars[i..(i + 2).min(chars.len())].iter().map(|&(_, c)| c).collect();
        let three: String = chars[i..(i + 3).min(chars.len())].iter().map(|&(_, c)| c).collect();
        let (tok, len) = if c.is_whitespace() {
            i += 1;
            continue;
        } else if three == "<->" {
            (Tok::Iff, 3)
        } else if two == "->" {
            (Tok::Implies, 2)
        } else if two == "<=" {
            (Tok::Cmp(CmpOp::Le), 2)
        } else if two == ">=" {
            (Tok::Cmp(CmpOp::Ge), 2)
        } else if two == "!=" {
            (Tok::Cmp(CmpOp::Ne), 2)
        } else if two == "/\\" {
            (Tok::And, 2)
        } else if two == "\\/" {
            (Tok::Or, 2)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
            let digits: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            let n = digits.parse().map_err(|_| FormulaError {
                pos,
                msg: "numeral too large".into(),
            })?;
            (Tok::Num(n), j - i)
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while at(j).is_some_and(|c| c.is_alphanumeric() || c == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word),
            };
            (tok, j - i)
        } else {
            let tok = match c {
                '∀' => Tok::Forall,
                '∃' => Tok::Exists,
                '~' | '¬' | '!' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Implies,
                '↔' => Tok::Iff,
                '.' => Tok::Dot,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Cmp(CmpOp::Eq),
                '≠' => Tok::Cmp(CmpOp::Ne),
                '<' => Tok::Cmp(CmpOp::Lt),
                '≤' => Tok::Cmp(CmpOp::Le),
                '>' => Tok::Cmp(CmpOp::Gt),
                '≥' => Tok::Cmp(CmpOp::Ge),
                '+' => Tok::Op(ArithOp::Add),
                '-' => Tok::Op(ArithOp::Sub),
                '*' | '·' => Tok::Op(ArithOp::Mul),
                '^' => Tok::Op(ArithOp::Pow),
                other => {
                    return Err(FormulaError {
                        pos,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            (tok, 1)
        };
        out.push((pos, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, FormulaError> {
        Err(FormulaError {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FormulaError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.err(&format!("expected {what}"))
        }
    }

    fn iff(&mut self) -> Result<ArithFormula, FormulaError> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = ArithFormula::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<ArithFormula, FormulaError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(ArithFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<ArithFormula, FormulaError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = ArithFormula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<ArithFormula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = ArithFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ArithFormula, FormulaError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(ArithFormula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantifier(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<ArithFormula, FormulaError> {
        let q = if self.eat(&Tok::Forall) {
            Quantifier::Forall
        } else {
            self.at += 1;
            Quantifier::Exists
        };
        let var = match self.peek().cloned() {
            Some(Tok::Ident(v)) => {
                self.at += 1;
                v
            }
            _ => return self.err("expected a variable"),
        };
        let bound = match self.peek() {
            Some(Tok::Cmp(CmpOp::Lt)) => {
                self.at += 1;
                Some(Bound {
                    kind: BoundKind::Lt,
                    term: self.term()?,
                })
            }
            Some(Tok::Cmp(CmpOp::Le)) => {
                self.at += 1;
                Some(Bound {
                    kind: BoundKind::Le,
                    term: self.term()?,
                })
            }
            _ => None,
        };
        // `forall x exists y. A` chains without a dot
        if !matches!(self.peek(), Some(Tok::Forall | Tok::Exists)) {
            self.expect(Tok::Dot, "`.` after the quantified variable")?;
        }
        // the body extends as far right as possible
        let body = self.iff()?;
        Ok(ArithFormula::quant(q, &var, bound, body))
    }

    fn atom(&mut self) -> Result<ArithFormula, FormulaError> {
        let start = self.at;
        // a comparison between terms, if one parses here
        if let Ok(l) = self.term() {
            if let Some(Tok::Cmp(op)) = self.peek().cloned() {
                self.at += 1;
                let r = self.term()?;
                return Ok(ArithFormula::Atom(Atom::Cmp(op, l, r)));
            }
        }
        self.at = start;
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if name == "true" => {
                self.at += 1;
                Ok(ArithFormula::True)
            }
            Some(Tok::Ident(name)) if name == "false" => {
                self.at += 1;
                Ok(ArithFormula::False)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.args()?
                } else {
                    Vec::new()
                };
                Ok(ArithFormula::Atom(Atom::Pred(name, args)))
            }
            _ => self.err("expected a formula"),
        }
    }

    fn args(&mut self) -> Result<Vec<ATerm>, FormulaError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<ATerm, FormulaError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(op @ (ArithOp::Add | ArithOp::Sub))) => *op,
                _ => return Ok(lhs),
            };
            self.at += 1;
            lhs = ATerm::op(op, lhs, self.product()?);
        }
    }

    fn product(&mut self) -> Result<ATerm, FormulaError> {
        let mut lhs = self.power()?;
        while self.eat(&Tok::Op(ArithOp::Mul)) {
            lhs = ATerm::op(ArithOp::Mul, lhs, self.power()?);
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<ATerm, FormulaError> {
        let base = self.primary()?;
        if self.eat(&Tok::Op(ArithOp::Pow)) {
            return Ok(ATerm::op(ArithOp::Pow, base, self.power()?));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ATerm, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(ATerm::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::LParen) {
                    Ok(ATerm::Fn(name, self.args()?))
                } else {
                    Ok(ATerm::Var(name))
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Parses an annotated arithmetic formula. See `docs/grammar.md`.
pub fn parse_formula(text: &str) -> Result<ArithFormula, FormulaError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
    };
    let f = p.iff()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chained_quantifiers_need_one_dot() {
        let f = parse_formula("∀x ∃y < x. x < y").unwrap();
        assert_eq!(f.to_string(), "forall x. exists y < x. x < y");
        assert!(parse_formula("forall x A(x)").is_err());
    }
}
