use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow,
}

impl ArithOp {
    fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Pow => "^",
        }
    }

    fn level(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul => 2,
            ArithOp::Pow => 3,
        }
    }
}

/// Terms of first-order arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ATerm {
    Var(String),
    Num(u64),
    Op(ArithOp, Box<ATerm>, Box<ATerm>),
    Fn(String, Vec<ATerm>),
}

impl ATerm {
    pub fn var(name: &str) -> ATerm {
        ATerm::Var(name.to_string())
    }

    pub fn op(op: ArithOp, l: ATerm, r: ATerm) -> ATerm {
        ATerm::Op(op, Box::new(l), Box::new(r))
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ATerm::Var(v) => {
                out.insert(v.clone());
            }
            ATerm::Num(_) => {}
            ATerm::Op(_, l, r) => {
                l.vars(out);
                r.vars(out);
            }
            ATerm::Fn(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> ATerm {
        match self {
            ATerm::Var(v) if v == from => ATerm::Var(to.to_string()),
            ATerm::Var(_) | ATerm::Num(_) => self.clone(),
            ATerm::Op(op, l, r) => ATerm::op(*op, l.rename(from, to), r.rename(from, to)),
            ATerm::Fn(f, args) => ATerm::Fn(f.clone(), args.iter().map(|a| a.rename(from, to)).collect()),
        }
    }

    fn level(&self) -> u8 {
        match self {
            ATerm::Op(op, ..) => op.level(),
            _ => 4,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.level() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            ATerm::Var(v) => f.write_str(v)?,
            ATerm::Num(n) => write!(f, "{n}")?,
            ATerm::Fn(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write(f, 0)?;
                }
                f.write_str(")")?;
            }
            ATerm::Op(op, l, r) => {
                let lv = op.level();
                // `^` groups to the right, the others to the left
                let (lmin, rmin) = if *op == ArithOp::Pow { (lv + 1, lv) } else { (lv, lv + 1) };
                l.write(f, lmin)?;
                write!(f, " {} ", op.symbol())?;
                r.write(f, rmin)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ATerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

/// A decidable leaf: a named predicate or a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Pred(String, Vec<ATerm>),
    Cmp(CmpOp, ATerm, ATerm),
}

impl Atom {
    fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Atom::Pred(_, args) => args.iter().for_each(|a| a.vars(out)),
            Atom::Cmp(_, l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    fn rename(&self, from: &str, to: &str) -> Atom {
        match self {
            Atom::Pred(p, args) => Atom::Pred(p.clone(), args.iter().map(|a| a.rename(from, to)).collect()),
            Atom::Cmp(op, l, r) => Atom::Cmp(*op, l.rename(from, to), r.rename(from, to)),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred(p, args) if args.is_empty() => f.write_str(p),
            Atom::Pred(p, args) => {
                write!(f, "{p}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Atom::Cmp(op, l, r) => write!(f, "{l} {} {r}", op.symbol()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

/// `x < t` or `x <= t` on a bounded quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Lt,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub kind: BoundKind,
    pub term: ATerm,
}

impl Bound {
    /// The guard atom `var < term` / `var <= term`.
    pub fn guard(&self, var: &str) -> ArithFormula {
        let op = match self.kind {
            BoundKind::Lt => CmpOp::Lt,
            BoundKind::Le => CmpOp::Le,
        };
        ArithFormula::Atom(Atom::Cmp(op, ATerm::var(var), self.term.clone()))
    }
}

/// First-order arithmetic formulas with optional bounds on quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArithFormula {
    True,
    False,
    Atom(Atom),
    Not(Box<ArithFormula>),
    And(Box<ArithFormula>, Box<ArithFormula>),
    Or(Box<ArithFormula>, Box<ArithFormula>),
    Implies(Box<ArithFormula>, Box<ArithFormula>),
    Iff(Box<ArithFormula>, Box<ArithFormula>),
    Quant {
        q: Quantifier,
        var: String,
        bound: Option<Bound>,
        body: Box<ArithFormula>,
    },
}

impl ArithFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ArithFormula) -> ArithFormula {
        ArithFormula::Not(Box::new(f))
    }

    pub fn and(a: ArithFormula, b: ArithFormula) -> ArithFormula {
        ArithFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ArithFormula, b: ArithFormula) -> ArithFormula {
        ArithFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: ArithFormula, b: ArithFormula) -> ArithFormula {
        ArithFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn pred(name: &str, args: Vec<ATerm>) -> ArithFormula {
        ArithFormula::Atom(Atom::Pred(name.to_string(), args))
    }

    pub fn forall(var: &str, body: ArithFormula) -> ArithFormula {
        ArithFormula::quant(Quantifier::Forall, var, None, body)
    }

    pub fn exists(var: &str, body: ArithFormula) -> ArithFormula {
        ArithFormula::quant(Quantifier::Exists, var, None, body)
    }

    pub fn quant(q: Quantifier, var: &str, bound: Option<Bound>, body: ArithFormula) -> ArithFormula {
        ArithFormula::Quant {
            q,
            var: var.to_string(),
            bound,
            body: Box::new(body),
        }
    }

    pub fn parse(text: &str) -> Result<ArithFormula, super::parse::FormulaError> {
        super::parse::parse_formula(text)
    }

    /// No unbounded quantifier anywhere.
    pub fn is_delta0(&self) -> bool {
        match self {
            ArithFormula::True | ArithFormula::False | ArithFormula::Atom(_) => true,
            ArithFormula::Not(a) => a.is_delta0(),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => a.is_delta0() && b.is_delta0(),
            ArithFormula::Quant { bound, body, .. } => bound.is_some() && body.is_delta0(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound_vars: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |t: &BTreeSet<String>, bv: &Vec<String>| {
            for v in t {
                if !bv.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            ArithFormula::True | ArithFormula::False => {}
            ArithFormula::Atom(a) => {
                let mut vs = BTreeSet::new();
                a.vars(&mut vs);
                add(&vs, bound_vars);
            }
            ArithFormula::Not(a) => a.collect_free(bound_vars, out),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => {
                a.collect_free(bound_vars, out);
                b.collect_free(bound_vars, out);
            }
            ArithFormula::Quant { var, bound, body, .. } => {
                if let Some(b) = bound {
                    let mut vs = BTreeSet::new();
                    b.term.vars(&mut vs);
                    add(&vs, bound_vars);
                }
                bound_vars.push(var.clone());
                body.collect_free(bound_vars, out);
                bound_vars.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ArithFormula::True | ArithFormula::False => {}
            ArithFormula::Atom(a) => a.vars(out),
            ArithFormula::Not(a) => a.all_vars(out),
            ArithFormula::And(a, b)
            | ArithFormula::Or(a, b)
            | ArithFormula::Implies(a, b)
            | ArithFormula::Iff(a, b) => {
                a.all_vars(out);
                b.all_vars(out);
            }
            ArithFormula::Quant { var, bound, body, .. } => {
                out.insert(var.clone());
                if let Some(b) = bound {
                    b.term.vars(out);
                }
                body.all_vars(out);
            }
        }
    }

    /// Renames free occurrences of `from` to `to`.
    pub fn rename_free(&self, from: &str, to: &str) -> ArithFormula {
        let r = |f: &ArithFormula| Box::new(f.rename_free(from, to));
        match self {
            ArithFormula::True | ArithFormula::False => self.clone(),
            ArithFormula::Atom(a) => ArithFormula::Atom(a.rename(from, to)),
            ArithFormula::Not(a) => ArithFormula::Not(r(a)),
            ArithFormula::And(a, b) => ArithFormula::And(r(a), r(b)),
            ArithFormula::Or(a, b) => ArithFormula::Or(r(a), r(b)),
            ArithFormula::Implies(a, b) => ArithFormula::Implies(r(a), r(b)),
            ArithFormula::Iff(a, b) => ArithFormula::Iff(r(a), r(b)),
            ArithFormula::Quant { q, var, bound, body } => ArithFormula::Quant {
                q: *q,
                var: var.clone(),
                bound: bound.as_ref().map(|b| Bound {
                    kind: b.kind,
                    term: b.term.rename(from, to),
                }),
                body: if var == from { body.clone() } else { r(body) },
            },
        }
    }

    fn level(&self) -> u8 {
        match self {
            ArithFormula::Iff(..) => 1,
            ArithFormula::Implies(..) => 2,
            ArithFormula::Or(..) => 3,
            ArithFormula::And(..) => 4,
            _ => 5,
        }
    }

    /// `open`: nothing follows, so a quantifier body may run to the end.
    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8, open: bool) -> fmt::Result {
        let quant = matches!(self, ArithFormula::Quant { .. });
        let paren = self.level() < min || (quant && !open);
        let open = open || paren;
        if paren {
            f.write_str("(")?;
        }
        let bin = |f: &mut fmt::Formatter<'_>, a: &ArithFormula, b: &ArithFormula, sym: &str, lv: u8, right: bool| {
            let (lmin, rmin) = if right { (lv + 1, lv) } else { (lv, lv + 1) };
            a.write(f, lmin, false)?;
            write!(f, " {sym} ")?;
            b.write(f, rmin, open)
        };
        match self {
            ArithFormula::True => f.write_str("true")?,
            ArithFormula::False => f.write_str("false")?,
            ArithFormula::Atom(a) => write!(f, "{a}")?,
            ArithFormula::Not(a) => {
                f.write_str("~")?;
                a.write(f, 5, open)?;
            }
            ArithFormula::And(a, b) => bin(f, a, b, "&", 4, false)?,
            ArithFormula::Or(a, b) => bin(f, a, b, "|", 3, false)?,
            ArithFormula::Implies(a, b) => bin(f, a, b, "->", 2, true)?,
            ArithFormula::Iff(a, b) => bin(f, a, b, "<->", 1, false)?,
            ArithFormula::Quant { q, var, bound, body } => {
                f.write_str(match q {
                    Quantifier::Forall => "forall ",
                    Quantifier::Exists => "exists ",
                })?;
                f.write_str(var)?;
                if let Some(b) = bound {
                    let op = match b.kind {
                        BoundKind::Lt => "<",
                        BoundKind::Le => "<=",
                    };
                    write!(f, " {op} {}", b.term)?;
                }
                f.write_str(". ")?;
                body.write(f, 0, true)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, true)
    }
}

/// Position in the arithmetical hierarchy, read off the surface syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HierarchyClass {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl HierarchyClass {
    pub fn dual(self) -> HierarchyClass {
        match self {
            HierarchyClass::Delta0 => HierarchyClass::Delta0,
            HierarchyClass::Sigma(n) => HierarchyClass::Pi(n),
            HierarchyClass::Pi(n) => HierarchyClass::Sigma(n),
        }
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyClass::Delta0 => f.write_str("Delta0"),
            HierarchyClass::Sigma(n) => write!(f, "Sigma({n})"),
            HierarchyClass::Pi(n) => write!(f, "Pi({n})"),
        }
    }
}
