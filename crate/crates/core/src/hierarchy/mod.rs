//! Syntactic arithmetical-hierarchy classification of first-order
//! arithmetic formulas with bounded quantifiers.

mod formula;
mod parse;
mod prenex;

pub use formula::{
    ATerm, ArithFormula, ArithOp, Atom, Bound, BoundKind, CmpOp, HierarchyClass, Quantifier,
};
pub use parse::{parse_formula, FormulaError};
pub use prenex::{classify, prenexify};
