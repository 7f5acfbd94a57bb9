use std::collections::BTreeMap;

use super::symbol::Symbol;

/// The closed set of symbols (with arities) a term may use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    /// `{v, ^, -, 0, 1}`: the language of Boolean algebras.
    pub fn boolean() -> Signature {
        Signature::empty()
            .with_symbol("v", 2)
            .with_symbol("^", 2)
            .with_symbol("-", 1)
            .with_symbol("0", 0)
            .with_symbol("1", 0)
    }

    /// `{v, -}`: the reduced language of Robbins algebras.
    pub fn robbins() -> Signature {
        Signature::empty().with_symbol("v", 2).with_symbol("-", 1)
    }

    /// `{*, e, i}`: groups, with `i` the inverse.
    pub fn group() -> Signature {
        Signature::empty()
            .with_symbol("*", 2)
            .with_symbol("e", 0)
            .with_symbol("i", 1)
    }

    pub fn with_symbol(mut self, name: &str, arity: usize) -> Signature {
        self.arities.insert(Symbol::intern(name), arity);
        self
    }

    pub fn with_constants<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Signature {
        for name in names {
            self.arities.insert(Symbol::intern(name), 0);
        }
        self
    }

    pub fn union(mut self, other: &Signature) -> Signature {
        for (&s, &a) in &other.arities {
            self.arities.insert(s, a);
        }
        self
    }

    pub fn arity(&self, sym: Symbol) -> Option<usize> {
        self.arities.get(&sym).copied()
    }

    pub fn lookup(&self, name: &str) -> Option<(Symbol, usize)> {
        let sym = Symbol::intern(name);
        self.arity(sym).map(|a| (sym, a))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.arities.contains_key(&sym)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, usize)> + '_ {
        self.arities.iter().map(|(&s, &a)| (s, a))
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }
}
