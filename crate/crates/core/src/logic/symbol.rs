use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned function or constant symbol.
///
/// Symbols compare by name, so orderings derived from them do not depend on
/// the order in which names were first interned.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

struct Interner {
    ids: HashMap<&'static str, u32>,
    names: Vec<&'static str>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        Mutex::new(Interner {
            ids: HashMap::new(),
            names: Vec::new(),
        })
    })
}

impl Symbol {
    pub fn intern(name: &str) -> Symbol {
        let mut table = interner().lock().expect("symbol table poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Symbol(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Symbol(id)
    }

    pub fn name(self) -> &'static str {
        interner().lock().expect("symbol table poisoned").names[self.0 as usize]
    }

    pub fn or() -> Symbol {
        Symbol::intern("v")
    }

    pub fn and() -> Symbol {
        Symbol::intern("^")
    }

    pub fn not() -> Symbol {
        Symbol::intern("-")
    }

    pub fn mul() -> Symbol {
        Symbol::intern("*")
    }

    /// Infix binding level for the built-in binary operators.
    pub(crate) fn infix_level(self) -> Option<u8> {
        match self.name() {
            "v" => Some(1),
            "^" => Some(2),
            "*" => Some(3),
            _ => None,
        }
    }

    pub(crate) fn is_prefix_op(self) -> bool {
        self.name() == "-"
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        self.name().cmp(other.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
