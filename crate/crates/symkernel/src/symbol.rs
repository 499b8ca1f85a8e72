use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::KernelError;

/// Declared role of a symbol. The ordering of the variants fixes the
/// canonical atom order (independents first, then fields, then parameters).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SymbolKind {
    Independent,
    Dependent,
    Parameter,
    GroupParameter,
}

impl SymbolKind {
    pub fn label(self) -> &'static str {
        match self {
            SymbolKind::Independent => "independent",
            SymbolKind::Dependent => "dependent",
            SymbolKind::Parameter => "parameter",
            SymbolKind::GroupParameter => "group-parameter",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An interned symbol: a name together with its immutable kind.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    kind: SymbolKind,
    name: Arc<str>,
}

impl Symbol {
    pub fn new(name: &str, kind: SymbolKind) -> Self {
        Symbol { kind, name: Arc::from(name) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_independent(&self) -> bool {
        self.kind == SymbolKind::Independent
    }

    pub fn is_dependent(&self) -> bool {
        self.kind == SymbolKind::Dependent
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.kind)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Declared arbitrary function: a name and the fixed list of arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: Arc<str>,
    pub args: Vec<Symbol>,
}

/// A declaration scope. Names are unique across symbols and functions.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    symbols: BTreeMap<Arc<str>, Symbol>,
    functions: BTreeMap<Arc<str>, FuncDecl>,
    order: Vec<Symbol>,
}

impl Scope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<Symbol, KernelError> {
        if self.symbols.contains_key(name) || self.functions.contains_key(name) {
            return Err(KernelError::DuplicateDeclaration { name: name.to_string() });
        }
        let sym = Symbol::new(name, kind);
        self.symbols.insert(sym.name.clone(), sym.clone());
        self.order.push(sym.clone());
        Ok(sym)
    }

    pub fn independent(&mut self, name: &str) -> Result<Symbol, KernelError> {
        self.declare(name, SymbolKind::Independent)
    }

    pub fn dependent(&mut self, name: &str) -> Result<Symbol, KernelError> {
        self.declare(name, SymbolKind::Dependent)
    }

    pub fn parameter(&mut self, name: &str) -> Result<Symbol, KernelError> {
        self.declare(name, SymbolKind::Parameter)
    }

    pub fn function(&mut self, name: &str, args: &[&Symbol]) -> Result<FuncDecl, KernelError> {
        if self.symbols.contains_key(name) || self.functions.contains_key(name) {
            return Err(KernelError::DuplicateDeclaration { name: name.to_string() });
        }
        let decl = FuncDecl {
            name: Arc::from(name),
            args: args.iter().map(|s| (*s).clone()).collect(),
        };
        self.functions.insert(decl.name.clone(), decl.clone());
        Ok(decl)
    }

    pub fn lookup(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn lookup_function(&self, name: &str) -> Option<&FuncDecl> {
        self.functions.get(name)
    }

    /// Symbols in declaration order, filtered by kind.
    pub fn of_kind(&self, kind: SymbolKind) -> Vec<Symbol> {
        self.order.iter().filter(|s| s.kind() == kind).cloned().collect()
    }

    pub fn independents(&self) -> Vec<Symbol> {
        self.of_kind(SymbolKind::Independent)
    }

    pub fn dependents(&self) -> Vec<Symbol> {
        self.of_kind(SymbolKind::Dependent)
    }

    pub fn parameters(&self) -> Vec<Symbol> {
        self.of_kind(SymbolKind::Parameter)
    }

    pub fn functions(&self) -> impl Iterator<Item = &FuncDecl> {
        self.functions.values()
    }
}
