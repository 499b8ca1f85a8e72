use std::fmt;
use std::sync::Arc;

use crate::expr::Expr;
use crate::symbol::Symbol;

/// Multi-index of a derivative coordinate: independent variable -> order.
/// Kept sorted with no zero entries, so mixed partials commute by
/// construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiIndex(Vec<(Symbol, u32)>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn from_pairs(pairs: &[(Symbol, u32)]) -> Self {
        let mut v: Vec<(Symbol, u32)> =
            pairs.iter().filter(|(_, n)| *n > 0).cloned().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Symbol, u32)> = Vec::with_capacity(v.len());
        for (s, n) in v {
            match merged.last_mut() {
                Some((last, m)) if *last == s => *m += n,
                _ => merged.push((s, n)),
            }
        }
        MultiIndex(merged)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total derivative order.
    pub fn total(&self) -> u32 {
        self.0.iter().map(|(_, n)| n).sum()
    }

    pub fn order_of(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(v, _)| v == s).map(|(_, n)| *n).unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn bump(&self, s: &Symbol) -> Self {
        let mut v = self.0.clone();
        match v.iter_mut().find(|(sym, _)| sym == s) {
            Some((_, n)) => *n += 1,
            None => {
                v.push((s.clone(), 1));
                v.sort_by(|a, b| a.0.cmp(&b.0));
            }
        }
        MultiIndex(v)
    }

    /// Componentwise `self >= other`.
    pub fn contains(&self, other: &MultiIndex) -> bool {
        other.0.iter().all(|(s, n)| self.order_of(s) >= *n)
    }

    /// Componentwise difference; caller guarantees `self.contains(other)`.
    pub fn minus(&self, other: &MultiIndex) -> MultiIndex {
        let pairs: Vec<(Symbol, u32)> = self
            .0
            .iter()
            .map(|(s, n)| (s.clone(), n - other.order_of(s)))
            .collect();
        MultiIndex::from_pairs(&pairs)
    }

    /// Flattened list of variables, each repeated by its order.
    pub fn expanded(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for (s, n) in &self.0 {
            for _ in 0..*n {
                out.push(s.clone());
            }
        }
        out
    }
}

/// A derivative coordinate u_J. The empty multi-index is the field itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DerivCoord {
    pub field: Symbol,
    pub index: MultiIndex,
}

impl DerivCoord {
    pub fn field(field: &Symbol) -> Self {
        DerivCoord { field: field.clone(), index: MultiIndex::empty() }
    }

    pub fn new(field: &Symbol, index: MultiIndex) -> Self {
        DerivCoord { field: field.clone(), index }
    }

    pub fn order(&self) -> u32 {
        self.index.total()
    }

    pub fn bump(&self, s: &Symbol) -> Self {
        DerivCoord { field: self.field.clone(), index: self.index.bump(s) }
    }
}

/// Arbitrary-function node F(args) carrying one derivative order per
/// argument position. Differentiating by an argument raises that order;
/// differentiating by a non-argument gives zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArbFunc {
    pub name: Arc<str>,
    pub args: Vec<Symbol>,
    pub orders: Vec<u32>,
}

impl ArbFunc {
    pub fn new(name: &str, args: &[Symbol]) -> Self {
        ArbFunc {
            name: Arc::from(name),
            args: args.to_vec(),
            orders: vec![0; args.len()],
        }
    }

    pub fn total_order(&self) -> u32 {
        self.orders.iter().sum()
    }

    pub fn bump(&self, arg_idx: usize) -> Self {
        let mut f = self.clone();
        f.orders[arg_idx] += 1;
        f
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Branch {
    Sin,
    Cos,
}

/// sin or cos of a common phase. Distinct phases are algebraically
/// independent ring generators; no Pythagorean rewriting is performed.
/// The phase is stored canonically with a positive leading coefficient;
/// `Expr::sin_of`/`cos_of` fold the sign into the returned expression.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PhaseAtom {
    pub branch: Branch,
    pub phase: Box<Expr>,
}

/// Canonical polynomial indeterminates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Sym(Symbol),
    Deriv(DerivCoord),
    Func(ArbFunc),
    Phase(PhaseAtom),
}

impl Atom {
    pub fn as_deriv(&self) -> Option<&DerivCoord> {
        match self {
            Atom::Deriv(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::atom_to_string(self))
    }
}
