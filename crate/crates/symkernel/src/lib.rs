//! Exact symbolic expression engine used by the symmetry checks.
//!
//! Expressions are kept in a canonical form: a fraction of multivariate
//! polynomials over the rationals, whose indeterminates ("atoms") are
//! declared symbols, derivative coordinates, arbitrary-function nodes and
//! sine/cosine pairs of a common phase. Zero testing reduces to asking
//! whether the canonical numerator is the zero polynomial, which is enough
//! to decide every identity this toolkit has to check.
//!
//! The text DSL (`parse`) covers system files (`independent`, `dependent`,
//! `parameter`, `function`, `eq:`, `solve:` lines) and plain expressions.

mod atom;
mod error;
mod expr;
mod parse;
mod poly;
mod print;
mod subst;
mod symbol;
mod system;

pub use atom::{ArbFunc, Atom, Branch, DerivCoord, MultiIndex, PhaseAtom};
pub use error::KernelError;
pub use expr::Expr;
pub use parse::{parse_expression, parse_system};
pub use poly::{Monomial, Poly};
pub use subst::{substitute, substitute_simultaneous, Rule, RewriteSet, DEFAULT_REWRITE_BUDGET};
pub use symbol::{FuncDecl, Scope, Symbol, SymbolKind};
pub use system::PdeSystem;

/// Exact rational coefficient type used throughout the kernel.
pub type Rat = num_rational::BigRational;

/// Convenience: build an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}
