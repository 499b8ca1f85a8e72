use crate::error::KernelError;
use crate::expr::Expr;
use crate::subst::{substitute, RewriteSet, DEFAULT_REWRITE_BUDGET};
use crate::symbol::{Scope, Symbol};

/// A PDE system: declared scope, equations (each `expr = 0`) and an
/// ordered on-shell rewrite-rule list.
#[derive(Clone, Debug)]
pub struct PdeSystem {
    pub name: String,
    pub scope: Scope,
    pub independents: Vec<Symbol>,
    pub dependents: Vec<Symbol>,
    pub equations: Vec<Expr>,
    pub rules: RewriteSet,
}

impl PdeSystem {
    pub fn new(
        name: &str,
        scope: Scope,
        equations: Vec<Expr>,
        rules: RewriteSet,
    ) -> Result<Self, KernelError> {
        let independents = scope.independents();
        let dependents = scope.dependents();
        Ok(PdeSystem {
            name: name.to_string(),
            scope,
            independents,
            dependents,
            equations,
            rules,
        })
    }

    /// Maximal derivative order appearing in the equations.
    pub fn max_order(&self) -> u32 {
        self.equations.iter().map(|e| e.max_deriv_order()).max().unwrap_or(0)
    }

    /// On-shell reduction: rewrite modulo the rule list and all of its
    /// differential consequences.
    pub fn reduce(&self, e: &Expr) -> Result<Expr, KernelError> {
        substitute(e, &self.rules, true, DEFAULT_REWRITE_BUDGET)
    }

    /// Reduce modulo the system rules prefixed by extra (side-condition)
    /// rules, which take precedence on equal-specificity matches.
    pub fn reduce_with(&self, e: &Expr, extra: &RewriteSet) -> Result<Expr, KernelError> {
        let combined = RewriteSet::chained(extra, &self.rules);
        substitute(e, &combined, true, DEFAULT_REWRITE_BUDGET)
    }

    /// Every equation must vanish under its own rewrite rules; this is the
    /// well-formedness check used before a symmetry verdict is trusted.
    pub fn validate(&self) -> Result<(), KernelError> {
        for (i, eq) in self.equations.iter().enumerate() {
            if !self.reduce(eq)?.is_zero() {
                return Err(KernelError::IncompleteRules { index: i });
            }
        }
        Ok(())
    }
}
