use serde::Serialize;

use symkernel::{Expr, PdeSystem, RewriteSet, Rule};

use crate::error::CheckError;
use crate::generator::Generator;
use crate::prolong::prolong;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Symmetry,
    NotASymmetry,
}

/// Result of a determining-equation check: the reduced residual of every
/// equation (and side condition) plus a witness monomial when some
/// residual is nonzero.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub system: String,
    pub generator: String,
    pub verdict: Verdict,
    pub residuals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub conditions: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Symmetry
    }
}

/// Raw reduced residuals of the prolonged action, one per equation
/// followed by one per side condition. `check_symmetry` wraps this into a
/// verdict; the residuals themselves are linear in the generator.
pub fn residuals(
    g: &Generator,
    sys: &PdeSystem,
    side: &[Expr],
) -> Result<Vec<Expr>, CheckError> {
    let order = sys
        .max_order()
        .max(side.iter().map(|e| e.max_deriv_order()).max().unwrap_or(0));
    let pg = prolong(g, sys, order)?;
    let extra = side_condition_rules(side)?;
    let mut out = Vec::with_capacity(sys.equations.len() + side.len());
    for eq in sys.equations.iter().chain(side.iter()) {
        let action = pg.apply(eq);
        let reduced = if extra.is_empty() {
            sys.reduce(&action)?
        } else {
            sys.reduce_with(&action, &extra)?
        };
        out.push(reduced);
    }
    Ok(out)
}

fn report(
    g: &Generator,
    sys: &PdeSystem,
    side: &[Expr],
    residuals: Vec<Expr>,
) -> SymmetryReport {
    let witness = residuals.iter().find_map(|r| r.witness());
    SymmetryReport {
        system: sys.name.clone(),
        generator: g.label.clone(),
        verdict: if witness.is_none() { Verdict::Symmetry } else { Verdict::NotASymmetry },
        residuals: residuals.iter().map(|r| r.to_string()).collect(),
        witness,
        conditions: side.iter().map(|c| c.to_string()).collect(),
    }
}

/// Check that `g` is a Lie point symmetry of `sys`: the prolonged action
/// on every equation must vanish after on-shell reduction.
pub fn check_symmetry(g: &Generator, sys: &PdeSystem) -> Result<SymmetryReport, CheckError> {
    sys.validate()?;
    let res = residuals(g, sys, &[])?;
    Ok(report(g, sys, &[], res))
}

/// Conditional check: side conditions (expressions set to zero) and all of
/// their differential consequences join the rewrite set, and each side
/// condition must itself be invariant under the prolonged action.
pub fn check_conditional_symmetry(
    g: &Generator,
    sys: &PdeSystem,
    side: &[Expr],
) -> Result<SymmetryReport, CheckError> {
    let extra = side_condition_rules(side)?;
    for (i, eq) in sys.equations.iter().enumerate() {
        if !sys.reduce_with(eq, &extra)?.is_zero() {
            return Err(CheckError::Kernel(symkernel::KernelError::IncompleteRules { index: i }));
        }
    }
    let res = residuals(g, sys, side)?;
    Ok(report(g, sys, side, res))
}

/// Turn side conditions into rewrite rules by solving each for its highest
/// derivative coordinate (which must occur linearly, with a coefficient
/// free of that coordinate).
pub fn side_condition_rules(side: &[Expr]) -> Result<RewriteSet, CheckError> {
    let mut rules = Vec::with_capacity(side.len());
    for cond in side {
        rules.push(solve_for_leading(cond)?);
    }
    Ok(RewriteSet::new(rules))
}

fn solve_for_leading(cond: &Expr) -> Result<Rule, CheckError> {
    let mut coords = cond.deriv_atoms();
    coords.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.cmp(b))
    });
    let lead = coords
        .pop()
        .ok_or_else(|| CheckError::UnsolvableSideCondition { got: cond.to_string() })?;
    let lead_atom = symkernel::Atom::Deriv(lead.clone());
    let coeff = cond.partial_atom(&lead_atom);
    if coeff.is_zero() || coeff.contains_atom(&lead_atom) {
        return Err(CheckError::UnsolvableSideCondition { got: cond.to_string() });
    }
    // cond = coeff * lead + rest  =>  lead -> -rest / coeff
    let rest = {
        let mut map = std::collections::BTreeMap::new();
        map.insert(lead_atom.clone(), Expr::zero());
        substitute_atoms(cond, &map)?
    };
    let rhs = (-&rest).try_div(&coeff).map_err(CheckError::Kernel)?;
    Ok(Rule { lhs: lead, rhs })
}

fn substitute_atoms(
    e: &Expr,
    map: &std::collections::BTreeMap<symkernel::Atom, Expr>,
) -> Result<Expr, CheckError> {
    // A single simultaneous pass over derivative atoms.
    let pairs: Vec<(symkernel::DerivCoord, Expr)> = map
        .iter()
        .filter_map(|(a, v)| a.as_deriv().map(|d| (d.clone(), v.clone())))
        .collect();
    symkernel::substitute_simultaneous(e, &pairs, false).map_err(CheckError::Kernel)
}

