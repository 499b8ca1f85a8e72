use std::collections::BTreeMap;

use crate::atom::{Atom, DerivCoord, MultiIndex};
use crate::error::KernelError;
use crate::expr::Expr;
use crate::poly::Poly;

/// Upper bound on atom replacements before a rewrite is declared
/// non-terminating.
pub const DEFAULT_REWRITE_BUDGET: usize = 200_000;

/// A single on-shell rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: DerivCoord,
    pub rhs: Expr,
}

/// An ordered rewrite-rule list.
///
/// Matching an atom u_M against the list, with differential consequences
/// enabled, proceeds by specificity: an exact left side wins over a
/// prolonged one, and among prolonged candidates the one with the largest
/// base multi-index wins. Ties fall back to list order. This makes a rule
/// solving u_t take precedence for all t-derivatives over an order-zero
/// rule for u itself, which is what keeps the layered rule sets for the
/// field systems confluent.
#[derive(Clone, Debug, Default)]
pub struct RewriteSet {
    pub rules: Vec<Rule>,
}

impl RewriteSet {
    pub fn new(rules: Vec<Rule>) -> Self {
        RewriteSet { rules }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Concatenate two rule lists, `first` taking precedence on ties.
    pub fn chained(first: &RewriteSet, second: &RewriteSet) -> RewriteSet {
        let mut rules = first.rules.clone();
        rules.extend(second.rules.iter().cloned());
        RewriteSet { rules }
    }

    /// Best-matching rule for a coordinate, with the residual multi-index
    /// to prolong by.
    fn match_coord(&self, dc: &DerivCoord, consequences: bool) -> Option<(usize, MultiIndex)> {
        let mut best: Option<(usize, MultiIndex, u32, bool)> = None;
        for (i, rule) in self.rules.iter().enumerate() {
            if rule.lhs.field != dc.field || !dc.index.contains(&rule.lhs.index) {
                continue;
            }
            let residue = dc.index.minus(&rule.lhs.index);
            let exact = residue.is_empty();
            if !exact && !consequences {
                continue;
            }
            let specificity = rule.lhs.index.total();
            let better = match &best {
                None => true,
                Some((_, _, s, e)) => {
                    // Exact beats prolonged; then larger base index; ties
                    // keep the earlier rule.
                    (exact && !e) || (exact == *e && specificity > *s)
                }
            };
            if better {
                best = Some((i, residue, specificity, exact));
            }
        }
        best.map(|(i, residue, _, _)| (i, residue))
    }
}

/// Apply an atom -> expression map to every occurrence, in one pass.
pub(crate) fn apply_atom_map(
    e: &Expr,
    map: &BTreeMap<Atom, Expr>,
) -> Result<Expr, KernelError> {
    let num = eval_poly(e.num(), map)?;
    let den = eval_poly(e.den(), map)?;
    num.try_div(&den)
}

fn eval_poly(p: &Poly, map: &BTreeMap<Atom, Expr>) -> Result<Expr, KernelError> {
    let touched = p.atoms().iter().any(|a| map.contains_key(a.as_ref()));
    if !touched {
        return Ok(crate::expr::Expr::normalized(p.clone(), Poly::one()));
    }
    let mut out = Expr::zero();
    for (m, c) in p.terms() {
        let mut term = Expr::from_rat(c.clone());
        for (a, exp) in m.factors() {
            let factor = match map.get(a.as_ref()) {
                Some(rep) => rep.pow_i(*exp as i32)?,
                None => Expr::normalized(Poly::atom(a.clone()), Poly::one())
                    .pow_i(*exp as i32)?,
            };
            term = &term * &factor;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Rewrite to a fixpoint. With `consequences` set, each rule u_J -> r also
/// rewrites every u_{J+K} to D_K(r). A budget guards against
/// non-terminating rule sets.
pub fn substitute(
    e: &Expr,
    rules: &RewriteSet,
    consequences: bool,
    budget: usize,
) -> Result<Expr, KernelError> {
    let mut current = e.clone();
    let mut steps = 0usize;
    let mut prolonged: BTreeMap<(usize, MultiIndex), Expr> = BTreeMap::new();
    loop {
        let mut map: BTreeMap<Atom, Expr> = BTreeMap::new();
        for atom in current.atoms() {
            let dc = match atom.as_deriv() {
                Some(dc) => dc,
                None => continue,
            };
            if let Some((idx, residue)) = rules.match_coord(dc, consequences) {
                let rep = prolonged
                    .entry((idx, residue.clone()))
                    .or_insert_with(|| prolong_rhs(&rules.rules[idx].rhs, &residue))
                    .clone();
                map.insert(atom.as_ref().clone(), rep);
            }
        }
        if map.is_empty() {
            return Ok(current);
        }
        steps += map.len();
        if steps > budget {
            return Err(KernelError::RewriteBudgetExceeded { steps });
        }
        current = apply_atom_map(&current, &map)?;
    }
}

/// One simultaneous pass, no fixpoint. Safe for self-referential
/// replacements such as field shifts u -> u + 1.
pub fn substitute_simultaneous(
    e: &Expr,
    pairs: &[(DerivCoord, Expr)],
    consequences: bool,
) -> Result<Expr, KernelError> {
    let rules = RewriteSet::new(
        pairs
            .iter()
            .map(|(lhs, rhs)| Rule { lhs: lhs.clone(), rhs: rhs.clone() })
            .collect(),
    );
    let mut map: BTreeMap<Atom, Expr> = BTreeMap::new();
    for atom in e.atoms() {
        let dc = match atom.as_deriv() {
            Some(dc) => dc,
            None => continue,
        };
        if let Some((idx, residue)) = rules.match_coord(dc, consequences) {
            map.insert(
                atom.as_ref().clone(),
                prolong_rhs(&rules.rules[idx].rhs, &residue),
            );
        }
    }
    apply_atom_map(e, &map)
}

fn prolong_rhs(rhs: &Expr, residue: &MultiIndex) -> Expr {
    let mut out = rhs.clone();
    for s in residue.expanded() {
        out = out.diff(&s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::symbol::Scope;

    #[test]
    fn empty_rule_list_is_identity() {
        let mut sc = Scope::new();
        let x = sc.independent("x").unwrap();
        let u = sc.dependent("u").unwrap();
        let e = &Expr::sym(&u) + &Expr::sym(&x);
        let r = substitute(&e, &RewriteSet::default(), true, 100).unwrap();
        assert_eq!(r, e);
    }

    #[test]
    fn prolonged_rule_rewrites_derivatives() {
        // psi -> phi - phi_xx - phi_yy, applied to psi_y with consequences.
        let mut sc = Scope::new();
        let _t = sc.independent("t").unwrap();
        let x = sc.independent("x").unwrap();
        let y = sc.independent("y").unwrap();
        let phi = sc.dependent("Phi").unwrap();
        let psi = sc.dependent("Psi").unwrap();
        let rhs = &(&Expr::sym(&phi) - &Expr::deriv(&phi, &[&x, &x])) - &Expr::deriv(&phi, &[&y, &y]);
        let rules = RewriteSet::new(vec![Rule {
            lhs: DerivCoord::field(&psi),
            rhs,
        }]);
        let e = Expr::deriv(&psi, &[&y]);
        let r = substitute(&e, &rules, true, 1000).unwrap();
        let expected = &(&Expr::deriv(&phi, &[&y]) - &Expr::deriv(&phi, &[&x, &x, &y]))
            - &Expr::deriv(&phi, &[&y, &y, &y]);
        assert!(r.equivalent(&expected));
    }

    #[test]
    fn exact_rule_beats_prolonged_order_zero_rule() {
        // u -> x and u_t -> 42: u_t must use its exact rule.
        let mut sc = Scope::new();
        let t = sc.independent("t").unwrap();
        let x = sc.independent("x").unwrap();
        let u = sc.dependent("u").unwrap();
        let rules = RewriteSet::new(vec![
            Rule { lhs: DerivCoord::field(&u), rhs: Expr::sym(&x) },
            Rule { lhs: DerivCoord::field(&u).bump(&t), rhs: Expr::from_int(42) },
        ]);
        let r = substitute(&Expr::deriv(&u, &[&t]), &rules, true, 100).unwrap();
        assert_eq!(r, Expr::from_int(42));
        // And u_tx picks the more specific u_t rule (prolonged by x): 0.
        let r2 = substitute(&Expr::deriv(&u, &[&t, &x]), &rules, true, 100).unwrap();
        assert!(r2.is_zero());
    }

    #[test]
    fn budget_guards_cycles() {
        // u -> u_x together with u_x -> u loops forever.
        let mut sc = Scope::new();
        let x = sc.independent("x").unwrap();
        let u = sc.dependent("u").unwrap();
        let rules = RewriteSet::new(vec![
            Rule { lhs: DerivCoord::field(&u), rhs: Expr::deriv(&u, &[&x]) },
            Rule { lhs: DerivCoord::field(&u).bump(&x), rhs: Expr::sym(&u) },
        ]);
        let err = substitute(&Expr::sym(&u), &rules, false, 50).unwrap_err();
        assert!(matches!(err, KernelError::RewriteBudgetExceeded { .. }));
    }

    #[test]
    fn simultaneous_shift_does_not_loop() {
        let mut sc = Scope::new();
        let _x = sc.independent("x").unwrap();
        let u = sc.dependent("u").unwrap();
        let shifted = substitute_simultaneous(
            &(&Expr::sym(&u) * &Expr::sym(&u)),
            &[(DerivCoord::field(&u), &Expr::sym(&u) + &Expr::one())],
            true,
        )
        .unwrap();
        let expected = (&Expr::sym(&u) + &Expr::one()).pow_i(2).unwrap();
        assert!(shifted.equivalent(&expected));
    }
}
