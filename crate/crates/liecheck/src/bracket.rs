use std::collections::BTreeSet;

use symkernel::Symbol;

use crate::generator::Generator;

/// Lie bracket of two point generators on the same variable scope:
/// [X, Y] has components X(Y-components) - Y(X-components).
pub fn commutator(g1: &Generator, g2: &Generator) -> Generator {
    let mut out = Generator::new(&format!("[{},{}]", g1.label, g2.label));

    let xi_keys: BTreeSet<&Symbol> = g1.xi.keys().chain(g2.xi.keys()).collect();
    for var in xi_keys {
        let e = &g1.apply(&g2.xi_of(var)) - &g2.apply(&g1.xi_of(var));
        if !e.is_zero() {
            out.xi.insert((*var).clone(), e);
        }
    }

    let eta_keys: BTreeSet<&Symbol> = g1.eta.keys().chain(g2.eta.keys()).collect();
    for field in eta_keys {
        let e = &g1.apply(&g2.eta_of(field)) - &g2.apply(&g1.eta_of(field));
        if !e.is_zero() {
            out.eta.insert((*field).clone(), e);
        }
    }

    out
}
