use num_traits::{One, Signed};

use crate::atom::{Atom, Branch};
use crate::expr::Expr;
use crate::poly::{Monomial, Poly};
use crate::Rat;

/// Render an expression in the DSL grammar. `parse(print(e))` is
/// canonically equal to `e`.
pub fn expr_to_string(e: &Expr) -> String {
    if e.den().is_one() {
        poly_to_string(e.num())
    } else {
        format!("({})/({})", poly_to_string(e.num()), poly_to_string(e.den()))
    }
}

pub fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Terms largest-first reads naturally for leading witnesses.
    for (i, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let mag = c.abs();
        let body = unsigned_term(m, &mag);
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// Single monomial with signed coefficient, used for witnesses.
pub fn term_to_string(m: &Monomial, c: &Rat) -> String {
    let mag = c.abs();
    let body = unsigned_term(m, &mag);
    if c.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

fn unsigned_term(m: &Monomial, mag: &Rat) -> String {
    let coeff = rat_to_string(mag);
    if m.is_one() {
        return coeff;
    }
    let factors: Vec<String> = m
        .factors()
        .iter()
        .map(|(a, e)| {
            let base = atom_to_string(a);
            if *e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect();
    let body = factors.join("*");
    if mag.is_one() {
        body
    } else {
        format!("{coeff}*{body}")
    }
}

pub fn rat_to_string(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn atom_to_string(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => s.name().to_string(),
        Atom::Deriv(dc) => {
            if dc.index.is_empty() {
                dc.field.name().to_string()
            } else {
                let vars: Vec<String> =
                    dc.index.expanded().iter().map(|s| s.name().to_string()).collect();
                format!("D({},{})", dc.field.name(), vars.join(","))
            }
        }
        Atom::Func(f) => {
            if f.total_order() == 0 {
                f.name.to_string()
            } else {
                let mut vars: Vec<&str> = Vec::new();
                for (arg, n) in f.args.iter().zip(f.orders.iter()) {
                    for _ in 0..*n {
                        vars.push(arg.name());
                    }
                }
                format!("D({},{})", f.name, vars.join(","))
            }
        }
        Atom::Phase(p) => {
            let inner = expr_to_string(&p.phase);
            match p.branch {
                Branch::Sin => format!("sin({inner})"),
                Branch::Cos => format!("cos({inner})"),
            }
        }
    }
}
