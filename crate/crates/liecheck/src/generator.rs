use std::collections::BTreeMap;

use symkernel::{parse_expression, Atom, Expr, KernelError, PdeSystem, Rat, Scope, Symbol};

use crate::error::CheckError;

/// An infinitesimal point generator: xi per independent variable, eta per
/// dependent field. Missing entries are zero. The coefficient functions
/// may depend on base coordinates only (no derivative coordinates).
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub xi: BTreeMap<Symbol, Expr>,
    pub eta: BTreeMap<Symbol, Expr>,
}

impl Generator {
    pub fn new(label: &str) -> Self {
        Generator { label: label.to_string(), xi: BTreeMap::new(), eta: BTreeMap::new() }
    }

    pub fn with_xi(mut self, var: &Symbol, e: Expr) -> Self {
        if !e.is_zero() {
            self.xi.insert(var.clone(), e);
        }
        self
    }

    pub fn with_eta(mut self, field: &Symbol, e: Expr) -> Self {
        if !e.is_zero() {
            self.eta.insert(field.clone(), e);
        }
        self
    }

    pub fn xi_of(&self, var: &Symbol) -> Expr {
        self.xi.get(var).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn eta_of(&self, field: &Symbol) -> Expr {
        self.eta.get(field).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_empty() && self.eta.is_empty()
    }

    /// Apply the generator as a first-order operator to a function of the
    /// base coordinates: X(h) = sum xi^i dh/dx_i + sum eta^a dh/du^a.
    pub fn apply(&self, h: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (var, xi) in &self.xi {
            let dh = h.diff_jet(var);
            if !dh.is_zero() {
                out = &out + &(xi * &dh);
            }
        }
        for (field, eta) in &self.eta {
            let coord = Atom::Deriv(symkernel::DerivCoord::field(field));
            let dh = h.partial_atom(&coord);
            if !dh.is_zero() {
                out = &out + &(eta * &dh);
            }
        }
        out
    }

    /// a*X + b*Y componentwise, used by the linearity checks.
    pub fn linear_combination(a: &Rat, x: &Generator, b: &Rat, y: &Generator) -> Generator {
        let mut out = Generator::new(&format!("{}+{}", x.label, y.label));
        let ae = Expr::from_rat(a.clone());
        let be = Expr::from_rat(b.clone());
        let keys: std::collections::BTreeSet<&Symbol> =
            x.xi.keys().chain(y.xi.keys()).collect();
        for k in keys {
            let e = &(&ae * &x.xi_of(k)) + &(&be * &y.xi_of(k));
            if !e.is_zero() {
                out.xi.insert(k.clone(), e);
            }
        }
        let keys: std::collections::BTreeSet<&Symbol> =
            x.eta.keys().chain(y.eta.keys()).collect();
        for k in keys {
            let e = &(&ae * &x.eta_of(k)) + &(&be * &y.eta_of(k));
            if !e.is_zero() {
                out.eta.insert(k.clone(), e);
            }
        }
        out
    }

    /// Point-generator validation against a system scope: components must
    /// be functions of base coordinates, and keys must belong to the scope.
    pub fn validate(&self, sys: &PdeSystem) -> Result<(), CheckError> {
        for var in self.xi.keys() {
            if !sys.independents.contains(var) {
                return Err(CheckError::ScopeMismatch {
                    label: self.label.clone(),
                    name: var.name().to_string(),
                });
            }
        }
        for field in self.eta.keys() {
            if !sys.dependents.contains(field) {
                return Err(CheckError::ScopeMismatch {
                    label: self.label.clone(),
                    name: field.name().to_string(),
                });
            }
        }
        for e in self.xi.values().chain(self.eta.values()) {
            for atom in e.atoms() {
                if let Some(dc) = atom.as_deriv() {
                    if !dc.index.is_empty() {
                        return Err(CheckError::NotPointGenerator {
                            label: self.label.clone(),
                            offending: atom.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parse a generator file:
/// ```text
/// generator X5
/// xi t = t
/// eta Psi = -Psi
/// ```
/// Missing xi/eta entries default to zero.
pub fn parse_generator_file(text: &str, scope: &Scope) -> Result<Generator, CheckError> {
    let mut label: Option<String> = None;
    let mut gen = Generator::new("unnamed");
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut parts = trimmed.splitn(2, char::is_whitespace);
        let head = parts.next().unwrap_or("");
        let rest = parts.next().unwrap_or("").trim();
        match head {
            "generator" => {
                if rest.is_empty() {
                    return Err(CheckError::Format(format!(
                        "line {line}: `generator` needs a label"
                    )));
                }
                label = Some(rest.to_string());
                gen.label = rest.to_string();
            }
            "xi" | "eta" => {
                let (name, expr_text) = rest.split_once('=').ok_or_else(|| {
                    CheckError::Format(format!("line {line}: expected `{head} <name> = <expr>`"))
                })?;
                let name = name.trim();
                let sym = scope
                    .lookup(name)
                    .cloned()
                    .ok_or_else(|| KernelError::Undeclared {
                        name: name.to_string(),
                        line,
                        col: 1,
                    })?;
                let e = parse_expression(expr_text.trim(), scope)?;
                if head == "xi" {
                    if !sym.is_independent() {
                        return Err(CheckError::Format(format!(
                            "line {line}: xi component `{name}` is not an independent variable"
                        )));
                    }
                    gen = gen.with_xi(&sym, e);
                } else {
                    if !sym.is_dependent() {
                        return Err(CheckError::Format(format!(
                            "line {line}: eta component `{name}` is not a dependent field"
                        )));
                    }
                    gen = gen.with_eta(&sym, e);
                }
            }
            other => {
                return Err(CheckError::Format(format!(
                    "line {line}: unknown generator line `{other}`"
                )));
            }
        }
    }
    if label.is_none() {
        return Err(CheckError::Format("missing `generator <label>` header".into()));
    }
    Ok(gen)
}

/// Parse a side-condition file: one `eq: <expr> = 0` line per condition,
/// in the system's scope.
pub fn parse_side_conditions(text: &str, scope: &Scope) -> Result<Vec<Expr>, CheckError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let rest = trimmed.strip_prefix("eq").and_then(|r| {
            let r = r.trim_start();
            r.strip_prefix(':')
        });
        let rest = match rest {
            Some(r) => r.trim(),
            None => {
                return Err(CheckError::Format(format!(
                    "line {line}: side conditions are written `eq: <expr> = 0`"
                )))
            }
        };
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| {
            CheckError::Format(format!("line {line}: expected `eq: <expr> = 0`"))
        })?;
        let value = parse_expression(lhs.trim(), scope)?;
        let zero = parse_expression(rhs.trim(), scope)?;
        if !zero.is_zero() {
            return Err(CheckError::Format(format!(
                "line {line}: right side of a condition must be 0"
            )));
        }
        out.push(value);
    }
    Ok(out)
}
