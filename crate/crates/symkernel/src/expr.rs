use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::atom::{ArbFunc, Atom, Branch, DerivCoord, MultiIndex, PhaseAtom};
use crate::error::KernelError;
use crate::poly::{Monomial, Poly};
use crate::symbol::{Symbol, SymbolKind};
use crate::Rat;

/// How a differentiation pass treats the atoms it chains through.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum DiffMode {
    /// Total derivative: derivative coordinates pick up the variable,
    /// dependent-field function arguments chain to first-order coordinates.
    Total,
    /// Explicit (jet-space) partial: derivative coordinates and
    /// dependent-field arguments are frozen; only the explicit dependence
    /// through plain symbols, phases and independent arguments survives.
    Jet,
}

/// A canonical expression: a fraction of polynomials over the rationals.
///
/// Invariants maintained by every constructor and operation:
/// the denominator is nonzero; a zero numerator forces denominator 1;
/// the joint monomial content of numerator and denominator is cancelled;
/// the denominator's leading coefficient is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub(crate) fn normalized(num: Poly, den: Poly) -> Expr {
        debug_assert!(!den.is_zero(), "denominator must be nonzero");
        if num.is_zero() {
            return Expr { num: Poly::zero(), den: Poly::one() };
        }
        let content_n = num.content_monomial();
        let content_d = den.content_monomial();
        // Shared part of the two contents.
        let shared = Monomial::from_pairs(
            content_n
                .factors()
                .iter()
                .filter_map(|(a, e)| {
                    let other = content_d.exponent_of(a);
                    if other == 0 {
                        None
                    } else {
                        Some((a.clone(), (*e).min(other)))
                    }
                })
                .collect(),
        );
        let (num, den) = if shared.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&shared), den.div_monomial(&shared))
        };
        let lead = den.leading().expect("nonzero denominator").1.clone();
        if lead.is_one() {
            Expr { num, den }
        } else {
            let inv = Rat::one() / lead;
            Expr { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Expr {
        Expr { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Expr {
        Expr { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Expr {
        Expr::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_rat(c: Rat) -> Expr {
        Expr { num: Poly::constant(c), den: Poly::one() }
    }

    pub(crate) fn from_atom(a: Atom) -> Expr {
        Expr { num: Poly::atom(Arc::new(a)), den: Poly::one() }
    }

    /// A declared symbol as an expression. Dependent fields become the
    /// zero-index derivative coordinate, so the field and "its derivative
    /// of order zero" are the same atom.
    pub fn sym(s: &Symbol) -> Expr {
        if s.is_dependent() {
            Expr::from_atom(Atom::Deriv(DerivCoord::field(s)))
        } else {
            Expr::from_atom(Atom::Sym(s.clone()))
        }
    }

    pub fn deriv(field: &Symbol, vars: &[&Symbol]) -> Expr {
        let pairs: Vec<(Symbol, u32)> = vars.iter().map(|v| ((*v).clone(), 1)).collect();
        Expr::from_atom(Atom::Deriv(DerivCoord::new(field, MultiIndex::from_pairs(&pairs))))
    }

    pub fn deriv_coord(dc: DerivCoord) -> Expr {
        Expr::from_atom(Atom::Deriv(dc))
    }

    pub fn func(f: ArbFunc) -> Expr {
        Expr::from_atom(Atom::Func(f))
    }

    /// sin of a phase. The phase must be built from plain symbols only.
    /// The sign of the canonical phase is normalized; for sin the flip is
    /// folded into the result (sin(-p) = -sin(p)); a zero phase gives 0.
    pub fn sin_of(phase: &Expr) -> Result<Expr, KernelError> {
        Self::trig(Branch::Sin, phase)
    }

    /// cos of a phase (cos(-p) = cos(p); a zero phase gives 1).
    pub fn cos_of(phase: &Expr) -> Result<Expr, KernelError> {
        Self::trig(Branch::Cos, phase)
    }

    fn trig(branch: Branch, phase: &Expr) -> Result<Expr, KernelError> {
        for a in phase.atoms() {
            if !matches!(a.as_ref(), Atom::Sym(_)) {
                return Err(KernelError::InvalidPhase { found: a.to_string() });
            }
        }
        if phase.is_zero() {
            return Ok(match branch {
                Branch::Sin => Expr::zero(),
                Branch::Cos => Expr::one(),
            });
        }
        let lead_negative = phase
            .num
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let (canonical, flip) = if lead_negative {
            (-phase, matches!(branch, Branch::Sin))
        } else {
            (phase.clone(), false)
        };
        let atom = Expr::from_atom(Atom::Phase(PhaseAtom { branch, phase: Box::new(canonical) }));
        Ok(if flip { -&atom } else { atom })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// When the expression is exactly one derivative coordinate with
    /// coefficient one, return it.
    pub fn as_single_coordinate(&self) -> Option<DerivCoord> {
        if !self.den.is_one() || self.num.num_terms() != 1 {
            return None;
        }
        let (m, c) = self.num.leading()?;
        if !c.is_one() || m.factors().len() != 1 || m.factors()[0].1 != 1 {
            return None;
        }
        m.factors()[0].0.as_deriv().cloned()
    }

    /// Numerator with its monomial content removed, coefficients scaled to
    /// coprime integers and a positive leading coefficient. Used to report
    /// the structural part of a nonzero residual.
    pub fn primitive_numerator(&self) -> Expr {
        use num_bigint::BigInt;
        if self.num.is_zero() {
            return Expr::zero();
        }
        let content = self.num.content_monomial();
        let reduced = self.num.div_monomial(&content);
        // gcd of numerators / lcm of denominators over all coefficients.
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for (_, c) in reduced.terms() {
            num_gcd = gcd_bigint(&num_gcd, c.numer());
            let g = gcd_bigint(&den_lcm, c.denom());
            den_lcm = &den_lcm / &g * c.denom();
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        if reduced
            .leading()
            .map(|(_, c)| (c.clone() * scale.clone()).is_negative())
            .unwrap_or(false)
        {
            scale = -scale;
        }
        Expr { num: reduced.scale(&scale), den: Poly::one() }
    }

    /// Coefficient of an exact power pattern: collects the numerator terms
    /// whose exponents on the listed atoms match the pattern exactly and
    /// divides the pattern out. The denominator must be free of the listed
    /// atoms.
    pub fn coeff_of(&self, pattern: &[(Atom, u32)]) -> Option<Expr> {
        for (a, _) in pattern {
            if self.den.contains_atom(a) {
                return None;
            }
        }
        let mut out = Poly::zero();
        'terms: for (m, c) in self.num.terms() {
            for (a, e) in pattern {
                if m.exponent_of(a) != *e {
                    continue 'terms;
                }
            }
            let reduced: Vec<(std::sync::Arc<Atom>, u32)> = m
                .factors()
                .iter()
                .map(|(a, e)| {
                    let drop = pattern
                        .iter()
                        .find(|(p, _)| p == a.as_ref())
                        .map(|(_, pe)| *pe)
                        .unwrap_or(0);
                    (a.clone(), e - drop)
                })
                .collect();
            out.add_term(Monomial::from_pairs(reduced), c.clone());
        }
        Some(Expr::normalized(out, self.den.clone()))
    }

    /// One nonzero canonical monomial of the numerator, as printed text.
    /// `None` when the expression is zero.
    pub fn witness(&self) -> Option<String> {
        self.num
            .leading()
            .map(|(m, c)| crate::print::term_to_string(m, c))
    }

    /// Same value, re-normalized from its raw parts. Canonicalization is
    /// idempotent, so this is always representationally equal to `self`.
    pub fn canonicalize(&self) -> Expr {
        let num = Poly::from_terms(self.num.terms().map(|(m, c)| (m.clone(), c.clone())));
        let den = Poly::from_terms(self.den.terms().map(|(m, c)| (m.clone(), c.clone())));
        Expr::normalized(num, den)
    }

    /// Canonical equality: the difference has zero numerator.
    pub fn equivalent(&self, other: &Expr) -> bool {
        // Cross-multiplied difference avoids building the normalized sum.
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }

    pub fn try_div(&self, other: &Expr) -> Result<Expr, KernelError> {
        if other.num.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Expr::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow_i(&self, n: i32) -> Result<Expr, KernelError> {
        if n >= 0 {
            Ok(Expr::normalized(self.num.pow(n as u32), self.den.pow(n as u32)))
        } else {
            if self.num.is_zero() {
                return Err(KernelError::DivisionByZero);
            }
            let k = (-n) as u32;
            Ok(Expr::normalized(self.den.pow(k), self.num.pow(k)))
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<Atom>> {
        let mut set = self.num.atoms();
        set.extend(self.den.atoms());
        set
    }

    pub fn deriv_atoms(&self) -> Vec<DerivCoord> {
        self.atoms()
            .iter()
            .filter_map(|a| a.as_deriv().cloned())
            .collect()
    }

    pub fn max_deriv_order(&self) -> u32 {
        self.num.max_deriv_order().max(self.den.max_deriv_order())
    }

    pub fn contains_atom(&self, a: &Atom) -> bool {
        self.num.contains_atom(a) || self.den.contains_atom(a)
    }

    /// Total derivative with respect to `s`. Derivative coordinates pick up
    /// `s` when it is an independent variable; phases and arbitrary
    /// functions chain; everything else is constant.
    pub fn diff(&self, s: &Symbol) -> Expr {
        self.diff_mode(s, DiffMode::Total)
    }

    /// Explicit jet-space partial: chains only through the explicit
    /// dependence (symbols, phases, independent function arguments),
    /// freezing derivative coordinates.
    pub fn diff_jet(&self, s: &Symbol) -> Expr {
        self.diff_mode(s, DiffMode::Jet)
    }

    pub(crate) fn diff_mode(&self, s: &Symbol, mode: DiffMode) -> Expr {
        let dn = poly_diff(&self.num, s, mode);
        if self.den.is_one() {
            return dn;
        }
        let den_e = Expr { num: self.den.clone(), den: Poly::one() };
        let dd = poly_diff(&self.den, s, mode);
        if dd.is_zero() {
            return dn.try_div(&den_e).expect("nonzero denominator");
        }
        // (n' d - n d') / d^2
        let num_e = Expr { num: self.num.clone(), den: Poly::one() };
        let combined = &(&dn * &den_e) - &(&num_e * &dd);
        combined
            .try_div(&(&den_e * &den_e))
            .expect("nonzero denominator")
    }

    /// Partial derivative with respect to a single atom, all other atoms
    /// held constant. This is the raw jet-coordinate partial used by
    /// prolongation; it does not chain through arbitrary-function nodes.
    pub fn partial_atom(&self, a: &Atom) -> Expr {
        let dn = self.num.partial(a);
        if self.den.contains_atom(a) {
            let dd = self.den.partial(a);
            let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
            Expr::normalized(num, self.den.mul(&self.den))
        } else {
            Expr::normalized(dn, self.den.clone())
        }
    }

    /// Replace every parameter/independent symbol atom by a value,
    /// descending into phases. Used for pinning parameters.
    pub fn substitute_symbol(&self, s: &Symbol, value: &Expr) -> Result<Expr, KernelError> {
        let target = Atom::Sym(s.clone());
        let mut map = std::collections::BTreeMap::new();
        map.insert(target, value.clone());
        crate::subst::apply_atom_map(self, &map)
    }
}

fn gcd_bigint(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::{Signed as _, Zero as _};
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Differentiate a polynomial, chaining through atoms per `mode`.
fn poly_diff(p: &Poly, s: &Symbol, mode: DiffMode) -> Expr {
    let mut out = Expr::zero();
    for a in p.atoms() {
        let da = atom_diff(a.as_ref(), s, mode);
        if da.is_zero() {
            continue;
        }
        let coeff = Expr { num: p.partial(a.as_ref()), den: Poly::one() };
        out = &out + &(&coeff * &da);
    }
    out
}

fn atom_diff(a: &Atom, s: &Symbol, mode: DiffMode) -> Expr {
    match a {
        Atom::Sym(x) => {
            if x == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Atom::Deriv(dc) => match mode {
            DiffMode::Total if s.kind() == SymbolKind::Independent => {
                Expr::from_atom(Atom::Deriv(dc.bump(s)))
            }
            _ => Expr::zero(),
        },
        Atom::Func(f) => {
            let mut out = Expr::zero();
            for (i, arg) in f.args.iter().enumerate() {
                let darg = if arg == s {
                    Expr::one()
                } else if arg.is_dependent() && mode == DiffMode::Total && s.is_independent() {
                    Expr::from_atom(Atom::Deriv(DerivCoord::field(arg).bump(s)))
                } else {
                    Expr::zero()
                };
                if darg.is_zero() {
                    continue;
                }
                out = &out + &(&Expr::from_atom(Atom::Func(f.bump(i))) * &darg);
            }
            out
        }
        Atom::Phase(p) => {
            let dphase = p.phase.diff_mode(s, mode);
            if dphase.is_zero() {
                return Expr::zero();
            }
            let rotated = match p.branch {
                // d sin t = cos t dt; d cos t = -sin t dt.
                Branch::Sin => Expr::from_atom(Atom::Phase(PhaseAtom {
                    branch: Branch::Cos,
                    phase: p.phase.clone(),
                })),
                Branch::Cos => -&Expr::from_atom(Atom::Phase(PhaseAtom {
                    branch: Branch::Sin,
                    phase: p.phase.clone(),
                })),
            };
            &rotated * &dphase
        }
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        if self.den == rhs.den {
            return Expr::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Expr::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::expr_to_string(self))
    }
}
