use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::atom::Atom;
use crate::Rat;

/// A power product of atoms, sorted by the canonical atom order, with
/// strictly positive exponents. The empty product is the constant monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Arc<Atom>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Arc<Atom>) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Arc<Atom>, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Arc<Atom>, u32)> = Vec::with_capacity(pairs.len());
        for (a, e) in pairs {
            match merged.last_mut() {
                Some((last, m)) if **last == *a => *m += e,
                _ => merged.push((a, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Arc<Atom>, u32)] {
        &self.0
    }

    pub fn exponent_of(&self, a: &Atom) -> u32 {
        self.0
            .iter()
            .find(|(b, _)| b.as_ref() == a)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.0.clone();
        pairs.extend(other.0.iter().cloned());
        Monomial::from_pairs(pairs)
    }

    /// Divide by `other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let pairs: Vec<(Arc<Atom>, u32)> = self
            .0
            .iter()
            .map(|(a, e)| (a.clone(), e - other.exponent_of(a)))
            .collect();
        Monomial::from_pairs(pairs)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(a, e)| other.exponent_of(a) >= *e)
    }
}

/// Multivariate polynomial with exact rational coefficients.
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn atom(a: Arc<Atom>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::atom(a), Rat::one());
        Poly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial in the canonical order, with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Partial derivative treating every atom as an independent variable.
    pub fn partial(&self, a: &Atom) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent_of(a);
            if e == 0 {
                continue;
            }
            let reduced: Vec<(Arc<Atom>, u32)> = m
                .factors()
                .iter()
                .map(|(b, k)| {
                    if b.as_ref() == a {
                        (b.clone(), k - 1)
                    } else {
                        (b.clone(), *k)
                    }
                })
                .collect();
            out.add_term(Monomial::from_pairs(reduced), c.clone() * Rat::from_integer(e.into()));
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<Arc<Atom>> {
        let mut set = BTreeSet::new();
        for m in self.terms.keys() {
            for (a, _) in m.factors() {
                set.insert(a.clone());
            }
        }
        set
    }

    pub fn contains_atom(&self, a: &Atom) -> bool {
        self.terms.keys().any(|m| m.exponent_of(a) > 0)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn content_monomial(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        let mut content: Vec<(Arc<Atom>, u32)> = first.factors().to_vec();
        for m in iter {
            content.retain_mut(|(a, e)| {
                let other = m.exponent_of(a);
                if other == 0 {
                    false
                } else {
                    *e = (*e).min(other);
                    true
                }
            });
            if content.is_empty() {
                break;
            }
        }
        Monomial::from_pairs(content)
    }

    /// Divide every term by a monomial; caller guarantees divisibility.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect(),
        }
    }

    pub fn max_deriv_order(&self) -> u32 {
        self.atoms()
            .iter()
            .filter_map(|a| a.as_deriv().map(|d| d.order()))
            .max()
            .unwrap_or(0)
    }
}
