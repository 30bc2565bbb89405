//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept strictly descending under the term order passed to each
//! operation; the order is owned by the surrounding ring and threaded
//! through explicitly.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{CoefficientField, Scalar};

/// A polynomial as a sorted list of `(monomial, coefficient)` terms with no
/// zero coefficients and no duplicate monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn one(field: CoefficientField, nvars: usize) -> Self {
        Polynomial::constant(Scalar::one(field), nvars)
    }

    pub fn variable(index: usize, nvars: usize, field: CoefficientField) -> Self {
        Polynomial { terms: vec![(Monomial::var(index, nvars), Scalar::one(field))] }
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros, sorts descending under `order`.
    pub fn from_terms(terms: Vec<(Monomial, Scalar)>, order: MonomialOrder) -> Self {
        let mut map: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    /// Builds a polynomial from terms already strictly descending under
    /// the ambient order, with no zeros and no duplicates.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Scalar)>) -> Self {
        Polynomial { terms }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &Polynomial, order: MonomialOrder) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Polynomial, order: MonomialOrder) -> Polynomial {
        self.add(&other.neg(), order)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect() }
    }

    /// Multiplies by a single term. Term orders are multiplicative, so the
    /// sorted term list is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, order: MonomialOrder) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut map: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = acc.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { terms: out }
    }

    pub fn pow(&self, mut k: u32, order: MonomialOrder) -> Polynomial {
        let nvars = self.terms.first().map(|(m, _)| m.nvars()).unwrap_or(0);
        if k == 0 {
            let field = self
                .terms
                .first()
                .map(|(_, c)| c.field())
                .unwrap_or(CoefficientField::Rationals);
            return Polynomial::one(field, nvars);
        }
        let mut base = self.clone();
        let mut acc: Option<Polynomial> = None;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base, order),
                    None => base.clone(),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base, order);
        }
        acc.unwrap()
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.inv())
                }
            }
        }
    }

    /// Appends `extra` trailing variables (zero exponents). Degrevlex and
    /// lex comparisons are unchanged by trailing zeros, so sortedness is
    /// preserved for those orders.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Prepends `extra` leading variables and re-sorts under `order` (the
    /// target ring's order, which may differ from the source order).
    pub fn prepend_vars(&self, extra: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            self.terms.iter().map(|(m, c)| (m.prepend(extra), c.clone())).collect(),
            order,
        )
    }

    /// Renders with the given variable names; output is re-parseable by the
    /// expression grammar (explicit `*`, `^`, rational literals).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = monomial_string(m, names);
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                format!("{a}")
            } else if a.is_one() {
                mono
            } else {
                format!("{a}*{mono}")
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn monomial_string(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(names[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join("*")
}

/// Canonical total order on polynomials over one ring: compares term
/// sequences position by position (monomial under `order`, then
/// coefficient), with a proper prefix ordered first. In particular
/// `0 < 1 < x < x - 1`.
pub fn poly_cmp(a: &Polynomial, b: &Polynomial, order: MonomialOrder) -> Ordering {
    let mut i = 0;
    loop {
        match (a.terms.get(i), b.terms.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ma, ca)), Some((mb, cb))) => {
                match order.cmp(ma, mb) {
                    Ordering::Equal => {}
                    other => return other,
                }
                match ca.cmp_same_field(cb) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        i += 1;
    }
}
