//! Finitely presented commutative rings: a coefficient field, named
//! variables, and defining relations. Elements are kept in normal form
//! with respect to a fixed Gr&ouml;bner basis of the relation ideal, so
//! equality of elements is literal equality of representatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner;
use crate::monomial::MonomialOrder;
use crate::parse;
use crate::poly::{poly_cmp, Polynomial};
use crate::scalar::{CoefficientField, Scalar};

#[derive(Debug)]
struct RingInner {
    field: CoefficientField,
    variables: Vec<String>,
    relations: Vec<Polynomial>,
    order: MonomialOrder,
    relation_gb: Vec<Polynomial>,
}

/// A quotient of a polynomial ring by finitely many relations.
#[derive(Debug, Clone)]
pub struct PresentedRing(Arc<RingInner>);

impl PartialEq for PresentedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.variables == other.0.variables
                && self.0.order == other.0.order
                && self.0.relation_gb == other.0.relation_gb)
    }
}
impl Eq for PresentedRing {}

impl PresentedRing {
    /// Builds the quotient ring, rejecting duplicate variable names and
    /// presentations of the zero ring (relations generating the unit ideal).
    pub fn new(
        field: CoefficientField,
        variables: Vec<String>,
        relations: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        for r in &relations {
            if let Some((m, _)) = r.leading() {
                if m.nvars() != variables.len() {
                    return Err(Error::ArityMismatch {
                        expected: variables.len(),
                        found: m.nvars(),
                    });
                }
            }
        }
        let relation_gb = groebner::buchberger(&relations, order);
        if relation_gb.len() == 1 && relation_gb[0].is_one() {
            return Err(Error::ConstructionFailed(
                "relations generate the unit ideal, so the ring is zero".into(),
            ));
        }
        Ok(Self(Arc::new(RingInner { field, variables, relations, order, relation_gb })))
    }

    /// Parses variable names and relation expressions in one step.
    pub fn parse_new(
        field: CoefficientField,
        variables: &[&str],
        relations: &[&str],
        order: MonomialOrder,
    ) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|src| parse::parse_polynomial(src, &names, field, order))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, names, rels, order)
    }

    /// A free polynomial ring (no relations).
    pub fn free(field: CoefficientField, variables: &[&str], order: MonomialOrder) -> Result<Self> {
        Self::parse_new(field, variables, &[], order)
    }

    fn from_parts(
        field: CoefficientField,
        variables: Vec<String>,
        relations: Vec<Polynomial>,
        order: MonomialOrder,
        relation_gb: Vec<Polynomial>,
    ) -> Self {
        Self(Arc::new(RingInner { field, variables, relations, order, relation_gb }))
    }

    pub fn field(&self) -> CoefficientField {
        self.0.field
    }

    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }

    pub fn nvars(&self) -> usize {
        self.0.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.0.relations
    }

    /// Reduced Gr&ouml;bner basis of the relation ideal, used for normal forms.
    pub fn relation_gb(&self) -> &[Polynomial] {
        &self.0.relation_gb
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.variables.iter().position(|v| v == name)
    }

    /// Normal form of a raw polynomial as a ring element.
    pub fn element_from_poly(&self, poly: Polynomial) -> RingElement {
        let reduced = if self.0.relation_gb.is_empty() {
            poly
        } else {
            groebner::normal_form(&poly, &self.0.relation_gb, self.0.order)
        };
        RingElement { ring: self.clone(), poly: reduced }
    }

    /// Parses an expression in this ring's variables.
    pub fn element(&self, src: &str) -> Result<RingElement> {
        let poly = parse::parse_polynomial(src, &self.0.variables, self.0.field, self.0.order)?;
        Ok(self.element_from_poly(poly))
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), poly: Polynomial::zero() }
    }

    pub fn one(&self) -> RingElement {
        self.element_from_poly(Polynomial::one(self.0.field, self.nvars()))
    }

    pub fn integer(&self, n: i64) -> RingElement {
        let c = Scalar::from_integer(n, self.0.field);
        self.element_from_poly(Polynomial::constant(c, self.nvars()))
    }

    pub fn variable(&self, index: usize) -> RingElement {
        assert!(index < self.nvars(), "variable index out of range");
        self.element_from_poly(Polynomial::variable(index, self.nvars(), self.0.field))
    }

    /// Presentation summary, e.g. `QQ[x, y] / (x^2 + y^2 - 1)`.
    pub fn describe(&self) -> String {
        let vars = self.0.variables.join(", ");
        if self.0.relations.is_empty() {
            format!("{}[{}]", self.0.field, vars)
        } else {
            let rels: Vec<String> = self
                .0
                .relations
                .iter()
                .map(|r| r.display_with(&self.0.variables))
                .collect();
            format!("{}[{}] / ({})", self.0.field, vars, rels.join(", "))
        }
    }
}

/// An element of a presented ring, stored as the unique normal form of a
/// representing polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: PresentedRing,
    poly: Polynomial,
}

impl RingElement {
    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert!(
            self.ring == other.ring,
            "ring elements from different rings cannot be combined"
        );
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        // Normal forms are closed under addition; no reduction needed.
        RingElement {
            ring: self.ring.clone(),
            poly: self.poly.add(&other.poly, self.ring.order()),
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        RingElement {
            ring: self.ring.clone(),
            poly: self.poly.sub(&other.poly, self.ring.order()),
        }
    }

    pub fn neg(&self) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.neg() }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.assert_same_ring(other);
        self.ring
            .element_from_poly(self.poly.mul(&other.poly, self.ring.order()))
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }

    pub fn pow(&self, k: u32) -> RingElement {
        self.ring.element_from_poly(self.poly.pow(k, self.ring.order()))
    }

    /// Total order on elements of one ring (by term sequences); used to
    /// canonicalize choices that must not depend on argument order.
    pub fn canonical_cmp(&self, other: &RingElement) -> std::cmp::Ordering {
        self.assert_same_ring(other);
        poly_cmp(&self.poly, &other.poly, self.ring.order())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(self.ring.variables()))
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        RingElement::add(self, rhs)
    }
}
impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        RingElement::sub(self, rhs)
    }
}
impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        RingElement::mul(self, rhs)
    }
}
impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::neg(self)
    }
}

/// A presented ring together with one extra interval variable `T`,
/// supporting inclusion of base elements and specialization of `T`.
#[derive(Debug, Clone)]
pub struct HomotopyContext {
    base: PresentedRing,
    ext: PresentedRing,
}

impl HomotopyContext {
    pub fn new(base: &PresentedRing) -> Result<Self> {
        if base.var_index("T").is_some() {
            return Err(Error::ConstructionFailed(
                "the ring already uses the variable name T".into(),
            ));
        }
        let mut variables = base.variables().to_vec();
        variables.push("T".to_string());
        // Appending a trailing variable preserves monomial comparisons, so
        // relations and their reduced basis carry over verbatim.
        let relations: Vec<Polynomial> =
            base.relations().iter().map(|r| r.extend_vars(1)).collect();
        let relation_gb: Vec<Polynomial> =
            base.relation_gb().iter().map(|r| r.extend_vars(1)).collect();
        let ext = PresentedRing::from_parts(
            base.field(),
            variables,
            relations,
            base.order(),
            relation_gb,
        );
        Ok(Self { base: base.clone(), ext })
    }

    pub fn base(&self) -> &PresentedRing {
        &self.base
    }

    pub fn ext(&self) -> &PresentedRing {
        &self.ext
    }

    /// The interval variable as an element of the extended ring.
    pub fn t(&self) -> RingElement {
        self.ext.variable(self.ext.nvars() - 1)
    }

    /// Inclusion of the base ring into the extended ring.
    pub fn include(&self, elem: &RingElement) -> RingElement {
        assert!(elem.ring() == &self.base, "element is not in the base ring");
        RingElement { ring: self.ext.clone(), poly: elem.poly().extend_vars(1) }
    }

    /// Evaluates `T` at a field constant and lands back in the base ring.
    pub fn specialize(&self, elem: &RingElement, value: &Scalar) -> RingElement {
        assert!(elem.ring() == &self.ext, "element is not in the extended ring");
        let n = self.base.nvars();
        let mut terms = Vec::new();
        for (m, c) in elem.poly().terms() {
            let t_exp = m.0[n];
            let mut c = c.clone();
            for _ in 0..t_exp {
                c = c.mul(value);
            }
            terms.push((crate::monomial::Monomial(m.0[..n].to_vec()), c));
        }
        let poly = Polynomial::from_terms(terms, self.base.order());
        self.base.element_from_poly(poly)
    }

    /// Specializes `T` to an integer (usually 0 or 1).
    pub fn specialize_int(&self, elem: &RingElement, value: i64) -> RingElement {
        self.specialize(elem, &Scalar::from_integer(value, self.base.field()))
    }
}

/// A ring homomorphism given by images of the source variables; the
/// constructor checks that the source relations map to zero.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<RingElement>,
}

impl RingMap {
    pub fn new(
        source: &PresentedRing,
        target: &PresentedRing,
        images: Vec<RingElement>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::ArityMismatch { expected: source.nvars(), found: images.len() });
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        for im in &images {
            assert!(im.ring() == target, "image lies in the wrong ring");
        }
        let map = Self { source: source.clone(), target: target.clone(), images };
        for r in source.relations() {
            let image = map.apply_poly(r);
            if !image.is_zero() {
                return Err(Error::EquationViolated {
                    residual: image.to_string(),
                });
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    fn apply_poly(&self, poly: &Polynomial) -> RingElement {
        let mut acc = self.target.zero();
        for (m, c) in poly.terms() {
            let mut term = self
                .target
                .element_from_poly(Polynomial::constant(c.clone(), self.target.nvars()));
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&self.images[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn apply(&self, elem: &RingElement) -> RingElement {
        assert!(elem.ring() == &self.source, "element is not in the source ring");
        self.apply_poly(elem.poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQ: CoefficientField = CoefficientField::Rationals;
    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn sphere() -> PresentedRing {
        PresentedRing::parse_new(QQ, &["x", "y", "z"], &["x^2 + y^2 + z^2 - 1"], O).unwrap()
    }

    #[test]
    fn normal_forms_use_the_relation() {
        let r = sphere();
        let e = r.element("x^2").unwrap();
        assert_eq!(e, r.element("1 - y^2 - z^2").unwrap());
        assert_eq!(e.to_string(), "-y^2 - z^2 + 1");
        let zero = r.element("x^2 + y^2 + z^2 - 1").unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn arithmetic_matches_quotient_arithmetic() {
        let r = sphere();
        let x = r.variable(0);
        let y = r.variable(1);
        let z = r.variable(2);
        let s = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
        assert!(s.sub(&r.one()).is_zero());
        assert_eq!((&x - &x), r.zero());
    }

    #[test]
    fn duplicate_variables_are_rejected() {
        let err = PresentedRing::parse_new(QQ, &["x", "x"], &[], O).unwrap_err();
        assert_eq!(err, Error::DuplicateVariable("x".into()));
    }

    #[test]
    fn zero_ring_presentations_are_rejected() {
        let err = PresentedRing::parse_new(QQ, &["x"], &["x", "x - 1"], O).unwrap_err();
        assert!(matches!(err, Error::ConstructionFailed(_)));
    }

    #[test]
    fn homotopy_context_includes_and_specializes() {
        let r = PresentedRing::free(QQ, &["x"], O).unwrap();
        let h = HomotopyContext::new(&r).unwrap();
        assert_eq!(h.ext().variables(), &["x".to_string(), "T".to_string()]);

        // H = x^2 - T*x + T on the cylinder; at T = 1 it becomes x^2 - x + 1.
        let big = h.ext().element("x^2 - T*x + T").unwrap();
        let at_one = h.specialize_int(&big, 1);
        assert_eq!(at_one, r.element("x^2 - x + 1").unwrap());
        let at_zero = h.specialize_int(&big, 0);
        assert_eq!(at_zero, r.element("x^2").unwrap());

        let inc = h.include(&r.element("x + 1").unwrap());
        assert_eq!(inc, h.ext().element("x + 1").unwrap());
    }

    #[test]
    fn homotopy_context_with_relations_keeps_them() {
        let r = sphere();
        let h = HomotopyContext::new(&r).unwrap();
        let e = h.ext().element("x^2 + y^2 + z^2 - 1").unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn taken_interval_name_is_rejected() {
        let r = PresentedRing::free(QQ, &["T"], O).unwrap();
        assert!(HomotopyContext::new(&r).is_err());
    }

    #[test]
    fn ring_maps_check_relations() {
        let circle =
            PresentedRing::parse_new(QQ, &["x", "y"], &["x^2 + y^2 - 1"], O).unwrap();
        let line = PresentedRing::free(QQ, &["t"], O).unwrap();

        // x -> 1, y -> 0 is a point of the circle.
        let ok = RingMap::new(
            &circle,
            &line,
            vec![line.one(), line.zero()],
        )
        .unwrap();
        assert_eq!(ok.apply(&circle.element("x + y").unwrap()), line.one());

        // x -> t, y -> 0 violates the circle equation.
        let err = RingMap::new(&circle, &line, vec![line.element("t").unwrap(), line.zero()])
            .unwrap_err();
        assert!(matches!(err, Error::EquationViolated { .. }));
    }

    #[test]
    fn describe_formats_presentations() {
        assert_eq!(sphere().describe(), "QQ[x, y, z] / (x^2 + y^2 + z^2 - 1)");
        let f5 = CoefficientField::prime(5).unwrap();
        let r = PresentedRing::free(f5, &["x"], O).unwrap();
        assert_eq!(r.describe(), "F5[x]");
    }
}
