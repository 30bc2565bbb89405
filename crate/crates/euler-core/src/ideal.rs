//! Ideal handles in a presented ring. Every operation happens in the
//! ambient free polynomial ring on the generators together with the
//! ring's defining relations, so membership, equality, intersections and
//! quotients are all decided against the quotient ring, not just the
//! free ring.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{self, TrackedBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{poly_cmp, Polynomial};
use crate::ring::{PresentedRing, RingElement};

/// Krull dimension of a quotient; `Empty` for the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

/// Height (codimension) of an ideal; `Infinite` for the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Height {
    Infinite,
    Finite(usize),
}

impl Height {
    /// Whether the height clears a lower bound (the unit ideal clears all).
    pub fn at_least(&self, bound: usize) -> bool {
        match self {
            Height::Infinite => true,
            Height::Finite(h) => *h >= bound,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Infinite => write!(f, "infinite"),
            Height::Finite(h) => write!(f, "{h}"),
        }
    }
}

#[derive(Debug)]
struct IdealInner {
    ring: PresentedRing,
    generators: Vec<RingElement>,
    /// Generators plus the ring's relation basis, as free-ring polynomials.
    ambient_gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
    tracked: OnceLock<TrackedBasis>,
}

/// A finitely generated ideal, remembering its presentation and caching
/// the Gr&ouml;bner data derived from it.
#[derive(Debug, Clone)]
pub struct IdealHandle(Arc<IdealInner>);

impl IdealHandle {
    pub fn new(ring: &PresentedRing, generators: Vec<RingElement>) -> Self {
        for g in &generators {
            assert!(g.ring() == ring, "generator lies in a different ring");
        }
        let mut ambient_gens: Vec<Polynomial> =
            generators.iter().map(|g| g.poly().clone()).collect();
        ambient_gens.extend(ring.relation_gb().iter().cloned());
        IdealHandle(Arc::new(IdealInner {
            ring: ring.clone(),
            generators,
            ambient_gens,
            gb: OnceLock::new(),
            tracked: OnceLock::new(),
        }))
    }

    pub fn parse_new(ring: &PresentedRing, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|src| ring.element(src))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ring, gens))
    }

    pub fn zero(ring: &PresentedRing) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &PresentedRing) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    pub fn principal(f: &RingElement) -> Self {
        Self::new(f.ring(), vec![f.clone()])
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.0.ring
    }

    /// The generators exactly as given (zero entries are kept so that
    /// certificate coefficients stay aligned with them).
    pub fn generators(&self) -> &[RingElement] {
        &self.0.generators
    }

    /// Reduced basis of the ideal plus relations in the ambient free ring;
    /// canonical, so it doubles as an equality key.
    pub fn gb(&self) -> &[Polynomial] {
        if let Some(tb) = self.0.tracked.get() {
            return &tb.basis;
        }
        self.0
            .gb
            .get_or_init(|| groebner::buchberger(&self.0.ambient_gens, self.0.ring.order()))
    }

    fn tracked(&self) -> &TrackedBasis {
        self.0.tracked.get_or_init(|| {
            groebner::buchberger_tracked(&self.0.ambient_gens, self.0.ring.order())
        })
    }

    /// Canonical generating set shown to users: the ambient basis reduced
    /// into the ring, zero entries dropped.
    pub fn basis(&self) -> Vec<RingElement> {
        self.gb()
            .iter()
            .map(|p| self.0.ring.element_from_poly(p.clone()))
            .filter(|e| !e.is_zero())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis().is_empty()
    }

    pub fn contains(&self, f: &RingElement) -> bool {
        assert!(f.ring() == self.ring(), "element lies in a different ring");
        groebner::normal_form(f.poly(), self.gb(), self.0.ring.order()).is_zero()
    }

    /// Normal form of an element modulo this ideal (and the relations).
    pub fn reduce(&self, f: &RingElement) -> RingElement {
        assert!(f.ring() == self.ring(), "element lies in a different ring");
        let nf = groebner::normal_form(f.poly(), self.gb(), self.0.ring.order());
        self.0.ring.element_from_poly(nf)
    }

    pub fn same_ideal(&self, other: &IdealHandle) -> bool {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        self.gb() == other.gb()
    }

    /// Total order on ideals of one ring, used to canonicalize
    /// order-sensitive constructions. Agrees with `same_ideal`.
    pub fn canonical_cmp(&self, other: &IdealHandle) -> Ordering {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        let order = self.0.ring.order();
        for (p, q) in self.gb().iter().zip(other.gb()) {
            match poly_cmp(p, q, order) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.gb().len().cmp(&other.gb().len())
    }

    /// Writes `f` as a combination of the stored generators, or `None`
    /// when `f` is not in the ideal. The identity `f = sum c_i g_i` is
    /// re-checked in the ring before returning.
    pub fn express(&self, f: &RingElement) -> Option<Vec<RingElement>> {
        assert!(f.ring() == self.ring(), "element lies in a different ring");
        let cof = self.tracked().express(f.poly())?;
        let k = self.0.generators.len();
        let out: Vec<RingElement> = cof[..k]
            .iter()
            .map(|c| self.0.ring.element_from_poly(c.clone()))
            .collect();
        let mut acc = self.0.ring.zero();
        for (c, g) in out.iter().zip(&self.0.generators) {
            acc = acc.add(&c.mul(g));
        }
        assert!(acc == *f, "combination certificate failed to reproduce the element");
        Some(out)
    }

    pub fn sum(&self, other: &IdealHandle) -> IdealHandle {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        let mut gens = self.0.generators.clone();
        gens.extend(other.0.generators.iter().cloned());
        IdealHandle::new(self.ring(), gens)
    }

    pub fn product(&self, other: &IdealHandle) -> IdealHandle {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        let mut gens = Vec::new();
        for a in &self.0.generators {
            for b in &other.0.generators {
                let p = a.mul(b);
                if !p.is_zero() {
                    gens.push(p);
                }
            }
        }
        IdealHandle::new(self.ring(), gens)
    }

    pub fn square(&self) -> IdealHandle {
        let mut gens = Vec::new();
        for (i, a) in self.0.generators.iter().enumerate() {
            for b in &self.0.generators[i..] {
                let p = a.mul(b);
                if !p.is_zero() {
                    gens.push(p);
                }
            }
        }
        IdealHandle::new(self.ring(), gens)
    }

    pub fn intersection(&self, other: &IdealHandle) -> IdealHandle {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        let polys = intersect_free(
            &self.0.ambient_gens,
            &other.0.ambient_gens,
            self.0.ring.order(),
            self.0.ring.field(),
        );
        let gens = polys
            .into_iter()
            .map(|p| self.0.ring.element_from_poly(p))
            .filter(|e| !e.is_zero())
            .collect();
        IdealHandle::new(self.ring(), gens)
    }

    /// The ideal quotient `(self : other)`, computed in the ambient free
    /// ring so it is correct in the presence of zero divisors.
    pub fn quotient(&self, other: &IdealHandle) -> IdealHandle {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        let order = self.0.ring.order();
        let mut result: Option<IdealHandle> = None;
        for g in &other.0.generators {
            if g.is_zero() {
                continue;
            }
            let gp = g.poly();
            let inter = intersect_free(
                &self.0.ambient_gens,
                std::slice::from_ref(gp),
                order,
                self.0.ring.field(),
            );
            let gens: Vec<RingElement> = inter
                .iter()
                .map(|h| {
                    let (q, r) = groebner::divide(h, std::slice::from_ref(gp), order);
                    debug_assert!(r.is_zero(), "intersection element not divisible");
                    self.0.ring.element_from_poly(q.into_iter().next().unwrap())
                })
                .filter(|e| !e.is_zero())
                .collect();
            let colon = IdealHandle::new(self.ring(), gens);
            result = Some(match result {
                None => colon,
                Some(acc) => acc.intersection(&colon),
            });
        }
        // A zero ideal divides into everything: the quotient is the whole ring.
        result.unwrap_or_else(|| IdealHandle::unit(self.ring()))
    }

    /// Krull dimension of the quotient by this ideal.
    pub fn dimension(&self) -> Dimension {
        if self.is_unit() {
            return Dimension::Empty;
        }
        let supports: Vec<Vec<usize>> = self
            .gb()
            .iter()
            .map(|p| support(p.leading().unwrap().0))
            .collect();
        Dimension::Finite(max_independent_set(&supports, self.0.ring.nvars()))
    }

    /// Height (codimension) relative to the ring's own dimension.
    pub fn height(&self) -> Height {
        match self.dimension() {
            Dimension::Empty => Height::Infinite,
            Dimension::Finite(d) => Height::Finite(ring_dimension(self.ring()) - d),
        }
    }

    /// Dimension of the quotient as a vector space over the coefficient
    /// field; errors unless the quotient is finite-dimensional.
    pub fn vector_space_dimension(&self) -> Result<usize> {
        let gb = self.gb();
        let n = self.0.ring.nvars();
        let lts: Vec<&Monomial> = gb.iter().map(|p| p.leading().unwrap().0).collect();
        let mut caps: Vec<Option<u32>> = vec![None; n];
        for lt in &lts {
            let supp = support(lt);
            if supp.is_empty() {
                // Leading term 1: the unit ideal, a zero quotient.
                return Ok(0);
            }
            if supp.len() == 1 {
                let i = supp[0];
                let e = lt.0[i];
                caps[i] = Some(caps[i].map_or(e, |old| old.min(e)));
            }
        }
        let caps: Vec<u32> = caps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotZeroDimensional)?;
        let mut count = 0usize;
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial(exps.clone());
            if !lts.iter().any(|lt| lt.divides(&m)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(count);
                }
                exps[i] += 1;
                if exps[i] < caps[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// For comaximal ideals, returns `(e, 1 - e)` with `e` in `self`,
    /// `1 - e` in `other`, and `e + (1 - e) = 1`. The computation is run
    /// on the canonically ordered pair so swapping the arguments swaps
    /// the witnesses but never changes them.
    pub fn comaximal_witness(
        &self,
        other: &IdealHandle,
    ) -> Result<(RingElement, RingElement)> {
        assert!(self.ring() == other.ring(), "ideals live in different rings");
        if self.canonical_cmp(other) == Ordering::Greater {
            let (e_other, e_self) = other.comaximal_witness(self)?;
            return Ok((e_self, e_other));
        }
        let total = self.sum(other);
        if !total.is_unit() {
            return Err(Error::NotComaximal);
        }
        let one = self.0.ring.one();
        let c = total
            .express(&one)
            .expect("the unit ideal must express 1");
        let mut e = self.0.ring.zero();
        for (ci, gi) in c[..self.0.generators.len()].iter().zip(&self.0.generators) {
            e = e.add(&ci.mul(gi));
        }
        let complement = one.sub(&e);
        debug_assert!(self.contains(&e));
        debug_assert!(other.contains(&complement));
        Ok((e, complement))
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis();
        if basis.is_empty() {
            return write!(f, "<0>");
        }
        let parts: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Krull dimension of the presented ring itself.
pub fn ring_dimension(ring: &PresentedRing) -> usize {
    let supports: Vec<Vec<usize>> = ring
        .relation_gb()
        .iter()
        .map(|p| support(p.leading().unwrap().0))
        .collect();
    max_independent_set(&supports, ring.nvars())
}

fn support(m: &Monomial) -> Vec<usize> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| i)
        .collect()
}

/// Size of the largest set of variables meeting no leading-term support,
/// which equals the dimension of the staircase quotient.
fn max_independent_set(supports: &[Vec<usize>], nvars: usize) -> usize {
    fn explore(
        supports: &[Vec<usize>],
        nvars: usize,
        start: usize,
        chosen: &mut Vec<bool>,
        size: usize,
        best: &mut usize,
    ) {
        if size + (nvars - start) <= *best {
            return;
        }
        for v in start..nvars {
            chosen[v] = true;
            let independent = supports
                .iter()
                .all(|supp| !supp.iter().all(|&i| chosen[i]));
            if independent {
                if size + 1 > *best {
                    *best = size + 1;
                }
                explore(supports, nvars, v + 1, chosen, size + 1, best);
            }
            chosen[v] = false;
        }
    }
    let mut best = 0;
    let mut chosen = vec![false; nvars];
    explore(supports, nvars, 0, &mut chosen, 0, &mut best);
    best
}

/// Intersection of two ideals of the free polynomial ring via a tag
/// variable: eliminate `t` from `t*A + (1 - t)*B`. Returns the reduced
/// basis of the intersection under the caller's order.
fn intersect_free(
    a: &[Polynomial],
    b: &[Polynomial],
    order: MonomialOrder,
    field: crate::scalar::CoefficientField,
) -> Vec<Polynomial> {
    let na: Vec<&Polynomial> = a.iter().filter(|p| !p.is_zero()).collect();
    let nb: Vec<&Polynomial> = b.iter().filter(|p| !p.is_zero()).collect();
    if na.is_empty() || nb.is_empty() {
        return Vec::new();
    }
    let nvars = na[0].leading().unwrap().0.nvars();
    let elim = MonomialOrder::Elimination { block: 1 };
    let t = Polynomial::variable(0, nvars + 1, field);
    let one_minus_t = Polynomial::one(field, nvars + 1).sub(&t, elim);
    let mut gens = Vec::new();
    for f in &na {
        gens.push(f.prepend_vars(1, elim).mul(&t, elim));
    }
    for g in &nb {
        gens.push(g.prepend_vars(1, elim).mul(&one_minus_t, elim));
    }
    let basis = groebner::buchberger(&gens, elim);
    basis
        .into_iter()
        .filter(|p| p.leading().unwrap().0 .0[0] == 0)
        .map(|p| {
            let terms: Vec<(Monomial, crate::scalar::Scalar)> = p
                .terms()
                .iter()
                .map(|(m, c)| (Monomial(m.0[1..].to_vec()), c.clone()))
                .collect();
            Polynomial::from_terms(terms, order)
        })
        .collect()
}
