//! Points of the affine quadric `Q_{2n}`: tuples `(a, b, s)` with
//! `a, b` of length `n` and `sum a_i b_i = s(1 - s)`, together with
//! elementary homotopies between them (points over the ring extended by
//! an interval variable) and a general-position move.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::ring::{HomotopyContext, PresentedRing, RingElement};

/// A point of `Q_{2n}` over a presented ring, stored with an explicit
/// check of the defining equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricPoint {
    ring: PresentedRing,
    n: usize,
    a: Vec<RingElement>,
    b: Vec<RingElement>,
    s: RingElement,
}

impl QuadricPoint {
    /// Validates lengths, rings, and the equation `sum a_i b_i = s - s^2`.
    pub fn new(
        n: usize,
        a: Vec<RingElement>,
        b: Vec<RingElement>,
        s: RingElement,
    ) -> Result<Self> {
        if a.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: a.len() });
        }
        if b.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: b.len() });
        }
        let ring = s.ring().clone();
        if a.iter().chain(b.iter()).any(|e| e.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        let mut lhs = ring.zero();
        for (ai, bi) in a.iter().zip(&b) {
            lhs = lhs.add(&ai.mul(bi));
        }
        let rhs = s.sub(&s.mul(&s));
        let residual = lhs.sub(&rhs);
        if !residual.is_zero() {
            return Err(Error::EquationViolated { residual: residual.to_string() });
        }
        Ok(Self { ring, n, a, b, s })
    }

    /// The canonical trivial representative `(0, ..., 0, s = 1)`, whose
    /// vanishing ideal is the unit ideal. The all-zero point carries the
    /// same class; the two are connected by the bridge homotopy a ledger
    /// pre-registers on demand.
    pub fn base(ring: &PresentedRing, n: usize) -> Self {
        Self {
            ring: ring.clone(),
            n,
            a: vec![ring.zero(); n],
            b: vec![ring.zero(); n],
            s: ring.one(),
        }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[RingElement] {
        &self.a
    }

    pub fn b(&self) -> &[RingElement] {
        &self.b
    }

    pub fn s(&self) -> &RingElement {
        &self.s
    }

    /// The ideal `<a_1, ..., a_n, s>` cut out by the point.
    pub fn ideal(&self) -> IdealHandle {
        let mut gens = self.a.clone();
        gens.push(self.s.clone());
        IdealHandle::new(&self.ring, gens)
    }

    /// Coordinatewise image in the interval extension of the ring.
    pub fn extend(&self, ctx: &HomotopyContext) -> QuadricPoint {
        QuadricPoint {
            ring: ctx.ext().clone(),
            n: self.n,
            a: self.a.iter().map(|e| ctx.include(e)).collect(),
            b: self.b.iter().map(|e| ctx.include(e)).collect(),
            s: ctx.include(&self.s),
        }
    }

    /// Total order on points of one ring (coordinate sequences compared
    /// termwise), used to canonicalize order-sensitive constructions.
    pub fn canonical_cmp(&self, other: &QuadricPoint) -> Ordering {
        for (p, q) in self.a.iter().zip(&other.a) {
            match p.canonical_cmp(q) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        match self.s.canonical_cmp(&other.s) {
            Ordering::Equal => {}
            o => return o,
        }
        for (p, q) in self.b.iter().zip(&other.b) {
            match p.canonical_cmp(q) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for QuadricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[RingElement]| {
            v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
        };
        write!(f, "([{}], [{}], {})", list(&self.a), list(&self.b), self.s)
    }
}

/// A point of `Q_{2n}` over `R[T]` viewed as a path between its two
/// specializations at `T = 0` and `T = 1`.
#[derive(Debug, Clone)]
pub struct Homotopy {
    ctx: HomotopyContext,
    point: QuadricPoint,
}

impl Homotopy {
    pub fn new(ctx: HomotopyContext, point: QuadricPoint) -> Self {
        assert!(point.ring() == ctx.ext(), "homotopy point must live over the extension");
        Self { ctx, point }
    }

    /// The straight-line contraction `(f·T, 0, 0)` of the zero-pairing
    /// point `(f, 0, 0)` onto the all-zero base point.
    pub fn contraction(ring: &PresentedRing, f: &[RingElement]) -> crate::error::Result<Self> {
        let ctx = HomotopyContext::new(ring)?;
        let t = ctx.t();
        let a = f.iter().map(|fi| ctx.include(fi).mul(&t)).collect();
        let b = vec![ctx.ext().zero(); f.len()];
        let s = ctx.ext().zero();
        let point = QuadricPoint::new(f.len(), a, b, s)
            .expect("a zero pairing satisfies the quadric equation");
        Ok(Self::new(ctx, point))
    }

    pub fn context(&self) -> &HomotopyContext {
        &self.ctx
    }

    pub fn point(&self) -> &QuadricPoint {
        &self.point
    }

    pub fn base_ring(&self) -> &PresentedRing {
        self.ctx.base()
    }

    pub fn n(&self) -> usize {
        self.point.n()
    }

    /// Specialization of the interval variable to an integer value.
    pub fn endpoint(&self, value: i64) -> QuadricPoint {
        let a = self
            .point
            .a()
            .iter()
            .map(|e| self.ctx.specialize_int(e, value))
            .collect();
        let b = self
            .point
            .b()
            .iter()
            .map(|e| self.ctx.specialize_int(e, value))
            .collect();
        let s = self.ctx.specialize_int(self.point.s(), value);
        QuadricPoint::new(self.point.n(), a, b, s)
            .expect("specializing a valid point stays valid")
    }

    pub fn start(&self) -> QuadricPoint {
        self.endpoint(0)
    }

    pub fn end(&self) -> QuadricPoint {
        self.endpoint(1)
    }
}

/// Attempt budget and candidate-degree bound for randomized searches.
#[derive(Debug, Clone)]
pub struct MoveConfig {
    pub attempts: usize,
    pub degree_cap: u32,
}

impl Default for MoveConfig {
    fn default() -> Self {
        Self { attempts: 64, degree_cap: 3 }
    }
}

/// A successful general-position move: the new point, the connecting
/// homotopy, and the parameter that produced it.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub point: QuadricPoint,
    pub homotopy: Homotopy,
    pub mu: Vec<RingElement>,
}

/// A random element with bounded degree and integer coefficients drawn
/// from a symmetric box.
pub fn random_element<R: Rng>(
    ring: &PresentedRing,
    max_degree: u32,
    coeff_box: i64,
    rng: &mut R,
) -> RingElement {
    let mut p = ring.integer(rng.gen_range(-coeff_box..=coeff_box));
    for _ in 0..max_degree.max(1) {
        let deg = rng.gen_range(0..=max_degree);
        let mut term = ring.integer(rng.gen_range(-coeff_box..=coeff_box));
        for _ in 0..deg {
            term = term.mul(&ring.variable(rng.gen_range(0..ring.nvars())));
        }
        p = p.add(&term);
    }
    p
}

fn candidate_mu<R: Rng>(
    ring: &PresentedRing,
    n: usize,
    attempt: usize,
    cfg: &MoveConfig,
    rng: &mut R,
) -> Vec<RingElement> {
    match attempt {
        0 => vec![ring.zero(); n],
        1 => vec![ring.one(); n],
        a if a < 10 => {
            let bound = a as i64;
            (0..n).map(|_| ring.integer(rng.gen_range(-bound..=bound))).collect()
        }
        _ => (0..n)
            .map(|_| random_element(ring, cfg.degree_cap, 3, rng))
            .collect(),
    }
}

/// Moves a point within its homotopy class so that its ideal has height
/// at least `n` (or is the unit ideal) and is comaximal with every ideal
/// in `avoid`. The replacement is
/// `(a + (1-s)^2 mu, (1 - mu.b) b, s + (1-s) mu.b)`,
/// which satisfies the quadric equation identically and is connected to
/// the original by inserting `T` in front of `mu`.
pub fn move_point<R: Rng>(
    v: &QuadricPoint,
    avoid: &[IdealHandle],
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<MoveOutcome> {
    let ring = v.ring().clone();
    let n = v.n();
    let one = ring.one();
    let mut last = String::from("no candidates tried");
    for attempt in 0..cfg.attempts {
        let mu = candidate_mu(&ring, n, attempt, cfg, rng);
        let mut mb = ring.zero();
        for (m, b) in mu.iter().zip(v.b()) {
            mb = mb.add(&m.mul(b));
        }
        let one_minus_s = one.sub(v.s());
        let sq = one_minus_s.mul(&one_minus_s);
        let a2: Vec<RingElement> = v
            .a()
            .iter()
            .zip(&mu)
            .map(|(a, m)| a.add(&sq.mul(m)))
            .collect();
        let shrink = one.sub(&mb);
        let b2: Vec<RingElement> = v.b().iter().map(|b| b.mul(&shrink)).collect();
        let s2 = v.s().add(&mb.mul(&one_minus_s));
        let moved = QuadricPoint::new(n, a2, b2, s2)
            .expect("the moved point satisfies the quadric identity");

        let nid = moved.ideal();
        if !(nid.is_unit() || nid.height().at_least(n)) {
            last = format!("attempt {attempt}: moved ideal has height below {n}");
            continue;
        }
        if avoid.iter().any(|j| !nid.sum(j).is_unit()) {
            last = format!("attempt {attempt}: moved ideal meets an avoided ideal");
            continue;
        }

        let ctx = HomotopyContext::new(&ring)?;
        let t = ctx.t();
        let h_a: Vec<RingElement> = v
            .a()
            .iter()
            .zip(&mu)
            .map(|(a, m)| ctx.include(a).add(&t.mul(&ctx.include(&sq.mul(m)))))
            .collect();
        let tmb = t.mul(&ctx.include(&mb));
        let h_shrink = ctx.ext().one().sub(&tmb);
        let h_b: Vec<RingElement> =
            v.b().iter().map(|b| ctx.include(b).mul(&h_shrink)).collect();
        let h_s = ctx.include(v.s()).add(&tmb.mul(&ctx.include(&one_minus_s)));
        let h_point = QuadricPoint::new(n, h_a, h_b, h_s)
            .expect("the moving homotopy satisfies the quadric identity");
        let homotopy = Homotopy::new(ctx, h_point);
        debug_assert_eq!(&homotopy.start(), v);
        debug_assert_eq!(homotopy.end(), moved);
        return Ok(MoveOutcome { point: moved, homotopy, mu });
    }
    Err(Error::MoveFailed { attempts: cfg.attempts, last })
}
