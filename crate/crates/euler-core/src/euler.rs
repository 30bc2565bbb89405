//! Arithmetic of oriented zero-cycles: symbols `(I, omega)` with the
//! three defining relations carried by explicit witnesses, reduction of
//! formal sums to a single symbol, the Segre homomorphism into the
//! quadric-point group, weak (orientation-forgetting) classes, and the
//! map from unimodular rows.

use std::fmt;

use rand::Rng;

use crate::cohomotopy::{compose, inverse, moving_euler};
use crate::error::{Error, Result};
use crate::ideal::{ring_dimension, Height, IdealHandle};
use crate::quadric::{random_element, Homotopy, MoveConfig, QuadricPoint};
use crate::ring::{PresentedRing, RingElement};
use crate::witness::Ledger;

/// An oriented ideal of height equal to the number of orientation
/// representatives, or the unit ideal (with no representatives)
/// standing for the zero symbol. Validity is enforced on construction:
/// the representatives must generate the ideal modulo its square.
#[derive(Debug, Clone)]
pub struct EulerSymbol {
    ideal: IdealHandle,
    reps: Vec<RingElement>,
}

impl EulerSymbol {
    pub fn new(ideal: IdealHandle, reps: Vec<RingElement>) -> Result<Self> {
        if ideal.is_unit() {
            return Ok(Self { ideal, reps: Vec::new() });
        }
        let n = reps.len();
        match ideal.height() {
            Height::Finite(h) if h == n => {}
            Height::Finite(h) => {
                return Err(Error::HeightViolation { required: n, found: h })
            }
            Height::Infinite => unreachable!("only the unit ideal has infinite height"),
        }
        let span = IdealHandle::new(ideal.ring(), reps.clone());
        if !span.sum(&ideal.square()).same_ideal(&ideal) {
            return Err(Error::NotOriented);
        }
        Ok(Self { ideal, reps })
    }

    /// The zero symbol: unit ideal, empty orientation.
    pub fn zero(ring: &PresentedRing) -> Self {
        Self { ideal: IdealHandle::unit(ring), reps: Vec::new() }
    }

    pub fn ring(&self) -> &PresentedRing {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn reps(&self) -> &[RingElement] {
        &self.reps
    }

    pub fn n(&self) -> usize {
        self.reps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_unit()
    }
}

impl fmt::Display for EulerSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.reps.iter().map(|e| e.to_string()).collect();
        write!(f, "({}, [{}])", self.ideal, parts.join(", "))
    }
}

/// A formal integer combination of symbols over one ring, all of the
/// same codimension.
#[derive(Debug, Clone)]
pub struct EulerSum {
    ring: PresentedRing,
    n: usize,
    terms: Vec<(i64, EulerSymbol)>,
}

impl EulerSum {
    pub fn new(ring: &PresentedRing, n: usize, terms: Vec<(i64, EulerSymbol)>) -> Result<Self> {
        for (_, sym) in &terms {
            if sym.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !sym.is_zero() && sym.n() != n {
                return Err(Error::ArityMismatch { expected: n, found: sym.n() });
            }
        }
        Ok(Self { ring: ring.clone(), n, terms })
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(i64, EulerSymbol)] {
        &self.terms
    }
}

/// A row of ring elements generating the unit ideal.
#[derive(Debug, Clone)]
pub struct UnimodularRow {
    ring: PresentedRing,
    entries: Vec<RingElement>,
}

impl UnimodularRow {
    pub fn new(ring: &PresentedRing, entries: Vec<RingElement>) -> Result<Self> {
        for e in &entries {
            if e.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        if !IdealHandle::new(ring, entries.clone()).is_unit() {
            return Err(Error::NotUnimodular);
        }
        Ok(Self { ring: ring.clone(), entries })
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }
}

/// One factor `Id + lambda * E_{ij}` of an elementary word, acting on
/// orientation representatives by `a_i += lambda * a_j` (indices are
/// zero-based).
#[derive(Debug, Clone)]
pub struct ElementaryMove {
    pub i: usize,
    pub j: usize,
    pub lambda: RingElement,
}

/// Certificate for invariance under one elementary factor: the two
/// representatives and the interpolating homotopy.
#[derive(Debug, Clone)]
pub struct ElementaryWitness {
    pub before: QuadricPoint,
    pub after: QuadricPoint,
    pub homotopy: Homotopy,
}

/// Witness for the first defining relation: a symbol whose
/// representatives generate the ideal on the nose contracts to the base
/// point along `(a_1 T, ..., a_n T, 0, ..., 0)`.
pub fn lift_relation(sym: &EulerSymbol) -> Result<Homotopy> {
    let span = IdealHandle::new(sym.ring(), sym.reps().to_vec());
    if !span.same_ideal(sym.ideal()) {
        return Err(Error::NotCompleteIntersection);
    }
    Homotopy::contraction(sym.ring(), sym.reps())
}

/// Witness for the second defining relation: applying one elementary
/// factor to the representatives does not change the class. Returns the
/// two zero-pairing points and the homotopy with the interval variable
/// inserted in front of `lambda`.
pub fn elementary_relation(sym: &EulerSymbol, mv: &ElementaryMove) -> Result<ElementaryWitness> {
    let n = sym.n();
    if mv.i == mv.j || mv.i >= n || mv.j >= n {
        return Err(Error::ConstructionFailed(
            "an elementary factor needs two distinct indices within the symbol's arity".into(),
        ));
    }
    if mv.lambda.ring() != sym.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = sym.ring();
    let zero_b = vec![ring.zero(); n];
    let before = QuadricPoint::new(n, sym.reps().to_vec(), zero_b.clone(), ring.zero())
        .expect("a zero pairing satisfies the quadric equation");
    let mut moved = sym.reps().to_vec();
    moved[mv.i] = moved[mv.i].add(&mv.lambda.mul(&sym.reps()[mv.j]));
    let after = QuadricPoint::new(n, moved, zero_b, ring.zero())
        .expect("a zero pairing satisfies the quadric equation");

    let ctx = crate::ring::HomotopyContext::new(ring)?;
    let t = ctx.t();
    let mut ha: Vec<RingElement> = sym.reps().iter().map(|e| ctx.include(e)).collect();
    ha[mv.i] = ha[mv.i].add(&t.mul(&ctx.include(&mv.lambda)).mul(&ctx.include(&sym.reps()[mv.j])));
    let hb = vec![ctx.ext().zero(); n];
    let hs = ctx.ext().zero();
    let hp = QuadricPoint::new(n, ha, hb, hs)
        .expect("a zero pairing satisfies the quadric equation");
    let homotopy = Homotopy::new(ctx, hp);
    debug_assert_eq!(homotopy.start(), before);
    debug_assert_eq!(homotopy.end(), after);
    Ok(ElementaryWitness { before, after, homotopy })
}

/// Record of comaximal factorizations produced by `merge`, consulted by
/// `split` to invert them.
#[derive(Debug, Clone, Default)]
pub struct FactorRegistry {
    entries: Vec<(IdealHandle, IdealHandle, IdealHandle)>,
}

impl FactorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, product: IdealHandle, left: IdealHandle, right: IdealHandle) {
        self.entries.push((product, left, right));
    }

    pub fn lookup(&self, product: &IdealHandle) -> Option<(&IdealHandle, &IdealHandle)> {
        self.entries
            .iter()
            .find(|(p, _, _)| p.same_ideal(product))
            .map(|(_, l, r)| (l, r))
    }
}

/// Third defining relation, merge direction: two comaximal symbols
/// combine into one on the product ideal, the orientation interpolated by
/// the Chinese remainder combination `e_K^2 * omega_J + e_J^2 * omega_K`
/// reduced modulo the squared product. The factorization is recorded for
/// `split`.
pub fn merge(
    a: &EulerSymbol,
    b: &EulerSymbol,
    registry: &mut FactorRegistry,
) -> Result<EulerSymbol> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.n() != b.n() {
        return Err(Error::ArityMismatch { expected: a.n(), found: b.n() });
    }
    let (ea, eb) = a.ideal().comaximal_witness(b.ideal())?;
    let ea2 = ea.mul(&ea);
    let eb2 = eb.mul(&eb);
    let product = a.ideal().product(b.ideal());
    let product_sq = product.square();
    let m: Vec<RingElement> = (0..a.n())
        .map(|i| {
            let raw = eb2.mul(&a.reps()[i]).add(&ea2.mul(&b.reps()[i]));
            product_sq.reduce(&raw)
        })
        .collect();
    let merged = EulerSymbol::new(product, m)?;
    registry.register(merged.ideal().clone(), a.ideal().clone(), b.ideal().clone());
    Ok(merged)
}

/// Third defining relation, split direction: a symbol on a registered
/// product recovers the two factors, each orientation read off by
/// reduction modulo the factor's square.
pub fn split(
    sym: &EulerSymbol,
    registry: &FactorRegistry,
) -> Result<(EulerSymbol, EulerSymbol)> {
    let (left, right) = registry.lookup(sym.ideal()).ok_or_else(|| {
        Error::ConstructionFailed("no factorization is registered for this ideal".into())
    })?;
    let project = |factor: &IdealHandle| -> Result<EulerSymbol> {
        let sq = factor.square();
        let reps = sym.reps().iter().map(|m| sq.reduce(m)).collect();
        EulerSymbol::new(factor.clone(), reps)
    };
    Ok((project(left)?, project(right)?))
}

/// Result of collapsing a formal sum: the single surviving symbol and
/// the number of rewrite steps that were certified along the way.
#[derive(Debug, Clone)]
pub struct ReduceOutcome {
    pub symbol: EulerSymbol,
    pub steps: usize,
}

/// Rewrites a formal sum of symbols into a single symbol. Negative
/// terms are replaced by linked complements (each exchange certified by
/// a recorded contraction), non-comaximal positive terms are separated
/// by a double exchange, and the survivors are merged left to right.
/// When a negative term was exchanged, a final complete intersection is
/// further contracted to the zero symbol. Requires the dimension range
/// `dim R <= 2n - 1` in which linked complements always restore
/// comaximality.
pub fn reduce_to_single<R: Rng>(
    sum: &EulerSum,
    ledger: &mut Ledger,
    registry: &mut FactorRegistry,
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<ReduceOutcome> {
    let ring = sum.ring().clone();
    let n = sum.n();
    let d = ring_dimension(&ring);
    let bound = (2 * n).saturating_sub(1);
    if d > bound {
        return Err(Error::RangeViolation { dimension: d, bound });
    }

    let mut positive: Vec<EulerSymbol> = Vec::new();
    let mut negative: Vec<EulerSymbol> = Vec::new();
    for (coeff, sym) in sum.terms() {
        if *coeff == 0 || sym.is_zero() {
            continue;
        }
        let bucket = if *coeff > 0 { &mut positive } else { &mut negative };
        for _ in 0..coeff.unsigned_abs() {
            bucket.push(sym.clone());
        }
    }

    let mut steps = 0usize;
    let mut exchanged_negative = false;

    // Replace each negative term by a linked complement comaximal with
    // everything still in play: -(I, omega) = +(K, f mod K^2), certified
    // by contracting the complete intersection I \cap K = <f>.
    while let Some(sym) = negative.pop() {
        let avoid: Vec<IdealHandle> = positive
            .iter()
            .chain(negative.iter())
            .map(|t| t.ideal().clone())
            .collect();
        let (complement, f) = moving_euler(sym.ideal(), sym.reps(), &avoid, cfg, rng)?;
        ledger.register(
            "negative term exchanged for a linked complement",
            Homotopy::contraction(&ring, &f)?,
        );
        steps += 1;
        exchanged_negative = true;
        if !complement.is_unit() {
            let sq = complement.square();
            let reps = f.iter().map(|fi| sq.reduce(fi)).collect();
            positive.push(EulerSymbol::new(complement, reps)?);
        }
    }

    // Separate non-comaximal positive pairs by exchanging the later term
    // twice (two sign flips), landing in general position.
    let mut i = 0;
    while i < positive.len() {
        let mut j = i + 1;
        while j < positive.len() {
            if positive[i].ideal().sum(positive[j].ideal()).is_unit() {
                j += 1;
                continue;
            }
            let sym = positive[j].clone();
            let (mid, f1) = moving_euler(sym.ideal(), sym.reps(), &[], cfg, rng)?;
            ledger.register(
                "first exchange of a crowding term",
                Homotopy::contraction(&ring, &f1)?,
            );
            steps += 1;
            if mid.is_unit() {
                positive.remove(j);
                continue;
            }
            let mid_sq = mid.square();
            let mid_reps: Vec<RingElement> = f1.iter().map(|fi| mid_sq.reduce(fi)).collect();
            let avoid: Vec<IdealHandle> = positive
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, t)| t.ideal().clone())
                .collect();
            let (fresh, f2) = moving_euler(&mid, &mid_reps, &avoid, cfg, rng)?;
            ledger.register(
                "second exchange restoring general position",
                Homotopy::contraction(&ring, &f2)?,
            );
            steps += 1;
            if fresh.is_unit() {
                positive.remove(j);
            } else {
                let sq = fresh.square();
                let reps = f2.iter().map(|fi| sq.reduce(fi)).collect();
                positive[j] = EulerSymbol::new(fresh, reps)?;
                j += 1;
            }
        }
        i += 1;
    }

    // Merge the now pairwise comaximal terms.
    let mut acc: Option<EulerSymbol> = None;
    for sym in positive {
        acc = Some(match acc {
            None => sym,
            Some(prev) => {
                steps += 1;
                merge(&prev, &sym, registry)?
            }
        });
    }
    let mut result = acc.unwrap_or_else(|| EulerSymbol::zero(&ring));

    // A cancellation that passed through an exchange can leave a symbol
    // whose representatives generate the ideal exactly; such a symbol
    // contracts to zero and we record the contraction.
    if exchanged_negative && !result.is_zero() {
        let span = IdealHandle::new(&ring, result.reps().to_vec());
        if span.same_ideal(result.ideal()) {
            let witness = lift_relation(&result)?;
            ledger.register("complete intersection contracted to zero", witness);
            steps += 1;
            result = EulerSymbol::zero(&ring);
        }
    }

    Ok(ReduceOutcome { symbol: result, steps })
}

/// The Segre homomorphism on formal sums: each symbol maps to its
/// quadric point, combined by composition (inversion for negative
/// coefficients). Also reports whether the ring dimension satisfies the
/// bound `dim R <= 2n - 2` in which the map is known to be injective;
/// the computation runs either way.
pub fn segre_hom<R: Rng>(
    sum: &EulerSum,
    ledger: &mut Ledger,
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<(QuadricPoint, bool)> {
    let ring = sum.ring().clone();
    let n = sum.n();
    let in_range = ring_dimension(&ring) + 2 <= 2 * n;
    let mut acc: Option<QuadricPoint> = None;
    for (coeff, sym) in sum.terms() {
        if *coeff == 0 || sym.is_zero() {
            continue;
        }
        let point = crate::segre::segre_class(sym.ideal(), sym.reps())?;
        let term = if *coeff > 0 {
            point
        } else {
            inverse(&point, ledger, cfg, rng)?
        };
        for _ in 0..coeff.unsigned_abs() {
            acc = Some(match acc {
                None => term.clone(),
                Some(prev) => compose(&prev, &term, ledger, cfg, rng)?,
            });
        }
    }
    Ok((acc.unwrap_or_else(|| QuadricPoint::base(&ring, n)), in_range))
}

/// The orientation-forgetting shadow of a sum: ideals grouped with
/// multiplicities, and the total degree counted by vector-space
/// dimension. Requires every (nonzero) symbol to be zero-dimensional.
pub fn weak_class(sum: &EulerSum) -> Result<(Vec<(IdealHandle, i64)>, i64)> {
    let mut groups: Vec<(IdealHandle, i64)> = Vec::new();
    for (coeff, sym) in sum.terms() {
        if *coeff == 0 || sym.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(i, _)| i.same_ideal(sym.ideal())) {
            Some((_, m)) => *m += coeff,
            None => groups.push((sym.ideal().clone(), *coeff)),
        }
    }
    let mut degree = 0i64;
    for (ideal, mult) in &groups {
        degree += mult * (ideal.vector_space_dimension()? as i64);
    }
    groups.retain(|(_, m)| *m != 0);
    Ok((groups, degree))
}

/// Result of the unimodular-row map: the symbol, plus every elementary
/// column operation that was applied to reach a special row.
#[derive(Debug, Clone)]
pub struct PhiOutcome {
    pub symbol: EulerSymbol,
    pub moves: Vec<ElementaryMove>,
}

/// The map from unimodular rows of length `dim R + 1`: the first `d`
/// entries cut out the ideal, the last entry twists the orientation. A
/// row whose leading ideal is neither the unit ideal nor of height `d`
/// is first brought to that position by recorded random elementary
/// column operations.
pub fn phi<R: Rng>(row: &UnimodularRow, cfg: &MoveConfig, rng: &mut R) -> Result<PhiOutcome> {
    let ring = row.ring().clone();
    let d = ring_dimension(&ring);
    if row.entries().len() != d + 1 {
        return Err(Error::ArityMismatch { expected: d + 1, found: row.entries().len() });
    }
    let mut entries = row.entries().to_vec();
    let mut moves = Vec::new();
    for attempt in 0..=cfg.attempts {
        let lead = IdealHandle::new(&ring, entries[..d].to_vec());
        if lead.is_unit() {
            return Ok(PhiOutcome { symbol: EulerSymbol::zero(&ring), moves });
        }
        if lead.height().at_least(d) {
            let sq = lead.square();
            let last = entries[d].clone();
            let reps = entries[..d].iter().map(|a| sq.reduce(&last.mul(a))).collect();
            let symbol = EulerSymbol::new(lead, reps)?;
            return Ok(PhiOutcome { symbol, moves });
        }
        if attempt == cfg.attempts {
            break;
        }
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..=d);
        while j == i {
            j = rng.gen_range(0..=d);
        }
        let lambda = random_element(&ring, cfg.degree_cap, 2, rng);
        entries[i] = entries[i].add(&lambda.mul(&entries[j]));
        moves.push(ElementaryMove { i, j, lambda });
    }
    Err(Error::MoveFailed {
        attempts: cfg.attempts,
        last: "no elementary operation made the leading ideal special".into(),
    })
}
