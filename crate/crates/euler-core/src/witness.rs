//! Equality certification for quadric points. A ledger collects every
//! homotopy produced during a session; two points are provably equal when
//! a chain of elementary steps (identical coordinates, the ideal
//! criterion, unit ideals, or a registered homotopy endpoint pair)
//! connects them.

use std::collections::VecDeque;
use std::fmt;

use crate::error::Result;
use crate::ideal::IdealHandle;
use crate::quadric::{Homotopy, QuadricPoint};
use crate::ring::{HomotopyContext, PresentedRing};

/// One certified step in an equality chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityStep {
    /// The two points have literally equal coordinates.
    Identical,
    /// Both points carry the unit ideal, hence the trivial class.
    BothUnit,
    /// Same ideal and the a-coordinates agree modulo its square.
    IdealCriterion,
    /// Endpoints of a registered homotopy.
    Homotopy { label: String },
}

impl fmt::Display for EqualityStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityStep::Identical => write!(f, "identical"),
            EqualityStep::BothUnit => write!(f, "both unit"),
            EqualityStep::IdealCriterion => write!(f, "ideal criterion"),
            EqualityStep::Homotopy { label } => write!(f, "homotopy: {label}"),
        }
    }
}

/// Outcome of an equality check: a certified chain, or no proof found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Vec<EqualityStep>),
    Unknown,
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }
}

/// Session-wide record of homotopies, consulted whenever an equality has
/// to be certified.
#[derive(Default)]
pub struct Ledger {
    entries: Vec<(String, Homotopy)>,
    bridged: Vec<(PresentedRing, usize)>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, label: impl Into<String>, homotopy: Homotopy) {
        self.entries.push((label.into(), homotopy));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn homotopies(&self) -> impl Iterator<Item = (&str, &Homotopy)> {
        self.entries.iter().map(|(label, h)| (label.as_str(), h))
    }

    /// Registers, once per ring and rank, the standard path between the
    /// base point and the section `(0, (1, 0, ...), 1)`: both carry
    /// trivial classes but have different coordinates, and several
    /// constructions end on one or the other.
    pub fn ensure_bridge(&mut self, ring: &PresentedRing, n: usize) -> Result<()> {
        if self.bridged.iter().any(|(r, m)| r == ring && *m == n) {
            return Ok(());
        }
        let ctx = HomotopyContext::new(ring)?;
        let t = ctx.t();
        let mut a = vec![ctx.ext().zero(); n];
        a[0] = t.sub(&t.mul(&t));
        let mut b = vec![ctx.ext().zero(); n];
        b[0] = ctx.ext().one();
        let point = QuadricPoint::new(n, a, b, t.clone())
            .expect("the bridge satisfies the quadric identity");
        self.register(
            "bridge between the zero section and the unit section",
            Homotopy::new(ctx, point),
        );
        self.bridged.push((ring.clone(), n));
        Ok(())
    }
}

fn direct_step(
    p: &QuadricPoint,
    q: &QuadricPoint,
    ip: &IdealHandle,
    iq: &IdealHandle,
    square_of_p: &mut Option<IdealHandle>,
) -> Option<EqualityStep> {
    if p == q {
        return Some(EqualityStep::Identical);
    }
    if ip.is_unit() && iq.is_unit() {
        return Some(EqualityStep::BothUnit);
    }
    if ip.same_ideal(iq) {
        // Orientation data reduces to the a-coordinates: for valid points
        // the s-coordinate already lies in <a> + I^2.
        let sq = square_of_p.get_or_insert_with(|| ip.square());
        if p
            .a()
            .iter()
            .zip(q.a())
            .all(|(x, y)| sq.contains(&x.sub(y)))
        {
            return Some(EqualityStep::IdealCriterion);
        }
    }
    None
}

/// Searches for a certified chain of equalities between `u` and `w`,
/// using direct criteria and every ledger homotopy over the same ring
/// and rank. Returns `Unknown` when no chain is found; this is a failure
/// to certify, not a proof of inequality.
pub fn provably_equal(u: &QuadricPoint, w: &QuadricPoint, ledger: &Ledger) -> Verdict {
    assert!(u.ring() == w.ring(), "points live over different rings");
    assert_eq!(u.n(), w.n(), "points live on different quadrics");

    let mut nodes: Vec<QuadricPoint> = vec![u.clone(), w.clone()];
    let mut homotopy_edges: Vec<(usize, usize, String)> = Vec::new();
    for (label, h) in ledger.homotopies() {
        if h.base_ring() != u.ring() || h.n() != u.n() {
            continue;
        }
        let start = h.start();
        let end = h.end();
        let si = nodes.len();
        nodes.push(start);
        nodes.push(end);
        homotopy_edges.push((si, si + 1, label.to_string()));
    }

    let ideals: Vec<IdealHandle> = nodes.iter().map(|p| p.ideal()).collect();
    let mut squares: Vec<Option<IdealHandle>> = vec![None; nodes.len()];

    let mut parent: Vec<Option<(usize, EqualityStep)>> = vec![None; nodes.len()];
    let mut seen = vec![false; nodes.len()];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0usize);

    while let Some(i) = queue.pop_front() {
        if i == 1 {
            let mut steps = Vec::new();
            let mut at = 1;
            while at != 0 {
                let (prev, step) = parent[at].clone().expect("path is connected");
                steps.push(step);
                at = prev;
            }
            steps.reverse();
            return Verdict::Equal(steps);
        }
        for j in 0..nodes.len() {
            if seen[j] {
                continue;
            }
            let step = {
                let (p, q) = (&nodes[i], &nodes[j]);
                let mut sq = squares[i].take();
                let found = direct_step(p, q, &ideals[i], &ideals[j], &mut sq);
                squares[i] = sq;
                found
            }
            .or_else(|| {
                homotopy_edges.iter().find_map(|(a, b, label)| {
                    if (*a == i && *b == j) || (*a == j && *b == i) {
                        Some(EqualityStep::Homotopy { label: label.clone() })
                    } else {
                        None
                    }
                })
            });
            if let Some(step) = step {
                seen[j] = true;
                parent[j] = Some((i, step));
                queue.push_back(j);
            }
        }
    }
    Verdict::Unknown
}
