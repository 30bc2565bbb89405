//! Buchberger's algorithm with sugar selection, the coprimality and chain
//! criteria, and optional cofactor tracking.
//!
//! All computations here are in the free polynomial ring; quotient-ring
//! callers adjoin their defining relations to the input generators.

use std::collections::HashSet;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Divides `f` by the ordered list of divisors: returns per-divisor
/// quotients and the fully reduced remainder (no remainder term is
/// divisible by any divisor's leading term).
type Term = (Monomial, crate::scalar::Scalar);

/// Geobucket accumulator: bucket `k` holds at most `4^(k+1)` terms sorted
/// ascending (head at the end), so popping the overall leading term costs
/// one comparison per bucket and merging a `t`-term update costs
/// `O(t + log)` amortized instead of a full-length pass.
struct Geobucket {
    buckets: Vec<Vec<Term>>,
    order: MonomialOrder,
}

impl Geobucket {
    fn capacity(k: usize) -> usize {
        4usize.pow(k as u32 + 1)
    }

    fn from_descending(terms: &[Term], order: MonomialOrder) -> Self {
        let mut bucket = Geobucket { buckets: Vec::new(), order };
        if !terms.is_empty() {
            bucket.add_ascending(terms.iter().rev().cloned().collect());
        }
        bucket
    }

    /// Merges two ascending term lists, combining equal monomials.
    fn merge(a: Vec<Term>, b: Vec<Term>, order: MonomialOrder) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ai = a.into_iter().peekable();
        let mut bi = b.into_iter().peekable();
        while let (Some(x), Some(y)) = (ai.peek(), bi.peek()) {
            match order.cmp(&x.0, &y.0) {
                std::cmp::Ordering::Less => out.push(ai.next().unwrap()),
                std::cmp::Ordering::Greater => out.push(bi.next().unwrap()),
                std::cmp::Ordering::Equal => {
                    let (m, ca) = ai.next().unwrap();
                    let (_, cb) = bi.next().unwrap();
                    let c = ca.add(&cb);
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        out.extend(ai);
        out.extend(bi);
        out
    }

    fn add_ascending(&mut self, terms: Vec<Term>) {
        if terms.is_empty() {
            return;
        }
        let mut k = 0;
        while Self::capacity(k) < terms.len() {
            k += 1;
        }
        let mut carry = terms;
        loop {
            if k >= self.buckets.len() {
                self.buckets.resize_with(k + 1, Vec::new);
            }
            if self.buckets[k].is_empty() {
                self.buckets[k] = carry;
                return;
            }
            let existing = std::mem::take(&mut self.buckets[k]);
            carry = Self::merge(existing, carry, self.order);
            if carry.len() <= Self::capacity(k) {
                self.buckets[k] = carry;
                return;
            }
            k += 1;
        }
    }

    /// Pops the leading term (summed across buckets, skipping heads that
    /// cancel to zero).
    fn pop_leading(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                let Some((m, _)) = b.last() else { continue };
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        let (bm, _) = self.buckets[j].last().unwrap();
                        if self.order.cmp(m, bm) == std::cmp::Ordering::Greater {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
            let lead = best?;
            let (m, mut c) = self.buckets[lead].pop().unwrap();
            for b in &mut self.buckets {
                if let Some((bm, _)) = b.last() {
                    if *bm == m {
                        c = c.add(&b.pop().unwrap().1);
                    }
                }
            }
            if !c.is_zero() {
                return Some((m, c));
            }
        }
    }
}

/// Shared division loop. Successive leading monomials strictly decrease,
/// so irreducible heads accumulate into an already-sorted remainder; the
/// working polynomial lives in a geobucket so each reduction step costs
/// roughly the size of the subtracted tail rather than a full pass.
fn divide_core(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
    mut on_step: impl FnMut(usize, &Monomial, &crate::scalar::Scalar),
) -> Polynomial {
    let mut remainder: Vec<Term> = Vec::new();
    let mut p = Geobucket::from_descending(f.terms(), order);
    'outer: while let Some((lm, lc)) = p.pop_leading() {
        for (i, d) in divisors.iter().enumerate() {
            let Some((dm, dc)) = d.leading() else { continue };
            let Some(t) = lm.try_div(dm) else { continue };
            let c = lc.mul(&dc.inv());
            // Subtract (t, c) * d; its head equals the popped term
            // exactly, so only the negated tail enters the bucket.
            let scaled = d.mul_term(&t, &c);
            let tail: Vec<Term> =
                scaled.terms()[1..].iter().rev().map(|(m, c)| (m.clone(), c.neg())).collect();
            p.add_ascending(tail);
            on_step(i, &t, &c);
            continue 'outer;
        }
        // No divisor applies: the head joins the remainder.
        remainder.push((lm, lc));
    }
    Polynomial::from_sorted_terms(remainder)
}

pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> (Vec<Polynomial>, Polynomial) {
    let mut quotients: Vec<Vec<(Monomial, crate::scalar::Scalar)>> =
        vec![Vec::new(); divisors.len()];
    let remainder = divide_core(f, divisors, order, |i, t, c| {
        quotients[i].push((t.clone(), c.clone()));
    });
    // Per divisor the quotient terms were produced with strictly
    // decreasing monomials, so each list is already sorted.
    let quotients = quotients.into_iter().map(Polynomial::from_sorted_terms).collect();
    (quotients, remainder)
}

/// Remainder of `f` under division by `divisors` (no quotient bookkeeping).
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Polynomial {
    divide_core(f, divisors, order, |_, _, _| {})
}

/// A reduced Gr&ouml;bner basis together with cofactors expressing each
/// basis element as a combination of the original generators:
/// `basis[i] == sum_j cofactors[i][j] * gens[j]`.
#[derive(Debug, Clone)]
pub struct TrackedBasis {
    pub basis: Vec<Polynomial>,
    pub cofactors: Vec<Vec<Polynomial>>,
    pub gens: Vec<Polynomial>,
    pub order: MonomialOrder,
}

impl TrackedBasis {
    /// Writes `f` as a combination of the original generators, or `None`
    /// when `f` is not in the ideal. The returned vector satisfies
    /// `f == sum_j out[j] * gens[j]` exactly.
    pub fn express(&self, f: &Polynomial) -> Option<Vec<Polynomial>> {
        let (q, r) = divide(f, &self.basis, self.order);
        if !r.is_zero() {
            return None;
        }
        let mut out = vec![Polynomial::zero(); self.gens.len()];
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, cof) in self.cofactors[i].iter().enumerate() {
                if !cof.is_zero() {
                    out[j] = out[j].add(&qi.mul(cof, self.order), self.order);
                }
            }
        }
        Some(out)
    }
}

struct WorkItem {
    poly: Polynomial,
    cof: Option<Vec<Polynomial>>,
    sugar: u32,
}

fn pair_key(items: &[WorkItem], i: usize, j: usize) -> (u32, u32, usize, usize) {
    let (lmi, _) = items[i].poly.leading().unwrap();
    let (lmj, _) = items[j].poly.leading().unwrap();
    let lcm = lmi.lcm(lmj);
    let deg = lcm.degree();
    let sugar = (items[i].sugar + deg - lmi.degree()).max(items[j].sugar + deg - lmj.degree());
    (sugar, deg, i, j)
}

fn buchberger_impl(
    gens: &[Polynomial],
    order: MonomialOrder,
    track: bool,
) -> (Vec<Polynomial>, Option<Vec<Vec<Polynomial>>>) {
    let unit = |j: usize| -> Vec<Polynomial> {
        let mut v = vec![Polynomial::zero(); gens.len()];
        v[j] = Polynomial::one(
            gens[j].leading().unwrap().1.field(),
            gens[j].leading().unwrap().0.nvars(),
        );
        v
    };

    let mut items: Vec<WorkItem> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let lc = g.leading().unwrap().1.clone();
        let poly = g.monic();
        let cof = if track {
            let mut v = unit(j);
            v[j] = v[j].scale(&lc.inv());
            Some(v)
        } else {
            None
        };
        let sugar = poly.total_degree().unwrap_or(0);
        items.push(WorkItem { poly, cof, sugar });
    }

    let mut pairs: Vec<(u32, u32, usize, usize)> = Vec::new();
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            pairs.push(pair_key(&items, i, j));
        }
    }
    let mut processed: HashSet<(usize, usize)> = HashSet::new();

    while !pairs.is_empty() {
        // Select the minimal pair by (sugar, lcm degree, i, j).
        let mut best = 0;
        for k in 1..pairs.len() {
            if pairs[k] < pairs[best] {
                best = k;
            }
        }
        let (_, _, i, j) = pairs.remove(best);

        let (lmi, lmj) = {
            let a = items[i].poly.leading().unwrap().0;
            let b = items[j].poly.leading().unwrap().0;
            (a.clone(), b.clone())
        };
        let lcm = lmi.lcm(&lmj);

        let coprime = lcm == lmi.mul(&lmj);
        let chain = !coprime
            && (0..items.len()).any(|k| {
                k != i
                    && k != j
                    && items[k].poly.leading().unwrap().0.divides(&lcm)
                    && processed.contains(&(i.min(k), i.max(k)))
                    && processed.contains(&(j.min(k), j.max(k)))
            });
        // The pair counts as treated whether or not it was skipped; later
        // chain-criterion checks may cite it.
        processed.insert((i, j));
        if coprime || chain {
            continue;
        }

        let ti = lcm.try_div(&lmi).unwrap();
        let tj = lcm.try_div(&lmj).unwrap();
        let one = items[i].poly.leading().unwrap().1.clone(); // leading coeffs are 1
        let s = items[i]
            .poly
            .mul_term(&ti, &one)
            .sub(&items[j].poly.mul_term(&tj, &one), order);
        let pair_sugar =
            (items[i].sugar + lcm.degree() - lmi.degree())
                .max(items[j].sugar + lcm.degree() - lmj.degree());

        let bases: Vec<Polynomial> = items.iter().map(|it| it.poly.clone()).collect();
        let (q, r) = divide(&s, &bases, order);
        if r.is_zero() {
            continue;
        }

        let cof = if track {
            let mut v: Vec<Polynomial> = items[i]
                .cof
                .as_ref()
                .unwrap()
                .iter()
                .zip(items[j].cof.as_ref().unwrap())
                .map(|(a, b)| a.mul_term(&ti, &one).sub(&b.mul_term(&tj, &one), order))
                .collect();
            for (k, qk) in q.iter().enumerate() {
                if qk.is_zero() {
                    continue;
                }
                for (col, c) in items[k].cof.as_ref().unwrap().iter().enumerate() {
                    if !c.is_zero() {
                        v[col] = v[col].sub(&qk.mul(c, order), order);
                    }
                }
            }
            Some(v)
        } else {
            None
        };

        let lc = r.leading().unwrap().1.clone();
        let poly = r.monic();
        let cof = cof.map(|v| v.iter().map(|c| c.scale(&lc.inv())).collect());
        let sugar = pair_sugar.max(poly.total_degree().unwrap_or(0));
        items.push(WorkItem { poly, cof, sugar });
        let t = items.len() - 1;
        for k in 0..t {
            pairs.push(pair_key(&items, k, t));
        }
    }

    // Minimalize: keep elements whose leading term is not divisible by the
    // leading term of any other kept element (scan ascending so minimal
    // leading terms win).
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| {
        order.cmp(items[a].poly.leading().unwrap().0, items[b].poly.leading().unwrap().0)
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idx {
        let lm = items[i].poly.leading().unwrap().0;
        if !kept
            .iter()
            .any(|&k| items[k].poly.leading().unwrap().0.divides(lm))
        {
            kept.push(i);
        }
    }

    // Tail-reduce each survivor against the others; the leading terms are
    // pairwise non-divisible, so leading terms survive and one full pass
    // yields the reduced basis.
    let mut reduced: Vec<(Polynomial, Option<Vec<Polynomial>>)> = kept
        .iter()
        .map(|&i| (items[i].poly.clone(), items[i].cof.clone()))
        .collect();
    for i in 0..reduced.len() {
        let others: Vec<Polynomial> = reduced
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, (p, _))| p.clone())
            .collect();
        let (q, r) = divide(&reduced[i].0, &others, order);
        if track {
            let mut cof = reduced[i].1.clone().unwrap();
            let mut oi = 0;
            for (k, entry) in reduced.iter().enumerate() {
                if k == i {
                    continue;
                }
                let qk = &q[oi];
                oi += 1;
                if qk.is_zero() {
                    continue;
                }
                for (col, c) in entry.1.as_ref().unwrap().iter().enumerate() {
                    if !c.is_zero() {
                        cof[col] = cof[col].sub(&qk.mul(c, order), order);
                    }
                }
            }
            reduced[i].1 = Some(cof);
        }
        reduced[i].0 = r;
    }

    reduced.sort_by(|a, b| {
        order.cmp(b.0.leading().unwrap().0, a.0.leading().unwrap().0)
    });
    let basis: Vec<Polynomial> = reduced.iter().map(|(p, _)| p.clone()).collect();
    let cofactors = if track {
        Some(reduced.into_iter().map(|(_, c)| c.unwrap()).collect())
    } else {
        None
    };
    (basis, cofactors)
}

/// Reduced Gr&ouml;bner basis of the ideal generated by `gens` (monic,
/// sorted by decreasing leading term; canonical for the given order).
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    buchberger_impl(gens, order, false).0
}

/// Reduced basis with cofactors onto the original generators.
pub fn buchberger_tracked(gens: &[Polynomial], order: MonomialOrder) -> TrackedBasis {
    let (basis, cofactors) = buchberger_impl(gens, order, true);
    let cofactors = cofactors.unwrap();
    if cfg!(debug_assertions) {
        for (b, cof) in basis.iter().zip(&cofactors) {
            let mut acc = Polynomial::zero();
            for (c, g) in cof.iter().zip(gens) {
                acc = acc.add(&c.mul(g, order), order);
            }
            debug_assert_eq!(&acc, b, "cofactor bookkeeping broke");
        }
    }
    TrackedBasis { basis, cofactors, gens: gens.to_vec(), order }
}
