//! Exponent vectors and term orders.

use std::cmp::Ordering;

/// An exponent vector with one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Appends `extra` zero exponents (new trailing variables).
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat(0).take(extra));
        Monomial(e)
    }

    /// Prepends `extra` zero exponents (new leading variables).
    pub fn prepend(&self, extra: usize) -> Monomial {
        let mut e = vec![0; extra];
        e.extend_from_slice(&self.0);
        Monomial(e)
    }
}

/// Term orders on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Pure lexicographic order.
    Lex,
    /// Degree-reverse-lexicographic order.
    DegRevLex,
    /// Block order eliminating the first `block` variables: both the
    /// leading block and the remaining variables are compared by
    /// degree-reverse-lexicographic order.
    Elimination { block: usize },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    // Smaller exponent in the latest differing slot wins.
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Elimination { block } => {
                let k = (*block).min(a.0.len());
                match degrevlex(&a.0[..k], &b.0[..k]) {
                    Ordering::Equal => degrevlex(&a.0[k..], &b.0[k..]),
                    other => other,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn degrevlex_basic_comparisons() {
        let o = MonomialOrder::DegRevLex;
        // x > y in k[x, y].
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // Degree dominates: y^2 > x.
        assert_eq!(o.cmp(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
        // In k[x1, x2, y1, y2, z]: x1*y1 > x2*y2 > z^2.
        let x1y1 = m(&[1, 0, 1, 0, 0]);
        let x2y2 = m(&[0, 1, 0, 1, 0]);
        let z2 = m(&[0, 0, 0, 0, 2]);
        assert_eq!(o.cmp(&x1y1, &x2y2), Ordering::Greater);
        assert_eq!(o.cmp(&x2y2, &z2), Ordering::Greater);
    }

    #[test]
    fn lex_comparisons() {
        let o = MonomialOrder::Lex;
        // x > y^5 under lex.
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 2])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination { block: 1 };
        // t beats any power of the remaining variables.
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 7])), Ordering::Greater);
        // Within t-degree, remaining block decides by degrevlex.
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.try_div(&b), Some(m(&[1, 1])));
        assert_eq!(b.try_div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[2, 3]));
        assert_eq!(a.degree(), 3);
    }
}
