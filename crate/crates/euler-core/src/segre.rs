//! Transfer of an oriented finite subscheme to a quadric point. Given an
//! ideal `I` of height at least `n` and representatives `a` generating
//! `I` modulo `I^2`, the lift produces `s` and `b` with
//! `sum a_k b_k = s(1 - s)`, `s` idempotent modulo `<a>`, and
//! `I = <a, s>`; the point `(a, b, s)` then represents the class of the
//! subscheme.
//!
//! The certificate is closed-form: writing each generator `g_i` as
//! `sum_j M_ij g_j + sum_k D_ik a_k` with `M` entries in `I`, the matrix
//! identity `adj(1-M)(1-M) = det(1-M) * 1` turns `s = 1 - det(1-M)` and
//! `b = alpha^T adj(1-M) D` (with `s = sum alpha_r g_r`) into an exact
//! solution of the quadric equation, so no further elimination is needed.

use crate::error::{Error, Result};
use crate::ideal::{Height, IdealHandle};
use crate::quadric::QuadricPoint;
use crate::ring::{PresentedRing, RingElement};

/// Determinant by Laplace expansion along the first row; the matrices
/// here are small (one row per ideal generator).
fn det(ring: &PresentedRing, mat: &[Vec<RingElement>]) -> RingElement {
    let m = mat.len();
    if m == 0 {
        return ring.one();
    }
    if m == 1 {
        return mat[0][0].clone();
    }
    let mut acc = ring.zero();
    for (col, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<RingElement>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&det(ring, &minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Adjugate: `adj(A) A = det(A) * 1`, entrywise
/// `adj(A)[i][j] = (-1)^{i+j} det(A with row j and column i removed)`.
fn adjugate(ring: &PresentedRing, mat: &[Vec<RingElement>]) -> Vec<Vec<RingElement>> {
    let m = mat.len();
    if m == 1 {
        return vec![vec![ring.one()]];
    }
    let mut adj = vec![vec![ring.zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let minor: Vec<Vec<RingElement>> = mat
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let cof = det(ring, &minor);
            adj[i][j] = if (i + j) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    adj
}

fn identity_minus(ring: &PresentedRing, mat: &[Vec<RingElement>]) -> Vec<Vec<RingElement>> {
    let m = mat.len();
    let one = ring.one();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        one.sub(&mat[i][j])
                    } else {
                        mat[i][j].neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// Shared final step: from `(M, D, alpha)` certificates, compute
/// `s = 1 - det(1-M)` and `b = alpha^T adj(1-M) D`, then check the
/// quadric equation exactly.
fn lift_tail(
    ideal: &IdealHandle,
    a: &[RingElement],
    m_matrix: &[Vec<RingElement>],
    d_matrix: &[Vec<RingElement>],
    alpha: &[RingElement],
) -> (RingElement, Vec<RingElement>) {
    let ring = ideal.ring();
    let one_minus_m = identity_minus(ring, m_matrix);
    let s = ring.one().sub(&det(ring, &one_minus_m));
    let adj = adjugate(ring, &one_minus_m);
    let m = m_matrix.len();
    let mut b = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let mut bk = ring.zero();
        for (r, ar) in alpha.iter().enumerate().take(m) {
            if ar.is_zero() {
                continue;
            }
            let mut entry = ring.zero();
            for i in 0..m {
                if !adj[r][i].is_zero() && !d_matrix[i][k].is_zero() {
                    entry = entry.add(&adj[r][i].mul(&d_matrix[i][k]));
                }
            }
            bk = bk.add(&ar.mul(&entry));
        }
        b.push(bk);
    }
    let mut pairing = ring.zero();
    for (bk, ak) in b.iter().zip(a) {
        pairing = pairing.add(&bk.mul(ak));
    }
    assert!(
        pairing == s.sub(&s.mul(&s)),
        "lift certificate failed the quadric equation"
    );
    (s, b)
}

/// Lifts orientation representatives `a` of `ideal` to a solution
/// `(s, b)` of `sum a_k b_k = s(1 - s)` with `ideal = <a, s>`. Errors
/// with `NotOriented` when `a` fails to generate the ideal modulo its
/// square.
pub fn idempotent_lift(
    ideal: &IdealHandle,
    a: &[RingElement],
) -> Result<(RingElement, Vec<RingElement>)> {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let m = gens.len();

    // J = <g_j g_l (j <= l), a>: equals the ideal exactly when a generates
    // it modulo its square.
    let mut pairs = Vec::new();
    let mut jgens = Vec::new();
    for j in 0..m {
        for l in j..m {
            pairs.push((j, l));
            jgens.push(gens[j].mul(&gens[l]));
        }
    }
    jgens.extend(a.iter().cloned());
    let j_ideal = IdealHandle::new(ring, jgens);
    if !j_ideal.same_ideal(ideal) {
        return Err(Error::NotOriented);
    }

    let mut m_matrix = vec![vec![ring.zero(); m]; m];
    let mut d_matrix = vec![vec![ring.zero(); a.len()]; m];
    for (i, gi) in gens.iter().enumerate() {
        let cof = j_ideal
            .express(gi)
            .expect("generators lie in the equal ideal");
        for (col, &(j, l)) in pairs.iter().enumerate() {
            if !cof[col].is_zero() {
                m_matrix[i][j] = m_matrix[i][j].add(&cof[col].mul(&gens[l]));
            }
        }
        for k in 0..a.len() {
            d_matrix[i][k] = cof[pairs.len() + k].clone();
        }
    }

    let one_minus_m = identity_minus(ring, &m_matrix);
    let s = ring.one().sub(&det(ring, &one_minus_m));
    let alpha = ideal
        .express(&s)
        .expect("1 - det(1 - M) lies in the ideal because M has entries in it");
    Ok(lift_tail(ideal, a, &m_matrix, &d_matrix, &alpha))
}

/// Gr&ouml;bner-free variant: the caller supplies the certificates and
/// they are verified as ring identities before the closed-form tail runs.
pub fn idempotent_lift_given(
    ideal: &IdealHandle,
    a: &[RingElement],
    m_matrix: &[Vec<RingElement>],
    d_matrix: &[Vec<RingElement>],
    alpha: &[RingElement],
) -> Result<(RingElement, Vec<RingElement>)> {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let m = gens.len();
    if m_matrix.len() != m || d_matrix.len() != m || alpha.len() != m {
        return Err(Error::ArityMismatch { expected: m, found: m_matrix.len() });
    }
    for (i, gi) in gens.iter().enumerate() {
        let mut rhs = ring.zero();
        for (j, gj) in gens.iter().enumerate() {
            rhs = rhs.add(&m_matrix[i][j].mul(gj));
        }
        for (k, ak) in a.iter().enumerate() {
            rhs = rhs.add(&d_matrix[i][k].mul(ak));
        }
        let residual = gi.sub(&rhs);
        if !residual.is_zero() {
            return Err(Error::EquationViolated { residual: residual.to_string() });
        }
    }
    let one_minus_m = identity_minus(ring, m_matrix);
    let s = ring.one().sub(&det(ring, &one_minus_m));
    let mut combo = ring.zero();
    for (ar, gr) in alpha.iter().zip(gens) {
        combo = combo.add(&ar.mul(gr));
    }
    let residual = s.sub(&combo);
    if !residual.is_zero() {
        return Err(Error::EquationViolated { residual: residual.to_string() });
    }
    Ok(lift_tail(ideal, a, m_matrix, d_matrix, alpha))
}

/// Middle ground between the two constructors above: the caller supplies
/// the matrices `M` and `D` (verified as ring identities) and the
/// expression of `s = 1 - det(1 - M)` in terms of the generators is the
/// only step that consults a Gr&ouml;bner basis.
pub fn idempotent_lift_from_matrix(
    ideal: &IdealHandle,
    a: &[RingElement],
    m_matrix: &[Vec<RingElement>],
    d_matrix: &[Vec<RingElement>],
) -> Result<(RingElement, Vec<RingElement>)> {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let m = gens.len();
    if m_matrix.len() != m || d_matrix.len() != m {
        return Err(Error::ArityMismatch { expected: m, found: m_matrix.len() });
    }
    for (i, gi) in gens.iter().enumerate() {
        let mut rhs = ring.zero();
        for (j, gj) in gens.iter().enumerate() {
            rhs = rhs.add(&m_matrix[i][j].mul(gj));
        }
        for (k, ak) in a.iter().enumerate() {
            rhs = rhs.add(&d_matrix[i][k].mul(ak));
        }
        let residual = gi.sub(&rhs);
        if !residual.is_zero() {
            return Err(Error::EquationViolated { residual: residual.to_string() });
        }
    }
    let one_minus_m = identity_minus(ring, m_matrix);
    let s = ring.one().sub(&det(ring, &one_minus_m));
    let alpha = ideal.express(&s).ok_or_else(|| {
        Error::ConstructionFailed("1 - det(1 - M) does not visibly lie in the ideal".into())
    })?;
    Ok(lift_tail(ideal, a, m_matrix, d_matrix, &alpha))
}

/// The quadric point representing an oriented subscheme: requires the
/// ideal to be the unit ideal (trivial class) or to have height at least
/// `n = len(reps)`, with `reps` generating it modulo its square.
pub fn segre_class(ideal: &IdealHandle, reps: &[RingElement]) -> Result<QuadricPoint> {
    let ring = ideal.ring();
    let n = reps.len();
    if ideal.is_unit() {
        return Ok(QuadricPoint::base(ring, n));
    }
    match ideal.height() {
        Height::Finite(h) if h < n => {
            return Err(Error::HeightViolation { required: n, found: h });
        }
        _ => {}
    }
    let (s, b) = idempotent_lift(ideal, reps)?;
    let point = QuadricPoint::new(n, reps.to_vec(), b, s)
        .expect("the lift satisfies the quadric equation");
    debug_assert!(
        point.ideal().same_ideal(ideal),
        "the point must cut out the original ideal"
    );
    Ok(point)
}
