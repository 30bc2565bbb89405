//! The group structure on pointed classes: composition of comaximal
//! representatives by Chinese-remainder interpolation, inversion through
//! a linked complement, and the randomized search that produces such a
//! complement in general position.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ideal::{Dimension, IdealHandle};
use crate::quadric::{move_point, random_element, Homotopy, MoveConfig, QuadricPoint};
use crate::ring::RingElement;
use crate::segre::{idempotent_lift, segre_class};
use crate::witness::Ledger;

/// Replaces an oriented ideal `(I, omega)` by a linked pair `(K, f)`:
/// `f = omega + epsilon` with `epsilon` in `I^2`, `K = (<f> : I)`, and the
/// acceptance conditions guarantee `I` and `K` are comaximal with
/// `I ∩ K = <f>`, `K` of height at least `n` (or unit), `K` comaximal
/// with every ideal in `avoid` in the expected dimension range, and `f`
/// orienting `K`.
pub fn moving_euler<R: Rng>(
    ideal: &IdealHandle,
    omega: &[RingElement],
    avoid: &[IdealHandle],
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<(IdealHandle, Vec<RingElement>)> {
    if ideal.is_unit() {
        return Err(Error::ConstructionFailed(
            "the unit ideal admits no linked complement".into(),
        ));
    }
    let ring = ideal.ring().clone();
    let n = omega.len();
    let square = ideal.square();
    let square_gens = square.generators().to_vec();
    let mut last = String::from("no candidates tried");

    for attempt in 0..cfg.attempts {
        let f: Vec<RingElement> = if attempt == 0 {
            omega.to_vec()
        } else {
            omega
                .iter()
                .map(|w| {
                    let mut eps = ring.zero();
                    for g in &square_gens {
                        let coeff = if attempt < 10 {
                            let bound = attempt as i64;
                            ring.integer(rng.gen_range(-bound..=bound))
                        } else {
                            random_element(&ring, cfg.degree_cap, 2, rng)
                        };
                        eps = eps.add(&coeff.mul(g));
                    }
                    w.add(&eps)
                })
                .collect()
        };

        let f_ideal = IdealHandle::new(&ring, f.clone());
        let complement = f_ideal.quotient(ideal);

        if !square.sum(&complement).is_unit() {
            last = format!("attempt {attempt}: complement meets the squared ideal");
            continue;
        }
        if !(complement.is_unit() || complement.height().at_least(n)) {
            last = format!("attempt {attempt}: complement has height below {n}");
            continue;
        }
        let avoid_ok = avoid.iter().all(|j| {
            match j.sum(&complement).dimension() {
                Dimension::Empty => true,
                Dimension::Finite(d) => match j.dimension() {
                    Dimension::Empty => false,
                    Dimension::Finite(dj) => dj >= n && d + n <= dj,
                },
            }
        });
        if !avoid_ok {
            last = format!("attempt {attempt}: complement crowds an avoided ideal");
            continue;
        }
        if !ideal.intersection(&complement).same_ideal(&f_ideal) {
            last = format!("attempt {attempt}: the perturbed span is not the scheme intersection");
            continue;
        }
        let oriented = IdealHandle::new(
            &ring,
            f.iter()
                .cloned()
                .chain(complement.square().generators().iter().cloned())
                .collect(),
        );
        if !oriented.same_ideal(&complement) {
            last = format!("attempt {attempt}: the perturbation fails to orient the complement");
            continue;
        }
        return Ok((complement, f));
    }
    Err(Error::MoveFailed { attempts: cfg.attempts, last })
}

/// Group composition of two pointed classes. The pair is put in a
/// canonical order first, so the operation is literally symmetric; when
/// the supports meet, the first representative is moved into general
/// position (and the move is recorded in the ledger).
pub fn compose<R: Rng>(
    p: &QuadricPoint,
    q: &QuadricPoint,
    ledger: &mut Ledger,
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<QuadricPoint> {
    assert!(p.ring() == q.ring(), "points live over different rings");
    assert_eq!(p.n(), q.n(), "points live on different quadrics");
    let n = p.n();

    let (mut u, w) = if p.canonical_cmp(q) == std::cmp::Ordering::Greater {
        (q.clone(), p.clone())
    } else {
        (p.clone(), q.clone())
    };
    let mut iu = u.ideal();
    let iw = w.ideal();

    let (eu, ew) = match iu.comaximal_witness(&iw) {
        Ok(pair) => pair,
        Err(Error::NotComaximal) => {
            let out = move_point(&u, &[iw.clone()], cfg, rng)?;
            ledger.register("general position move before composition", out.homotopy);
            u = out.point;
            iu = u.ideal();
            iu.comaximal_witness(&iw)
                .expect("the move established comaximality")
        }
        Err(e) => return Err(e),
    };

    // c interpolates the two orientation vectors: c = a_u mod I_u^2 and
    // c = a_w mod I_w^2, reduced modulo the squared product.
    let eu2 = eu.mul(&eu);
    let ew2 = ew.mul(&ew);
    let product = iu.product(&iw);
    let product_sq = product.square();
    let c: Vec<RingElement> = (0..n)
        .map(|i| {
            let raw = ew2.mul(&u.a()[i]).add(&eu2.mul(&w.a()[i]));
            product_sq.reduce(&raw)
        })
        .collect();

    // c orients each factor automatically: it agrees with the factor's own
    // orientation modulo the factor's square, so the lifts cannot fail.
    let (su, du) = idempotent_lift(&iu, &c)?;
    let (sw, dw) = idempotent_lift(&iw, &c)?;

    let mut cdw = u.ring().zero();
    for (ci, di) in c.iter().zip(&dw) {
        cdw = cdw.add(&ci.mul(di));
    }
    let sw2 = sw.mul(&sw);
    let su2 = su.mul(&su);
    let x: Vec<RingElement> = (0..n)
        .map(|i| {
            cdw.mul(&du[i])
                .add(&sw2.mul(&du[i]))
                .add(&su2.mul(&dw[i]))
        })
        .collect();
    let s = su.mul(&sw);
    let h = QuadricPoint::new(n, c, x, s)
        .expect("the composite satisfies the quadric equation");
    debug_assert!(
        h.ideal().same_ideal(&product),
        "the composite must cut out the product ideal"
    );
    Ok(h)
}

/// Inverse of a pointed class: a linked complement carries the opposite
/// class, and the contraction `(f T, 0, 0)` recorded in the ledger is the
/// certificate that the two compose to the trivial class.
pub fn inverse<R: Rng>(
    v: &QuadricPoint,
    ledger: &mut Ledger,
    cfg: &MoveConfig,
    rng: &mut R,
) -> Result<QuadricPoint> {
    let ring = v.ring().clone();
    let n = v.n();
    let iv = v.ideal();
    if iv.is_unit() {
        return Ok(QuadricPoint::base(&ring, n));
    }
    let (complement, f) = moving_euler(&iv, v.a(), &[], cfg, rng)?;

    ledger.register(
        "contraction of a complete intersection with zero pairing",
        Homotopy::contraction(&ring, &f)?,
    );
    ledger.ensure_bridge(&ring, n)?;

    segre_class(&complement, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::PresentedRing;
    use crate::scalar::CoefficientField;
    use crate::witness::provably_equal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const QQ: CoefficientField = CoefficientField::Rationals;
    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn plane() -> PresentedRing {
        PresentedRing::free(QQ, &["x", "y"], O).unwrap()
    }

    fn origin_class(r: &PresentedRing) -> QuadricPoint {
        let i = IdealHandle::parse_new(r, &["x", "y"]).unwrap();
        segre_class(&i, &[r.element("x").unwrap(), r.element("y").unwrap()]).unwrap()
    }

    #[test]
    fn the_zero_perturbation_splits_a_reduced_point() {
        let r = plane();
        let i = IdealHandle::parse_new(&r, &["x", "y"]).unwrap();
        let omega = vec![r.element("x").unwrap(), r.element("y").unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (k, f) = moving_euler(&i, &omega, &[], &MoveConfig::default(), &mut rng).unwrap();
        assert!(k.is_unit());
        assert_eq!(f, omega);
    }

    #[test]
    fn the_unit_ideal_cannot_be_moved() {
        let r = plane();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let err = moving_euler(
            &IdealHandle::unit(&r),
            &[r.one()],
            &[],
            &MoveConfig::default(),
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstructionFailed(_)));
    }

    #[test]
    fn the_complement_respects_avoidance() {
        let r = PresentedRing::free(QQ, &["x"], O).unwrap();
        let i = IdealHandle::parse_new(&r, &["x"]).unwrap();
        // This orientation vanishes doubly, so the naive complement is the
        // avoided ideal itself and a perturbation is forced.
        let omega = vec![r.element("x^2 - x").unwrap()];
        let avoid = vec![IdealHandle::parse_new(&r, &["x - 1"]).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (k, f) =
            moving_euler(&i, &omega, &avoid, &MoveConfig::default(), &mut rng).unwrap();
        assert!(k.sum(&avoid[0]).is_unit());
        assert!(i.square().sum(&k).is_unit());
        let f_ideal = IdealHandle::new(&r, f.clone());
        assert!(i.intersection(&k).same_ideal(&f_ideal));
        // The perturbation stays inside the square of the ideal.
        assert!(i.square().contains(&f[0].sub(&omega[0])));
    }

    #[test]
    fn composing_with_the_base_point_is_the_identity() {
        let r = plane();
        let v = origin_class(&r);
        let base = QuadricPoint::base(&r, 2);
        let mut ledger = Ledger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = compose(&v, &base, &mut ledger, &MoveConfig::default(), &mut rng).unwrap();
        assert!(provably_equal(&h, &v, &ledger).is_equal());
    }

    #[test]
    fn composition_is_literally_symmetric() {
        let r = plane();
        let u = origin_class(&r);
        let iw = IdealHandle::parse_new(&r, &["x - 1", "y"]).unwrap();
        let w = segre_class(
            &iw,
            &[r.element("x - 1").unwrap(), r.element("y").unwrap()],
        )
        .unwrap();

        let mut ledger = Ledger::new();
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let uw = compose(&u, &w, &mut ledger, &MoveConfig::default(), &mut rng1).unwrap();
        let wu = compose(&w, &u, &mut ledger, &MoveConfig::default(), &mut rng2).unwrap();
        assert_eq!(uw, wu);

        // The interpolation of the two orientations: the raw values are
        // (1-x)^2*x + x^2*(x-1) and (1-x)^2*y + x^2*y, reduced modulo the
        // square of the product ideal (which absorbs x*y*(x-1)).
        assert_eq!(uw.a()[0], r.element("2*x^3 - 3*x^2 + x").unwrap());
        assert_eq!(uw.a()[1], r.element("y").unwrap());
        assert!(uw.ideal().same_ideal(&u.ideal().product(&w.ideal())));
    }

    #[test]
    fn inverses_cancel_with_a_certificate() {
        let r = plane();
        let v = origin_class(&r);
        let mut ledger = Ledger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let inv = inverse(&v, &mut ledger, &MoveConfig::default(), &mut rng).unwrap();
        let h = compose(&v, &inv, &mut ledger, &MoveConfig::default(), &mut rng).unwrap();
        let verdict = provably_equal(&h, &QuadricPoint::base(&r, 2), &ledger);
        assert!(verdict.is_equal());
    }

    #[test]
    fn inverse_of_a_unit_class_is_the_base_point() {
        let r = plane();
        let v = QuadricPoint::new(
            2,
            vec![r.one(), r.zero()],
            vec![r.zero(), r.zero()],
            r.zero(),
        )
        .unwrap();
        let mut ledger = Ledger::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let inv = inverse(&v, &mut ledger, &MoveConfig::default(), &mut rng).unwrap();
        assert_eq!(inv, QuadricPoint::base(&r, 2));
    }
}
