//! A single space carrying two interchangeable copies of the quadric
//! hypersurface, together with the fold: one quadric point on the shared
//! space whose restriction along either of the two sections is exactly the
//! tautological point `(x, y, z)`.
//!
//! The shared space adjoins to two disjoint copies of the hypersurface
//! coordinates a partition of unity `e + e' = 1` with `e` supported on the
//! first coordinate block and `e'` on the second.  The interpolated
//! coordinates `c_k = x'_k e^2 + x_k e'^2` agree with `x_k` modulo the
//! square of the first block's vanishing ideal and with `x'_k` modulo the
//! square of the second's, so a single idempotent lift of `c` against each
//! block produces one point restricting correctly to both sections.

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::monomial::MonomialOrder;
use crate::quadric::QuadricPoint;
use crate::ring::{PresentedRing, RingElement, RingMap};
use crate::scalar::CoefficientField;
use crate::segre::idempotent_lift_from_matrix;

/// The shared space: `6n + 4` variables
/// `x_1..x_n, y_1..y_n, z, xp_1..xp_n, yp_1..yp_n, zp, u_1..u_{n+1},
/// v_1..v_{n+1}` subject to both quadric relations and the partition
/// relation `sum u_j x_j + u_{n+1} z + sum v_j xp_j + v_{n+1} zp = 1`.
#[derive(Debug, Clone)]
pub struct JouanolouDevice {
    ring: PresentedRing,
    target: PresentedRing,
    n: usize,
    section_l: RingMap,
    section_r: RingMap,
    include_l: RingMap,
    include_r: RingMap,
}

impl JouanolouDevice {
    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    /// The plain hypersurface ring `k[x, y, z] / (sum x_i y_i - z + z^2)`
    /// that both sections land in.
    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self, i: usize) -> RingElement {
        assert!(i < self.n);
        self.ring.variable(i)
    }

    pub fn y(&self, i: usize) -> RingElement {
        assert!(i < self.n);
        self.ring.variable(self.n + i)
    }

    pub fn z(&self) -> RingElement {
        self.ring.variable(2 * self.n)
    }

    pub fn xp(&self, i: usize) -> RingElement {
        assert!(i < self.n);
        self.ring.variable(2 * self.n + 1 + i)
    }

    pub fn yp(&self, i: usize) -> RingElement {
        assert!(i < self.n);
        self.ring.variable(3 * self.n + 1 + i)
    }

    pub fn zp(&self) -> RingElement {
        self.ring.variable(4 * self.n + 1)
    }

    /// Partition coefficient `u_{j+1}` for `j <= n`.
    pub fn u(&self, j: usize) -> RingElement {
        assert!(j <= self.n);
        self.ring.variable(4 * self.n + 2 + j)
    }

    /// Partition coefficient `v_{j+1}` for `j <= n`.
    pub fn v(&self, j: usize) -> RingElement {
        assert!(j <= self.n);
        self.ring.variable(5 * self.n + 3 + j)
    }

    /// Substitution sending the second block to its base section
    /// (`xp = yp = 0, zp = 1`) and the partition coefficients to the
    /// matching constants, leaving `(x, y, z)`.
    pub fn section_left(&self) -> &RingMap {
        &self.section_l
    }

    /// The mirror substitution leaving `(xp, yp, zp)`.
    pub fn section_right(&self) -> &RingMap {
        &self.section_r
    }

    /// The coordinate inclusion of the target ring onto the first block.
    pub fn include_left(&self) -> &RingMap {
        &self.include_l
    }

    /// The coordinate inclusion of the target ring onto the second block.
    pub fn include_right(&self) -> &RingMap {
        &self.include_r
    }

    /// The vanishing ideal `<x_1, .., x_n, z>` of the first centre.
    pub fn left_ideal(&self) -> IdealHandle {
        let mut gens: Vec<RingElement> = (0..self.n).map(|i| self.x(i)).collect();
        gens.push(self.z());
        IdealHandle::new(&self.ring, gens)
    }

    /// The vanishing ideal `<xp_1, .., xp_n, zp>` of the second centre.
    pub fn right_ideal(&self) -> IdealHandle {
        let mut gens: Vec<RingElement> = (0..self.n).map(|i| self.xp(i)).collect();
        gens.push(self.zp());
        IdealHandle::new(&self.ring, gens)
    }
}

fn variable_names(n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(6 * n + 4);
    for i in 1..=n {
        names.push(format!("x{i}"));
    }
    for i in 1..=n {
        names.push(format!("y{i}"));
    }
    names.push("z".to_string());
    for i in 1..=n {
        names.push(format!("xp{i}"));
    }
    for i in 1..=n {
        names.push(format!("yp{i}"));
    }
    names.push("zp".to_string());
    for j in 1..=n + 1 {
        names.push(format!("u{j}"));
    }
    for j in 1..=n + 1 {
        names.push(format!("v{j}"));
    }
    names
}

fn quadric_relation(n: usize, x: &str, y: &str, z: &str) -> String {
    let products: Vec<String> = (1..=n).map(|i| format!("{x}{i}*{y}{i}")).collect();
    format!("{} - {z} + {z}^2", products.join(" + "))
}

fn partition_relation(n: usize) -> String {
    let mut terms = Vec::new();
    for j in 1..=n {
        terms.push(format!("u{j}*x{j}"));
    }
    terms.push(format!("u{}*z", n + 1));
    for j in 1..=n {
        terms.push(format!("v{j}*xp{j}"));
    }
    terms.push(format!("v{}*zp", n + 1));
    format!("{} - 1", terms.join(" + "))
}

/// Builds the shared space together with its two sections and the two
/// coordinate inclusions of the plain hypersurface ring.
pub fn jouanolou_device(n: usize, field: CoefficientField) -> Result<JouanolouDevice> {
    if n == 0 {
        return Err(Error::UnsupportedN(n));
    }
    let names = variable_names(n);
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let r1 = quadric_relation(n, "x", "y", "z");
    let r2 = quadric_relation(n, "xp", "yp", "zp");
    let r3 = partition_relation(n);
    let ring = PresentedRing::parse_new(
        field,
        &name_refs,
        &[&r1, &r2, &r3],
        MonomialOrder::DegRevLex,
    )?;

    let target_names: Vec<String> = names[..2 * n + 1].to_vec();
    let target_refs: Vec<&str> = target_names.iter().map(String::as_str).collect();
    let target =
        PresentedRing::parse_new(field, &target_refs, &[&r1], MonomialOrder::DegRevLex)?;

    let lx: Vec<RingElement> = (0..n).map(|i| target.variable(i)).collect();
    let ly: Vec<RingElement> = (0..n).map(|i| target.variable(n + i)).collect();
    let lz = target.variable(2 * n);
    let zero = target.zero();
    let one = target.one();

    let mut il_images = Vec::with_capacity(6 * n + 4);
    il_images.extend(lx.iter().cloned());
    il_images.extend(ly.iter().cloned());
    il_images.push(lz.clone());
    il_images.extend(std::iter::repeat(zero.clone()).take(2 * n));
    il_images.push(one.clone());
    il_images.extend(std::iter::repeat(zero.clone()).take(n + 1));
    il_images.extend(std::iter::repeat(zero.clone()).take(n));
    il_images.push(one.clone());
    let section_l = RingMap::new(&ring, &target, il_images)?;

    let mut ir_images = Vec::with_capacity(6 * n + 4);
    ir_images.extend(std::iter::repeat(zero.clone()).take(2 * n));
    ir_images.push(one.clone());
    ir_images.extend(lx.iter().cloned());
    ir_images.extend(ly.iter().cloned());
    ir_images.push(lz.clone());
    ir_images.extend(std::iter::repeat(zero.clone()).take(n));
    ir_images.push(one.clone());
    ir_images.extend(std::iter::repeat(zero.clone()).take(n + 1));
    let section_r = RingMap::new(&ring, &target, ir_images)?;

    let mut left_images: Vec<RingElement> = (0..2 * n).map(|i| ring.variable(i)).collect();
    left_images.push(ring.variable(2 * n));
    let include_l = RingMap::new(&target, &ring, left_images)?;

    let mut right_images: Vec<RingElement> =
        (0..2 * n).map(|i| ring.variable(2 * n + 1 + i)).collect();
    right_images.push(ring.variable(4 * n + 1));
    let include_r = RingMap::new(&target, &ring, right_images)?;

    Ok(JouanolouDevice { ring, target, n, section_l, section_r, include_l, include_r })
}

/// The fold: a verified quadric point on the shared space restricting to
/// the tautological point along both sections.
#[derive(Debug, Clone)]
pub struct FoldMap {
    device: JouanolouDevice,
    point: QuadricPoint,
}

impl FoldMap {
    pub fn device(&self) -> &JouanolouDevice {
        &self.device
    }

    pub fn point(&self) -> &QuadricPoint {
        &self.point
    }
}

/// Idempotent lift of the interpolated coordinates against one block's
/// vanishing ideal, using the closed-form certificate
/// `t_i = x_i (1 + e_other) - x_opp_i e_own` (each `t_i e_own + c_i = x_i`
/// by the partition relation, and the `z`-row closes by the quadric
/// relation).
fn half_lift(
    dev: &JouanolouDevice,
    c: &[RingElement],
    primed: bool,
) -> Result<(RingElement, Vec<RingElement>)> {
    let r = dev.ring();
    let n = dev.n();
    let one = r.one();
    let x = |i: usize| if primed { dev.xp(i) } else { dev.x(i) };
    let x_opp = |i: usize| if primed { dev.x(i) } else { dev.xp(i) };
    let y = |i: usize| if primed { dev.yp(i) } else { dev.y(i) };
    let z = if primed { dev.zp() } else { dev.z() };
    let coef = |j: usize| if primed { dev.v(j) } else { dev.u(j) };

    let mut own = r.zero();
    for j in 0..n {
        own = own.add(&coef(j).mul(&x(j)));
    }
    own = own.add(&coef(n).mul(&z));
    let other = one.sub(&own);

    let t: Vec<RingElement> = (0..n)
        .map(|i| x(i).mul(&one.add(&other)).sub(&x_opp(i).mul(&own)))
        .collect();
    let mut t_pair = r.zero();
    for j in 0..n {
        t_pair = t_pair.add(&y(j).mul(&t[j]));
    }

    let ideal = if primed { dev.right_ideal() } else { dev.left_ideal() };

    let mut m_matrix = vec![vec![r.zero(); n + 1]; n + 1];
    for (i, ti) in t.iter().enumerate() {
        for j in 0..=n {
            m_matrix[i][j] = coef(j).mul(ti);
        }
    }
    for j in 0..=n {
        m_matrix[n][j] = coef(j).mul(&t_pair);
    }
    m_matrix[n][n] = m_matrix[n][n].add(&z);

    let mut d_matrix = vec![vec![r.zero(); n]; n + 1];
    for (i, row) in d_matrix.iter_mut().take(n).enumerate() {
        row[i] = one.clone();
    }
    for k in 0..n {
        d_matrix[n][k] = y(k);
    }

    idempotent_lift_from_matrix(&ideal, c, &m_matrix, &d_matrix)
}

fn ensure_image(map: &RingMap, elem: &RingElement, expected: &RingElement) -> Result<()> {
    let residual = map.apply(elem).sub(expected);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::EquationViolated { residual: residual.to_string() })
    }
}

/// Adjusts the vector part of a lift so that both sections carry it to
/// the stated targets.  For `n = 1` the pairing identity already pins the
/// single entry over the (integral) target ring, so nothing moves; for
/// `n = 2` the defect pairs to zero against `(x_1, x_2)` and therefore
/// factors through the alternating syzygy `(x_2, -x_1)`, which lifts to a
/// correction along `(c_2, -c_1)` interpolated between the two sections.
fn correct_vector(
    dev: &JouanolouDevice,
    c: &[RingElement],
    e: &RingElement,
    ep: &RingElement,
    d: Vec<RingElement>,
    left_target: &[RingElement],
    right_target: &[RingElement],
) -> Result<Vec<RingElement>> {
    let n = dev.n();
    if n == 1 {
        return Ok(d);
    }
    let lring = dev.target();
    let factor = |map: &RingMap, target: &[RingElement]| -> Result<RingElement> {
        let xi0 = map.apply(&d[0]).sub(&target[0]);
        let xi1 = map.apply(&d[1]).sub(&target[1]);
        let h = IdealHandle::principal(&lring.variable(1))
            .express(&xi0)
            .ok_or_else(|| {
                Error::ConstructionFailed(
                    "restriction defect does not factor through the syzygy".into(),
                )
            })?
            .remove(0);
        let residual = xi1.add(&h.mul(&lring.variable(0)));
        if !residual.is_zero() {
            return Err(Error::EquationViolated { residual: residual.to_string() });
        }
        Ok(h)
    };
    let hl = factor(dev.section_left(), left_target)?;
    let hr = factor(dev.section_right(), right_target)?;
    let g = dev
        .include_left()
        .apply(&hl)
        .mul(ep)
        .add(&dev.include_right().apply(&hr).mul(e));
    Ok(vec![d[0].sub(&g.mul(&c[1])), d[1].add(&g.mul(&c[0]))])
}

/// Builds the fold for `n` in `{1, 2}` and verifies every claim exactly:
/// the interpolated coordinates lift to quadric points against both
/// blocks, the two lifts combine to a single point on the shared space,
/// and both sections restrict that point literally to `(x, y, z)`.
pub fn fold_map(n: usize, field: CoefficientField) -> Result<FoldMap> {
    if n == 0 || n > 2 {
        return Err(Error::UnsupportedN(n));
    }
    let dev = jouanolou_device(n, field)?;
    let r = dev.ring().clone();
    let lring = dev.target().clone();

    let mut e = r.zero();
    for j in 0..n {
        e = e.add(&dev.u(j).mul(&dev.x(j)));
    }
    e = e.add(&dev.u(n).mul(&dev.z()));
    let mut ep = r.zero();
    for j in 0..n {
        ep = ep.add(&dev.v(j).mul(&dev.xp(j)));
    }
    ep = ep.add(&dev.v(n).mul(&dev.zp()));
    debug_assert!(e.add(&ep).is_one(), "the partition relation gives e + e' = 1");

    let e2 = e.mul(&e);
    let ep2 = ep.mul(&ep);
    let c: Vec<RingElement> = (0..n)
        .map(|k| dev.xp(k).mul(&e2).add(&dev.x(k).mul(&ep2)))
        .collect();

    let (w, d_raw) = half_lift(&dev, &c, false)?;
    let (wp, dp_raw) = half_lift(&dev, &c, true)?;

    // Scalar parts restrict on the nose: w to (z, 1), w' to (1, z).
    let lz = lring.variable(2 * n);
    let lone = lring.one();
    ensure_image(dev.section_left(), &w, &lz)?;
    ensure_image(dev.section_right(), &w, &lone)?;
    ensure_image(dev.section_left(), &wp, &lone)?;
    ensure_image(dev.section_right(), &wp, &lz)?;

    let ly: Vec<RingElement> = (0..n).map(|k| lring.variable(n + k)).collect();
    let lzero: Vec<RingElement> = vec![lring.zero(); n];
    let d = correct_vector(&dev, &c, &e, &ep, d_raw, &ly, &lzero)?;
    let dp = correct_vector(&dev, &c, &e, &ep, dp_raw, &lzero, &ly)?;

    // Compose the two lifts exactly as point composition does: with
    // pair = sum c_k d'_k the vector
    // delta_k = pair d_k + w'^2 d_k + w^2 d'_k pairs against c to
    // w w' (1 - w w'), so (c, delta, w w') is a point on the quadric.
    let mut pair = r.zero();
    for k in 0..n {
        pair = pair.add(&c[k].mul(&dp[k]));
    }
    let w2 = w.mul(&w);
    let wp2 = wp.mul(&wp);
    let delta: Vec<RingElement> = (0..n)
        .map(|k| pair.mul(&d[k]).add(&wp2.mul(&d[k])).add(&w2.mul(&dp[k])))
        .collect();
    let ww = w.mul(&wp);
    let point = QuadricPoint::new(n, c, delta, ww)?;

    for map in [dev.section_left(), dev.section_right()] {
        for k in 0..n {
            ensure_image(map, &point.a()[k], &lring.variable(k))?;
            ensure_image(map, &point.b()[k], &lring.variable(n + k))?;
        }
        ensure_image(map, point.s(), &lz)?;
    }

    Ok(FoldMap { device: dev, point })
}
