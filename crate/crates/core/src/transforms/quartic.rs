use super::TransformError;
use crate::ec::{Curve, ExactField, Point};

/// Rational point used to send the quartic to Weierstrass form.
#[derive(Clone, Debug, PartialEq)]
pub enum MarkedPoint<F> {
    /// One of the two points at infinity; `q^2` is the leading coefficient.
    AtInfinity { q: F },
    /// Affine point `(v0, s0)` with `s0 != 0`.
    Affine { v0: F, s0: F },
}

/// s^2 = c[4] v^4 + c[3] v^3 + c[2] v^2 + c[1] v + c[0].
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticModel<F> {
    pub c: [F; 5],
    pub marked: MarkedPoint<F>,
}

impl<F: ExactField> QuarticModel<F> {
    pub fn new(c: [F; 5], marked: MarkedPoint<F>) -> Result<Self, TransformError> {
        let m = QuarticModel { c, marked };
        let ok = match &m.marked {
            MarkedPoint::AtInfinity { q } => !q.is_zero_el() && q.square() == m.c[4],
            MarkedPoint::Affine { v0, s0 } => !s0.is_zero_el() && s0.square() == m.eval(v0),
        };
        if ok {
            Ok(m)
        } else {
            Err(TransformError::BadMarkedPoint)
        }
    }

    pub fn eval(&self, v: &F) -> F {
        self.c.iter().rev().fold(F::zero_el(), |acc, ci| acc.mul(v).add(ci))
    }

    pub fn contains(&self, v: &F, s: &F) -> bool {
        s.square() == self.eval(v)
    }
}

/// Birational pair between a quartic and a short Weierstrass curve.
///
/// Internally the quartic is first put in the shape s^2 = a u^4 + b u^3 + c u^2 + d u + q^2
/// (or its reversal for a marked point at infinity), then mapped to a long Weierstrass
/// model, then completed to short form.
#[derive(Clone, Debug)]
pub struct QuarticReduction<F> {
    pub quartic: QuarticModel<F>,
    pub curve: Curve<F>,
    /// Coefficients a, b, c, d and q of the normalized quartic.
    norm: [F; 5],
    /// a1, a2, a3, a4, a6 of the long model.
    long: [F; 5],
    b2: F,
}

fn k<F: ExactField>(n: i64) -> F {
    F::from_i64(n)
}

/// Taylor shift: coefficients of f(u + v0), lowest first.
fn shift<F: ExactField>(c: &[F; 5], v0: &F) -> [F; 5] {
    let mut out: [F; 5] = std::array::from_fn(|_| F::zero_el());
    // Horner on polynomials in u
    for ci in c.iter().rev() {
        let mut next: [F; 5] = std::array::from_fn(|_| F::zero_el());
        for j in 0..5 {
            // (u + v0) * out
            if j + 1 < 5 {
                next[j + 1] = next[j + 1].add(&out[j]);
            }
            next[j] = next[j].add(&out[j].mul(v0));
        }
        next[0] = next[0].add(ci);
        out = next;
    }
    out
}

/// Reduces a quartic with a marked point to short Weierstrass form.
pub fn generic_quartic_reduce<F: ExactField>(model: &QuarticModel<F>) -> Result<QuarticReduction<F>, TransformError> {
    let model = QuarticModel::new(model.c.clone(), model.marked.clone())?;
    let norm = match &model.marked {
        MarkedPoint::AtInfinity { q } => {
            let c = &model.c;
            [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), q.clone()]
        }
        MarkedPoint::Affine { v0, s0 } => {
            let e = shift(&model.c, v0);
            [e[4].clone(), e[3].clone(), e[2].clone(), e[1].clone(), s0.clone()]
        }
    };
    let [a, b, c, d, q] = &norm;
    let q2 = q.square();
    let a1 = d.div(q);
    let a2 = c.sub(&d.square().div(&q2.scale_i(4)));
    let a3 = q.mul(b).scale_i(2);
    let a4 = q2.mul(a).scale_i(-4);
    let a6 = a2.mul(&a4);
    let b2 = a1.square().add(&a2.scale_i(4));
    let b4 = a4.scale_i(2).add(&a1.mul(&a3));
    let b6 = a3.square().add(&a6.scale_i(4));
    let c4 = b2.square().sub(&b4.scale_i(24));
    let c6 = b2.square().mul(&b2).neg().add(&b2.mul(&b4).scale_i(36)).sub(&b6.scale_i(216));
    let curve = Curve::new_unchecked(c4.scale_i(-27), c6.scale_i(-54));
    if curve.discriminant().is_zero_el() {
        return Err(TransformError::SingularQuartic);
    }
    Ok(QuarticReduction { quartic: model, curve, norm, long: [a1, a2, a3, a4, a6], b2 })
}

impl<F: ExactField> QuarticReduction<F> {
    fn long_to_short(&self, x: &F, y: &F) -> Point<F> {
        let [a1, _, a3, _, _] = &self.long;
        let xx = x.scale_i(36).add(&self.b2.scale_i(3));
        let yy = y.scale_i(2).add(&a1.mul(x)).add(a3).scale_i(108);
        Point::Affine(xx, yy)
    }

    fn short_to_long(&self, xx: &F, yy: &F) -> (F, F) {
        let [a1, _, a3, _, _] = &self.long;
        let x = xx.sub(&self.b2.scale_i(3)).div(&k(36));
        let y = yy.div(&k(108)).sub(&a1.mul(&x)).sub(a3).div(&k(2));
        (x, y)
    }

    /// Quartic to curve.
    pub fn forward(&self, v: &F, s: &F) -> Result<Point<F>, TransformError> {
        if !self.quartic.contains(v, s) {
            return Err(TransformError::NotOnSource);
        }
        let [_, _, c, d, q] = &self.norm;
        let two_q = q.scale_i(2);
        let (x, y) = match &self.quartic.marked {
            MarkedPoint::AtInfinity { .. } => {
                let qv2 = q.mul(&v.square());
                let x = two_q.mul(&s.add(&qv2)).add(&d.mul(v));
                let y = q
                    .square()
                    .scale_i(4)
                    .mul(&s.mul(v).add(&qv2.mul(v)))
                    .add(&two_q.mul(&d.mul(&v.square()).add(&c.mul(v))))
                    .sub(&d.square().mul(v).div(&two_q));
                (x, y)
            }
            MarkedPoint::Affine { v0, .. } => {
                let u = v.sub(v0);
                if u.is_zero_el() {
                    if s == q {
                        return Ok(Point::Infinity);
                    }
                    // conjugate of the marked point: limit of the map along the quartic
                    let [a1, a2, a3, _, _] = &self.long;
                    let x = a2.neg();
                    let y = a1.mul(a2).sub(a3);
                    return Ok(self.long_to_short(&x, &y));
                }
                let u2 = u.square();
                let x = two_q.mul(&s.add(q)).add(&d.mul(&u)).div(&u2);
                let y = q
                    .square()
                    .scale_i(4)
                    .mul(&s.add(q))
                    .add(&two_q.mul(&d.mul(&u).add(&c.mul(&u2))))
                    .sub(&d.square().mul(&u2).div(&two_q))
                    .div(&u2.mul(&u));
                (x, y)
            }
        };
        Ok(self.long_to_short(&x, &y))
    }

    /// Curve to quartic.
    pub fn backward(&self, p: &Point<F>) -> Result<(F, F), TransformError> {
        if !self.curve.on_curve(p) {
            return Err(TransformError::NotOnSource);
        }
        let [_, _, c, d, q] = &self.norm;
        let two_q = q.scale_i(2);
        let (xx, yy) = match p {
            Point::Infinity => {
                return match &self.quartic.marked {
                    MarkedPoint::Affine { v0, s0 } => Ok((v0.clone(), s0.clone())),
                    MarkedPoint::AtInfinity { .. } => Err(TransformError::Exceptional("marked point at infinity")),
                }
            }
            Point::Affine(x, y) => (x, y),
        };
        let (x, y) = self.short_to_long(xx, yy);
        let lin = two_q.mul(&x.add(c)).sub(&d.square().div(&two_q));
        match &self.quartic.marked {
            MarkedPoint::AtInfinity { .. } => {
                if lin.is_zero_el() {
                    return Err(TransformError::Exceptional("image of a point at infinity"));
                }
                let v = y.div(&lin);
                let s = q.mul(&v.square()).neg().add(&x.sub(&d.mul(&v)).div(&two_q));
                Ok((v, s))
            }
            MarkedPoint::Affine { v0, .. } => {
                if y.is_zero_el() {
                    return Err(TransformError::Exceptional("image of a point at infinity"));
                }
                let u = lin.div(&y);
                let s = x.mul(&u.square()).sub(&d.mul(&u)).div(&two_q).sub(q);
                Ok((u.add(v0), s))
            }
        }
    }
}
