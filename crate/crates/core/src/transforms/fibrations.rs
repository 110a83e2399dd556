use std::sync::OnceLock;

use num_bigint::BigInt;

use super::quartic::{generic_quartic_reduce, MarkedPoint, QuarticModel, QuarticReduction};
use super::TransformError;
use crate::arith::rat::{big, int};
use crate::arith::{Rat, RatFunc, UniPoly};
use crate::ec::field::eval_int_poly as pe;
use crate::ec::{Curve, ExactField, Point};

/// The quartic fibrations with known Weierstrass models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fibration {
    /// The genus-one curve over Q(t) attached to the cubic family.
    C1,
    /// s^2 = v^4 + 4w v^3 - 8e v^2 + 8w v + 4 for odd exponent 2n+1.
    Odd(u32),
    /// s^2 = v^2 t^4 - 4u t^3 - 2(v^2 - 2u^2 - 2) t^2 - 4u t + v^2 for even exponent 2n.
    Even(u32),
}

/// Quartic reduction composed with the isomorphism (X, Y) -> (X / mu^2, Y / mu^3)
/// onto the published Weierstrass model.
#[derive(Clone, Debug)]
pub struct BirMapPair<F> {
    pub reduction: QuarticReduction<F>,
    pub curve: Curve<F>,
    pub mu: F,
}

impl<F: ExactField> BirMapPair<F> {
    pub fn new(quartic: QuarticModel<F>, curve: Curve<F>, mu: F) -> Result<Self, TransformError> {
        let reduction = generic_quartic_reduce(&quartic)?;
        let mu2 = mu.square();
        let (mu4, mu6) = (mu2.square(), mu2.square().mul(&mu2));
        if reduction.curve.a != curve.a.mul(&mu4) || reduction.curve.b != curve.b.mul(&mu6) {
            return Err(TransformError::BadParameter("target curve is not the reduction scaled by mu".into()));
        }
        Ok(BirMapPair { reduction, curve, mu })
    }

    pub fn quartic(&self) -> &QuarticModel<F> {
        &self.reduction.quartic
    }

    /// Quartic to curve.
    pub fn forward(&self, v: &F, s: &F) -> Result<Point<F>, TransformError> {
        Ok(match self.reduction.forward(v, s)? {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let mu2 = self.mu.square();
                Point::Affine(x.div(&mu2), y.div(&mu2.mul(&self.mu)))
            }
        })
    }

    /// Curve to quartic.
    pub fn backward(&self, p: &Point<F>) -> Result<(F, F), TransformError> {
        if !self.curve.on_curve(p) {
            return Err(TransformError::NotOnSource);
        }
        let lifted = match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let mu2 = self.mu.square();
                Point::Affine(x.mul(&mu2), y.mul(&mu2.mul(&self.mu)))
            }
        };
        self.reduction.backward(&lifted)
    }
}

fn poly(cs: &[i64]) -> RatFunc {
    RatFunc::from_poly(UniPoly::from_ints(cs))
}


/// Printed Weierstrass model E1 over Q(t).
pub fn e1_curve() -> Curve<RatFunc> {
    let t = RatFunc::t();
    let u = &(&t * &t) + &(&t * &poly(&[3]));
    let f = poly(&[39673, 62616, 37530, 10152, 1053]);
    let g1 = poly(&[85, 60, 9]);
    let g2 = poly(&[227, 192, 45]);
    let g3 = poly(&[397, 312, 63]);
    let sub = |p: &RatFunc| RatFunc::from_poly(p.num().compose(u.num()));
    let a = &sub(&f) * &poly(&[-27]);
    let b = &(&(&sub(&g1) * &sub(&g2)) * &sub(&g3)) * &poly(&[54]);
    Curve::new_unchecked(a, b)
}

/// The quartic C1 with its marked point at infinity (q = 2(3t^2 + 6t + 4)).
pub fn c1_quartic() -> QuarticModel<RatFunc> {
    let gamma = poly(&[4, 6, 3]);
    let beta = poly(&[7, 9, 3]);
    let l = poly(&[19, 15, 3]);
    let c = [
        &beta * &beta,
        &(&beta * &l) * &poly(&[4]),
        &poly(&[313, 702, 618, 243, 36]) * &poly(&[-4]),
        &(&gamma * &l) * &poly(&[8]),
        &(&gamma * &gamma) * &poly(&[4]),
    ];
    QuarticModel::new(c, MarkedPoint::AtInfinity { q: &gamma * &poly(&[2]) }).expect("C1 marked point")
}

pub fn c1_maps() -> BirMapPair<RatFunc> {
    c1_maps_ref().clone()
}

/// The reduction over Q(t) is costly; fibres reuse one copy.
fn c1_maps_ref() -> &'static BirMapPair<RatFunc> {
    static MAPS: OnceLock<BirMapPair<RatFunc>> = OnceLock::new();
    MAPS.get_or_init(|| BirMapPair::new(c1_quartic(), e1_curve(), RatFunc::constant(int(4))).expect("C1 reduction"))
}

/// Specialization of [`c1_maps`]; fails where the fibre is singular.
pub fn c1_maps_at(t0: &Rat) -> Result<BirMapPair<Rat>, TransformError> {
    let generic = c1_maps_ref();
    let ev = |f: &RatFunc| f.eval(t0).ok_or_else(|| TransformError::BadParameter(format!("pole at t = {t0}")));
    let qm = generic.quartic();
    let c = [ev(&qm.c[0])?, ev(&qm.c[1])?, ev(&qm.c[2])?, ev(&qm.c[3])?, ev(&qm.c[4])?];
    let q = match &qm.marked {
        MarkedPoint::AtInfinity { q } => ev(q)?,
        MarkedPoint::Affine { .. } => unreachable!(),
    };
    if q == int(0) {
        return Err(TransformError::BadParameter(format!("degenerate fibre at t = {t0}")));
    }
    let quartic = QuarticModel::new(c, MarkedPoint::AtInfinity { q })?;
    let curve = Curve::new(ev(&generic.curve.a)?, ev(&generic.curve.b)?)
        .ok_or_else(|| TransformError::BadParameter(format!("singular fibre at t = {t0}")))?;
    BirMapPair::new(quartic, curve, int(4))
}

fn pow2(e: u32) -> BigInt {
    BigInt::from(1) << e
}

/// (w, e, K) = (2^(2n+1) - 1, 3*2^(2n) - 1, 2^(4n+2)).
fn odd_consts(n: u32) -> (Rat, Rat, Rat) {
    let w = big(pow2(2 * n + 1) - 1);
    let e = big(pow2(2 * n) * 3 - 1);
    (w, e, big(pow2(4 * n + 2)))
}

pub fn odd_curve(n: u32) -> Curve<Rat> {
    let (_, _, kk) = odd_consts(n);
    Curve::new_unchecked(int(-27) * (int(3) * &kk + int(1)), int(54) * (int(9) * &kk - int(1)))
}

pub fn odd_quartic(n: u32) -> QuarticModel<Rat> {
    let (w, e, _) = odd_consts(n);
    let c = [int(4), int(8) * &w, int(-8) * &e, int(4) * &w, int(1)];
    QuarticModel::new(c, MarkedPoint::AtInfinity { q: int(1) }).expect("odd marked point")
}

pub fn odd_maps(n: u32) -> Result<BirMapPair<Rat>, TransformError> {
    if n == 0 {
        return Err(TransformError::BadParameter("n must be positive".into()));
    }
    BirMapPair::new(odd_quartic(n), odd_curve(n), int(4))
}

/// (u, v) = (3^n, 5^n).
fn even_consts(n: u32) -> (Rat, Rat) {
    (big(BigInt::from(3).pow(n)), big(BigInt::from(5).pow(n)))
}

pub fn even_curve(n: u32) -> Curve<Rat> {
    let (u, v) = even_consts(n);
    let (u2, v2) = (&u * &u, &v * &v);
    let one = int(1);
    let a = int(-27) * (&v2 * &v2 - (&u2 + &one) * &v2 + &u2 * &u2 - &u2 + &one);
    let b = int(27) * (&one + &u2 - int(2) * &v2) * (int(2) * &u2 - &v2 - &one) * (&u2 + &v2 - int(2));
    Curve::new_unchecked(a, b)
}

pub fn even_quartic(n: u32) -> QuarticModel<Rat> {
    let (u, v) = even_consts(n);
    let v2 = &v * &v;
    let c = [v2.clone(), int(-4) * &u, int(-2) * (&v2 - int(2) * &u * &u - int(2)), int(-4) * &u, v2];
    QuarticModel::new(c, MarkedPoint::AtInfinity { q: v }).expect("even marked point")
}

pub fn even_maps(n: u32) -> Result<BirMapPair<Rat>, TransformError> {
    if n < 2 {
        return Err(TransformError::BadParameter("n must be at least 2".into()));
    }
    BirMapPair::new(even_quartic(n), even_curve(n), int(4))
}

/// Rational maps for a fibration; `t` is required for [`Fibration::C1`].
pub fn quartic_maps(fib: &Fibration, t: Option<&Rat>) -> Result<BirMapPair<Rat>, TransformError> {
    match fib {
        Fibration::C1 => c1_maps_at(t.ok_or_else(|| TransformError::BadParameter("C1 needs t".into()))?),
        Fibration::Odd(n) => odd_maps(*n),
        Fibration::Even(n) => even_maps(*n),
    }
}

/// The published E1 -> C1 formulas, verbatim.
pub fn printed_c1_backward<F: ExactField>(t: &F, x: &F, y: &F) -> Option<(F, F)> {
    let c = pe(t, &[1709, 3114, 2253, 756, 99]).div(&F::from_i64(3));
    let d = pe(t, &[3, 3, 1]).mul(&pe(t, &[13, 12, 3])).mul(&pe(t, &[19, 15, 3])).scale_i(36);
    let gamma = pe(t, &[4, 6, 3]);
    let l = pe(t, &[19, 15, 3]);
    let xm = x.sub(&c.scale_i(9));
    if xm.is_zero_el() {
        return None;
    }
    let y2 = y.scale_i(2).sub(&d.scale_i(27));
    let v = y2.sub(&l.mul(&xm).scale_i(6)).div(&xm.mul(&gamma).scale_i(12));
    let s = y2
        .square()
        .neg()
        .add(&x.scale_i(2).add(&c.scale_i(9)).mul(&xm.square()).scale_i(4))
        .div(&gamma.mul(&xm.square()).scale_i(72));
    Some((v, s))
}

/// Published E°n -> C°n formulas.
pub fn printed_odd_backward(n: u32, x: &Rat, y: &Rat) -> Option<(Rat, Rat)> {
    let (w, _, kk) = odd_consts(n);
    let den = int(6) * (x - int(3) * (int(3) * &kk - int(1)));
    if den == int(0) {
        return None;
    }
    let v = (int(2) * y - int(27) * big(pow2(2 * n + 2)) * (&kk - int(1))) / den - &w;
    let s = -(&v + &w) * (&v + &w) + (int(2) * x + int(3) * (int(3) * &kk - int(1))) / int(9);
    Some((v, s))
}

/// Published C°n -> E°n formulas, verbatim (the s-term of Y carries a constant coefficient).
pub fn printed_odd_forward(n: u32, v: &Rat, s: &Rat) -> (Rat, Rat) {
    let (w, e, _) = odd_consts(n);
    let x = rat_half(3) * (int(3) * v * v + int(6) * &w * v + int(3) * s - int(4) * &e);
    let y = rat_half(27) * (v * v * v + int(3) * &w * v * v - int(4) * &e * v + &w * s + int(2) * &w);
    (x, y)
}

/// C°n -> E°n with the s-term of Y multiplied by (v + w).
pub fn corrected_odd_forward(n: u32, v: &Rat, s: &Rat) -> (Rat, Rat) {
    let (w, e, _) = odd_consts(n);
    let x = rat_half(3) * (int(3) * v * v + int(6) * &w * v + int(3) * s - int(4) * &e);
    let y = rat_half(27) * (v * v * v + int(3) * &w * v * v - int(4) * &e * v + (v + &w) * s + int(2) * &w);
    (x, y)
}

/// Published E^e_n -> C^e_n formulas, verbatim.
pub fn printed_even_backward(n: u32, x: &Rat, y: &Rat) -> Option<(Rat, Rat)> {
    let (u, v) = even_consts(n);
    let (u2, v2) = (&u * &u, &v * &v);
    let v3 = &v2 * &v;
    let den = int(3) * &v2 * (&v2 * x - int(3) * (int(3) * &u2 - int(2) * &v2 + &v2 * &v2 - int(2) * &u2 * &v2));
    if den == int(0) {
        return None;
    }
    let t = (&v3 * y - int(27) * &u * (&u2 - &v2) * (&v2 - int(1))) / den + &u / &v2;
    let lin = &v2 * &t - &u / &v2;
    let s = -(&lin * &lin) / &v3 + (&v2 * x + int(9) * &u2 - int(6) * (&u2 + int(1)) * &v2 + int(3) * &v2 * &v2) / (int(9) * &v3);
    Some((t, s))
}

/// Published C^e_n -> E^e_n formulas, verbatim.
pub fn printed_even_forward(n: u32, t: &Rat, s: &Rat) -> (Rat, Rat) {
    let (u, v) = even_consts(n);
    let (u2, v2) = (&u * &u, &v * &v);
    let x = (int(2) - int(6) * t * &u + int(2) * &u2 + int(3) * s * &v + (int(3) * t * t - int(1)) * &v2) / int(2);
    let y = -rat_half(27)
        * (s * &u + ((int(3) * t * t + int(1)) * &u - int(2) * t * (&u2 + int(1))) * &v - s * t * &v2 - (t * t * t - t) * &v2 * &v);
    (x, y)
}

fn rat_half(n: i64) -> Rat {
    crate::arith::rat::rat(n, 2)
}
