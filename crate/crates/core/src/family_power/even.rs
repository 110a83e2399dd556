use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{denominator_lcm, minimal_scale, FamilyError};
use crate::arith::rat::{big, int, rat_pow};
use crate::arith::Rat;
use crate::ec::serial::{curve_json, point_json, rat_json};
use crate::ec::{certify_order, Curve, ExactField, OrderCertificate, Point, Recipe};
use crate::transforms::fibrations::even_maps;
use crate::transforms::BirMapPair;
use crate::witness::APWitness;

/// (u, v) = (3^n, 5^n).
fn consts(n: u32) -> (Rat, Rat) {
    (big(BigInt::from(3u32).pow(n)), big(BigInt::from(5u32).pow(n)))
}

/// (a, b, c) of y^2 = x^(2n) + a x^2 + b x + c through (1, p), (3, q), (5, r); u = 3^n, v = 5^n.
pub fn even_coeffs<F: ExactField>(u: &F, v: &F, pqr: &[F; 3]) -> [F; 3] {
    let [p2, q2, r2] = [pqr[0].square(), pqr[1].square(), pqr[2].square()];
    let (u2, v2) = (u.square(), v.square());
    let one = F::one_el();
    let a = p2.sub(&q2.scale_i(2)).add(&r2).sub(&v2).add(&u2.scale_i(2)).sub(&one).div(&F::from_i64(8));
    let b = p2.scale_i(-2).add(&q2.scale_i(3)).sub(&r2).add(&v2).sub(&u2.scale_i(3)).add(&F::from_i64(2)).div(&F::from_i64(2));
    let c = p2.scale_i(15).sub(&q2.scale_i(10)).add(&r2.scale_i(3)).sub(&v2.scale_i(3)).add(&u2.scale_i(10)).sub(&F::from_i64(15)).div(&F::from_i64(8));
    [a, b, c]
}

/// Rational solutions of q^2 = p^2 + u^2 - 1, u = 3^n; `None` at t = ±1.
pub fn even_parametrize<F: ExactField>(u: &F, t: &F) -> Option<(F, F)> {
    let d = t.square().sub(&F::one_el());
    if d.is_zero_el() {
        return None;
    }
    let p = t.square().sub(&u.mul(t).scale_i(2)).add(&F::one_el()).div(&d);
    let q = u.mul(&t.square()).sub(&t.scale_i(2)).add(u).div(&d).neg();
    Some((p, q))
}

#[derive(Clone, Debug)]
pub struct EvenFamilyInstance {
    pub n: u32,
    pub maps: BirMapPair<Rat>,
    /// Computed roots, ordered as T1, T2, T3 with T3 = (3(1 - 2u^2 + v^2), 0).
    pub torsion: [Point<Rat>; 3],
    pub p: Point<Rat>,
    pub certificate: OrderCertificate,
    pub two_p_non_integral: bool,
}

impl EvenFamilyInstance {
    pub fn curve(&self) -> &Curve<Rat> {
        &self.maps.curve
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "curve": curve_json(self.curve()),
            "torsion": self.torsion.iter().map(point_json).collect::<Vec<_>>(),
            "P": point_json(&self.p),
            "certificate": self.certificate.to_json(),
            "two_p_non_integral": self.two_p_non_integral,
        })
    }
}

/// The three torsion x-values as polynomials in u^2 and v^2.
pub(crate) fn torsion_xs<F: ExactField>(u: &F, v: &F) -> [F; 3] {
    let (u2, v2, one) = (u.square(), v.square(), F::one_el());
    [
        one.add(&u2).sub(&v2.scale_i(2)).scale_i(3),
        u2.add(&v2).sub(&F::from_i64(2)).scale_i(3),
        one.sub(&u2.scale_i(2)).add(&v2).scale_i(3),
    ]
}

pub fn even_instance(n: u32) -> Result<EvenFamilyInstance, FamilyError> {
    let maps = even_maps(n).map_err(|_| FamilyError::BadN(n))?;
    let c = &maps.curve;
    let (u, v) = consts(n);
    let xs = torsion_xs(&u, &v);
    let mut found: Vec<Rat> = c.two_torsion().iter().filter_map(|p| p.x().cloned()).collect();
    let mut expect = xs.to_vec();
    found.sort();
    expect.sort();
    if found != expect {
        return Err(FamilyError::Internal("torsion differs from two_torsion"));
    }
    let torsion = xs.map(|x| Point::Affine(x, int(0)));
    let p = Point::Affine((&u * &u + &v * &v + int(1)) * int(3), &u * &v * int(-27));
    if !c.on_curve(&p) {
        return Err(FamilyError::Internal("P off the curve"));
    }
    let certificate = certify_order(c, &p);
    let two_p_non_integral = c.double(&p).x().is_some_and(|x| !x.is_integer());
    Ok(EvenFamilyInstance { n, maps, torsion, p, certificate, two_p_non_integral })
}

#[derive(Clone, Debug)]
pub struct EvenWitness {
    pub recipe: Recipe,
    pub ts: (Rat, Rat),
    pub pqr: [Rat; 3],
    pub c: Rat,
    pub witness: APWitness,
    /// False when factoring ran out of budget and the scale may not be minimal.
    pub scale_minimal: bool,
}

impl EvenWitness {
    pub fn to_json(&self) -> Value {
        let mut v = self.witness.to_json();
        v["family"] = json!("even");
        v["scale_minimal"] = json!(self.scale_minimal);
        v["t"] = rat_json(&self.ts.0);
        v["s"] = rat_json(&self.ts.1);
        v["pqr"] = Value::Array(self.pqr.iter().map(rat_json).collect());
        v
    }
}

/// Group word on the even curve to six points x = -5m, ..., 5m on y^2 = x^(2n) + k.
pub fn even_witness(inst: &EvenFamilyInstance, recipe: &Recipe) -> Result<EvenWitness, FamilyError> {
    let n = inst.n;
    let pt = recipe.apply(inst.curve(), &inst.p, &inst.torsion);
    if pt.is_infinity() {
        return Err(FamilyError::Identity(recipe.to_string()));
    }
    let (t, s) = inst.maps.backward(&pt).map_err(|e| FamilyError::Exceptional(e.to_string()))?;
    let (u, v) = consts(n);
    let (p, q) = even_parametrize(&u, &t).ok_or(FamilyError::Degenerate("t = ±1"))?;
    let r = &s / (&t * &t - int(1));
    let pqr = [p.clone(), q.clone(), r.clone()];
    let [a, b, c] = even_coeffs(&u, &v, &pqr);
    if !a.is_zero() || !b.is_zero() || c != &p * &p - int(1) {
        return Err(FamilyError::Internal("a = b = 0 fails"));
    }
    if c.is_zero() {
        return Err(FamilyError::Degenerate("c = 0"));
    }
    let base = [(int(1), p.clone()), (int(3), q.clone()), (int(5), r.clone())];
    let scale = minimal_scale(&base, 1, n, false);
    let (mut m, mut scale_minimal) = (scale.value, scale.minimal);
    let scaled = |m: &Rat| -> Vec<(Rat, Rat)> {
        let mn = rat_pow(m, n);
        let mut points: Vec<(Rat, Rat)> = base.iter().rev().map(|(x, y)| (-x * m, y * &mn)).collect();
        points.extend(base.iter().map(|(x, y)| (x * m, y * &mn)));
        points
    };
    let mut points = scaled(&m);
    if points.iter().any(|(x, y)| !x.is_integer() || !y.is_integer()) {
        // a cofactor could not be split: clear what is left with the full denominator
        m = m * Rat::from_integer(denominator_lcm(&points));
        points = scaled(&m);
        scale_minimal = false;
    }
    let k = &c * rat_pow(&m, 2 * n);
    let witness = APWitness::new(2 * n, k, points, m, recipe.to_string()).map_err(|_| FamilyError::Internal("witness"))?;
    if !witness.is_integral() {
        return Err(FamilyError::Internal("scale left a denominator"));
    }
    Ok(EvenWitness { recipe: *recipe, ts: (t, s), pqr, c, witness, scale_minimal })
}

/// The published X(2P) as a function of u and v.
pub(crate) fn printed_two_p_x(n: u32) -> Rat {
    let (u, v) = consts(n);
    let (u2, v2) = (&u * &u, &v * &v);
    let num = int(3) * (int(3) * &u2 * &u2 - int(2) * (&u2 + int(1)) * &u2 * &v2 + (int(3) - int(2) * &u2 + int(3) * &u2 * &u2) * &v2 * &v2);
    num / (int(4) * u2 * v2)
}
