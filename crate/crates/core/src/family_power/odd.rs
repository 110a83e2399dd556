use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{denominator_lcm, minimal_scale, FamilyError};
use crate::arith::rat::{big, int};
use crate::arith::Rat;
use crate::ec::serial::{point_json, rat_json};
use crate::ec::{certify_order, Curve, ExactField, OrderCertificate, Point, Recipe};
use crate::transforms::fibrations::odd_maps;
use crate::transforms::BirMapPair;
use crate::witness::APWitness;

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn two_pow<F: ExactField>(e: u32) -> F {
    (0..e).fold(F::one_el(), |acc, _| acc.scale_i(2))
}

/// (a, b, c, d) of y^2 = a x^(2n+1) + b x^2 + c x + d through (-1, p), (0, q), (1, r), (2, s).
pub fn odd_coeffs<F: ExactField>(n: u32, quad: &[F; 4]) -> [F; 4] {
    let [p2, q2, r2, s2] = [quad[0].square(), quad[1].square(), quad[2].square(), quad[3].square()];
    let den = two_pow::<F>(2 * n + 1).sub(&F::from_i64(2));
    let a = p2.neg().add(&q2.scale_i(3)).sub(&r2.scale_i(3)).add(&s2).div(&den);
    let b = p2.sub(&q2.scale_i(2)).add(&r2).div(&F::from_i64(2));
    let c = c_numerator(n, quad).div(&den);
    [a, b, c, q2]
}

/// -(2^(2n) - 2) p^2 - 3q^2 + (2^(2n) + 2) r^2 - s^2.
fn c_numerator<F: ExactField>(n: u32, quad: &[F; 4]) -> F {
    let t = two_pow::<F>(2 * n);
    let two = F::from_i64(2);
    t.sub(&two).mul(&quad[0].square()).neg().sub(&quad[1].square().scale_i(3)).add(&t.add(&two).mul(&quad[2].square())).sub(&quad[3].square())
}

/// Solutions of p^2 - 2q^2 + r^2 = 0.
pub fn odd_parametrize<F: ExactField>(u: &F, v: &F) -> [F; 3] {
    let (u2, uv, v2) = (u.square(), u.mul(v), v.square());
    [u2.scale_i(2).sub(&uv.scale_i(4)).add(&v2), u2.scale_i(2).sub(&uv.scale_i(2)).add(&v2), v2.sub(&u2.scale_i(2))]
}

#[derive(Clone, Debug)]
pub struct OddFamilyInstance {
    pub n: u32,
    pub maps: BirMapPair<Rat>,
    pub torsion: [Point<Rat>; 3],
    pub p: Point<Rat>,
    pub certificate: OrderCertificate,
    /// 4P has non-integral x.
    pub four_p_non_integral: bool,
}

impl OddFamilyInstance {
    pub fn curve(&self) -> &Curve<Rat> {
        &self.maps.curve
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "curve": crate::ec::serial::curve_json(self.curve()),
            "torsion": self.torsion.iter().map(point_json).collect::<Vec<_>>(),
            "P": point_json(&self.p),
            "certificate": self.certificate.to_json(),
            "four_p_non_integral": self.four_p_non_integral,
        })
    }
}

pub fn odd_instance(n: u32) -> Result<OddFamilyInstance, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadN(n));
    }
    let maps = odd_maps(n).map_err(|_| FamilyError::BadN(n))?;
    let c = &maps.curve;
    let t = pow2(2 * n + 1);
    let torsion = [
        Point::Affine(int(6), int(0)),
        Point::Affine(big((&t * 3u32) - 1u32) * int(3), int(0)),
        Point::Affine(big((&t * 3u32) + 1u32) * int(-3), int(0)),
    ];
    let mut found = c.two_torsion();
    let mut printed = torsion.to_vec();
    let key = |p: &Point<Rat>| p.x().cloned();
    found.sort_by_key(key);
    printed.sort_by_key(key);
    if found != printed {
        return Err(FamilyError::Internal("printed torsion differs from computed"));
    }
    let xs: Vec<&Rat> = torsion.iter().map(|p| p.x().unwrap()).collect();
    if xs.iter().copied().sum::<Rat>() != int(0) || xs.iter().copied().product::<Rat>() != -c.b.clone() {
        return Err(FamilyError::Internal("torsion root relations"));
    }
    let p = Point::Affine(big((&t * 3u32) - 5u32) * int(-3), big(&t - 1u32) * int(54));
    if !c.on_curve(&p) {
        return Err(FamilyError::Internal("P off the curve"));
    }
    let certificate = certify_order(c, &p);
    let four_p_non_integral = c.mul(4, &p).x().is_some_and(|x| !x.is_integer());
    Ok(OddFamilyInstance { n, maps, torsion, p, certificate, four_p_non_integral })
}

#[derive(Clone, Debug)]
pub struct OddWitness {
    pub recipe: Recipe,
    pub vs: (Rat, Rat),
    pub quadruple: [Rat; 4],
    pub a: Rat,
    /// Witness before clearing denominators.
    pub raw: APWitness,
    /// Integral witness after the minimal twist; `scale` holds the twist.
    pub witness: APWitness,
    /// False when factoring ran out of budget and the twist may not be minimal.
    pub scale_minimal: bool,
}

impl OddWitness {
    pub fn to_json(&self) -> Value {
        let mut v = self.witness.to_json();
        v["family"] = json!("odd");
        v["scale_minimal"] = json!(self.scale_minimal);
        v["v"] = rat_json(&self.vs.0);
        v["s"] = rat_json(&self.vs.1);
        v["quadruple"] = Value::Array(self.quadruple.iter().map(rat_json).collect());
        v
    }
}

/// Group word on E°n to a four-term progression on y^2 = x^(2n+1) + k.
pub fn odd_witness(inst: &OddFamilyInstance, recipe: &Recipe) -> Result<OddWitness, FamilyError> {
    let n = inst.n;
    let pt = recipe.apply(inst.curve(), &inst.p, &inst.torsion);
    if pt.is_infinity() {
        return Err(FamilyError::Identity(recipe.to_string()));
    }
    let (v, s) = inst.maps.backward(&pt).map_err(|e| FamilyError::Exceptional(e.to_string()))?;
    let [p, q, r] = odd_parametrize(&int(1), &v);
    let quad = [p, q, r, s.clone()];
    let [a, b, c, d] = odd_coeffs(n, &quad);
    if !b.is_zero() || !c.is_zero() || !c_numerator(n, &quad).is_zero() {
        return Err(FamilyError::Internal("b = c = 0 fails"));
    }
    if a.is_zero() {
        return Err(FamilyError::Degenerate("a = 0"));
    }
    let an = crate::arith::rat::rat_pow(&a, n);
    let k = &d * crate::arith::rat::rat_pow(&a, 2 * n);
    let xs = [-a.clone(), int(0), a.clone(), &a * int(2)];
    let points: Vec<(Rat, Rat)> = xs.into_iter().zip(&quad).map(|(x, y)| (x, y * &an)).collect();
    let e = 2 * n + 1;
    let raw = APWitness::new(e, k, points, Rat::one(), recipe.to_string()).map_err(|_| FamilyError::Internal("raw witness"))?;
    let scale = minimal_scale(&raw.points, 2, e, true);
    let mut witness = raw.twisted(&scale.value);
    let mut scale_minimal = scale.minimal;
    if !witness.is_integral() {
        // a cofactor could not be split: clear what is left with the full denominator
        witness = witness.twisted(&Rat::from_integer(denominator_lcm(&witness.points)));
        scale_minimal = false;
    }
    witness.verify().map_err(|_| FamilyError::Internal("twisted witness"))?;
    Ok(OddWitness { recipe: *recipe, vs: (v, s), quadruple: quad, a, raw, witness, scale_minimal })
}

/// |k| of the published upper bound for exponent 5: 3391541395170708368688169980^4 * 2609^2 * 127165689041^2.
pub const M5_FACTORS: [(&str, u32); 3] = [("3391541395170708368688169980", 4), ("2609", 2), ("127165689041", 2)];

pub fn m5_value() -> BigInt {
    M5_FACTORS.iter().map(|(b, e)| b.parse::<BigInt>().unwrap().pow(*e)).product()
}

#[derive(Clone, Debug)]
pub struct M5Search {
    pub target: BigInt,
    pub found: Option<OddWitness>,
    /// Smallest |k| produced when the target is missed.
    pub nearest: Option<(Recipe, BigInt)>,
    pub recipes_tried: usize,
}

/// Recipes in enumeration order with at most `max_ops` group operations, stopping at the target.
pub fn m5_search(max_ops: u32, max_mult: i64) -> Result<M5Search, FamilyError> {
    let inst = odd_instance(2)?;
    let target = m5_value();
    let mut out = M5Search { target: target.clone(), found: None, nearest: None, recipes_tried: 0 };
    for r in Recipe::enumerate().take_while(|r| r.mult.abs() <= max_mult).filter(|r| r.operations() <= max_ops) {
        out.recipes_tried += 1;
        let Ok(w) = odd_witness(&inst, &r) else { continue };
        let k = w.witness.k.numer().abs();
        if k == target {
            out.found = Some(w);
            break;
        }
        if out.nearest.as_ref().is_none_or(|(_, best)| k < *best) {
            out.nearest = Some((r, k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;
    use crate::arith::MultiPoly;
    use crate::ec::{Evidence, Verdict};

    #[test]
    fn instance_n2() {
        let i = odd_instance(2).unwrap();
        assert_eq!((i.curve().a.clone(), i.curve().b.clone()), (int(-82971), int(497610)));
        let xs: Vec<Rat> = i.torsion.iter().map(|p| p.x().unwrap().clone()).collect();
        assert_eq!(xs, vec![int(6), int(285), int(-291)]);
        assert_eq!(i.p, Point::Affine(int(-273), int(1674)));
        assert_eq!(i.certificate.verdict, Verdict::Infinite);
        assert!(matches!(i.certificate.evidence, Evidence::NonIntegral { m: 3, .. }));
        assert!(i.four_p_non_integral);
        assert!(i.curve().on_curve(&Point::Affine(int(1167), int(6966))) == false);
        assert!(odd_instance(3).unwrap().curve().on_curve(&Point::Affine(int(1167), int(6966))));
        assert!(odd_instance(1).is_err());
    }

    #[test]
    fn marked_point_and_base_point() {
        let i = odd_instance(2).unwrap();
        // (0, -2) corresponds to T3 under the corrected inverse
        let (x, y) = crate::transforms::fibrations::corrected_odd_forward(2, &int(0), &int(-2));
        assert_eq!(Point::Affine(x, y), i.torsion[2]);
        assert_eq!(i.maps.backward(&i.p).unwrap(), (int(0), int(2)));
    }

    #[test]
    fn parametrization() {
        assert_eq!(odd_parametrize(&int(1), &int(0)).to_vec(), vec![int(2), int(2), int(-2)]);
        assert_eq!(odd_parametrize(&int(1), &int(1)).to_vec(), vec![int(-1), int(1), int(-1)]);
        let vars = ["u", "v"];
        let x = MultiPoly::vars_of(&vars);
        let [p, q, r] = odd_parametrize(&x[0], &x[1]);
        assert!((&(&(&p * &p) - &(&(&q * &q) * &MultiPoly::scalar(int(2)))) + &(&r * &r)).is_zero());
    }

    #[test]
    fn coefficient_identities_symbolic() {
        let vars = ["p", "q", "r", "s"];
        let x = MultiPoly::vars_of(&vars);
        let quad = [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()];
        for n in 2..=8u32 {
            let [a, b, c, d] = odd_coeffs(n, &quad);
            let f = |t: i64| {
                let tt = MultiPoly::scalar(int(t));
                a.mul(&(0..2 * n + 1).fold(MultiPoly::scalar(int(1)), |acc, _| acc.mul(&tt))).add(&b.mul(&tt.square())).add(&c.mul(&tt)).add(&d)
            };
            for (i, t) in [-1i64, 0, 1, 2].iter().enumerate() {
                assert!(f(*t).sub(&quad[i].square()).is_zero(), "n = {n}, x = {t}");
            }
        }
    }

    #[test]
    fn witnesses_n2_n3() {
        for n in [2, 3] {
            let inst = odd_instance(n).unwrap();
            assert_eq!(odd_witness(&inst, &Recipe::new(1, 0)).unwrap_err(), FamilyError::Degenerate("a = 0"));
            let w = Recipe::enumerate().take(6).find_map(|r| odd_witness(&inst, &r).ok()).unwrap();
            w.witness.verify().unwrap();
            assert!(w.witness.is_integral());
            assert_eq!(w.witness.n, 2 * n + 1);
            assert_eq!(APWitness::from_json(&w.to_json()).unwrap(), w.witness);
            let two = odd_witness(&inst, &Recipe::new(2, 0)).unwrap();
            two.witness.verify().unwrap();
        }
    }

    #[test]
    fn minus_three_p_reproduces_m5() {
        let inst = odd_instance(2).unwrap();
        let w = odd_witness(&inst, &Recipe::new(-3, 0)).unwrap();
        assert_eq!(w.witness.k.numer().abs(), m5_value());
        assert_eq!(w.witness.scale, rat(545894392970689, 8));
        let s = m5_search(8, 3).unwrap();
        assert!(s.found.is_some());
    }
}
