use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{conic_form, conic_parametrize, r1_coeffs, s1_contains, second_quadric_form, R1Coeffs, C1E1};
use crate::arith::{Rat, RatFunc, UniPoly};
use crate::ec::serial::{poly_from_json, poly_json, rat_json, ratfunc_json};
use crate::ec::{ExactField, Point, Recipe};
use crate::transforms::{cubic_to_weierstrass, CubicModel};
use crate::witness::APWitness;

/// Canonical representative of a projective tuple.
pub trait Normalize: ExactField {
    fn normalize_tuple(v: &[Self]) -> Vec<Self>;
}

fn int_content_scale(coeffs: &[Rat]) -> Rat {
    let l = crate::arith::rat::lcm_of_denoms(coeffs.iter());
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(&(c * Rat::from_integer(l.clone())).to_integer()));
    if g.is_zero() {
        Rat::one()
    } else {
        Rat::new(l, g)
    }
}

/// Coprime integers, first nonzero entry positive.
impl Normalize for Rat {
    fn normalize_tuple(v: &[Self]) -> Vec<Self> {
        let mut scale = int_content_scale(v);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            scale = -scale;
        }
        v.iter().map(|x| x * &scale).collect()
    }
}

/// Polynomials with no common factor and coprime integer coefficients overall, first nonzero entry with positive leading coefficient.
impl Normalize for RatFunc {
    fn normalize_tuple(v: &[Self]) -> Vec<Self> {
        let l = v.iter().fold(UniPoly::one(), |l, f| {
            let g = l.gcd(f.den());
            &l * &f.den().divrem(&g).0
        });
        let polys: Vec<UniPoly> = v.iter().map(|f| (&RatFunc::from_poly(l.clone()) * f).num().clone()).collect();
        let g = polys.iter().fold(UniPoly::zero(), |g, p| if p.is_zero() { g } else if g.is_zero() { p.monic() } else { g.gcd(p) });
        let polys: Vec<UniPoly> = if g.is_zero() { polys } else { polys.iter().map(|p| p.divrem(&g).0).collect() };
        let all: Vec<Rat> = polys.iter().flat_map(|p| p.coeffs().to_vec()).collect();
        let mut scale = int_content_scale(&all);
        if polys.iter().find(|p| !p.is_zero()).is_some_and(|p| p.leading().is_negative()) {
            scale = -scale;
        }
        polys.iter().map(|p| RatFunc::from_poly(p.scale(&scale))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("recipe {0} evaluates to the identity")]
    Identity(String),
    #[error("recipe point is exceptional for the quartic map: {0}")]
    Exceptional(String),
    #[error("degenerate quadruple: leading coefficient a = 0")]
    DegenerateQuadruple,
    #[error("degenerate curve: k = 0")]
    ZeroK,
    #[error("internal identity failed: {0}")]
    Internal(&'static str),
}

/// Four points in progression on y^2 = x^3 + k over F, with the data that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Ap4PolyWitness<F> {
    pub recipe: Recipe,
    pub t: F,
    /// Point on the quartic C1.
    pub vs: (F, F),
    pub quadruple: [F; 4],
    pub coeffs: R1Coeffs<F>,
    pub k: F,
    pub points: [(F, F); 4],
    pub step: F,
}

impl<F: ExactField> Ap4PolyWitness<F> {
    /// Re-checks every identity exactly.
    pub fn verify(&self) -> Result<(), &'static str> {
        if !s1_contains(&self.quadruple) {
            return Err("quadruple off the surface");
        }
        if !self.coeffs.interpolates(&self.quadruple) {
            return Err("cubic does not interpolate the squares");
        }
        if self.k.is_zero_el() {
            return Err("k = 0");
        }
        for (i, (x, y)) in self.points.iter().enumerate() {
            if y.square() != x.square().mul(x).add(&self.k) {
                return Err("point off the curve");
            }
            if i > 0 && x.sub(&self.points[i - 1].0) != self.step {
                return Err("x-coordinates not in progression");
            }
        }
        Ok(())
    }
}

/// Group word on E1, through C1 and the two quadrics, to a progression on a pure cubic twist.
pub fn ap4_pipeline<F: Normalize>(fib: &C1E1<F>, recipe: &Recipe) -> Result<Ap4PolyWitness<F>, PipelineError> {
    let pt = recipe.apply(fib.curve(), &fib.p, &fib.torsion);
    if pt.is_infinity() {
        return Err(PipelineError::Identity(recipe.to_string()));
    }
    let (v, s) = fib.maps.backward(&pt).map_err(|e| PipelineError::Exceptional(e.to_string()))?;
    let t = &fib.t;
    let [p, q, r] = conic_parametrize(t, &F::one_el(), &v);
    if !conic_form(t, &p, &q, &r).is_zero_el() {
        return Err(PipelineError::Internal("first quadric"));
    }
    if !second_quadric_form(t, &p, &q, &s).is_zero_el() {
        return Err(PipelineError::Internal("second quadric"));
    }
    let quad: [F; 4] = F::normalize_tuple(&[p, q, r, s.clone()]).try_into().expect("four entries");
    if !s1_contains(&quad) {
        return Err(PipelineError::Internal("surface"));
    }
    let coeffs = r1_coeffs(&quad);
    if coeffs.a.is_zero_el() {
        return Err(PipelineError::DegenerateQuadruple);
    }
    let red = cubic_to_weierstrass(&CubicModel { a: coeffs.a.clone(), b: coeffs.b.clone(), c: coeffs.c.clone(), d: coeffs.d.clone() })
        .map_err(|_| PipelineError::DegenerateQuadruple)?;
    if !red.curve.a.is_zero_el() {
        return Err(PipelineError::Internal("3ac = b^2"));
    }
    let k = red.curve.b.clone();
    if k.is_zero_el() {
        return Err(PipelineError::ZeroK);
    }
    let points: [(F, F); 4] = std::array::from_fn(|i| match red.map(&F::from_i64(i as i64), &quad[i]) {
        Point::Affine(x, y) => (x, y),
        Point::Infinity => unreachable!(),
    });
    let w = Ap4PolyWitness { recipe: *recipe, t: t.clone(), vs: (v, s), step: red.sx.clone(), quadruple: quad, coeffs, k, points };
    w.verify().map_err(PipelineError::Internal)?;
    Ok(w)
}

/// Evaluates a symbolic witness at t = t0; `None` at a pole.
pub fn specialize_witness(w: &Ap4PolyWitness<RatFunc>, t0: &Rat) -> Option<Ap4PolyWitness<Rat>> {
    let e = |f: &RatFunc| f.eval(t0);
    let quadruple = [e(&w.quadruple[0])?, e(&w.quadruple[1])?, e(&w.quadruple[2])?, e(&w.quadruple[3])?];
    let points = [
        (e(&w.points[0].0)?, e(&w.points[0].1)?),
        (e(&w.points[1].0)?, e(&w.points[1].1)?),
        (e(&w.points[2].0)?, e(&w.points[2].1)?),
        (e(&w.points[3].0)?, e(&w.points[3].1)?),
    ];
    Some(Ap4PolyWitness {
        recipe: w.recipe,
        t: t0.clone(),
        vs: (e(&w.vs.0)?, e(&w.vs.1)?),
        coeffs: R1Coeffs { a: e(&w.coeffs.a)?, b: e(&w.coeffs.b)?, c: e(&w.coeffs.c)?, d: e(&w.coeffs.d)? },
        k: e(&w.k)?,
        step: e(&w.step)?,
        quadruple,
        points,
    })
}

impl Ap4PolyWitness<Rat> {
    pub fn to_ap_witness(&self) -> APWitness {
        APWitness::new(3, self.k.clone(), self.points.to_vec(), Rat::one(), self.recipe.to_string()).expect("verified witness")
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.to_ap_witness().to_json();
        v["t"] = rat_json(&self.t);
        v["quadruple"] = Value::Array(self.quadruple.iter().map(rat_json).collect());
        v
    }
}

impl Ap4PolyWitness<RatFunc> {
    /// Polynomial coefficient arrays, lowest degree first.
    pub fn to_json(&self) -> Value {
        let pj = |f: &RatFunc| if f.is_polynomial() { poly_json(&f.num().scale(&(Rat::one() / f.den().leading()))) } else { ratfunc_json(f) };
        json!({
            "t": "t",
            "n": 3,
            "recipe": self.recipe.to_string(),
            "quadruple": self.quadruple.iter().map(pj).collect::<Vec<_>>(),
            "k": pj(&self.k),
            "points": self.points.iter().map(|(x, y)| json!([pj(x), pj(y)])).collect::<Vec<_>>(),
            "step": pj(&self.step),
        })
    }
}

/// Re-verifies a polynomial witness from its JSON alone.
pub fn verify_poly_witness_json(v: &Value) -> Result<(), String> {
    let poly = |x: &Value, what: &str| poly_from_json(x).ok_or_else(|| format!("bad polynomial for {what}"));
    let k = poly(&v["k"], "k")?;
    let step = poly(&v["step"], "step")?;
    let pts = v["points"].as_array().ok_or("points")?;
    if k.is_zero() {
        return Err("k = 0".into());
    }
    if pts.len() != 4 {
        return Err("need four points".into());
    }
    let mut prev: Option<UniPoly> = None;
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = (poly(&p[0], "x")?, poly(&p[1], "y")?);
        if &(&y * &y) - &(&(&(&x * &x) * &x) + &k) != UniPoly::zero() {
            return Err(format!("point {i} off the curve"));
        }
        if let Some(px) = prev {
            if &x - &px != step {
                return Err(format!("point {i} breaks the progression"));
            }
        }
        prev = Some(x);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::family_cubic::{c1_e1, c1_e1_generic};
    use proptest::prelude::*;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn literal_sum_is_degenerate() {
        let f = c1_e1(&int(1)).unwrap();
        let r: Recipe = "P+T1".parse().unwrap();
        assert_eq!(ap4_pipeline(&f, &r).unwrap_err(), PipelineError::DegenerateQuadruple);
        let pt = r.apply(f.curve(), &f.p, &f.torsion);
        let (v, s) = f.maps.backward(&pt).unwrap();
        assert_eq!((v, s), (int(1), int(7)));
    }

    #[test]
    fn numeric_pipeline_at_one() {
        let f = c1_e1(&int(1)).unwrap();
        let w = ap4_pipeline(&f, &"-(P+T1)".parse().unwrap()).unwrap();
        assert_eq!(w.vs, (rat(22, 15), rat(-12929, 225)));
        assert_eq!(w.quadruple.to_vec(), vec![int(43), int(-617), int(1187), int(1847)]);
        assert_eq!(w.step, &w.coeffs.a * int(9));
        let aw = w.to_ap_witness();
        assert_eq!(APWitness::from_json(&w.to_json()).unwrap(), aw);
    }

    #[test]
    fn symbolic_pipeline_matches_corrected_closed_forms() {
        let g = c1_e1_generic();
        let w = ap4_pipeline(&g, &"-(P+T1)".parse().unwrap()).unwrap();
        let p_t = &(&up(&[3, 2]) * &up(&[10, 9, 3])) * &up(&[17, 18, 6]);
        let p_t = p_t.scale(&int(108));
        let q = [
            up(&[-73, -72, 30, 54, 18]),
            up(&[107, 210, 192, 90, 18]),
            up(&[233, 456, 354, 126, 18]),
            up(&[413, 738, 516, 162, 18]),
        ];
        // projectively equal to the printed polynomial quadruple up to coordinate signs
        for (i, qi) in q.iter().enumerate() {
            let got = w.quadruple[i].num();
            assert!(got == qi || *got == -qi, "coordinate {i}: {got}");
        }
        let u = up(&[0, 3, 1]);
        let h = up(&[-5329, -3504, 300, 612, 108]).compose(&u);
        let k = (&(&p_t * &p_t) * &h).scale(&int(-9));
        assert_eq!(w.k, RatFunc::from_poly(k));
        for (i, (x, _)) in w.points.iter().enumerate() {
            assert_eq!(*x, RatFunc::from_poly(&up(&[i as i64, 1]) * &p_t));
        }
        assert!(verify_poly_witness_json(&w.to_json()).is_ok());
        let mut bad = w.to_json();
        bad["k"][0] = json!("1");
        assert!(verify_poly_witness_json(&bad).is_err());

        let at1 = specialize_witness(&w, &int(1)).unwrap();
        at1.verify().unwrap();
        assert_eq!(at1.k, int(-111610206808689600));
        let target = [-301i64, 4319, -8309, -12929].map(int);
        let ratio = &at1.quadruple[0] / &target[0];
        assert!(at1.quadruple.iter().zip(&target).all(|(a, b)| *a == b * &ratio));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn specializations_keep_identities(num in -40i64..40, den in 1i64..9) {
            let t0 = rat(num, den);
            let g = c1_e1_generic();
            let w = ap4_pipeline(&g, &"-(P+T1)".parse().unwrap()).unwrap();
            if let Some(s) = specialize_witness(&w, &t0) {
                if !s.k.is_zero() {
                    prop_assert!(s.verify().is_ok());
                    prop_assert_eq!(s.step.clone(), &s.coeffs.a * int(9));
                }
            }
        }
    }
}
