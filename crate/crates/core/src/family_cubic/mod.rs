//! Four-term progressions on y^2 = x^3 + k from rational points on a Kummer quartic surface.

mod errata;
mod pipeline;
mod squares;

pub use errata::errata_report;
pub use pipeline::{ap4_pipeline, specialize_witness, verify_poly_witness_json, Ap4PolyWitness, Normalize, PipelineError};
pub use squares::{genus3_square_search, octic_cross_check, OcticCheck, SquareHit, SquareSearch, OCTICS};

use crate::arith::{MultiPoly, Rat, RatFunc};
use crate::ec::field::eval_int_poly as pe;
use crate::ec::{Curve, ExactField, Point};
use crate::transforms::fibrations::{c1_maps, c1_maps_at};
use crate::transforms::BirMapPair;

/// a x^3 + b x^2 + c x + d taking the values p^2, q^2, r^2, s^2 at x = 0, 1, 2, 3.
#[derive(Clone, Debug, PartialEq)]
pub struct R1Coeffs<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: ExactField> R1Coeffs<F> {
    pub fn eval(&self, x: &F) -> F {
        self.a.mul(x).add(&self.b).mul(x).add(&self.c).mul(x).add(&self.d)
    }

    /// f(i) = quad[i]^2 for i = 0..3.
    pub fn interpolates(&self, quad: &[F; 4]) -> bool {
        quad.iter().enumerate().all(|(i, v)| self.eval(&F::from_i64(i as i64)) == v.square())
    }
}

fn sixth<F: ExactField>(x: F) -> F {
    x.div(&F::from_i64(6))
}

pub fn r1_coeffs<F: ExactField>(quad: &[F; 4]) -> R1Coeffs<F> {
    let [p2, q2, r2, s2] = [quad[0].square(), quad[1].square(), quad[2].square(), quad[3].square()];
    let lin = |cp: i64, cq: i64, cr: i64, cs: i64| p2.scale_i(cp).add(&q2.scale_i(cq)).add(&r2.scale_i(cr)).add(&s2.scale_i(cs));
    let c = R1Coeffs {
        a: sixth(lin(-1, 3, -3, 1)),
        b: lin(2, -5, 4, -1).div(&F::from_i64(2)),
        c: sixth(lin(-11, 18, -9, 2)),
        d: p2.clone(),
    };
    debug_assert!(c.interpolates(quad));
    c
}

/// (p^2-3q^2+3r^2-s^2)(11p^2-18q^2+9r^2-2s^2) - 3(2p^2-5q^2+4r^2-s^2)^2; equals 12(3ac - b^2).
pub fn s1_form<F: ExactField>(quad: &[F; 4]) -> F {
    let [p2, q2, r2, s2] = [quad[0].square(), quad[1].square(), quad[2].square(), quad[3].square()];
    let lin = |cp: i64, cq: i64, cr: i64, cs: i64| p2.scale_i(cp).add(&q2.scale_i(cq)).add(&r2.scale_i(cr)).add(&s2.scale_i(cs));
    lin(1, -3, 3, -1).mul(&lin(11, -18, 9, -2)).sub(&lin(2, -5, 4, -1).square().scale_i(3))
}

pub fn s1_contains<F: ExactField>(quad: &[F; 4]) -> bool {
    s1_form(quad).is_zero_el()
}

pub fn s1_polynomial() -> MultiPoly {
    let vars = ["p", "q", "r", "s"];
    let v = MultiPoly::vars_of(&vars);
    s1_form(&[v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

/// The sixteen points (+-1, +-1, +-1, +-1).
pub fn s1_singular_points() -> Vec<[i64; 4]> {
    (0..16).map(|m| std::array::from_fn(|i| if m >> i & 1 == 1 { -1 } else { 1 })).collect()
}

pub fn s1_gradient(point: &[Rat; 4]) -> [Rat; 4] {
    let f = s1_polynomial();
    std::array::from_fn(|i| f.partial(i).eval(point))
}

/// alpha, beta, gamma, delta, epsilon of the two quadrics at parameter t.
pub fn quadric_coeffs<F: ExactField>(t: &F) -> [F; 5] {
    [pe(t, &[1, 3, 3]), pe(t, &[7, 9, 3]), pe(t, &[4, 6, 3]), pe(t, &[13, 12, 3]), pe(t, &[3, 3, 1])]
}

/// alpha r^2 + beta p^2 - 2 gamma q^2.
pub fn conic_form<F: ExactField>(t: &F, p: &F, q: &F, r: &F) -> F {
    let [al, be, ga, _, _] = quadric_coeffs(t);
    al.mul(&r.square()).add(&be.mul(&p.square())).sub(&ga.mul(&q.square()).scale_i(2))
}

/// alpha s^2 + 2 delta p^2 - 9 epsilon q^2.
pub fn second_quadric_form<F: ExactField>(t: &F, p: &F, q: &F, s: &F) -> F {
    let [al, _, _, de, ep] = quadric_coeffs(t);
    al.mul(&s.square()).add(&de.mul(&p.square()).scale_i(2)).sub(&ep.mul(&q.square()).scale_i(9))
}

/// Lines through the base point (1, 1, 1) of the first quadric, derived from (p, q, r) = (u + r, v + r, r).
pub fn conic_parametrize<F: ExactField>(t: &F, u: &F, v: &F) -> [F; 3] {
    let [_, be, ga, _, _] = quadric_coeffs(t);
    let (u2, uv, v2) = (u.square(), u.mul(v), v.square());
    let bu2 = be.mul(&u2);
    let gv2 = ga.mul(&v2).scale_i(2);
    [
        bu2.sub(&ga.mul(&uv).scale_i(4)).add(&gv2),
        bu2.sub(&be.mul(&uv).scale_i(2)).add(&gv2),
        bu2.sub(&gv2),
    ]
}

/// The published parametrization, whose r-line carries 2(3t^2 + 9t + 4).
pub fn printed_conic_parametrize<F: ExactField>(t: &F, u: &F, v: &F) -> [F; 3] {
    let mut out = conic_parametrize(t, u, v);
    let [_, be, _, _, _] = quadric_coeffs(t);
    out[2] = be.mul(&u.square()).sub(&pe(t, &[4, 9, 3]).mul(&v.square()).scale_i(2));
    out
}

/// The six quadratics whose roots give the singular fibres.
pub const BAD_QUADRATICS: [(&str, [i64; 3]); 6] = [
    ("t^2+3t+3", [3, 3, 1]),
    ("3t^2+3t+1", [1, 3, 3]),
    ("3t^2+6t+4", [4, 6, 3]),
    ("3t^2+9t+7", [7, 9, 3]),
    ("3t^2+12t+13", [13, 12, 3]),
    ("3t^2+15t+19", [19, 15, 3]),
];

/// The quartic C1, its Weierstrass model E1 and the distinguished points.
#[derive(Clone, Debug)]
pub struct C1E1<F> {
    pub t: F,
    pub maps: BirMapPair<F>,
    pub p: Point<F>,
    /// T1, T2, T3 as printed: x = 6(9U^2+60U+85), 3(45U^2+192U+227), -3(63U^2+312U+397).
    pub torsion: [Point<F>; 3],
}

impl<F: ExactField> C1E1<F> {
    fn build(t: F, maps: BirMapPair<F>) -> Self {
        let u = t.mul(&t.add(&F::from_i64(3)));
        let tx = |c: i64, cs: &[i64]| Point::Affine(pe(&u, cs).scale_i(c), F::zero_el());
        let torsion = [tx(6, &[85, 60, 9]), tx(3, &[227, 192, 45]), tx(-3, &[397, 312, 63])];
        let [_, be, ga, _, _] = quadric_coeffs(&t);
        let p = Point::Affine(
            pe(&t, &[229, 468, 357, 108, 9]).scale_i(-3),
            ga.mul(&be).mul(&pe(&t, &[19, 15, 3])).scale_i(54),
        );
        C1E1 { t, maps, p, torsion }
    }

    pub fn curve(&self) -> &Curve<F> {
        &self.maps.curve
    }
}

/// Symbolic C1 and E1 over Q(t).
pub fn c1_e1_generic() -> C1E1<RatFunc> {
    C1E1::build(RatFunc::t(), c1_maps())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("bad fibre at t = {t}: {quadratic} vanishes")]
pub struct BadFibre {
    pub t: String,
    pub quadratic: &'static str,
}

/// C1 and E1 at a rational t.
pub fn c1_e1(t: &Rat) -> Result<C1E1<Rat>, BadFibre> {
    for (name, cs) in BAD_QUADRATICS {
        if pe(t, &cs) == Rat::from_integer(0.into()) {
            return Err(BadFibre { t: t.to_string(), quadratic: name });
        }
    }
    let maps = c1_maps_at(t).map_err(|_| BadFibre { t: t.to_string(), quadratic: "discriminant" })?;
    Ok(C1E1::build(t.clone(), maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use crate::arith::UniPoly;
    use proptest::prelude::*;

    fn ints(q: [i64; 4]) -> [Rat; 4] {
        q.map(int)
    }

    #[test]
    fn r1_examples() {
        let c = r1_coeffs(&ints([1, 1, 1, 1]));
        assert_eq!((c.a, c.b, c.c, c.d), (int(0), int(0), int(0), int(1)));
        let c = r1_coeffs(&ints([-301, 4319, -8309, -12929]));
        assert_eq!((c.a.clone(), c.b.clone(), c.c.clone(), c.d.clone()), (int(2651880), int(7955640), int(7955640), int(90601)));
        assert_eq!(&c.a * &c.c * int(3), &c.b * &c.b);
    }

    #[test]
    fn r1_symbolic_interpolation() {
        let vars = ["p", "q", "r", "s"];
        let v = MultiPoly::vars_of(&vars);
        let quad = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()];
        let c = r1_coeffs(&quad);
        for (i, x) in quad.iter().enumerate() {
            assert!(c.eval(&MultiPoly::constant(&vars, int(i as i64))).sub(&x.square()).is_zero());
        }
        // 12(3ac - b^2) is the surface form
        let lhs = c.a.mul(&c.c).scale_i(3).sub(&c.b.square()).scale_i(12);
        assert_eq!(lhs, s1_form(&quad));
    }

    #[test]
    fn surface_membership() {
        assert!(s1_contains(&ints([1, -1, 1, -1])));
        assert!(s1_contains(&ints([-301, 4319, -8309, -12929])));
        // even in every coordinate: the sign variant is also on the surface
        assert!(s1_contains(&ints([-43, 617, 1187, 1847])));
        assert!(!s1_contains(&ints([1, 2, 3, 4])));
    }

    #[test]
    fn sixteen_singular_points() {
        let pts = s1_singular_points();
        assert_eq!(pts.len(), 16);
        for p in pts {
            let p = p.map(int);
            assert!(s1_contains(&p));
            assert!(s1_gradient(&p).iter().all(|g| *g == int(0)));
        }
        assert!(s1_gradient(&ints([-301, 4319, -8309, -12929])).iter().any(|g| *g != int(0)));
    }

    #[test]
    fn conic_identity_symbolic() {
        let vars = ["t", "u", "v"];
        let x = MultiPoly::vars_of(&vars);
        let [p, q, r] = conic_parametrize(&x[0], &x[1], &x[2]);
        assert!(conic_form(&x[0], &p, &q, &r).is_zero());
        let [p, q, r] = printed_conic_parametrize(&x[0], &x[1], &x[2]);
        assert!(!conic_form(&x[0], &p, &q, &r).is_zero());
    }

    #[test]
    fn conic_examples() {
        let [p, q, r] = conic_parametrize(&int(1), &int(1), &int(0));
        assert_eq!((p.clone(), q, r), (p.clone(), p.clone(), p));
        let [p, q, r] = conic_parametrize(&int(1), &int(1), &rat(22, 15));
        let scaled: Vec<Rat> = [p, q, r].iter().map(|x| x * int(225)).collect();
        assert_eq!(scaled, vec![int(-301), int(4319), int(-8309)]);
    }

    #[test]
    fn second_quadric_gives_c1() {
        // with u = 1, (2 delta P^2 - 9 eps Q^2)/(-alpha) is the C1 quartic
        let t = RatFunc::t();
        let v = RatFunc::from_poly(UniPoly::x());
        let _ = v;
        let vars = ["t", "v"];
        let x = MultiPoly::vars_of(&vars);
        let one = MultiPoly::constant(&vars, int(1));
        let [p, q, _] = conic_parametrize(&x[0], &one, &x[1]);
        let [al, _, _, de, ep] = quadric_coeffs(&x[0]);
        let rhs = ep.mul(&q.square()).scale_i(9).sub(&de.mul(&p.square()).scale_i(2));
        let qm = c1_e1_generic().maps.quartic().clone();
        let mut c1 = MultiPoly::zero(&vars);
        for (i, c) in qm.c.iter().enumerate() {
            assert!(c.is_polynomial());
            c1 = c1.add(&MultiPoly::from_upoly(&vars, 0, c.num()).mul(&x[1].pow(i as u32)));
        }
        assert_eq!(al.mul(&c1), rhs);
        let _ = t;
    }

    #[test]
    fn specialization_at_one() {
        let f = c1_e1(&int(1)).unwrap();
        assert_eq!((f.curve().a.clone(), f.curve().b.clone()), (int(-48867651), int(115230640770)));
        assert_eq!(f.p, Point::Affine(int(-3513), int(493506)));
        assert!(f.curve().on_curve(&f.p));
        let xs: Vec<Rat> = f.torsion.iter().map(|p| p.x().unwrap().clone()).collect();
        assert_eq!(xs, vec![int(2814), int(5145), int(-7959)]);
        assert_eq!(xs.iter().sum::<Rat>(), int(0));
        assert_eq!(
            f.curve().mul(3, &f.p),
            Point::Affine(rat(3953140143, 1408969), rat(24183154596042, 1672446203))
        );
    }

    #[test]
    fn generic_points_on_curve() {
        let g = c1_e1_generic();
        assert!(g.curve().on_curve(&g.p));
        for t in &g.torsion {
            assert!(g.curve().on_curve(t));
            assert!(g.curve().double(t).is_infinity());
        }
        assert_eq!(g.curve().add(&g.torsion[0], &g.torsion[1]), g.torsion[2]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn addition_commutes_with_specialization(num in -30i64..30, den in 1i64..8) {
            let t0 = rat(num, den);
            let g = c1_e1_generic();
            let s = c1_e1(&t0).unwrap();
            let generic_sum = g.curve().add(&g.p, &g.torsion[0]);
            let special_sum = s.curve().add(&s.p, &s.torsion[0]);
            prop_assert_eq!(Curve::specialize_point(&generic_sum, &t0), Some(special_sum));
        }

        #[test]
        fn r1_interpolates_random(p in -50i64..50, q in -50i64..50, r in -50i64..50, s in -50i64..50) {
            let quad = ints([p, q, r, s]);
            let c = r1_coeffs(&quad);
            prop_assert!(c.interpolates(&quad));
            let tri = (&c.a * &c.c * int(3) - &c.b * &c.b) * int(12);
            prop_assert_eq!(tri, s1_form(&quad));
        }
    }
}
