//! Symbolic identity suites, run as one batch by the command-line front end.

use serde::Serialize;

use crate::arith::rat::int;
use crate::arith::{MultiPoly, Rat, RatFunc};
use crate::ec::{ExactField, Point, Recipe};
use crate::family_cubic::{ap4_pipeline, c1_e1_generic, conic_form, conic_parametrize, r1_coeffs, s1_form};
use crate::family_power::{even_coeffs, even_parametrize, odd_coeffs, odd_parametrize, torsion_xs};
use crate::sextic::{interpolate, printed_bcd, VARS};
use crate::transforms::{cubic_to_weierstrass, CubicModel};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub ok: bool,
}

fn vars(names: &[&str]) -> Vec<MultiPoly> {
    MultiPoly::vars_of(names)
}

fn quad(v: &[MultiPoly]) -> [MultiPoly; 4] {
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

fn r1_and_surface() -> Vec<(String, bool)> {
    let v = vars(&["p", "q", "r", "s"]);
    let q = quad(&v);
    let c = r1_coeffs(&q);
    let twelve = MultiPoly::scalar(int(12));
    let ac3 = c.a.mul(&c.c).scale_i(3);
    vec![
        ("cubic through (i, quad[i]^2), i = 0..3".into(), c.interpolates(&q)),
        ("surface form equals 12(3ac - b^2)".into(), s1_form(&q) == twelve.mul(&ac3.sub(&c.b.square()))),
    ]
}

fn cubic_reduction() -> Vec<(String, bool)> {
    let v = vars(&["a", "b", "c", "d", "x", "y"]);
    let m = CubicModel { a: v[0].clone(), b: v[1].clone(), c: v[2].clone(), d: v[3].clone() };
    let red = cubic_to_weierstrass(&m).expect("generic cubic");
    let Point::Affine(xx, yy) = red.map(&v[4], &v[5]) else { unreachable!() };
    let f = v[5].square().sub(&m.a.mul(&v[4].square()).mul(&v[4]).add(&m.b.mul(&v[4].square())).add(&m.c.mul(&v[4])).add(&m.d));
    let lhs = yy.square().sub(&xx.square().mul(&xx).add(&red.curve.a.mul(&xx)).add(&red.curve.b));
    vec![("cubic to Weierstrass: image equation is 729a^2 times the source".into(), lhs == f.mul(&v[0].square().scale_i(729)))]
}

fn conic_and_pipeline() -> Vec<(String, bool)> {
    let v = vars(&["t", "u", "w"]);
    let [p, q, r] = conic_parametrize(&v[0], &v[1], &v[2]);
    let conic_ok = conic_form(&v[0], &p, &q, &r).is_zero();
    let fib = c1_e1_generic();
    let c = fib.curve();
    let on = c.on_curve(&fib.p) && fib.torsion.iter().all(|t| c.on_curve(t) && c.double(t).is_infinity());
    let pipeline = ap4_pipeline(&fib, &Recipe::new(-1, 1)).map(|w| w.verify().is_ok()).unwrap_or(false);
    vec![
        ("conic parametrization".into(), conic_ok),
        ("P and T1..T3 on E1 over Q(t), T_i of order 2".into(), on),
        ("progression pipeline over Q(t), recipe -P+T1".into(), pipeline),
    ]
}

fn power_families() -> Vec<(String, bool)> {
    let v = vars(&["p", "q", "r", "s"]);
    let q = quad(&v);
    let mut out = Vec::new();
    let odd_ok = (2..=8u32).all(|n| {
        let [a, b, c, d] = odd_coeffs(n, &q);
        [-1i64, 0, 1, 2].iter().zip(&q).all(|(&x, y)| {
            let xv = MultiPoly::scalar(int(x));
            let f = a.mul(&xv.pow(2 * n + 1)).add(&b.mul(&xv.square())).add(&c.mul(&xv)).add(&d);
            f == y.square()
        })
    });
    out.push(("odd family coefficients, n = 2..8".into(), odd_ok));
    let uv = vars(&["u", "v"]);
    let [p, qq, r] = odd_parametrize(&uv[0], &uv[1]);
    out.push(("odd family parametrization p^2 - 2q^2 + r^2 = 0".into(), p.square().sub(&qq.square().scale_i(2)).add(&r.square()).is_zero()));
    let e = vars(&["p", "q", "r", "u", "v"]);
    let pqr = [e[0].clone(), e[1].clone(), e[2].clone()];
    let [a, b, c] = even_coeffs(&e[3], &e[4], &pqr);
    let f = |x: i64, pw: &MultiPoly| pw.add(&a.scale_i(x * x)).add(&b.scale_i(x)).add(&c);
    let even_ok = f(1, &MultiPoly::scalar(int(1))) == pqr[0].square() && f(3, &e[3].square()) == pqr[1].square() && f(5, &e[4].square()) == pqr[2].square();
    out.push(("even family coefficients".into(), even_ok));
    let t = RatFunc::t();
    let par_ok = (2..=8u32).all(|n| {
        let u = RatFunc::constant(Rat::from_integer(num_bigint::BigInt::from(3u32).pow(n)));
        let (p, q) = even_parametrize(&u, &t).expect("t is transcendental");
        q.square().sub(&p.square()).sub(&u.square()).add(&RatFunc::one_el()).is_zero_el()
    });
    out.push(("even family parametrization, n = 2..8".into(), par_ok));
    let xs = torsion_xs(&uv[0], &uv[1]);
    out.push(("even family torsion roots sum to 0".into(), xs[0].add(&xs[1]).add(&xs[2]).is_zero()));
    out
}

fn sextic() -> Vec<(String, bool)> {
    let r = interpolate();
    let printed = printed_bcd();
    let f = r.t_form();
    let neg: Vec<MultiPoly> = MultiPoly::vars_of(&VARS).iter().map(|v| -v).collect();
    vec![
        ("interpolated B, C, D equal the printed polynomials".into(), r.numerators[1..4] == printed[..]),
        ("C^2 - 3BD invariant under reversal".into(), f.permute(&[4, 3, 2, 1, 0]) == f),
        ("C^2 - 3BD invariant under negation".into(), f.compose(&neg) == f),
    ]
}

/// Every symbolic identity suite.
pub fn run_all() -> Vec<IdentityCheck> {
    [r1_and_surface(), cubic_reduction(), conic_and_pipeline(), power_families(), sextic()]
        .into_iter()
        .flatten()
        .map(|(name, ok)| IdentityCheck { name, ok })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_hold() {
        for c in super::run_all() {
            assert!(c.ok, "{}", c.name);
        }
    }
}
