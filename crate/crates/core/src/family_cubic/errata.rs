use super::pipeline::ap4_pipeline;
use super::squares::{k_corrected, k_printed, octic_cross_check, p_poly};
use super::{c1_e1, c1_e1_generic, conic_form, conic_parametrize, printed_conic_parametrize, s1_contains};
use crate::arith::rat::{int, rat};
use crate::arith::{MultiPoly, UniPoly};
use crate::ec::{Point, Recipe};
use crate::errata::{ErrataRecord, ErrataVerdict};
use crate::transforms::fibrations::printed_c1_backward;
use crate::witness::APWitness;

/// Printed-versus-derived comparisons for the cubic family.
pub fn errata_report() -> Vec<ErrataRecord> {
    let mut out = Vec::new();
    let vars = ["t", "u", "v"];
    let x = MultiPoly::vars_of(&vars);

    let [p, q, r] = printed_conic_parametrize(&x[0], &x[1], &x[2]);
    let printed_ok = conic_form(&x[0], &p, &q, &r).is_zero();
    let [p, q, r] = conic_parametrize(&x[0], &x[1], &x[2]);
    let derived_ok = conic_form(&x[0], &p, &q, &r).is_zero();
    out.push(ErrataRecord::check(
        "conic parametrization, r-line",
        "r = (3t^2+9t+7)u^2 - 2(3t^2+9t+4)v^2",
        "r = (3t^2+9t+7)u^2 - 2(3t^2+6t+4)v^2",
        printed_ok,
        if derived_ok { ErrataVerdict::Typo } else { ErrataVerdict::Inconsistent },
        format!("conic identity: printed {printed_ok}, corrected {derived_ok}"),
    ));

    let f = c1_e1(&int(1)).expect("t = 1 is a good fibre");
    let neg = Recipe::new(-1, 1);
    let pt = neg.apply(f.curve(), &f.p, &f.torsion);
    let (xx, yy) = (pt.x().unwrap().clone(), pt.y().unwrap().clone());
    let vs = printed_c1_backward(&int(1), &xx, &yy);
    let on_c1 = vs.as_ref().is_some_and(|(v, s)| f.maps.quartic().contains(v, s) && *v == rat(22, 15) && *s == rat(-12929, 225));
    out.push(ErrataRecord::check(
        "quartic C1 at t = 1 with the image of the printed sum point",
        "(22/15, -12929/225) on C1",
        format!("{:?}", vs.map(|(v, s)| (v.to_string(), s.to_string()))),
        on_c1,
        ErrataVerdict::Inconsistent,
        "exact evaluation of the printed map and quartic",
    ));

    let g = c1_e1_generic();
    let sum = g.curve().add(&g.p, &g.torsion[0]);
    let y_printed_sign = {
        let t = crate::arith::RatFunc::t();
        let e = |cs: &[i64]| crate::ec::field::eval_int_poly(&t, cs);
        let y = &(&(&e(&[3, 3, 1]) * &e(&[1, 3, 3])) * &e(&[4, 6, 3])) * &e(&[-486]);
        sum.y() == Some(&y)
    };
    out.push(ErrataRecord::check(
        "sum point P + T1, y-coordinate",
        "-486(t^2+3t+3)(3t^2+3t+1)(3t^2+6t+4)",
        "+486(t^2+3t+3)(3t^2+3t+1)(3t^2+6t+4); the printed point is -(P+T1)",
        y_printed_sign,
        ErrataVerdict::Typo,
        "group law over Q(t); literal P+T1 maps to v = 1 and the trivial quadruple",
    ));
    let literal = ap4_pipeline(&f, &Recipe::new(1, 1));
    out.push(ErrataRecord::new(
        "pipeline on literal P + T1",
        "non-degenerate quadruple",
        format!("{:?}", literal.err()),
        ErrataVerdict::Inconsistent,
        "the quadruple is proportional to (-1, 1, -1, 1), so a = 0",
    ));

    let printed_quad = [-43i64, 617, 1187, 1847].map(int);
    out.push(ErrataRecord::check(
        "polynomial quadruple at t = 1 on the Kummer surface",
        "(-43, 617, 1187, 1847)",
        "(-301, 4319, -8309, -12929) = 7 * (-43, 617, -1187, -1847)",
        s1_contains(&printed_quad),
        ErrataVerdict::Inconsistent,
        "exact evaluation; the surface form is even in each coordinate",
    ));

    let pts = [(487080, 62833320i64), (974160, 901585080), (1461240, 1734491880), (1948320, 2698910280)];
    let w = APWitness::new(3, int(-111610206808689600), pts.iter().map(|&(a, b)| (int(a), int(b))).collect(), int(1), "printed");
    out.push(ErrataRecord::check(
        "integer curve and four points at t = 1",
        "y^2 = x^3 - 111610206808689600 with x = 487080 * (1, 2, 3, 4)",
        "valid four-term progression",
        w.is_ok(),
        ErrataVerdict::Inconsistent,
        "exact verification",
    ));

    let kp = k_printed();
    let p = p_poly();
    let y1 = &p * &UniPoly::from_ints(&[-73, -72, 30, 54, 18]);
    let x1 = &UniPoly::from_ints(&[0, 1]) * &p;
    let printed_consistent = &(&y1 * &y1) - &(&(&(&x1 * &x1) * &x1) + &kp) == UniPoly::zero();
    let y1c = y1.scale(&int(3));
    let corrected_consistent = &(&y1c * &y1c) - &(&(&(&x1 * &x1) * &x1) + &k_corrected()) == UniPoly::zero();
    out.push(ErrataRecord::check(
        "k(t) against the printed points",
        "h(t) = U^4 + 612U^3 + 300U^2 - 3504U - 5329, y_i = p(t) Q_i(t)",
        "h(t) = 108U^4 + 612U^3 + 300U^2 - 3504U - 5329, y_i = 3 p(t) Q_i(t)",
        printed_consistent,
        if corrected_consistent { ErrataVerdict::Typo } else { ErrataVerdict::Inconsistent },
        format!("polynomial identity y1^2 = x1^3 + k: printed {printed_consistent}, corrected {corrected_consistent}; printed k(1) = {}", kp.eval(&int(1))),
    ));

    for c in octic_cross_check() {
        out.push(ErrataRecord::check(
            &format!("genus-3 octic {} versus ((t -/+ shift) p)^3 + k", c.octic),
            "printed octic",
            "9 p(t)^2 * octic equals the cube plus corrected k",
            c.corrected_matches,
            ErrataVerdict::Inconsistent,
            format!("with printed k: {}; with corrected k: {}", c.printed_matches, c.corrected_matches),
        ));
    }

    let three_p = f.curve().mul(3, &f.p);
    out.push(ErrataRecord::check(
        "3P at t = 1",
        "(3953140143/1408969, 24183154596042/1672446203)",
        match &three_p {
            Point::Affine(x, y) => format!("({x}, {y})"),
            Point::Infinity => "O".into(),
        },
        three_p == Point::Affine(rat(3953140143, 1408969), rat(24183154596042, 1672446203)),
        ErrataVerdict::Inconsistent,
        "group law",
    ));
    out
}
