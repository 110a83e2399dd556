//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach stdout. The process
//! fails when any criterion's outcome differs from `EXPECTED_RED`: criteria
//! listed there are contradicted by exact arithmetic and must keep failing
//! until the underlying data changes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use aprog::arith::rat::{int, parse_rat, rat};
use aprog::arith::{MultiPoly, Rat, UniPoly};
use aprog::ec::{Curve, Point, Recipe, Verdict};
use aprog::family_cubic::{
    ap4_pipeline, c1_e1, c1_e1_generic, conic_form, conic_parametrize, genus3_square_search, printed_conic_parametrize, s1_contains,
    specialize_witness, verify_poly_witness_json,
};
use aprog::family_power::{even_instance, Parity, even_witness, m5_search, odd_instance, odd_witness, verify_generator_tables};
use aprog::heights::{canonical_height, certify_independent, pairing_matrix, HeightOptions, Independence, LocalRule, Normalization};
use aprog::sextic::{interpolate, is_trivial, printed_bcd, search, t_contains, SearchOptions, SearchReport, Triviality};
use aprog::transforms::{BirMapPair, TransformError};
use aprog::witness::APWitness;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

/// Criteria whose literal claim fails under exact arithmetic.
const EXPECTED_RED: &[u32] = &[5, 8];

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check { ok, detail: detail.into() }
}

/// Every witness emitted along the way, re-verified from JSON in criterion 11.
#[derive(Default)]
struct Emitted {
    rational: Vec<APWitness>,
    polynomial: Vec<Value>,
}

fn pt(x: &str, y: &str) -> Point<Rat> {
    Point::Affine(parse_rat(x).unwrap(), parse_rat(y).unwrap())
}

fn fmt_pt(p: &Point<Rat>) -> String {
    match p {
        Point::Infinity => "O".into(),
        Point::Affine(x, y) => format!("({x}, {y})"),
    }
}

fn c1() -> Check {
    let c = Curve::from_ints(-39, -173).unwrap();
    check(c.on_curve(&pt("11", "27")), "(11, 27) on y^2 = x^3 - 39x - 173")
}

fn c2() -> Check {
    let f = c1_e1(&int(1)).unwrap();
    let e = f.curve();
    let coeffs = e.a == int(-48867651) && e.b == int(115230640770);
    let p = pt("-3513", "493506");
    let p_ok = f.p == p && e.on_curve(&p);
    let three = e.mul(3, &p);
    let three_ok = three == pt("3953140143/1408969", "24183154596042/1672446203");
    check(coeffs && p_ok && three_ok, format!("A = {}, B = {}, P(1) ok: {p_ok}, 3P = {}", e.a, e.b, fmt_pt(&three)))
}

const PRINTED_POINTS: [(&str, &str); 4] =
    [("487080", "62833320"), ("974160", "901585080"), ("1461240", "1734491880"), ("1948320", "2698910280")];
const PRINTED_K: &str = "-111610206808689600";
const PRINTED_DET: f64 = 266.618020487005;

fn c3() -> Check {
    let c = Curve::new(Rat::zero(), parse_rat(PRINTED_K).unwrap()).unwrap();
    let pts: Vec<_> = PRINTED_POINTS.iter().map(|(x, y)| pt(x, y)).collect();
    let canonical = HeightOptions::default();
    let given = HeightOptions { rule: LocalRule::GivenModel, ..canonical };
    let (Ok(cm), Ok(gm)) = (pairing_matrix(&c, &pts, &canonical), pairing_matrix(&c, &pts, &given)) else {
        return check(false, "pairing matrix failed");
    };
    let det = |m: &aprog::heights::HeightMatrix, n| aprog::heights::real::to_f64(&m.det_in(n));
    let norms = [Normalization::XHeight, Normalization::HalfXHeight];
    let hit = norms.iter().find(|&&n| ((det(&gm, n) - PRINTED_DET) / PRINTED_DET).abs() < 1e-6);
    let ratio = det(&gm, Normalization::XHeight) / det(&gm, Normalization::HalfXHeight);
    let ok = hit.is_some() && (ratio - 16.0).abs() < 1e-9;
    check(
        ok,
        format!(
            "given-model local rule: {:.12} ({}), ratio {ratio:.9}; canonical rule: {:.10} / {:.10}",
            det(&gm, Normalization::XHeight),
            hit.map_or("no tag matches", |n| n.tag()),
            det(&cm, Normalization::XHeight),
            det(&cm, Normalization::HalfXHeight)
        ),
    )
}

fn c4(emitted: &mut Emitted) -> Check {
    // The printed sum point is -(P + T1) under the group law; see the ledger.
    let recipe = Recipe::new(-1, 1);
    let Ok(w) = ap4_pipeline(&c1_e1_generic(), &recipe) else {
        return check(false, "pipeline failed");
    };
    let identities = w.verify().is_ok();
    let r2 = s1_contains(&w.quadruple);
    emitted.polynomial.push(w.to_json());
    let Some(s) = specialize_witness(&w, &int(1)) else {
        return check(false, "t = 1 is a pole");
    };
    let target = [-301, 4319, -8309, -12929].map(int);
    let proportional = (1..4).all(|i| &s.quadruple[i] * &target[0] == &s.quadruple[0] * &target[i]);
    let ap = s.to_ap_witness();
    let curve = Curve::new(Rat::zero(), s.k.clone()).unwrap();
    let pts: Vec<_> = s.points.iter().map(|(x, y)| Point::Affine(x.clone(), y.clone())).collect();
    let indep = certify_independent(&curve, &pts, 1e-8, &HeightOptions::default());
    let (indep_ok, det) = match &indep {
        Ok((v, m)) => (*v == Independence::Independent, aprog::heights::real::to_f64(&m.det)),
        Err(_) => (false, f64::NAN),
    };
    emitted.rational.push(ap);
    let q: Vec<String> = s.quadruple.iter().map(|x| x.to_string()).collect();
    check(
        identities && r2 && proportional && indep_ok,
        format!("recipe {recipe}; identities {identities}, on the surface {r2}; t = 1 quadruple ({}) proportional: {proportional}; det {det:.6}", q.join(", ")),
    )
}

fn c5(emitted: &mut Emitted) -> Check {
    let mut parts = Vec::new();
    let mut all = true;
    let mut claim = |name: &str, ok: bool| {
        all &= ok;
        parts.push(format!("{name} {}", if ok { "ok" } else { "FAILS" }));
    };

    let x = MultiPoly::vars_of(&["t", "u", "v"]);
    let [p, q, r] = printed_conic_parametrize(&x[0], &x[1], &x[2]);
    let printed_conic = conic_form(&x[0], &p, &q, &r).is_zero();
    let [p, q, r] = conic_parametrize(&x[0], &x[1], &x[2]);
    let fixed_conic = conic_form(&x[0], &p, &q, &r).is_zero();
    claim("[r-line: printed fails, corrected passes]", !printed_conic && fixed_conic);

    let printed_quad = [-43, 617, 1187, 1847].map(int);
    claim("[printed quadruple off the surface]", !s1_contains(&printed_quad));
    let k = parse_rat(PRINTED_K).unwrap();
    let points = PRINTED_POINTS.iter().map(|(x, y)| (parse_rat(x).unwrap(), parse_rat(y).unwrap())).collect();
    match APWitness::new(3, k, points, Rat::one(), "printed, t = 1") {
        Ok(w) => {
            emitted.rational.push(w);
            claim("[printed t = 1 curve and points are an AP4 witness]", true);
        }
        Err(_) => claim("[printed t = 1 curve and points are an AP4 witness]", false),
    }

    let even2 = even_instance(2).unwrap();
    let ec = even2.curve();
    claim("[T3: x = -1392 off, x = 1392 on]", !ec.on_curve(&pt("-1392", "0")) && ec.on_curve(&pt("1392", "0")));

    let odd2 = odd_instance(2).unwrap();
    let oc = odd2.curve();
    claim("[(303, 17820) off, (303, 1782) on]", !oc.on_curve(&pt("303", "17820")) && oc.on_curve(&pt("303", "1782")));

    // g(t) for n = 2 (u = 9, v = 25) at the quartic image of 2P
    let two_p = ec.double(&even2.p);
    let g_ok = match even2.maps.backward(&two_p) {
        Ok((t, s)) => {
            let (u, v2) = (int(9), int(625));
            let base = UniPoly::new(vec![v2.clone(), int(0), int(-2) * (&v2 - int(2) * &u * &u - int(2)), Rat::zero(), v2.clone()]);
            let restored = &base + &UniPoly::new(vec![Rat::zero(), int(-4) * &u, Rat::zero(), int(-4) * &u]);
            let literal = &base + &UniPoly::new(vec![int(-4) * &u, Rat::zero(), Rat::zero(), int(-4) * &u]);
            let s2 = &s * &s;
            restored.eval(&t) == s2 && literal.eval(&t) != s2
        }
        Err(_) => false,
    };
    claim("[g linear term -4ut matches the quartic]", g_ok);
    check(all, parts.join("; "))
}

fn c6(emitted: &mut Emitted) -> Check {
    let mut bad = Vec::new();
    for n in 2..=8 {
        let Ok(inst) = odd_instance(n) else {
            bad.push(format!("n = {n}: instance"));
            continue;
        };
        let c = inst.curve();
        let root_sum = inst.torsion.iter().fold(Rat::zero(), |acc, t| acc + t.x().unwrap());
        let four_p = c.mul(4, &inst.p);
        let non_integral = four_p.x().is_some_and(|x| !x.is_integer());
        if !(root_sum.is_zero() && c.on_curve(&inst.p) && non_integral && inst.four_p_non_integral && inst.certificate.verdict == Verdict::Infinite) {
            bad.push(format!("n = {n}"));
        }
    }
    let mut found = Vec::new();
    for n in [2, 3] {
        let inst = odd_instance(n).unwrap();
        match Recipe::enumerate().take(6).find_map(|r| odd_witness(&inst, &r).ok()) {
            Some(w) if w.witness.verify().is_ok() && !w.witness.k.is_zero() => {
                found.push(format!("n = {n} via {}", w.recipe));
                emitted.rational.push(w.raw.clone());
                emitted.rational.push(w.witness);
            }
            _ => bad.push(format!("n = {n}: no witness in 6 recipes")),
        }
    }
    check(bad.is_empty(), if bad.is_empty() { format!("instances n = 2..8 ok; witnesses {}", found.join(", ")) } else { bad.join("; ") })
}

fn c7(emitted: &mut Emitted) -> Check {
    let mut bad = Vec::new();
    for n in 2..=8 {
        let Ok(inst) = even_instance(n) else {
            bad.push(format!("n = {n}: instance"));
            continue;
        };
        let (u, v) = (Rat::from_integer(3.into()).pow(n as i32), Rat::from_integer(5.into()).pow(n as i32));
        let expected = Point::Affine(int(3) * (&u * &u + &v * &v + int(1)), int(-27) * &u * &v);
        let two_p = inst.curve().double(&inst.p);
        let non_integral = !Curve::point_is_integral(&two_p);
        if !(inst.p == expected && inst.curve().on_curve(&expected) && non_integral && inst.two_p_non_integral) {
            bad.push(format!("n = {n}"));
        }
    }
    let inst = even_instance(2).unwrap();
    let w = Recipe::enumerate().take(64).find_map(|r| even_witness(&inst, &r).ok());
    let shape = match &w {
        Some(w) => {
            let xs: Vec<&Rat> = w.witness.points.iter().map(|(x, _)| x).collect();
            let m = &w.witness.step / int(2);
            let want: Vec<Rat> = [-5, -3, -1, 1, 3, 5].iter().map(|&i| &m * int(i)).collect();
            w.witness.verify().is_ok() && w.witness.n == 4 && xs.len() == 6 && xs.iter().zip(&want).all(|(a, b)| *a == b)
        }
        None => false,
    };
    if !shape {
        bad.push("n = 2 witness".into());
    }
    let detail = match &w {
        Some(w) if shape => format!("instances n = 2..8 ok; n = 2 witness via {}, m = {}", w.recipe, &w.witness.step / int(2)),
        _ => bad.join("; "),
    };
    if let Some(w) = w {
        emitted.rational.push(w.witness);
    }
    check(bad.is_empty(), detail)
}

fn c8() -> Check {
    let rows = verify_generator_tables();
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| !r.passes())
        .map(|r| format!("{:?} n = {} ({}, {})", r.parity, r.n, r.printed.0, r.printed.1))
        .collect();
    let allowed = |r: &&aprog::family_power::TableRow| r.printed == ("303".to_string(), "17820".to_string());
    let unexpected = rows.iter().filter(|r| !r.passes()).filter(|r| !allowed(r)).count();
    let erratum_off = rows.iter().any(|r| allowed(&r) && !r.on_curve);
    let covered = [Parity::Odd, Parity::Even].iter().all(|&par| (2..=8).all(|n| rows.iter().any(|r| r.parity == par && r.n == n)));
    check(covered && unexpected == 0 && erratum_off, format!("{} rows, n = 2..8 covered: {covered}; failing: {}", rows.len(), failing.join("; ")))
}

fn report_key(r: &SearchReport) -> (u64, &aprog::sextic::ClassCounts, usize, bool) {
    (r.examined, &r.trivial_by_class, r.nontrivial.len(), r.complete)
}

fn c9() -> Check {
    let derived = interpolate();
    let printed = printed_bcd();
    let bcd = derived.numerators[1..4].iter().zip(&printed).all(|(d, p)| d == p);
    let run = |threads| {
        let mut o = SearchOptions::new(25, threads);
        o.emit_trivial = true;
        search(&o)
    };
    let (Ok(one), Ok(eight)) = (run(1), run(8)) else {
        return check(false, "search failed");
    };
    let invariant = report_key(&one) == report_key(&eight) && one.trivial == eight.trivial;
    let reclassified = one.trivial.iter().all(|h| t_contains(&h.point.map(BigInt::from)) && is_trivial(&h.point) != Triviality::Nontrivial);
    let classes: Vec<String> = one.trivial_by_class.iter().map(|(k, v)| format!("{k} {v}")).collect();
    check(
        bcd && one.complete && one.nontrivial.is_empty() && invariant && reclassified,
        format!(
            "B, C, D match: {bcd}; bound 25: {} prefixes, {} nontrivial, {} trivial [{}]; threads 1 = 8: {invariant}",
            one.examined,
            one.nontrivial.len(),
            one.trivial.len(),
            classes.join(", ")
        ),
    )
}

fn c10() -> Check {
    let s = genus3_square_search(200, 0);
    check(
        s.hits.is_empty(),
        format!("{} parameters, {} square values with k != 0, {} at k = 0", s.parameters_examined, s.hits.len(), s.excluded.len()),
    )
}

fn curve_through_points() -> impl Strategy<Value = Option<(Curve<Rat>, [Point<Rat>; 3])>> {
    (-30i64..30, -30i64..30, -30i64..30, -30i64..30, 1i64..5).prop_map(|(x0, y0, dx, y1, d)| {
        if dx == 0 {
            return None;
        }
        let (x0, y0) = (int(x0), rat(y0, d));
        let (x1, y1) = (&x0 + int(dx), rat(y1, d));
        let g0 = &y0 * &y0 - &x0 * &x0 * &x0;
        let g1 = &y1 * &y1 - &x1 * &x1 * &x1;
        let a = (&g1 - &g0) / (&x1 - &x0);
        let b = &g0 - &a * &x0;
        let c = Curve::new(a, b)?;
        let (p, q) = (Point::Affine(x0, y0), Point::Affine(x1, y1));
        let r = c.add(&c.double(&p), &q.neg());
        Some((c, [p, q, r]))
    })
}

fn run_prop<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

/// Round trips over the first 20 points mP + T outside the exceptional locus.
/// Returns (successes, exceptional points skipped).
fn round_trips(maps: &BirMapPair<Rat>, p: &Point<Rat>, torsion: &[Point<Rat>]) -> (usize, usize) {
    let c = &maps.curve;
    let (mut ok, mut tried, mut skipped) = (0, 0, 0);
    for m in 1.. {
        let mp = c.mul(m, p);
        for t in std::iter::once(&Point::Infinity).chain(torsion.iter().take(3)) {
            if tried == 20 {
                return (ok, skipped);
            }
            let q = c.add(&mp, t);
            match maps.backward(&q) {
                Err(TransformError::Exceptional(_)) => skipped += 1,
                Err(_) => tried += 1,
                Ok((v, s)) => {
                    tried += 1;
                    if maps.quartic().contains(&v, &s) && maps.forward(&v, &s).ok() == Some(q) {
                        ok += 1;
                    }
                }
            }
        }
    }
    unreachable!()
}

fn c11(emitted: &Emitted) -> Check {
    let mut parts = Vec::new();
    let mut all = true;

    let group = run_prop(1000, (curve_through_points(), -4i64..5, -4i64..5), |(cp, m, n)| {
        let Some((c, [p, q, r])) = cp else { return Ok(()) };
        prop_assert_eq!(c.add(&p, &q), c.add(&q, &p));
        prop_assert_eq!(c.add(&c.add(&p, &q), &r), c.add(&p, &c.add(&q, &r)));
        prop_assert_eq!(c.mul(m + n, &p), c.add(&c.mul(m, &p), &c.mul(n, &p)));
        prop_assert!(c.add(&p, &p.neg()).is_infinity());
        prop_assert_eq!(c.add(&p, &Point::Infinity), p.clone());
        prop_assert!(c.on_curve(&c.add(&p, &r)));
        Ok(())
    });
    all &= group.is_ok();
    parts.push(format!("group law 1000 cases: {}", group.err().unwrap_or_else(|| "ok".into())));

    let c1 = c1_e1(&int(1)).unwrap();
    let odd = odd_instance(2).unwrap();
    let even = even_instance(2).unwrap();
    let counts = [
        round_trips(&c1.maps, &c1.p, &c1.torsion),
        round_trips(&odd.maps, &odd.p, &odd.torsion),
        round_trips(&even.maps, &even.p, &even.torsion),
    ];
    all &= counts.iter().all(|&(k, _)| k == 20);
    parts.push(format!(
        "round trips C1/odd/even: {}/{}/{} of 20 (exceptional points skipped: {}/{}/{})",
        counts[0].0, counts[1].0, counts[2].0, counts[0].1, counts[1].1, counts[2].1
    ));

    let heights = run_prop(10, (-20i64..20, -20i64..20, 1i64..30), |(a, x, y)| {
        let (xr, yr) = (int(x), int(y));
        let b = &yr * &yr - &xr * &xr * &xr - int(a) * &xr;
        let Some(c) = Curve::new(int(a), b) else { return Ok(()) };
        let p = Point::Affine(xr, yr);
        if (1..=12).any(|m| c.mul(m, &p).is_infinity()) {
            return Ok(());
        }
        let opts = HeightOptions::default();
        let h1 = canonical_height(&c, &p, &opts).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let h2 = canonical_height(&c, &c.double(&p), &opts).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let err = 4.0 * h1.error_bound + h2.error_bound;
        prop_assert!((h2.value_f64() - 4.0 * h1.value_f64()).abs() <= err.max(1e-12));
        Ok(())
    });
    all &= heights.is_ok();
    parts.push(format!("h(2P) = 4h(P) 10 cases: {}", heights.err().unwrap_or_else(|| "ok".into())));

    let rational_ok = emitted.rational.iter().all(|w| APWitness::from_json(&w.to_json()).is_ok_and(|back| back == *w && back.verify().is_ok()));
    let poly_ok = emitted.polynomial.iter().all(|v| verify_poly_witness_json(v).is_ok());
    all &= rational_ok && poly_ok && !emitted.rational.is_empty();
    parts.push(format!(
        "witness JSON re-verification: {} rational {}, {} polynomial {}",
        emitted.rational.len(),
        if rational_ok { "ok" } else { "FAILS" },
        emitted.polynomial.len(),
        if poly_ok { "ok" } else { "FAILS" }
    ));
    check(all, parts.join("; "))
}

fn main() -> ExitCode {
    let mut emitted = Emitted::default();
    let mut mismatched = Vec::new();
    let mut run = |id: u32, budget: Duration, f: &mut dyn FnMut(&mut Emitted) -> Check| {
        let start = Instant::now();
        let c = f(&mut emitted);
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = c.ok && in_time;
        let timing = format!("{:.3} s, budget {} s{}", elapsed.as_secs_f64(), budget.as_secs_f64(), if in_time { "" } else { ", OVER BUDGET" });
        println!("criterion {id:>2}: {} [{timing}] {}", if pass { "PASS" } else { "FAIL" }, c.detail);
        if pass == EXPECTED_RED.contains(&id) {
            mismatched.push(id);
        }
    };
    let secs = Duration::from_secs;
    run(1, Duration::from_millis(1), &mut |_| c1());
    run(2, Duration::from_millis(10), &mut |_| c2());
    run(3, secs(30), &mut |_| c3());
    run(4, secs(10), &mut c4);
    run(5, secs(5), &mut c5);
    run(6, secs(60), &mut c6);
    run(7, secs(60), &mut c7);
    run(8, secs(120), &mut |_| c8());
    run(9, secs(600), &mut |_| c9());
    run(10, secs(60), &mut |_| c10());
    run(11, secs(600), &mut |e| c11(e));

    let start = Instant::now();
    match m5_search(8, 8) {
        Ok(s) => {
            let outcome = match (&s.found, &s.nearest) {
                (Some(w), _) => format!("found via {}", w.recipe),
                (None, Some((r, _))) => format!("not found; nearest via {r}"),
                _ => "not found".into(),
            };
            println!("info: M5 recipe search over {} recipes: {outcome} [{:.3} s]", s.recipes_tried, start.elapsed().as_secs_f64());
        }
        Err(e) => println!("info: M5 recipe search failed: {e}"),
    }

    if mismatched.is_empty() {
        println!("acceptance: outcomes match expectations (expected red: {EXPECTED_RED:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {mismatched:?}");
        ExitCode::FAILURE
    }
}
