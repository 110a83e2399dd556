use aprog::arith::Rat;
use aprog::ec::serial::{curve_json, point_json, rat_json};
use aprog::ec::Recipe;
use aprog::errata::{full_report, ErrataRecord, ErrataVerdict};
use aprog::family_cubic::{ap4_pipeline, c1_e1, c1_e1_generic, genus3_square_search, octic_cross_check};
use aprog::family_power::{
    even_instance, even_witness, m5_search, odd_instance, odd_witness, pairwise_inequivalent_batch, twist_equivalent, verify_generator_tables,
    FamilyError, Parity,
};
use aprog::heights::{certify_independent, pairing_matrix, HeightError, HeightOptions, LocalRule};
use aprog::identities::run_all;
use aprog::sextic::{ap5_from_point, is_trivial, search, t_contains, SearchError, SearchOptions};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::io::{curve_arg, points_file, rat_arg, verify_witness_file, write_json};
use crate::{Failure, Outcome};

type Res = Result<Outcome, Failure>;

fn recipe_arg(s: &str) -> Result<Recipe, Failure> {
    s.parse().map_err(|e: String| Failure::usage(format!("recipe: {e}")))
}

fn verify_only(command: &str, path: &str) -> Res {
    let results = verify_witness_file(path)?;
    Ok(Outcome::new(json!({"command": command, "verify_only": path}), results))
}

pub fn verify_identities() -> Res {
    let checks = run_all();
    let failed = checks.iter().filter(|c| !c.ok).count();
    let mut o = Outcome::new(json!({}), json!({"checks": checks, "failed": failed}));
    o.exit_code = u8::from(failed > 0);
    Ok(o)
}

pub fn errata() -> Res {
    let records = full_report();
    let summary = |v: ErrataVerdict| records.iter().filter(|r| r.verdict == v).count();
    let results = json!({
        "confirmed": summary(ErrataVerdict::Confirmed),
        "typo": summary(ErrataVerdict::Typo),
        "inconsistent": summary(ErrataVerdict::Inconsistent),
    });
    let mut o = Outcome::new(json!({}), results);
    o.errata = records;
    Ok(o)
}

pub fn family_cubic(t: Option<&str>, recipe: &str, out: Option<&str>, verify: Option<&str>) -> Res {
    if let Some(path) = verify {
        return verify_only("family-cubic", path);
    }
    let r = recipe_arg(recipe)?;
    let inputs = json!({"t": t.unwrap_or("symbolic"), "recipe": r.to_string()});
    let witness = match t {
        None => {
            let w = ap4_pipeline(&c1_e1_generic(), &r).map_err(|e| Failure::verify(e.to_string()))?;
            w.verify().map_err(Failure::verify)?;
            w.to_json()
        }
        Some(s) => {
            let t0 = rat_arg("t", s)?;
            let fib = c1_e1(&t0).map_err(|e| Failure::usage(e.to_string()))?;
            let w = ap4_pipeline(&fib, &r).map_err(|e| Failure::verify(e.to_string()))?;
            w.verify().map_err(Failure::verify)?;
            let mut j = w.to_json();
            j["curve"] = curve_json(fib.curve());
            j
        }
    };
    if let Some(path) = out {
        write_json(path, &witness)?;
    }
    Ok(Outcome::new(inputs, json!({"witness": witness})))
}

#[derive(Clone, Copy)]
pub enum Family {
    Odd,
    Even,
}

pub struct PowerOpts {
    pub n: u32,
    pub recipe: Option<String>,
    pub count: Option<usize>,
    pub m5_search: bool,
    pub out: Option<String>,
    pub verify_only: Option<String>,
}

fn family_err(e: FamilyError) -> Failure {
    match e {
        FamilyError::BadN(_) => Failure::usage(e.to_string()),
        _ => Failure::verify(e.to_string()),
    }
}

pub fn family_power(f: Family, o: &PowerOpts) -> Res {
    let name = match f {
        Family::Odd => "family-odd",
        Family::Even => "family-even",
    };
    if let Some(path) = &o.verify_only {
        return verify_only(name, path);
    }
    let inputs = json!({"n": o.n, "recipe": o.recipe, "count": o.count, "m5_search": o.m5_search});
    let recipe = o.recipe.as_deref().map(recipe_arg).transpose()?;
    let mut results = serde_json::Map::new();
    let witnesses: Vec<Value> = match f {
        Family::Odd => {
            let inst = odd_instance(o.n).map_err(family_err)?;
            results.insert("instance".into(), inst.to_json());
            if o.m5_search {
                if o.n != 2 {
                    return Err(Failure::usage("--m5-search needs n = 2"));
                }
                let s = m5_search(8, 8).map_err(family_err)?;
                results.insert(
                    "m5_search".into(),
                    json!({
                        "target": s.target.to_string(),
                        "recipes_tried": s.recipes_tried,
                        "found": s.found.as_ref().map(|w| w.recipe.to_string()),
                        "nearest": s.nearest.as_ref().map(|(r, k)| json!({"recipe": r.to_string(), "k": k.to_string()})),
                    }),
                );
            }
            if let Some(c) = o.count {
                pairwise_inequivalent_batch(Parity::Odd, o.n, c, 64).map_err(family_err)?.iter().map(|w| w.to_json()).collect()
            } else {
                let w = match recipe {
                    Some(r) => odd_witness(&inst, &r).map_err(family_err)?,
                    None => Recipe::enumerate().take(64).find_map(|r| odd_witness(&inst, &r).ok()).ok_or_else(|| Failure::verify("no witness in 64 recipes"))?,
                };
                vec![w.to_json()]
            }
        }
        Family::Even => {
            let inst = even_instance(o.n).map_err(family_err)?;
            results.insert("instance".into(), inst.to_json());
            if o.m5_search {
                return Err(Failure::usage("--m5-search applies to the odd family"));
            }
            if let Some(c) = o.count {
                pairwise_inequivalent_batch(Parity::Even, o.n, c, 64).map_err(family_err)?.iter().map(|w| w.to_json()).collect()
            } else {
                let w = match recipe {
                    Some(r) => even_witness(&inst, &r).map_err(family_err)?,
                    None => Recipe::enumerate().take(64).find_map(|r| even_witness(&inst, &r).ok()).ok_or_else(|| Failure::verify("no witness in 64 recipes"))?,
                };
                vec![w.to_json()]
            }
        }
    };
    if let Some(path) = &o.out {
        let v = if witnesses.len() == 1 { witnesses[0].clone() } else { Value::Array(witnesses.clone()) };
        write_json(path, &v)?;
    }
    results.insert("witnesses".into(), Value::Array(witnesses));
    Ok(Outcome::new(inputs, Value::Object(results)))
}

fn height_err(e: HeightError) -> Failure {
    match e {
        HeightError::NotOnCurve => Failure::usage(e.to_string()),
        _ => Failure::resource(e.to_string()),
    }
}

pub fn heights(curve: &str, points: &str, precision: usize) -> Res {
    let c = curve_arg(curve)?;
    let pts = points_file(points)?;
    if pts.is_empty() {
        return Err(Failure::usage("no points"));
    }
    let inputs = json!({"curve": curve_json(&c), "points": pts.iter().map(point_json).collect::<Vec<_>>(), "precision_bits": precision});
    let canonical = HeightOptions { precision_bits: precision, ..Default::default() };
    let given = HeightOptions { rule: LocalRule::GivenModel, ..canonical };
    let (verdict, m) = certify_independent(&c, &pts, 1e-8, &canonical).map_err(height_err)?;
    let g = pairing_matrix(&c, &pts, &given).map_err(height_err)?;
    Ok(Outcome::new(
        inputs,
        json!({
            "independence": format!("{verdict:?}"),
            "canonical": m.to_json(),
            "given_model": g.to_json(),
        }),
    ))
}

fn row_errata(rows: &[aprog::family_power::TableRow]) -> Vec<ErrataRecord> {
    rows.iter()
        .filter(|r| !r.passes())
        .map(|r| {
            let fixes: Vec<String> = r.repairs.iter().map(|f| format!("{} ({})", point_json(&f.point), f.edit)).collect();
            ErrataRecord::new(
                &format!("generator table n = {}", r.n),
                format!("({}, {})", r.printed.0, r.printed.1),
                fixes.join("; "),
                if fixes.is_empty() { ErrataVerdict::Inconsistent } else { ErrataVerdict::Typo },
                "exact on-curve check with one-edit repair probe",
            )
        })
        .collect()
}

pub fn table_verify() -> Res {
    let rows = verify_generator_tables();
    let passing = rows.iter().filter(|r| r.passes()).count();
    let mut o = Outcome::new(json!({}), json!({"rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "passing": passing, "total": rows.len()}));
    o.errata = row_errata(&rows);
    Ok(o)
}

pub fn sextic_search(bound: i64, threads: usize, resume: Option<&str>, emit_trivial: bool) -> Res {
    let opts = SearchOptions { bound, threads, resume: resume.map(Into::into), emit_trivial, max_slabs: None };
    let inputs = json!({"bound": bound, "threads": threads, "resume": resume, "emit_trivial": emit_trivial});
    let report = search(&opts).map_err(|e| match e {
        SearchError::BadBound => Failure::usage(e.to_string()),
        SearchError::Corrupt(_) => Failure::verify(e.to_string()),
        SearchError::Io(_) => Failure::resource(e.to_string()),
    })?;
    let mut results = serde_json::to_value(&report).expect("report serializes");
    let wall = results.as_object_mut().and_then(|m| m.remove("wall_time_ms")).unwrap_or(Value::Null);
    // thread count does not change results, so it stays out of them
    let mut o = Outcome::new(inputs, results);
    o.timings.insert("search_ms".into(), wall);
    Ok(o)
}

pub fn sextic_check(point: &str) -> Res {
    let coords: Vec<BigInt> = point
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Failure::usage(format!("point: bad integer {s:?}"))))
        .collect::<Result<_, _>>()?;
    let pt: [BigInt; 5] = coords.try_into().map_err(|_| Failure::usage("point: need five integers p,q,r,s,t"))?;
    let inputs = json!({"point": pt.iter().map(|x| x.to_string()).collect::<Vec<_>>()});
    let on = t_contains(&pt);
    let class = is_trivial(&pt).to_string();
    let ap5 = match ap5_from_point(&pt) {
        Ok(w) => w.to_json(),
        Err(e) => json!({"error": e.to_string()}),
    };
    Ok(Outcome::new(inputs, json!({"on_threefold": on, "class": class, "ap5": ap5})))
}

pub fn squares_search(bound: i64, threads: usize) -> Res {
    if !(1..=5000).contains(&bound) {
        return Err(Failure::usage("bound must be in 1..=5000"));
    }
    let inputs = json!({"bound": bound, "threads": threads});
    let cross = octic_cross_check();
    let report = genus3_square_search(bound, threads);
    Ok(Outcome::new(inputs, json!({"octics": cross, "search": report})))
}

pub fn twist_check(k1: &str, k2: &str, m: u32) -> Res {
    let (a, b) = (rat_arg("k1", k1)?, rat_arg("k2", k2)?);
    if m == 0 {
        return Err(Failure::usage("m must be positive"));
    }
    let eq = twist_equivalent(&a, &b, m).map_err(|e| Failure::usage(e.to_string()))?;
    let ratio: Rat = &a / &b;
    Ok(Outcome::new(json!({"k1": rat_json(&a), "k2": rat_json(&b), "m": m}), json!({"ratio": rat_json(&ratio), "power": 2 * m, "equivalent": eq})))
}

