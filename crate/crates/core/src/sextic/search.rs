use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{bcdh, canonical, is_primitive, is_trivial, line_names, t_contains, Triviality};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum absolute value of every coordinate.
    pub bound: i64,
    pub threads: usize,
    /// JSON-lines log of completed slabs; resumed from when present.
    pub resume: Option<PathBuf>,
    pub emit_trivial: bool,
    /// Stop after this many slabs in total (for staged runs).
    pub max_slabs: Option<u64>,
}

impl SearchOptions {
    pub fn new(bound: i64, threads: usize) -> Self {
        SearchOptions { bound, threads, resume: None, emit_trivial: false, max_slabs: None }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("bound must be at least 1 and at most 5000")]
    BadBound,
    #[error("resume file: {0}")]
    Corrupt(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub point: [i64; 5],
    pub class: String,
    /// B, C, D, H at the point as decimal strings.
    pub transcript: [String; 4],
}

pub type ClassCounts = BTreeMap<String, u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct SlabRecord {
    slab: u64,
    examined: u64,
    counts: ClassCounts,
    hits: Vec<SearchHit>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub bound: i64,
    /// (p, q, r, s) prefixes processed.
    pub examined: u64,
    pub trivial_by_class: ClassCounts,
    pub nontrivial: Vec<SearchHit>,
    /// Trivial hits, kept only on request.
    pub trivial: Vec<SearchHit>,
    pub slabs_total: u64,
    /// Last completed slab, if any.
    pub resume_cursor: Option<u64>,
    pub complete: bool,
    pub wall_time_ms: u128,
    /// Reconstructed line list, for audit.
    pub lines: Vec<String>,
}

impl SearchReport {
    pub fn total_hits(&self) -> u64 {
        self.trivial_by_class.values().sum::<u64>() + self.nontrivial.len() as u64
    }

    /// Report without wall time, for comparing runs.
    pub fn outcome(&self) -> (u64, &ClassCounts, &[SearchHit], bool) {
        (self.examined, &self.trivial_by_class, &self.nontrivial, self.complete)
    }
}

/// Integer roots t with |t| <= bound of f0 + f1 t + ... + f4 t^4; `None` when f vanishes identically.
fn integer_roots(f: &[i128; 5], bound: i64) -> Option<Vec<i64>> {
    let low = f.iter().position(|&c| c != 0)?;
    let eval = |t: i128| f.iter().rev().fold(0i128, |acc, &c| acc * t + c);
    let mut out = Vec::new();
    if low > 0 {
        out.push(0);
    }
    let lead = f[low];
    for t in 1..=bound {
        if lead % t as i128 != 0 {
            continue;
        }
        for s in [-t, t] {
            if eval(s as i128) == 0 {
                out.push(s);
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

fn mul_add(a: &[i128; 3], b: &[i128; 3]) -> [i128; 5] {
    let mut out = [0i128; 5];
    for i in 0..3 {
        for j in 0..3 {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Coefficients of B, C, D as quadratics in t.
fn quadratics(p: i64, q: i64, r: i64, s: i64) -> [[i128; 3]; 3] {
    let at = |t: i128| bcdh(&[p as i128, q as i128, r as i128, s as i128, t]);
    let (v0, v1, vm) = (at(0), at(1), at(-1));
    std::array::from_fn(|k| {
        let c0 = v0[k];
        let c2 = (v1[k] + vm[k] - 2 * c0) / 2;
        let c1 = (v1[k] - vm[k]) / 2;
        [c0, c1, c2]
    })
}

fn record_hit(pt: [i64; 5], class: Triviality) -> SearchHit {
    let v = bcdh(&pt.map(|x| x as i128));
    SearchHit { point: pt, class: class.to_string(), transcript: v.map(|x| x.to_string()) }
}

fn run_slab(slab: u64, bound: i64, emit_trivial: bool) -> SlabRecord {
    let w = 2 * bound + 1;
    let p = (slab / w as u64) as i64 - bound;
    let q = (slab % w as u64) as i64 - bound;
    let mut rec = SlabRecord { slab, examined: 0, counts: ClassCounts::new(), hits: Vec::new() };
    for r in -bound..=bound {
        for s in -bound..=bound {
            rec.examined += 1;
            let [b, c, d] = quadratics(p, q, r, s);
            let cc = mul_add(&c, &c);
            let bd = mul_add(&b, &d);
            let f: [i128; 5] = std::array::from_fn(|i| cc[i] - 3 * bd[i]);
            let roots = integer_roots(&f, bound).unwrap_or_else(|| (-bound..=bound).collect());
            for t in roots {
                let pt = [p, q, r, s, t];
                if !is_primitive(&pt) || canonical(pt) != pt {
                    continue;
                }
                let class = is_trivial(&pt);
                if class == Triviality::Nontrivial {
                    rec.hits.push(record_hit(pt, class));
                } else {
                    *rec.counts.entry(class.to_string()).or_default() += 1;
                    if emit_trivial {
                        rec.hits.push(record_hit(pt, class));
                    }
                }
            }
        }
    }
    rec
}

fn check_record(rec: &SlabRecord, bound: i64) -> Result<(), SearchError> {
    for h in &rec.hits {
        if h.point.iter().any(|x| x.abs() > bound) || !t_contains(&h.point.map(BigInt::from)) || is_trivial(&h.point).to_string() != h.class {
            return Err(SearchError::Corrupt(format!("slab {} hit {:?} does not re-verify", rec.slab, h.point)));
        }
    }
    Ok(())
}

/// Reads completed slabs; they must be 0, 1, 2, ... under the same bound.
fn load_log(path: &PathBuf, bound: i64, emit_trivial: bool) -> Result<Vec<SlabRecord>, SearchError> {
    let f = File::open(path)?;
    let mut lines = BufReader::new(f).lines();
    let header: Value = match lines.next() {
        Some(l) => serde_json::from_str(&l?).map_err(|e| SearchError::Corrupt(e.to_string()))?,
        None => return Ok(vec![]),
    };
    if header.get("bound").and_then(Value::as_i64) != Some(bound) || header.get("emit_trivial").and_then(Value::as_bool) != Some(emit_trivial) {
        return Err(SearchError::Corrupt("header does not match the requested search".into()));
    }
    let mut out = Vec::new();
    for (i, l) in lines.enumerate() {
        let rec: SlabRecord = serde_json::from_str(&l?).map_err(|e| SearchError::Corrupt(format!("record {i}: {e}")))?;
        if rec.slab != i as u64 {
            return Err(SearchError::Corrupt(format!("record {i} has slab {}", rec.slab)));
        }
        check_record(&rec, bound)?;
        out.push(rec);
    }
    Ok(out)
}

/// Integer points of C^2 = 3BD with every coordinate in [-bound, bound], up to the two symmetries.
///
/// Slabs are the (p, q) pairs in order; output depends on neither thread count nor restarts.
pub fn search(opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let bound = opts.bound;
    if !(1..=5000).contains(&bound) {
        return Err(SearchError::BadBound);
    }
    let start = Instant::now();
    let w = (2 * bound + 1) as u64;
    let total = w * w;
    let mut done = match &opts.resume {
        Some(path) if path.exists() => load_log(path, bound, opts.emit_trivial)?,
        _ => vec![],
    };
    let mut log = match &opts.resume {
        Some(path) => {
            let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            if fresh {
                writeln!(f, "{}", serde_json::json!({"bound": bound, "emit_trivial": opts.emit_trivial}))?;
            }
            Some(f)
        }
        None => None,
    };
    let stop = opts.max_slabs.unwrap_or(total).min(total);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads.max(1)).build().map_err(|e| SearchError::Io(std::io::Error::other(e)))?;
    let mut next = done.len() as u64;
    while next < stop {
        let end = (next + w).min(stop);
        let batch: Vec<SlabRecord> = pool.install(|| (next..end).into_par_iter().map(|s| run_slab(s, bound, opts.emit_trivial)).collect());
        if let Some(f) = log.as_mut() {
            for rec in &batch {
                writeln!(f, "{}", serde_json::to_string(rec).expect("record serializes"))?;
            }
            f.flush()?;
        }
        done.extend(batch);
        next = end;
    }
    let mut report = SearchReport {
        bound,
        examined: 0,
        trivial_by_class: ClassCounts::new(),
        nontrivial: vec![],
        trivial: vec![],
        slabs_total: total,
        resume_cursor: done.last().map(|r| r.slab),
        complete: done.len() as u64 == total,
        wall_time_ms: 0,
        lines: line_names(),
    };
    for rec in done {
        report.examined += rec.examined;
        for (k, v) in rec.counts {
            *report.trivial_by_class.entry(k).or_default() += v;
        }
        for h in rec.hits {
            if h.class == "nontrivial" {
                report.nontrivial.push(h);
            } else {
                report.trivial.push(h);
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}
