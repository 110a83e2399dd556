use rayon::prelude::*;
use serde_json::{json, Value};

use super::real::{self, Real};
use super::{HeightContext, HeightError, HeightOptions, LocalRule, Normalization};
use crate::arith::Rat;
use crate::ec::{Curve, Point};

/// Symmetric matrix of pairings <P_i, P_j>, stored in the half x-height normalization.
#[derive(Clone, Debug)]
pub struct HeightMatrix {
    pub entries: Vec<Vec<Real>>,
    pub det: Real,
    pub entry_error: f64,
    pub det_error: f64,
    pub precision_bits: usize,
    pub rule: LocalRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent,
    Indeterminate,
}

impl HeightMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    fn scale(&self, n: Normalization) -> f64 {
        (n.factor() as f64).powi(self.size() as i32)
    }

    pub fn det_in(&self, n: Normalization) -> Real {
        let f = real::from_i64(n.factor().pow(self.size() as u32), self.precision_bits);
        &self.det * f
    }

    pub fn det_error_in(&self, n: Normalization) -> f64 {
        self.det_error * self.scale(n)
    }

    pub fn entries_f64(&self, n: Normalization) -> Vec<Vec<f64>> {
        let f = n.factor() as f64;
        self.entries.iter().map(|r| r.iter().map(|e| real::to_f64(e) * f).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        let per = |n: Normalization| {
            json!({
                "normalization": n.tag(),
                "matrix": self.entries_f64(n),
                "det": real::to_decimal_string(&self.det_in(n), 25),
                "error_bound": self.det_error_in(n),
            })
        };
        json!({
            "local_rule": format!("{:?}", self.rule),
            "precision_bits": self.precision_bits,
            "entry_error_bound": self.entry_error,
            "conventions": [per(Normalization::XHeight), per(Normalization::HalfXHeight)],
        })
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &[Vec<Real>], prec: usize) -> Real {
    let n = m.len();
    let mut a: Vec<Vec<Real>> = m.to_vec();
    let mut det = real::from_i64(1, prec);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| real::abs(a[i][col].clone()).partial_cmp(&real::abs(a[j][col].clone())).unwrap())
            .unwrap();
        if a[piv][col] == real::from_i64(0, prec) {
            return real::from_i64(0, prec);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] = &a[r][c] - sub;
            }
        }
    }
    det
}

/// <P,Q> = (h(P+Q) - h(P) - h(Q)) / 2, diagonal h(P).
pub fn pairing_matrix(c: &Curve<Rat>, points: &[Point<Rat>], opts: &HeightOptions) -> Result<HeightMatrix, HeightError> {
    let ctx = HeightContext::new(c, *opts)?;
    let n = points.len();
    for p in points {
        if !c.on_curve(p) {
            return Err(HeightError::NotOnCurve);
        }
    }
    let mut jobs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            jobs.push((i, j));
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let pt = if i == j { points[i].clone() } else { c.add(&points[i], &points[j]) };
            ctx.height(&pt)
        })
        .collect();
    let prec = opts.precision_bits + 32;
    let mut diag = vec![real::from_i64(0, prec); n];
    let mut err: f64 = 0.0;
    for (k, &(i, j)) in jobs.iter().enumerate() {
        if i == j {
            let h = results[k].as_ref().map_err(|e| e.clone())?;
            diag[i] = h.value.clone().with_precision(prec).value();
            err = err.max(h.error_bound);
        }
    }
    let mut entries = vec![vec![real::from_i64(0, prec); n]; n];
    let two = real::from_i64(2, prec);
    for (k, &(i, j)) in jobs.iter().enumerate() {
        let h = results[k].as_ref().map_err(|e| e.clone())?;
        if i == j {
            entries[i][i] = diag[i].clone();
        } else {
            let v = (h.value.clone().with_precision(prec).value() - &diag[i] - &diag[j]) / &two;
            entries[i][j] = v.clone();
            entries[j][i] = v;
            err = err.max(1.5 * h.error_bound);
        }
    }
    let det = determinant(&entries, prec);
    let mx = entries.iter().flatten().map(|e| real::to_f64(e).abs()).fold(0.0, f64::max);
    // each of the n! products of n entries moves by at most n*eps*(M+eps)^(n-1)
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let det_error = fact * n as f64 * err * (mx + err).powi(n as i32 - 1) + 2f64.powi(-(opts.precision_bits as i32));
    Ok(HeightMatrix { entries, det, entry_error: err, det_error, precision_bits: prec, rule: opts.rule })
}

/// Independent iff the determinant clears `tolerance` by more than its error bound.
pub fn certify_independent(
    c: &Curve<Rat>,
    points: &[Point<Rat>],
    tolerance: f64,
    opts: &HeightOptions,
) -> Result<(Independence, HeightMatrix), HeightError> {
    let m = pairing_matrix(c, points, opts)?;
    let d = real::to_f64(&m.det);
    let verdict = if d - m.det_error > tolerance {
        Independence::Independent
    } else if d + m.det_error < tolerance {
        Independence::Dependent
    } else {
        Independence::Indeterminate
    };
    Ok((verdict, m))
}
