//! The sextic threefold C^2 = 3BD attached to five points in progression on y^2 = x^3 + k.

mod search;

pub use search::{search, ClassCounts, SearchError, SearchHit, SearchOptions, SearchReport};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, Zero};
use serde::Serialize;

use crate::arith::rat::{big, int};
use crate::arith::{MultiPoly, Rat};
use crate::ec::ExactField;
use crate::errata::{ErrataRecord, ErrataVerdict};
use crate::witness::APWitness;

pub const VARS: [&str; 5] = ["p", "q", "r", "s", "t"];

/// The x-values paired with p, q, r, s, t.
pub const XS: [i64; 5] = [-2, -1, 0, 1, 2];

/// B, C, D as printed, with explicit products.
pub const PRINTED_B: &str = "(p-3*q+3*r-s)*t^2-(p^2-3*q^2+3*r^2-s^2)*t+(q-3*r+3*s)*p^2-(q^2-3*r^2+3*s^2)*p+2*(q-s)*(3*q*r-3*r^2-4*q*s+3*r*s)";
pub const PRINTED_C: &str = "-3*((t^2+p^2)*(q-2*r+s)-(t+p)*(q^2-2*r^2+s^2)+2*r*(q^2-q*r-r*s+s^2))";
pub const PRINTED_D: &str = "-(p-6*q+3*r+2*s)*t^2+(p^2-6*q^2+3*r^2+2*s^2)*t+(2*q+3*r-6*s)*p^2-(2*q^2+3*r^2-6*s^2)*p-8*(q-s)*(3*q*r-3*r^2-4*q*s+3*r*s)";

/// Numerators of (a, b, c, d, e) over the common denominator 6H.
#[derive(Clone, Debug)]
pub struct InterpolationResult {
    /// A, B, C, D, E.
    pub numerators: [MultiPoly; 5],
    pub h: MultiPoly,
    /// The system determinant divided by H.
    pub det_over_h: Rat,
}

impl InterpolationResult {
    /// (a, b, c, d, e) at a point, or `None` on H = 0.
    pub fn coefficients(&self, pt: &[Rat; 5]) -> Option<[Rat; 5]> {
        let h = self.h.eval(pt);
        if h.is_zero() {
            return None;
        }
        let den = h * int(6);
        Some(std::array::from_fn(|i| self.numerators[i].eval(pt) / &den))
    }

    /// C^2 - 3BD.
    pub fn t_form(&self) -> MultiPoly {
        let [_, b, c, d, _] = &self.numerators;
        &(c * c) - &(&(b * d) * &MultiPoly::scalar(int(3)))
    }
}

/// Laplace expansion along the first row.
fn det<F: ExactField>(m: &[Vec<F>]) -> F {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = F::zero_el();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero_el() {
            continue;
        }
        let minor: Vec<Vec<F>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = a.mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Solves f(x_i, y_i) = 0, f = y^2 + a y - (b x^3 + c x^2 + d x + e), by Cramer's rule over Q[p, q, r, s, t].
pub fn interpolate() -> InterpolationResult {
    let ys = MultiPoly::vars_of(&VARS);
    let c = |n: i64| MultiPoly::scalar(int(n));
    let rows: Vec<Vec<MultiPoly>> = XS.iter().zip(&ys).map(|(&x, y)| vec![y.clone(), c(-x * x * x), c(-x * x), c(-x), c(-1)]).collect();
    let rhs: Vec<MultiPoly> = ys.iter().map(|y| -&(y * y)).collect();
    let delta = det(&rows);
    let h = MultiPoly::parse(&VARS, "p-4*q+6*r-4*s+t").expect("H parses");
    let kappa = delta.terms().next().map(|(_, c)| c.clone()).expect("system determinant is nonzero");
    assert_eq!(delta, h.scale(&kappa), "determinant is not proportional to H");
    let numerators = std::array::from_fn(|j| {
        let m: Vec<Vec<MultiPoly>> = rows.iter().zip(&rhs).map(|(row, r)| {
            let mut row = row.clone();
            row[j] = r.clone();
            row
        }).collect();
        det(&m).scale(&(int(6) / &kappa))
    });
    InterpolationResult { numerators, h, det_over_h: kappa }
}

pub fn printed_bcd() -> [MultiPoly; 3] {
    [PRINTED_B, PRINTED_C, PRINTED_D].map(|s| MultiPoly::parse(&VARS, s).expect("printed polynomial parses"))
}

/// Exact B, C, D and H at an integer point; generic so the search can run in i128.
pub fn bcdh<T: Clone + Num + From<i32>>(pt: &[T; 5]) -> [T; 4] {
    let k = |n: i32| T::from(n);
    let [p, q, r, s, t] = pt.clone();
    let sq = |x: &T| x.clone() * x.clone();
    let (p2, q2, r2, s2, t2) = (sq(&p), sq(&q), sq(&r), sq(&s), sq(&t));
    let g = (q.clone() - s.clone()) * (k(3) * q.clone() * r.clone() - k(3) * r2.clone() - k(4) * q.clone() * s.clone() + k(3) * r.clone() * s.clone());
    let b = (p.clone() - k(3) * q.clone() + k(3) * r.clone() - s.clone()) * t2.clone()
        - (p2.clone() - k(3) * q2.clone() + k(3) * r2.clone() - s2.clone()) * t.clone()
        + (q.clone() - k(3) * r.clone() + k(3) * s.clone()) * p2.clone()
        - (q2.clone() - k(3) * r2.clone() + k(3) * s2.clone()) * p.clone()
        + k(2) * g.clone();
    let c = k(-3)
        * ((t2.clone() + p2.clone()) * (q.clone() - k(2) * r.clone() + s.clone()) - (t.clone() + p.clone()) * (q2.clone() - k(2) * r2.clone() + s2.clone())
            + k(2) * r.clone() * (q2.clone() - q.clone() * r.clone() - r.clone() * s.clone() + s2.clone()));
    let d = k(0) - (p.clone() - k(6) * q.clone() + k(3) * r.clone() + k(2) * s.clone()) * t2
        + (p2.clone() - k(6) * q2.clone() + k(3) * r2.clone() + k(2) * s2.clone()) * t.clone()
        + (k(2) * q.clone() + k(3) * r.clone() - k(6) * s.clone()) * p2
        - (k(2) * q2 + k(3) * r2 - k(6) * s2) * p.clone()
        - k(8) * g;
    let h = p - k(4) * q + k(6) * r - k(4) * s + t;
    [b, c, d, h]
}

/// C^2 = 3BD, exactly.
pub fn t_contains(pt: &[BigInt; 5]) -> bool {
    let [b, c, d, _] = bcdh(pt);
    &c * &c == BigInt::from(3) * b * d
}

/// Classes of points regarded as trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Triviality {
    /// Three coordinates equal and the other two equal; index 1..=10.
    Line(u8),
    /// Four coordinates equal; index 1..=5 of the free coordinate.
    FourEqual(u8),
    /// H = 0.
    Hyperplane,
    Nontrivial,
}

impl std::fmt::Display for Triviality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Triviality::Line(i) => write!(f, "L{i}"),
            Triviality::FourEqual(i) => write!(f, "F{i}"),
            Triviality::Hyperplane => write!(f, "H"),
            Triviality::Nontrivial => write!(f, "nontrivial"),
        }
    }
}

/// The ten 3+2 coincidence classes, in the order L1: p=q=r, s=t through L10: r=s=t, p=q.
pub fn lines() -> Vec<([usize; 3], [usize; 2])> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let rest: Vec<usize> = (0..5).filter(|x| ![i, j, k].contains(x)).collect();
                out.push(([i, j, k], [rest[0], rest[1]]));
            }
        }
    }
    out
}

pub fn line_names() -> Vec<String> {
    lines()
        .iter()
        .enumerate()
        .map(|(n, (a, b))| format!("L{}: {}={}={}, {}={}", n + 1, VARS[a[0]], VARS[a[1]], VARS[a[2]], VARS[b[0]], VARS[b[1]]))
        .collect()
}

pub fn is_trivial<T: Clone + Num + From<i32>>(pt: &[T; 5]) -> Triviality {
    for (n, (a, b)) in lines().iter().enumerate() {
        if pt[a[0]] == pt[a[1]] && pt[a[1]] == pt[a[2]] && pt[b[0]] == pt[b[1]] {
            return Triviality::Line(n as u8 + 1);
        }
    }
    for free in 0..5 {
        let mut rest = (0..5).filter(|&i| i != free);
        let first = rest.next().unwrap();
        if rest.all(|i| pt[i] == pt[first]) {
            return Triviality::FourEqual(free as u8 + 1);
        }
    }
    if bcdh(pt)[3].is_zero() {
        return Triviality::Hyperplane;
    }
    Triviality::Nontrivial
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SexticError {
    #[error("point is trivial ({0})")]
    Trivial(Triviality),
    #[error("H vanishes")]
    ZeroH,
    #[error("point is not on the threefold")]
    NotOnT,
    #[error("b vanishes")]
    ZeroB,
}

/// Five points in progression on Y^2 = X^3 + K from a nontrivial point of the threefold.
pub fn ap5_from_point(pt: &[BigInt; 5]) -> Result<APWitness, SexticError> {
    match is_trivial(pt) {
        Triviality::Nontrivial => {}
        Triviality::Hyperplane => return Err(SexticError::ZeroH),
        c => return Err(SexticError::Trivial(c)),
    }
    if !t_contains(pt) {
        return Err(SexticError::NotOnT);
    }
    let r: [Rat; 5] = pt.clone().map(big);
    let [a, b, c, d, e] = interpolate().coefficients(&r).ok_or(SexticError::ZeroH)?;
    if b.is_zero() {
        return Err(SexticError::ZeroB);
    }
    debug_assert!((&c * &c - int(3) * &b * &d).is_zero());
    let k = int(432) * (int(27) * &a * &a * &b * &b + int(8) * &c * &c * &c - int(36) * &b * &c * &d + int(108) * &b * &b * &e);
    let points = XS.iter().zip(&r).map(|(&x, y)| (int(12) * (&c + int(3) * &b * int(x)), int(108) * &b * (&a + int(2) * y))).collect();
    APWitness::new(3, k, points, Rat::from_integer(1.into()), "sextic point").map_err(|_| SexticError::NotOnT)
}

/// Lexicographically least image under reversal and negation.
pub fn canonical(pt: [i64; 5]) -> [i64; 5] {
    let mut rev = pt;
    rev.reverse();
    [pt, rev, pt.map(|x| -x), rev.map(|x| -x)].into_iter().min().unwrap()
}

pub fn is_primitive(pt: &[i64; 5]) -> bool {
    pt.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// Printed-versus-derived comparisons for the threefold.
pub fn errata_report() -> Vec<ErrataRecord> {
    let derived = interpolate();
    let printed = printed_bcd();
    let mut out: Vec<ErrataRecord> = ["B", "C", "D"]
        .iter()
        .zip(printed.iter().zip(&derived.numerators[1..4]))
        .map(|(name, (pp, dd))| {
            ErrataRecord::check(
                &format!("threefold polynomial {name}"),
                pp.to_string(),
                dd.to_string(),
                pp == dd,
                ErrataVerdict::Inconsistent,
                "Cramer's rule over Q[p, q, r, s, t], compared term by term",
            )
        })
        .collect();
    out.push(ErrataRecord::new(
        "coefficient d of the interpolating cubic",
        "D = D/6H",
        "d = D/6H",
        ErrataVerdict::Typo,
        "name collision between the coefficient and the numerator polynomial",
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: [i64; 5]) -> [BigInt; 5] {
        xs.map(BigInt::from)
    }

    #[test]
    fn interpolation_matches_printed() {
        let r = interpolate();
        let [pb, pc, pd] = printed_bcd();
        assert_eq!(r.numerators[1], pb);
        assert_eq!(r.numerators[2], pc);
        assert_eq!(r.numerators[3], pd);
        assert_eq!(r.numerators[0].homogeneous_degree(), Some(2));
        for n in &r.numerators[1..] {
            assert_eq!(n.homogeneous_degree(), Some(3));
        }
        assert!(errata_report().iter().take(3).all(|e| e.verdict == ErrataVerdict::Confirmed));
    }

    #[test]
    fn interpolation_conditions_hold() {
        // f(x_i, y_i) * 6H = 0 identically
        let r = interpolate();
        let ys = MultiPoly::vars_of(&VARS);
        let six_h = r.h.scale(&int(6));
        let [a, b, c, d, e] = &r.numerators;
        for (&x, y) in XS.iter().zip(&ys) {
            let s = |n: i64| MultiPoly::scalar(int(n));
            let cubic = &(&(&(b * &s(x * x * x)) + &(c * &s(x * x))) + &(d * &s(x))) + e;
            let f = &(&(&(y * y) * &six_h) + &(a * y)) - &cubic;
            assert!(f.is_zero(), "x = {x}");
        }
        assert_eq!(r.coefficients(&[1, 2, 3, 4, 5].map(int)), None);
    }

    #[test]
    fn automorphisms_preserve_t() {
        let f = interpolate().t_form();
        let rev = f.permute(&[4, 3, 2, 1, 0]);
        assert_eq!(rev, f);
        let neg = f.compose(&MultiPoly::vars_of(&VARS).iter().map(|v| -v).collect::<Vec<_>>());
        assert_eq!(neg, f);
    }

    #[test]
    fn membership_examples() {
        assert!(t_contains(&b([1, 1, 1, 1, 1])));
        assert!(t_contains(&b([1, 1, 1, 2, 2])));
        let f = interpolate().t_form();
        for pt in [[1, 2, 5, 7, 11], [3, -1, 0, 2, -4], [1, 1, 1, 2, 2]] {
            assert_eq!(t_contains(&b(pt)), f.eval_ints(&pt).is_zero());
        }
        assert!(!t_contains(&b([1, 2, 5, 7, 11])));
    }

    #[test]
    fn classification() {
        assert_eq!(is_trivial(&[1i64, 1, 1, 7, 7]), Triviality::Line(1));
        assert_eq!(is_trivial(&[3i64, 3, 5, 3, 5]), Triviality::Line(2));
        assert_eq!(is_trivial(&[2i64, 2, 9, 9, 9]), Triviality::Line(10));
        assert_eq!(is_trivial(&[3i64, -1, 0, 2, -4]), Triviality::Nontrivial);
        assert_eq!(is_trivial(&[1i64, 2, 3, 4, 5]), Triviality::Hyperplane);
        assert_eq!(is_trivial(&[4i64, 4, 4, 4, -3]), Triviality::FourEqual(5));
        assert_eq!(line_names()[0], "L1: p=q=r, s=t");
        assert_eq!(line_names()[1], "L2: p=q=s, r=t");
        assert_eq!(line_names()[9], "L10: r=s=t, p=q");
        // every point of every line and four-equal plane lies on the threefold
        for pt in [[1, 1, 1, 7, 7], [2, 5, 2, 2, 5], [0, 3, 3, 3, 3], [4, 4, 4, 4, -3]] {
            assert!(t_contains(&b(pt)));
        }
    }

    #[test]
    fn ap5_map_identity() {
        // Y^2 - (X^3 - 432(c^2 - 3bd)X + K) = 46656 b^2 f(x, y)
        let vars = ["a", "b", "c", "d", "e", "x", "y"];
        let src = "(108*b*(a+2*y))^2 - (12*(c+3*b*x))^3 + 432*(c^2-3*b*d)*12*(c+3*b*x) - 432*(27*a^2*b^2+8*c^3-36*b*c*d+108*b^2*e) - 46656*b^2*(y^2+a*y-(b*x^3+c*x^2+d*x+e))";
        assert!(MultiPoly::parse(&vars, src).unwrap().is_zero());
        // c^2 - 3bd = (C^2 - 3BD) / (6H)^2
        let r = interpolate();
        let pt = [3, -1, 0, 2, -4].map(int);
        let [_, bb, cc, dd, _] = r.coefficients(&pt).unwrap();
        let h6 = r.h.eval(&pt) * int(6);
        assert_eq!(&cc * &cc - int(3) * &bb * &dd, r.t_form().eval(&pt) / (&h6 * &h6));
    }

    #[test]
    fn ap5_rejects() {
        assert_eq!(ap5_from_point(&b([1, 1, 1, 1, 1])), Err(SexticError::Trivial(Triviality::Line(1))));
        assert_eq!(ap5_from_point(&b([1, 2, 3, 4, 5])), Err(SexticError::ZeroH));
        assert_eq!(ap5_from_point(&b([1, 2, 5, 7, 11])), Err(SexticError::NotOnT));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical([3, -1, 0, 2, -4]), [-4, 2, 0, -1, 3]);
        assert_eq!(canonical([1, 1, 1, 1, 1]), [-1, -1, -1, -1, -1]);
        assert!(is_primitive(&[2, 4, 6, 8, 3]) && !is_primitive(&[2, 4, 6, 8, 0]));
    }
}
