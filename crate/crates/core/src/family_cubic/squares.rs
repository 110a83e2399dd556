use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rat::int;
use crate::arith::{Rat, UniPoly};

/// The two octics whose rational squares would extend the progression to five terms, lowest degree first.
pub const OCTICS: [(&str, [i64; 9]); 2] = [
    ("C1", [-791, 12804, 12828, -17388, -34884, -21384, -4428, 648, 324]),
    ("C2", [397009, 1332624, 1985988, 1704132, 912816, 309096, 63612, 7128, 324]),
];

/// Shift of x = (t + shift) p(t) for each octic.
const SHIFTS: [i64; 2] = [-1, 4];

pub fn p_poly() -> UniPoly {
    (&(&UniPoly::from_ints(&[3, 2]) * &UniPoly::from_ints(&[10, 9, 3])) * &UniPoly::from_ints(&[17, 18, 6])).scale(&int(108))
}

fn u_poly() -> UniPoly {
    UniPoly::from_ints(&[0, 3, 1])
}

/// k(t) = -9 p(t)^2 h(t^2 + 3t), with h = 108U^4 + 612U^3 + 300U^2 - 3504U - 5329.
pub fn k_corrected() -> UniPoly {
    let p = p_poly();
    let h = UniPoly::from_ints(&[-5329, -3504, 300, 612, 108]).compose(&u_poly());
    (&(&p * &p) * &h).scale(&int(-9))
}

/// k(t) as printed: -324^2 (2t+3)^2 (3t^2+9t+10)^2 (6t^2+18t+17)^2 h(t), with leading coefficient 1 in h.
pub fn k_printed() -> UniPoly {
    let p = p_poly();
    let h = UniPoly::from_ints(&[-5329, -3504, 300, 612, 1]).compose(&u_poly());
    (&(&p * &p) * &h).scale(&int(-9))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OcticCheck {
    pub octic: String,
    /// ((t + shift) p)^3 + k == 9 p^2 * octic with the corrected k.
    pub corrected_matches: bool,
    /// Same with the printed k.
    pub printed_matches: bool,
}

pub fn octic_cross_check() -> Vec<OcticCheck> {
    let p = p_poly();
    let nine_p2 = (&p * &p).scale(&int(9));
    OCTICS
        .iter()
        .zip(SHIFTS)
        .map(|((name, cs), sh)| {
            let x = &UniPoly::from_ints(&[sh, 1]) * &p;
            let cube = &(&x * &x) * &x;
            let rhs = &nine_p2 * &UniPoly::from_ints(cs);
            OcticCheck {
                octic: name.to_string(),
                corrected_matches: &cube + &k_corrected() == rhs,
                printed_matches: &cube + &k_printed() == rhs,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareHit {
    pub octic: String,
    pub t: String,
    /// Square root of b^8 * octic(a/b).
    pub root: String,
    pub k_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSearch {
    pub bound: i64,
    pub parameters_examined: u64,
    /// Square values with k(t) != 0.
    pub hits: Vec<SquareHit>,
    /// Square values where k(t) = 0, reported but excluded.
    pub excluded: Vec<SquareHit>,
}

fn homogeneous(cs: &[i64; 9], a: i128, b: i128) -> i128 {
    // sum c_i a^i b^(8-i), Horner in a/b
    let mut acc: i128 = 0;
    let mut bpow: i128 = 1;
    for (i, &c) in cs.iter().enumerate().rev() {
        acc = acc * a + c as i128 * bpow;
        if i > 0 {
            bpow *= b;
        }
    }
    acc
}

fn square_root(v: i128) -> Option<u128> {
    if v < 0 {
        return None;
    }
    let r = (v as u128).sqrt();
    (r * r == v as u128).then_some(r)
}

/// Scans t = a/b in lowest terms with b > 0 and max(|a|, b) <= bound.
pub fn genus3_square_search(bound: i64, threads: usize) -> SquareSearch {
    assert!(bound >= 1 && bound <= 5000, "bound out of the exact i128 range");
    let k = k_corrected();
    let run = || {
        (1..=bound)
            .into_par_iter()
            .map(|b| {
                let mut out = Vec::new();
                let mut count = 0u64;
                for a in -bound..=bound {
                    if a.gcd(&b) != 1 {
                        continue;
                    }
                    count += 1;
                    for (name, cs) in &OCTICS {
                        if let Some(r) = square_root(homogeneous(cs, a as i128, b as i128)) {
                            let t = Rat::new(a.into(), b.into());
                            let k_zero = k.eval(&t) == int(0);
                            out.push(SquareHit { octic: name.to_string(), t: t.to_string(), root: r.to_string(), k_zero });
                        }
                    }
                }
                (count, out)
            })
            .collect::<Vec<_>>()
    };
    let slabs = if threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(run)
    };
    let mut report = SquareSearch { bound, parameters_examined: 0, hits: vec![], excluded: vec![] };
    for (count, hits) in slabs {
        report.parameters_examined += count;
        for h in hits {
            if h.k_zero {
                report.excluded.push(h);
            } else {
                report.hits.push(h);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    fn homogeneous_checked(cs: &[i64; 9], a: i128, b: i128) -> i128 {
        // b^(8-i) a^i directly, for the test oracle
        cs.iter().enumerate().map(|(i, &c)| c as i128 * a.pow(i as u32) * b.pow(8 - i as u32)).sum()
    }

    #[test]
    fn horner_matches_direct_sum() {
        for (_, cs) in &OCTICS {
            for (a, b) in [(0, 1), (1, 1), (-3, 2), (199, 200), (-200, 7)] {
                assert_eq!(homogeneous(cs, a, b), homogeneous_checked(cs, a, b));
            }
        }
    }

    #[test]
    fn octics_match_the_corrected_k_only() {
        for c in octic_cross_check() {
            assert!(c.corrected_matches, "{}", c.octic);
            assert!(!c.printed_matches, "{}", c.octic);
        }
    }

    #[test]
    fn corrected_k_at_one() {
        assert_eq!(k_corrected().eval(&int(1)), int(-111610206808689600));
        assert_ne!(k_printed().eval(&int(1)), int(-111610206808689600));
        // only 2t + 3 contributes a rational zero
        assert_eq!(k_corrected().rational_roots(), vec![rat(-3, 2)]);
    }

    #[test]
    fn t_zero_on_second_octic() {
        // 397009 lies strictly between 630^2 and 631^2
        assert_eq!(square_root(397009), None);
        assert_eq!(homogeneous(&OCTICS[1].1, 0, 1), 397009);
    }

    #[test]
    fn small_search_has_no_hits() {
        let r = genus3_square_search(20, 2);
        assert!(r.hits.is_empty());
        assert!(r.excluded.iter().all(|h| h.t == "-3/2"));
        assert_eq!(r, genus3_square_search(20, 1));
    }
}
