use std::fmt;
use std::str::FromStr;

use super::curve::{Curve, Point};
use super::field::ExactField;

/// Group word `mult * P + T`, with T one of the three 2-torsion points or the identity.
///
/// Since every T has order two, any word in P and the T's reduces to this shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Recipe {
    pub mult: i64,
    /// 0 for none, otherwise the index 1..=3 of the torsion point.
    pub torsion: u8,
}

impl Recipe {
    pub fn new(mult: i64, torsion: u8) -> Self {
        assert!(torsion <= 3, "torsion index out of range");
        Recipe { mult, torsion }
    }

    pub fn apply<F: ExactField>(&self, c: &Curve<F>, p: &Point<F>, torsion: &[Point<F>; 3]) -> Point<F> {
        let mp = c.mul(self.mult, p);
        match self.torsion {
            0 => mp,
            i => c.add(&mp, &torsion[i as usize - 1]),
        }
    }

    /// P, -P, P+T1, -P+T1, ..., then 2P, -2P, ...: eight words per multiple.
    pub fn enumerate() -> impl Iterator<Item = Recipe> {
        (1i64..).flat_map(|m| (0u8..4).flat_map(move |t| [Recipe::new(m, t), Recipe::new(-m, t)]))
    }

    /// Additions and doublings needed by double-and-add, plus the torsion addition.
    pub fn operations(&self) -> u32 {
        let m = self.mult.unsigned_abs();
        let ops = if m <= 1 { 0 } else { (63 - m.leading_zeros()) + m.count_ones() - 1 };
        ops + u32::from(self.torsion != 0)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mult {
            0 if self.torsion == 0 => return write!(f, "O"),
            0 => return write!(f, "T{}", self.torsion),
            1 => write!(f, "P")?,
            -1 => write!(f, "-P")?,
            m => write!(f, "{m}P")?,
        }
        if self.torsion != 0 {
            write!(f, "+T{}", self.torsion)?;
        }
        Ok(())
    }
}

impl FromStr for Recipe {
    type Err = String;

    /// Accepts sums like `2P+T1`, `-P + T3`, `-(P+T1)`, `T2`.
    fn from_str(src: &str) -> Result<Self, String> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match s.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => (true, inner.to_string()),
            None => (false, s.clone()),
        };
        if body.is_empty() {
            return Err(format!("empty recipe: {src:?}"));
        }
        let mut mult = 0i64;
        let mut tors = [false; 3];
        let mut rest = body.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = r[1..].find(['+', '-']).map_or(r.len(), |i| i + 1);
            let term = &r[..end];
            rest = &r[end..];
            if let Some(k) = term.strip_prefix('T') {
                let i: usize = k.parse().map_err(|_| format!("bad torsion term {term:?}"))?;
                if !(1..=3).contains(&i) {
                    return Err(format!("bad torsion term {term:?}"));
                }
                tors[i - 1] ^= true;
            } else if let Some(c) = term.strip_suffix('P') {
                let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| format!("bad term {term:?}"))? };
                mult += sign * c;
            } else if term == "O" {
            } else {
                return Err(format!("bad term {term:?}"));
            }
        }
        // T1 + T2 = T3
        let torsion = match tors {
            [false, false, false] | [true, true, true] => 0,
            [true, false, false] | [false, true, true] => 1,
            [false, true, false] | [true, false, true] => 2,
            [false, false, true] | [true, true, false] => 3,
        };
        Ok(Recipe { mult: if neg { -mult } else { mult }, torsion })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::int;
    use crate::arith::Rat;

    #[test]
    fn parse_and_display() {
        let r: Recipe = "-(P+T1)".parse().unwrap();
        assert_eq!(r, Recipe::new(-1, 1));
        assert_eq!(r.to_string(), "-P+T1");
        assert_eq!("2P + T1 + T2".parse::<Recipe>().unwrap(), Recipe::new(2, 3));
        assert_eq!("3P-P".parse::<Recipe>().unwrap(), Recipe::new(2, 0));
        assert_eq!("T2".parse::<Recipe>().unwrap().to_string(), "T2");
        assert!("Q".parse::<Recipe>().is_err());
        assert!("T4".parse::<Recipe>().is_err());
        for r in Recipe::enumerate().take(40) {
            assert_eq!(r.to_string().parse::<Recipe>().unwrap(), r);
        }
    }

    #[test]
    fn enumeration_order_and_cost() {
        let first: Vec<String> = Recipe::enumerate().take(4).map(|r| r.to_string()).collect();
        assert_eq!(first, ["P", "-P", "P+T1", "-P+T1"]);
        assert_eq!(Recipe::new(1, 0).operations(), 0);
        assert_eq!(Recipe::new(-3, 2).operations(), 3);
        assert_eq!(Recipe::new(8, 0).operations(), 3);
    }

    #[test]
    fn applies_on_curve() {
        let e = Curve::from_ints(-82971, 497610).unwrap();
        let p = Point::Affine(int(-273), int(1674));
        let ts: [Point<Rat>; 3] = [Point::Affine(int(6), int(0)), Point::Affine(int(285), int(0)), Point::Affine(int(-291), int(0))];
        let q = Recipe::new(-2, 3).apply(&e, &p, &ts);
        assert_eq!(q, e.add(&e.mul(-2, &p), &ts[2]));
        // T1 + T2 = T3 on this curve
        assert_eq!(e.add(&ts[0], &ts[1]), ts[2]);
    }
}
