use serde_json::{json, Value};

use super::Parity;
use crate::arith::rat::parse_rat;
use crate::arith::Rat;
use crate::ec::serial::point_json;
use crate::ec::{certify_order, Curve, OrderCertificate, Point};
use crate::transforms::fibrations::{even_curve, odd_curve};

/// Published generators of the odd curves, (n, x, y).
pub const ODD_TABLE: &[(u32, &str, &str)] = &[
    (2, "303", "17820"),
    (3, "1167", "6966"),
    (4, "4623", "27702"),
    (4, "11773", "1175552"),
    (5, "18447", "110646"),
    (5, "350011167/6241", "6184493104374/493039"),
    (6, "73743", "442422"),
    (7, "294927", "1769526"),
    (7, "153394089/400", "1214402001813/800"),
    (7, "124356529/256", "1101957449705/4096"),
    (8, "1179663", "7077942"),
];

/// Published generators of the even curves, (n, x, y).
pub const EVEN_TABLE: &[(u32, &str, &str)] = &[
    (2, "3840", "176256"),
    (3, "80808", "14478912"),
    (3, "130704", "40007520"),
    (4, "1230432", "116328960"),
    (4, "31769376/25", "24804389376/125"),
    (5, "36278088", "68748343488"),
    (6, "836384640", "5022400795776"),
    (7, "19863352968", "370669722011712"),
    (8, "480955252992", "27480236025415680"),
];

#[derive(Clone, Debug)]
pub struct Repair {
    pub edit: String,
    pub point: Point<Rat>,
    pub certificate: OrderCertificate,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub parity: Parity,
    pub n: u32,
    pub printed: (String, String),
    pub point: Point<Rat>,
    pub on_curve: bool,
    /// Present only for on-curve points.
    pub certificate: Option<OrderCertificate>,
    /// One-edit candidates that land on the curve, for off-curve rows.
    pub repairs: Vec<Repair>,
}

impl TableRow {
    pub fn passes(&self) -> bool {
        self.on_curve && self.certificate.as_ref().is_some_and(|c| c.verdict == crate::ec::Verdict::Infinite)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": match self.parity { Parity::Odd => "odd", Parity::Even => "even" },
            "n": self.n,
            "printed": [self.printed.0, self.printed.1],
            "on_curve": self.on_curve,
            "certificate": self.certificate.as_ref().map(|c| c.to_json()),
            "repairs": self.repairs.iter().map(|r| json!({
                "edit": r.edit,
                "point": point_json(&r.point),
                "certificate": r.certificate.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Variants of a decimal integer string differing by one dropped or inserted digit, or by sign.
fn integer_edits(s: &str) -> Vec<(String, String)> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, s),
    };
    let sign = if neg { "-" } else { "" };
    let mut out = vec![(format!("negate {s}"), if neg { digits.to_string() } else { format!("-{digits}") })];
    for i in 0..digits.len() {
        let d = format!("{}{}", &digits[..i], &digits[i + 1..]);
        if !d.is_empty() && !(d.starts_with('0') && d.len() > 1) {
            out.push((format!("drop digit {} of {s}", i + 1), format!("{sign}{d}")));
        }
    }
    for i in 0..=digits.len() {
        for c in '0'..='9' {
            if i == 0 && c == '0' {
                continue;
            }
            let d = format!("{}{c}{}", &digits[..i], &digits[i..]);
            out.push((format!("insert {c} at {} of {s}", i + 1), format!("{sign}{d}")));
        }
    }
    out
}

/// Variants of a rational string obtained by one edit to its numerator or denominator.
fn rational_edits(s: &str) -> Vec<(String, Rat)> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let mut out = Vec::new();
    for (what, v) in integer_edits(num) {
        if let Some(r) = parse_rat(&format!("{v}/{den}")) {
            out.push((format!("{what} (numerator)"), r));
        }
    }
    if s.contains('/') {
        for (what, v) in integer_edits(den) {
            if let Some(r) = parse_rat(&format!("{num}/{v}")) {
                out.push((format!("{what} (denominator)"), r));
            }
        }
    }
    out
}

/// One-edit changes to either coordinate that land on the curve, each order-certified.
pub fn repair_probe(c: &Curve<Rat>, x: &str, y: &str) -> Vec<Repair> {
    let (Some(x0), Some(y0)) = (parse_rat(x), parse_rat(y)) else { return vec![] };
    let xs = rational_edits(x).into_iter().map(|(e, r)| (format!("x: {e}"), Point::Affine(r, y0.clone())));
    let ys = rational_edits(y).into_iter().map(|(e, r)| (format!("y: {e}"), Point::Affine(x0.clone(), r)));
    let mut out: Vec<Repair> = Vec::new();
    for (edit, point) in xs.chain(ys) {
        if c.on_curve(&point) && out.iter().all(|r| r.point != point) {
            let certificate = certify_order(c, &point);
            out.push(Repair { edit, point, certificate });
        }
    }
    out
}

fn check_row(parity: Parity, n: u32, x: &str, y: &str) -> TableRow {
    let c = match parity {
        Parity::Odd => odd_curve(n),
        Parity::Even => even_curve(n),
    };
    let point = Point::Affine(parse_rat(x).expect("table x"), parse_rat(y).expect("table y"));
    let on_curve = c.on_curve(&point);
    let (certificate, repairs) = if on_curve { (Some(certify_order(&c, &point)), vec![]) } else { (None, repair_probe(&c, x, y)) };
    TableRow { parity, n, printed: (x.into(), y.into()), point, on_curve, certificate, repairs }
}

/// Every published generator, odd table first.
pub fn verify_generator_tables() -> Vec<TableRow> {
    let odd = ODD_TABLE.iter().map(|&(n, x, y)| check_row(Parity::Odd, n, x, y));
    let even = EVEN_TABLE.iter().map(|&(n, x, y)| check_row(Parity::Even, n, x, y));
    odd.chain(even).collect()
}
