use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rat::{int, rat_to_string, Rat};
use super::upoly::UniPoly;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Mono, Rat>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        if self.nvars() > 0 && o.nvars() > 0 {
            return false;
        }
        let (a, b) = MultiPoly::unify(self, o);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()), terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: Rat) -> Self {
        let mut p = self.empty_like();
        p.add_term(Mono(vec![0; self.nvars()]), c);
        p
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        Self::zero(vars).constant_like(c)
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.add_term(Mono(e), Rat::one());
        p
    }

    /// All variables of `vars` as polynomials, in order.
    pub fn vars_of(vars: &[&str]) -> Vec<Self> {
        vars.iter().map(|v| Self::var(vars, v)).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    fn check_vars(&self, o: &Self) {
        assert!(self.vars == o.vars, "incompatible variable sets");
    }

    /// Rational constant over no variables; combines with polynomials over any variable set.
    pub fn scalar(c: Rat) -> Self {
        Self::constant(&[], c)
    }

    /// Brings a pair to a common variable set, lifting a scalar if needed.
    fn unify<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        let lift = |p: &Self, to: &Self| {
            let mut out = to.empty_like();
            for c in p.terms.values() {
                out.add_term(Mono(vec![0; to.nvars()]), c.clone());
            }
            out
        };
        match (a.nvars(), b.nvars()) {
            (0, m) if m > 0 => (Cow::Owned(lift(a, b)), Cow::Borrowed(b)),
            (n, 0) if n > 0 => (Cow::Borrowed(a), Cow::Owned(lift(b, a))),
            _ => {
                a.check_vars(b);
                (Cow::Borrowed(a), Cow::Borrowed(b))
            }
        }
    }

    /// The constant value, if this polynomial has degree at most 0.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.degree() == 0).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = self.empty_like();
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_ints(&self, point: &[i64]) -> Rat {
        self.eval(&point.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    /// Replaces variable `i` by `g`.
    pub fn substitute(&self, i: usize, g: &MultiPoly) -> Self {
        self.check_vars(g);
        let maxe = self.degree_in(i) as usize;
        let mut pows = vec![self.constant_like(Rat::one())];
        for k in 1..=maxe {
            pows.push(&pows[k - 1] * g);
        }
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest[i] as usize;
            rest[i] = 0;
            let mut mono = self.empty_like();
            mono.add_term(Mono(rest), c.clone());
            out = &out + &(&mono * &pows[e]);
        }
        out
    }

    /// Simultaneous substitution of every variable; `subs` may live in another ring.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars());
        let target = &subs[0];
        let mut out = target.empty_like();
        for (m, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (g, &e) in subs.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &g.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            out.add_term(Mono(e), c * int(k as i64));
        }
        out
    }

    /// Renames by index map: variable j of the result is variable perm[j] of self.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars());
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars()];
            for (j, &pj) in perm.iter().enumerate() {
                e[j] = m.0[pj];
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Coefficients of powers of variable `i`, lowest first.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let n = self.degree_in(i) as usize;
        let mut out = vec![self.empty_like(); n + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    /// Converts a polynomial in the single variable `i` (all others absent).
    pub fn to_upoly(&self, i: usize) -> Option<UniPoly> {
        let mut cs = vec![Rat::zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            cs[m.0[i] as usize] = c.clone();
        }
        Some(UniPoly::new(cs))
    }

    pub fn from_upoly(vars: &[&str], i: usize, f: &UniPoly) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in f.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = k as u32;
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    /// Parses an expression with +, -, *, ^, parentheses, integers and the given variables.
    pub fn parse(vars: &[&str], src: &str) -> Result<Self, String> {
        let toks = tokenize(src)?;
        let mut ps = Parser { toks, pos: 0, zero: Self::zero(vars) };
        let e = ps.expr()?;
        if ps.pos != ps.toks.len() {
            return Err(format!("trailing input at token {}", ps.pos));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    zero: MultiPoly,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, String> {
        let mut acc = if self.eat('-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                match self.toks.get(self.pos).cloned() {
                    Some(Tok::Num(n)) => {
                        self.pos += 1;
                        acc = acc.scale(&Rat::new(num_bigint::BigInt::one(), n));
                    }
                    _ => return Err("only division by integer literals is supported".into()),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, String> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                    Ok(base.pow(e))
                }
                _ => Err("expected integer exponent".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.zero.constant_like(Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.zero.index_of(&name).ok_or_else(|| format!("unknown variable {name}"))?;
                let mut e = vec![0; self.zero.nvars()];
                e[i] = 1;
                let mut p = self.zero.clone();
                p.add_term(Mono(e), Rat::one());
                Ok(p)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("unbalanced parenthesis".into());
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let (a, o) = MultiPoly::unify(self, o);
        let mut out = a.into_owned();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let (a, o) = MultiPoly::unify(self, o);
        let mut out = a.into_owned();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let (a, o) = MultiPoly::unify(self, o);
        let mut out = a.empty_like();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &o.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(e), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let a = c.abs();
            let mut sep = "";
            if !a.is_one() || m.0.iter().all(|&e| e == 0) {
                write!(f, "{}", rat_to_string(&a))?;
                sep = "*";
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => continue,
                    1 => write!(f, "{sep}{v}")?,
                    _ => write!(f, "{sep}{v}^{e}")?,
                }
                sep = "*";
            }
        }
        Ok(())
    }
}
