//! Laurent polynomials over a finite field in `dim` commuting variables.
//!
//! Exponent vectors live in Z^dim, so monomials are units. Terms are kept in a
//! BTreeMap keyed by exponent vector; display order is graded-lexicographic.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use std::collections::BTreeMap;
use std::fmt;

pub type Exps = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    pub field: Field,
    pub dim: usize,
    terms: BTreeMap<Exps, Elem>,
}

pub fn exps_add(a: &[i32], b: &[i32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exps_neg(a: &[i32]) -> Exps {
    a.iter().map(|x| -x).collect()
}

impl LaurentPoly {
    pub fn zero(field: &Field, dim: usize) -> Self {
        LaurentPoly {
            field: field.clone(),
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, dim: usize, c: Elem) -> Self {
        let mut p = Self::zero(field, dim);
        if c % field.order() != 0 {
            p.terms.insert(vec![0; dim], c % field.order());
        }
        p
    }

    pub fn one(field: &Field, dim: usize) -> Self {
        Self::constant(field, dim, 1)
    }

    pub fn monomial(field: &Field, exps: Exps, c: Elem) -> Self {
        let dim = exps.len();
        let mut p = Self::zero(field, dim);
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Monomial x_i^e.
    pub fn var(field: &Field, dim: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = e;
        Self::monomial(field, exps, 1)
    }

    pub fn from_terms(field: &Field, dim: usize, terms: &[(Exps, Elem)]) -> Self {
        let mut p = Self::zero(field, dim);
        for (e, c) in terms {
            p.add_term(e.clone(), *c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Exps, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Elem {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Coefficient at the identity of the translation group.
    pub fn trace(&self) -> Elem {
        self.coeff(&vec![0; self.dim])
    }

    /// Max over terms of the sum of absolute exponent values.
    pub fn abs_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|x| x.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }

    /// True iff the polynomial is a single term (hence a unit of the Laurent ring).
    pub fn is_monomial_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn single_term(&self) -> Option<(Exps, Elem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (e.clone(), *c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exps: Exps, c: Elem) {
        debug_assert_eq!(exps.len(), self.dim);
        if c == 0 {
            return;
        }
        debug_assert!(c < self.field.order());
        let f = self.field.clone();
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compat(&self, rhs: &Self) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_compat(rhs).expect("incompatible polynomials");
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_compat(rhs).expect("incompatible polynomials");
        let mut out = Self::zero(&self.field, self.dim);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(exps_add(ea, eb), self.field.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn mul_term(&self, exps: &[i32], c: Elem) -> Self {
        let mut out = Self::zero(&self.field, self.dim);
        for (e, cc) in self.terms.iter() {
            out.add_term(exps_add(e, exps), self.field.mul(*cc, c));
        }
        out
    }

    pub fn scale(&self, c: Elem) -> Self {
        self.mul_term(&vec![0; self.dim], c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.dim);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The antipode: x^a -> x^{-a} on every term. A ring automorphism.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(&self.field, self.dim);
        for (e, c) in self.terms.iter() {
            out.terms.insert(exps_neg(e), *c);
        }
        out
    }

    /// Per-axis minimum exponent over all terms, None for the zero polynomial.
    pub fn min_exps(&self) -> Option<Exps> {
        if self.is_zero() {
            return None;
        }
        let mut m = vec![i32::MAX; self.dim];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        Some(m)
    }

    pub fn max_exps(&self) -> Option<Exps> {
        if self.is_zero() {
            return None;
        }
        let mut m = vec![i32::MIN; self.dim];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).max(ei);
            }
        }
        Some(m)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Multiply by the least monomial making all exponents nonnegative.
    /// Returns (normalized polynomial, the monomial exponent used).
    pub fn normalize_monomial(&self) -> (Self, Exps) {
        match self.min_exps() {
            None => (self.clone(), vec![0; self.dim]),
            Some(m) => {
                let shift: Exps = m.iter().map(|&x| if x < 0 { -x } else { 0 }).collect();
                (self.mul_term(&shift, 1), shift)
            }
        }
    }

    /// Strip the full monomial content: translate so every axis has minimum
    /// exponent 0 and scale the graded-lex leading coefficient to 1.
    pub fn strip_unit(&self) -> Self {
        match self.min_exps() {
            None => self.clone(),
            Some(m) => {
                let shift: Exps = m.iter().map(|&x| -x).collect();
                let p = self.mul_term(&shift, 1);
                let lc = p.terms.values().next_back().copied().unwrap_or(1);
                p.scale(self.field.inv(lc).unwrap())
            }
        }
    }

    /// Exact division within the Laurent ring: returns q with self = q * d.
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        self.check_compat(d).ok()?;
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.field, self.dim));
        }
        // run ordinary division in the polynomial subring after shifting
        let (num, nshift) = self.normalize_monomial();
        let (den, dshift) = d.normalize_monomial();
        let mut rem = num;
        let mut quo = Self::zero(&self.field, self.dim);
        // leading term of den under the map order (lex on exponent vectors)
        let (dle, dlc) = den.terms.iter().next_back().map(|(e, c)| (e.clone(), *c))?;
        let max_steps = 4 * (rem.term_count() + 8) * (rem.abs_degree() as usize + 8);
        for _ in 0..max_steps {
            if rem.is_zero() {
                // num = quo * den, i.e. self * x^nshift = quo * d * x^dshift
                let back: Exps = dshift.iter().zip(&nshift).map(|(d, n)| d - n).collect();
                return Some(quo.mul_term(&back, 1));
            }
            let (rle, rlc) = rem
                .terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), *c))
                .unwrap();
            if rle.iter().zip(&dle).any(|(r, d)| r < d) {
                return None;
            }
            let me: Exps = rle.iter().zip(&dle).map(|(r, d)| r - d).collect();
            let mc = self.field.div(rlc, dlc).unwrap();
            quo.add_term(me.clone(), mc);
            rem = rem.sub(&den.mul_term(&me, mc));
        }
        None
    }

    /// Square root at characteristic 2 (Frobenius inverse): exists iff all
    /// exponents are even and, over F_2, always on the coefficients.
    pub fn sqrt_char2(&self) -> Option<Self> {
        if self.field.characteristic() != 2 || self.field.extension_degree() != 1 {
            return None;
        }
        let mut out = Self::zero(&self.field, self.dim);
        for (e, c) in self.terms.iter() {
            if e.iter().any(|x| x % 2 != 0) {
                return None;
            }
            out.terms.insert(e.iter().map(|x| x / 2).collect(), *c);
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// formatting

const VAR_LETTERS: [&str; 4] = ["x", "y", "z", "w"];

pub fn var_name(dim: usize, i: usize) -> String {
    if dim <= 4 {
        VAR_LETTERS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded lexicographic on exponent vectors, descending
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<i32>(), b.iter().sum::<i32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, e) in keys.iter().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            let c = self.terms[*e];
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || e.iter().all(|&x| x == 0) {
                factors.push(format!("{c}"));
            }
            for (i, &ei) in e.iter().enumerate() {
                if ei == 1 {
                    factors.push(var_name(self.dim, i));
                } else if ei != 0 {
                    factors.push(format!("{}^{}", var_name(self.dim, i), ei));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: Field,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    /// var ('^' int)? ; returns (index, exponent)
    fn factor(&mut self) -> Result<(usize, i32)> {
        let c = self.peek().ok_or(Error::Parse {
            pos: self.pos,
            msg: "expected variable".into(),
        })?;
        let idx = match c {
            b'x' => {
                self.pos += 1;
                // xN form (required for dim > 4, accepted for any dim)
                if self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    let n = self.integer()?;
                    if n < 1 || n as usize > self.dim {
                        return self.err(format!("variable x{n} out of range for dimension {}", self.dim));
                    }
                    (n - 1) as usize
                } else {
                    0
                }
            }
            b'y' | b'z' | b'w' if self.dim <= 4 => {
                self.pos += 1;
                match c {
                    b'y' => 1,
                    b'z' => 2,
                    _ => 3,
                }
            }
            _ => return self.err(format!("unexpected character '{}'", c as char)),
        };
        if idx >= self.dim {
            return self.err(format!(
                "variable {} out of range for dimension {}",
                var_name(4, idx),
                self.dim
            ));
        }
        let mut exp = 1i32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e.unsigned_abs() > i32::MAX as u64 {
                return self.err("exponent out of range");
            }
            exp = e as i32;
        }
        Ok((idx, exp))
    }

    fn term(&mut self) -> Result<(Exps, Elem)> {
        let mut coeff: Elem = 1;
        let mut exps = vec![0i32; self.dim];
        let c = self.peek().ok_or(Error::Parse {
            pos: self.pos,
            msg: "expected term".into(),
        })?;
        if c.is_ascii_digit() {
            let n = self.integer()?;
            coeff = self.field.from_int(n);
        } else {
            let (i, e) = self.factor()?;
            exps[i] += e;
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let (i, e) = self.factor()?;
            exps[i] += e;
        }
        Ok((exps, coeff))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(&self.field, self.dim);
        let mut sign = 1i64;
        loop {
            let (exps, coeff) = self.term()?;
            let c = if sign == 1 {
                coeff
            } else {
                self.field.neg(coeff)
            };
            out.add_term(exps, c);
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
                None => return Ok(out),
            }
        }
    }
}

/// Parse a polynomial string. Variables are x, y, z, w for `dim <= 4` or
/// x1..xN in general; exponents may be negative; terms are joined by '+'
/// (or '-'); '*' separates coefficients and variables. "0" parses to zero.
pub fn parse_poly(s: &str, field: &Field, dim: usize) -> Result<LaurentPoly> {
    let mut p = Parser {
        bytes: s.as_bytes(),
        pos: 0,
        field: field.clone(),
        dim,
    };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = f2();
        let p = parse_poly("1+x+y^-1", &f, 2).unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(p.coeff(&[0, -1]), 1);
        assert_eq!(parse_poly("0", &f, 2).unwrap(), LaurentPoly::zero(&f, 2));
        // coefficients reduce mod p
        assert_eq!(parse_poly("2*x+x", &f, 1).unwrap(), parse_poly("x", &f, 1).unwrap());
        assert!(parse_poly("q+1", &f, 2).is_err());
        assert!(parse_poly("x^", &f, 2).is_err());
        assert!(parse_poly("z", &f, 2).is_err());
        assert!(parse_poly("x5", &f, 4).is_err());
    }

    #[test]
    fn parse_x_n_form() {
        let f = f2();
        let p = parse_poly("x1*x5^-2+1", &f, 5).unwrap();
        assert_eq!(p.coeff(&[1, 0, 0, 0, -2]), 1);
        assert_eq!(p.to_string(), "1+x1*x5^-2");
    }

    #[test]
    fn format_then_parse_roundtrip() {
        let f = f2();
        for s in ["1+x+y", "x*y^2+x^-3", "0", "x^2+x+1"] {
            let p = parse_poly(s, &f, 2).unwrap();
            let q = parse_poly(&p.to_string(), &f, 2).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn antipode_and_trace() {
        let f = f2();
        let p = parse_poly("1+x+y^-1", &f, 2).unwrap();
        let q = p.antipode();
        assert_eq!(q, parse_poly("1+x^-1+y", &f, 2).unwrap());
        assert_eq!(p.trace(), 1);
        assert_eq!(parse_poly("x+y", &f, 2).unwrap().trace(), 0);
    }

    #[test]
    fn abs_degree_example() {
        let f = f2();
        let p = parse_poly("x*y^2*z^2+x*y^-1", &f, 3).unwrap();
        assert_eq!(p.abs_degree(), 5);
    }

    #[test]
    fn exact_division() {
        let f = f2();
        let a = parse_poly("1+x^2*y^-2", &f, 2).unwrap();
        let b = parse_poly("1+x*y^-1", &f, 2).unwrap();
        let q = a.divide_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(parse_poly("1+x+y", &f, 2)
            .unwrap()
            .divide_exact(&b)
            .is_none());
    }

    #[test]
    fn sqrt_char2_works() {
        let f = f2();
        let p = parse_poly("1+x+y", &f, 2).unwrap();
        let sq = p.mul(&p);
        assert_eq!(sq.sqrt_char2().unwrap(), p);
        assert!(p.sqrt_char2().is_none());
    }
}
