//! Sparse multivariate Laurent polynomials over `Z` with big-integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`]; zero coefficients are never
//! stored, so structural equality is polynomial equality.

use alloc::collections::{btree_map, BTreeMap};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A polynomial variable. Declaration order is the rendering order, which agrees
/// with byte order of the names except that `x` indices compare numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The generic pairing variable `Q`.
    BigQ,
    A,
    Q,
    /// `s` with `s^2 = q` (or `s^2 = t`): doubled-exponent variable for half powers.
    S,
    T,
    /// Monodromy variable `x_i`, `i >= 1`.
    X(u32),
    Z,
}

impl Var {
    pub fn name(self) -> String {
        match self {
            Var::BigQ => "Q".into(),
            Var::A => "a".into(),
            Var::Q => "q".into(),
            Var::S => "s".into(),
            Var::T => "t".into(),
            Var::X(i) => format!("x{i}"),
            Var::Z => "z".into(),
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "Q" => Var::BigQ,
            "a" => Var::A,
            "q" => Var::Q,
            "s" => Var::S,
            "t" => Var::T,
            "z" => Var::Z,
            _ => {
                let idx = name.strip_prefix('x')?;
                if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                Var::X(idx.parse().ok().filter(|&i| i >= 1)?)
            }
        })
    }
}

/// Sparse exponent vector: sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Divides when every exponent of `other` is at most the matching exponent here
    /// and both are non-negative, i.e. ordinary polynomial divisibility.
    fn poly_div(&self, other: &Monomial) -> Option<Monomial> {
        let q = self.mul(&other.inverse());
        q.0.iter().all(|&(_, e)| e > 0).then_some(q)
    }
}

/// Lexicographic order on dense exponent vectors (absent = 0), variables in `Var` order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Equal if e == f => {
                        i += 1;
                        j += 1;
                    }
                    Ordering::Equal => return e.cmp(&f),
                    Ordering::Less => return e.cmp(&0),
                    Ordering::Greater => return 0.cmp(&f),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(BigInt::from(c), Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigInt::one(), Monomial::var(v, 1))
    }

    /// `c * v^e`.
    pub fn monomial(c: i64, v: Var, e: i32) -> Self {
        Self::term(BigInt::from(c), Monomial::var(v, e))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Units of the Laurent ring: `±` a monomial.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        let (m, c) = self.as_monomial()?;
        (c.abs().is_one()).then(|| LaurentPoly::term(c.clone(), m.inverse()))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt, m: &Monomial) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Non-negative powers of anything; negative powers only of units and monomials.
    pub fn pow(&self, k: i64) -> Result<LaurentPoly> {
        if k < 0 {
            let (m, c) = self.as_monomial().ok_or(Error::NegativePower)?;
            if !c.abs().is_one() {
                return Err(Error::NegativePower);
            }
            let k = i32::try_from(k).map_err(|_| Error::NegativePower)?;
            let c = if k % 2 == 0 { BigInt::one() } else { c.clone() };
            return Ok(LaurentPoly::term(c, m.pow(k)));
        }
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn min_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Rewrites every exponent of `v` as `f(e)`, renaming the variable to `to`.
    pub fn map_var(&self, v: Var, to: Var, f: impl Fn(i32) -> i32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = m.mul(&Monomial::var(v, -e));
            out.add_term(rest.mul(&Monomial::var(to, f(e))), c.clone());
        }
        out
    }

    /// `v -> v^{-1}`.
    pub fn invert_var(&self, v: Var) -> LaurentPoly {
        self.map_var(v, v, |e| -e)
    }

    /// Image under the ring homomorphism fixing unbound variables. Negative powers of a
    /// non-unit binding are handled by clearing denominators and dividing exactly.
    pub fn substitute(&self, bindings: &BTreeMap<Var, LaurentPoly>) -> Result<LaurentPoly> {
        let mut shift = Monomial::one();
        let mut divisor = LaurentPoly::one();
        for (&v, b) in bindings {
            let lo = self.min_exponent(v);
            if lo < 0 && b.unit_inverse().is_none() {
                shift = shift.mul(&Monomial::var(v, -lo));
                divisor = &divisor * &b.pow(i64::from(-lo))?;
            }
        }
        let mut powers: BTreeMap<(Var, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let m = m.mul(&shift);
            let mut t = LaurentPoly::term(c.clone(), Monomial::one());
            let mut free = Monomial::one();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    None => free = free.mul(&Monomial::var(v, e)),
                    Some(b) => {
                        let p = match powers.entry((v, e)) {
                            btree_map::Entry::Occupied(o) => o.into_mut(),
                            btree_map::Entry::Vacant(slot) => {
                                slot.insert(b.pow(i64::from(e)).map_err(|_| Error::NonInvertible)?)
                            }
                        };
                        t = &t * p;
                    }
                }
            }
            out += t.scale(&BigInt::one(), &free);
        }
        if divisor.is_one() {
            Ok(out)
        } else {
            out.divide_exact(&divisor).map_err(|_| Error::NonInvertible)
        }
    }

    pub fn substitute_one(&self, v: Var, value: &LaurentPoly) -> Result<LaurentPoly> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    /// Smallest exponent of each variable, as a monomial.
    fn floor_monomial(&self) -> Monomial {
        let vars = self.variables();
        Monomial(vars.into_iter().map(|v| (v, self.min_exponent(v))).filter(|&(_, e)| e != 0).collect())
    }

    /// `r` with `r * d = self`, or `NotExact`.
    ///
    /// Both sides are shifted to polynomials with no monomial factor; an exact Laurent
    /// quotient of such polynomials is itself a polynomial, so lex-order long division
    /// by a single divisor decides it.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::NotExact);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let fp = self.floor_monomial();
        let fd = d.floor_monomial();
        let mut rem = self.scale(&BigInt::one(), &fp.inverse());
        let dn = d.scale(&BigInt::one(), &fd.inverse());
        let (lm, lc) = dn.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = if m == lm { Some(Monomial::one()) } else { m.poly_div(&lm) };
            let qm = qm.ok_or(Error::NotExact)?;
            if !(&c % &lc).is_zero() {
                return Err(Error::NotExact);
            }
            let qc = &c / &lc;
            rem -= dn.scale(&qc, &qm);
            quot.add_term(qm, qc);
        }
        Ok(quot.scale(&BigInt::one(), &fp.mul(&fd.inverse())))
    }

    /// Sum of coefficients with every variable set to 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Collapses a polynomial in `s` with only even exponents to one in `to`.
    pub fn halve_var(&self, s: Var, to: Var) -> Option<LaurentPoly> {
        self.terms.keys().all(|m| m.exponent(s) % 2 == 0).then(|| self.map_var(s, to, |e| e / 2))
    }

    /// Coefficients that fit in `i64`, for compact reporting.
    pub fn small_coeffs(&self) -> Option<Vec<(Monomial, i64)>> {
        self.terms.iter().map(|(m, c)| c.to_i64().map(|c| (m.clone(), c))).collect()
    }

    pub fn parse(text: &str) -> Result<LaurentPoly> {
        Parser { s: text.as_bytes(), i: 0 }.poly()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs.clone();
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Highest monomial first: `q + q^-1`, `a*z^-1 - a^-1*z^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter().map(|&(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) }).collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LaurentPoly::parse(s)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, col: self.i + 1, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        core::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("bad integer"))
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.i += 1;
        }
        let neg = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                true
            }
            Some(b'+') => {
                self.i += 1;
                false
            }
            _ => false,
        };
        let e = self.int()?.to_i32().ok_or_else(|| self.err("exponent out of range"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.i += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<(BigInt, Monomial)> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => Ok((self.int()?, Monomial::one())),
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.i;
                self.i += 1;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let name = core::str::from_utf8(&self.s[start..self.i]).unwrap_or("");
                let v = Var::from_name(name).ok_or_else(|| self.err("unknown variable"))?;
                let e = if self.peek() == Some(b'^') {
                    self.i += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok((BigInt::one(), Monomial::var(v, e)))
            }
            _ => Err(self.err("expected a number or variable")),
        }
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let (mut c, mut m) = self.factor()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let (c2, m2) = self.factor()?;
            c *= c2;
            m = m.mul(&m2);
        }
        Ok((c, m))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -1
            }
            Some(b'+') => {
                self.i += 1;
                1
            }
            None => return Err(self.err("empty polynomial")),
            _ => 1,
        };
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, c * sign);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn square_of_loop_value() {
        let d = p("q + q^-1");
        assert_eq!(&d * &d, p("q^2 + 2 + q^-2"));
    }

    #[test]
    fn square_of_unlink_ratio() {
        let r = p("a*z^-1 - a^-1*z^-1");
        assert_eq!(r.pow(2).unwrap(), p("a^2*z^-2 - 2*z^-2 + a^-2*z^-2"));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(LaurentPoly::var(Var::X(3)).pow(-2).unwrap(), p("x3^-2"));
        assert_eq!(p("-q").pow(-3).unwrap(), p("-q^-3"));
        assert_eq!(p("2*q").pow(-1), Err(Error::NegativePower));
        assert_eq!(p("q + 1").pow(-1), Err(Error::NegativePower));
    }

    #[test]
    fn rendering_order() {
        assert_eq!(p("q^-1 + q").to_string(), "q + q^-1");
        assert_eq!(p("-a^-1*z^-1 + a*z^-1").to_string(), "a*z^-1 - a^-1*z^-1");
        assert_eq!(p("-3 + t^2 - 2*t").to_string(), "t^2 - 2*t - 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn unlink_ratio_to_jones_variable() {
        let mut b = BTreeMap::new();
        b.insert(Var::A, p("q^-2"));
        b.insert(Var::Z, p("q - q^-1"));
        let r = p("a*z^-1 - a^-1*z^-1").substitute(&b).unwrap();
        assert_eq!(r, p("-q - q^-1"));
        assert_eq!(&r * &p("q - q^-1"), p("q^-2 - q^2"));
    }

    #[test]
    fn substitution_basics() {
        assert_eq!(p("Q").substitute_one(Var::BigQ, &p("1 - q - q^-1")).unwrap(), p("1 - q - q^-1"));
        assert_eq!(p("x5").substitute(&BTreeMap::new()).unwrap(), p("x5"));
        assert_eq!(p("z^-1").substitute_one(Var::Z, &p("q - q^-1")), Err(Error::NonInvertible));
        assert_eq!(p("q^-2*a").substitute_one(Var::Q, &p("-s")).unwrap(), p("s^-2*a"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("a - a^-1").divide_exact(&p("z")).unwrap(), p("a*z^-1 - a^-1*z^-1"));
        assert_eq!(p("a*z - a^-1*z").divide_exact(&p("z")).unwrap(), p("a - a^-1"));
        assert_eq!(p("q^2 - q^-2").divide_exact(&p("q + q^-1")).unwrap(), p("q - q^-1"));
        assert_eq!(p("q^2 + 1").divide_exact(&p("q + 1")), Err(Error::NotExact));
        assert_eq!(p("3*q").divide_exact(&p("2")), Err(Error::NotExact));
        assert_eq!(p("a + z").divide_exact(&p("a + z")).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn monomial_order_is_dense_lex() {
        let a = Monomial::from_pairs(&[(Var::A, 1), (Var::Z, -1)]);
        let b = Monomial::from_pairs(&[(Var::A, -1), (Var::Z, -1)]);
        let c = Monomial::from_pairs(&[(Var::Z, 5)]);
        assert!(a > c && c > b);
        assert_eq!(Monomial::from_pairs(&[(Var::Q, 2), (Var::Q, -2)]), Monomial::one());
    }

    #[test]
    fn halving_doubled_exponents() {
        assert_eq!(p("s^2 - s^-4").halve_var(Var::S, Var::T), Some(p("t - t^-2")));
        assert_eq!(p("s - s^-1").halve_var(Var::S, Var::T), None);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(LaurentPoly::parse("q +").is_err());
        assert!(LaurentPoly::parse("w").is_err());
        assert!(LaurentPoly::parse("").is_err());
        assert_eq!(p("q^(-2)"), p("q^-2"));
        assert_eq!(
            p("x12*x3^2"),
            LaurentPoly::term(BigInt::one(), Monomial::from_pairs(&[(Var::X(3), 2), (Var::X(12), 1)]))
        );
    }
}
