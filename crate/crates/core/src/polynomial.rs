//! Exact Laurent polynomials in `W` (and `B`) over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Bivariate Laurent polynomial; keys are `(power of W, power of B)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), Rational>,
}

/// Univariate Laurent polynomial in `W`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, Rational>,
}

fn add_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = *e.get() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(c: i128) -> Self {
        Self::constant(Rational::from_integer(c))
    }

    pub fn w() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn b() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, a: i32, b: i32) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, (a, b), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            add_term(&mut p.terms, k, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((i32, i32), Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn coeff(&self, a: i32, b: i32) -> Rational {
        self.terms.get(&(a, b)).copied().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, *v * c)).collect() }
    }

    /// Multiplies by the monomial `c·W^a·B^b`.
    pub fn mul_monomial(&self, c: Rational, a: i32, b: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|((x, y), v)| ((x + a, y + b), *v * c)).collect() }
    }

    /// Substitutes `B = W^-1`.
    pub fn collapse(&self) -> LaurentPoly1 {
        let mut q = LaurentPoly1::zero();
        for ((a, b), c) in &self.terms {
            add_term(&mut q.terms, a - b, *c);
        }
        q
    }

    /// Returns `p(-B, -W)`.
    pub fn subst_swap_neg(&self) -> Self {
        let mut q = Self::zero();
        for ((a, b), c) in &self.terms {
            let c = if (a + b) % 2 == 0 { *c } else { -*c };
            add_term(&mut q.terms, (*b, *a), c);
        }
        q
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        Parser::new(s).parse()
    }
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn int(c: i128) -> Self {
        Self::monomial(Rational::from_integer(c), 0)
    }

    pub fn w() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, k, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            add_term(&mut p.terms, k, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).copied().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, *v * c)).collect() }
    }

    pub fn mul_monomial(&self, c: Rational, k: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(x, v)| (x + k, *v * c)).collect() }
    }

    /// Returns `p(-W^-1)`.
    pub fn subst_neg_inv(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (-k, if k % 2 == 0 { *c } else { -*c }))
                .collect(),
        }
    }

    /// True iff `self = ±W^n · other` for some `n`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (ka, ca) = self.terms().next().unwrap();
        let (kb, cb) = other.terms().next().unwrap();
        if ca.abs() != cb.abs() {
            return false;
        }
        let sign = if ca == cb { Rational::one() } else { -Rational::one() };
        other.mul_monomial(sign, ka - kb) == *self
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let p = LaurentPoly2::parse(s)?;
        if p.terms().any(|((_, b), _)| b != 0) {
            return Err(ParseError { pos: s.find('B').unwrap_or(0), msg: "unexpected variable B".into() });
        }
        Ok(Self::from_terms(p.terms().map(|((a, _), c)| (a, c))))
    }
}

macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                let mut r = self.clone();
                r += rhs;
                r
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(mut self, rhs: $t) -> $t {
                self += &rhs;
                self
            }
        }
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, rhs: &$t) {
                for (k, c) in &rhs.terms {
                    add_term(&mut self.terms, *k, *c);
                }
            }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) {
                *self += &rhs;
            }
        }
        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, rhs: &$t) {
                for (k, c) in &rhs.terms {
                    add_term(&mut self.terms, *k, -*c);
                }
            }
        }
        impl Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                let mut r = self.clone();
                r -= rhs;
                r
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(mut self, rhs: $t) -> $t {
                self -= &rhs;
                self
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::default() - self.clone()
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::iter::Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                iter.fold(<$t>::default(), |a, b| a + b)
            }
        }
        impl FromStr for $t {
            type Err = ParseError;
            fn from_str(s: &str) -> Result<$t, ParseError> {
                <$t>::parse(s)
            }
        }
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

impl_ring_ops!(LaurentPoly2);
impl_ring_ops!(LaurentPoly1);

impl Mul<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut r = LaurentPoly2::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                add_term(&mut r.terms, (a1 + a2, b1 + b2), *c1 * *c2);
            }
        }
        r
    }
}

impl Mul<&LaurentPoly1> for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut r = LaurentPoly1::zero();
        for (a, c1) in &self.terms {
            for (b, c2) in &rhs.terms {
                add_term(&mut r.terms, a + b, *c1 * *c2);
            }
        }
        r
    }
}

fn write_factor(out: &mut String, var: char, e: i32) {
    out.push(var);
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

fn write_rational(out: &mut String, c: Rational) {
    out.push_str(&c.numer().to_string());
    if !c.denom().is_one() {
        out.push('/');
        out.push_str(&c.denom().to_string());
    }
}

fn write_terms<I: Iterator<Item = (Rational, i32, i32)>>(f: &mut fmt::Formatter<'_>, it: I) -> fmt::Result {
    let mut out = String::new();
    for (i, (c, a, b)) in it.enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let c = c.abs();
        let unit = c.is_one();
        if a == 0 && b == 0 {
            write_rational(&mut out, c);
            continue;
        }
        if !unit {
            write_rational(&mut out, c);
            out.push('*');
        }
        if a != 0 {
            write_factor(&mut out, 'W', a);
        }
        if b != 0 {
            if a != 0 {
                out.push('*');
            }
            write_factor(&mut out, 'B', b);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    f.write_str(&out)
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|((a, b), c)| (*c, *a, *b)))
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(a, c)| (*c, *a, 0)))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<i128, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse::<i128>().map_err(|_| ParseError { pos: start, msg: "integer overflow".into() })
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let v = self.uint()?;
        let v = i32::try_from(v).map_err(|_| ParseError { pos: start, msg: "exponent out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self, sign: bool) -> Result<((i32, i32), Rational), ParseError> {
        let mut coeff = Rational::one();
        let (mut a, mut b) = (0i32, 0i32);
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.uint()?;
            let mut d = 1;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                d = self.uint()?;
                if d == 0 {
                    return self.err("zero denominator");
                }
            }
            coeff = Rational::new(n, d);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                need_factor = false;
            }
        }
        if need_factor {
            loop {
                match self.peek() {
                    Some(b'W') => {
                        self.pos += 1;
                        a += self.exponent()?;
                    }
                    Some(b'B') => {
                        self.pos += 1;
                        b += self.exponent()?;
                    }
                    _ => return self.err("expected W or B"),
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok(((a, b), if sign { -coeff } else { coeff }))
    }

    fn parse(mut self) -> Result<LaurentPoly2, ParseError> {
        let mut p = LaurentPoly2::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut neg = false;
            match self.peek() {
                Some(b'-') => {
                    neg = true;
                    self.pos += 1;
                }
                Some(b'+') if !first => self.pos += 1,
                None => return self.err("expected term"),
                _ if !first => return self.err("expected '+' or '-'"),
                _ => {}
            }
            self.skip_ws();
            let (k, c) = self.term(neg)?;
            add_term(&mut p.terms, k, c);
            first = false;
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(p);
            }
        }
    }
}
