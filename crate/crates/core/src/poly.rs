//! Sparse weighted-homogeneous polynomials over `Q` and their text form.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! poly     := term ("+" term)* | "0"
//! term     := [sign] [rational "*"] factor ("*" factor)*
//! factor   := "x" index ["^" nat]
//! rational := int ["/" nat]
//! ```
//!
//! A constant `c` is written `c*x0^0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomials::ExponentVector;
use crate::{Error, Result, Weights};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponents: ExponentVector, coeff: BigRational) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// The coordinate `x_i` with coefficient `coeff`.
    pub fn var(nvars: usize, i: usize, coeff: i64) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::from_integer(coeff.into()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `None` for the zero polynomial, `Some(Err(()))` if terms disagree in degree.
    pub fn weighted_degree(&self, w: &Weights) -> Option<std::result::Result<i64, ()>> {
        let mut degrees = self.terms.keys().map(|e| w.degree_of(e));
        let first = degrees.next()?;
        Some(if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(())
        })
    }

    /// True when this is a nonzero constant.
    pub fn is_nonzero_scalar(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: ExponentVector = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn add_term(&mut self, e: ExponentVector, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (x, &a) in point.iter().zip(e) {
                for _ in 0..a {
                    term *= x;
                }
            }
            acc + term
        })
    }

    /// Set `x_j = 0` and drop the coordinate.
    pub fn restrict(&self, j: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[j] == 0)
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.remove(j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
        }
        .poly()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{a}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "x0^0")?;
            } else {
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self, what: &str) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(&format!("expected {what}"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn small(&mut self, what: &str) -> Result<i64> {
        let start = self.pos;
        let v = self.digits(what)?;
        i64::try_from(v).or_else(|_| {
            self.pos = start;
            self.err(&format!("{what} too large"))
        })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.nvars);
        let rest = std::str::from_utf8(self.src).map(str::trim);
        if rest == Ok("0") {
            return Ok(out);
        }
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, c);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => self.pos += 1,
                Some(_) => return self.err("expected '+' or end of polynomial"),
            }
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, BigRational)> {
        let mut coeff = BigRational::one();
        match self.peek() {
            Some(b'-') => {
                coeff = -coeff;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let num = self.digits("integer")?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.digits("natural number after '/'")?;
                if d.is_zero() {
                    self.pos -= 1;
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coeff *= BigRational::new(num, den);
            if self.peek() != Some(b'*') {
                return self.err("expected '*' after coefficient");
            }
            self.pos += 1;
        }
        let mut e = vec![0i64; self.nvars];
        self.factor(&mut e)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut e)?;
        }
        Ok((e, coeff))
    }

    fn factor(&mut self, e: &mut [i64]) -> Result<()> {
        if self.peek() != Some(b'x') {
            return self.err("expected variable 'x<index>'");
        }
        self.pos += 1;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("expected variable index after 'x'");
        }
        let start = self.pos;
        let index = self.small("variable index")? as usize;
        if index >= self.nvars {
            self.pos = start;
            return self.err(&format!(
                "variable index {index} out of range for {} variables",
                self.nvars
            ));
        }
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.small("natural number after '^'")?
        } else {
            1
        };
        e[index] += power;
        Ok(())
    }
}
