//! Exact rationals, dense polynomials in `d`, and the combinatorial
//! primitives (binomials, signed Stirling numbers, multinomials).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. `Display` yields `"num/den"`, or just `"num"` for integers.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"` in lowest terms, integers without a denominator.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"num/den"` or `"num"`. Non-reduced input is accepted and reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    Rational::from_str(text).map_err(|_| Error::Parse(format!("not a rational: {text:?}")))
}

/// `serde(with = ...)` helper serializing a rational as its string form.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient with the vanishing convention: zero whenever
/// `a < i` or `i < 0`. Negative `a` with `0 <= i <= a` cannot occur, so
/// every negative `a` also gives zero.
pub fn binomial(a: i64, i: i64) -> Rational {
    Rational::from_integer(binomial_int(a, i))
}

pub(crate) fn binomial_int(a: i64, i: i64) -> BigInt {
    if i < 0 || a < i {
        return BigInt::zero();
    }
    let i = i.min(a - i);
    let mut acc = BigInt::one();
    for step in 0..i {
        acc *= BigInt::from(a - step);
        acc /= BigInt::from(step + 1);
    }
    acc
}

/// Table of signed Stirling numbers of the first kind, rows `0..=max_n`.
///
/// `S(n,k)` is defined by `x(x+1)...(x+n-1) = sum_k (-1)^(n-k) S(n,k) x^k`,
/// so `S(n,k)` carries the sign `(-1)^(n-k)`.
pub fn stirling_first_table(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![BigInt::one()]);
    for n in 0..max_n {
        let prev = &rows[n];
        let mut next = vec![BigInt::zero(); n + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            // S(n+1,k) = S(n,k-1) - n S(n,k)
            let left = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
            let right = prev.get(k).cloned().unwrap_or_default();
            *slot = left - BigInt::from(n) * right;
        }
        rows.push(next);
    }
    rows
}

pub fn stirling_first_signed(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling_first_table(n)[n][k].clone()
}

/// `(sum parts)! / prod(parts_i!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut running: i64 = 0;
    for &p in parts {
        running += p as i64;
        acc *= binomial_int(running, p as i64);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, m| acc * BigInt::from(m))
}

/// Dense polynomial in the single variable `d`; `coefficients[i]` multiplies
/// `d^i`. Trailing zeros are always trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self { coefficients: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `d`.
    pub fn variable() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| int(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `d^i`, zero beyond the degree.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.coefficients.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with the zero polynomial at `-1`.
    pub fn degree(&self) -> i64 {
        self.coefficients.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, d: &Rational) -> Rational {
        poly_eval(self, d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    /// Multiplicity of `d = 0` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity_at_zero(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    /// JSON array of coefficient strings, lowest degree first.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string arrays always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Horner evaluation.
pub fn poly_eval(p: &RationalPolynomial, d: &Rational) -> Rational {
    p.coefficients
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * d + c)
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = magnitude.is_one() && i > 0;
            if !unit {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 if unit => write!(f, "d")?,
                1 => write!(f, "*d")?,
                _ if unit => write!(f, "d^{i}")?,
                _ => write!(f, "*d^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coefficients.iter().map(format_rational).collect();
        strings.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        let coefficients = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self::new(coefficients))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..len).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}
