//! Genus-0 descendant integrals of projective space.
//!
//! The line formulas are closed forms on the 1- and 2-pointed degree-1
//! spaces. General one-point invariants `∫ ψ^a ev*(H)^b` over
//! `M_{0,1}(P^s, n)` come from the degree-`n` coefficient of the small
//! J-function: the integral is the coefficient of `H^(s-b) ħ^-(a+2)` in
//! `prod_{m=1..n} (H + mħ)^-(s+1)`, truncated at `H^s`.
//!
//! [`reconstruction`] recomputes the same numbers from string, divisor
//! and topological recursion alone and is kept free of any call into this
//! module's J-function path.

pub mod reconstruction;

use std::collections::BTreeMap;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qrationals::{binomial, binomial_int, Rational};

/// `∫ ψ^a ev*(H)^b` over the 1-pointed degree-`n` space of maps to `P^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DescendantQuery {
    pub s: u32,
    pub n: u32,
    /// Psi exponent at the marked point.
    pub a: i64,
    /// Hyperplane exponent.
    pub b: i64,
}

impl DescendantQuery {
    pub fn new(s: u32, n: u32, a: i64, b: i64) -> Self {
        Self { s, n, a, b }
    }

    /// Dimension of `M_{0,1}(P^s, n)`.
    pub fn moduli_dimension(&self) -> i64 {
        one_pointed_dimension(self.s, self.n)
    }

    /// True when the integrand has the right degree and `b <= s`.
    pub fn is_admissible(&self) -> bool {
        self.a >= 0
            && self.b >= 0
            && self.b <= self.s as i64
            && self.a + self.b == self.moduli_dimension()
    }
}

pub(crate) fn one_pointed_dimension(s: u32, n: u32) -> i64 {
    let (s, n) = (s as i64, n as i64);
    s + n * (s + 1) - 2
}

fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn require_dimension(s: u32) -> Result<()> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("ambient dimension s must be >= 1, got {s}")));
    }
    Ok(())
}

/// `∫ ψ^a ev_1*(H)^(s-a+i) ev_2*(H)^(s-i)` over `M_{0,2}(P^s, 1)`, equal to
/// `(-1)^(a-i) C(a, i)`.
pub fn two_point_line(s: u32, a: u32, i: i64) -> Result<Rational> {
    require_dimension(s)?;
    let a = a as i64;
    Ok(sign(a - i) * binomial(a, i))
}

/// `∫ ψ^a ev*(H)^(2s-1-a)` over `M_{0,1}(P^s, 1)`, equal to
/// `(-1)^(a-s-1) C(a+1, s)`.
pub fn one_point_line(s: u32, a: u32) -> Result<Rational> {
    require_dimension(s)?;
    if a > 2 * s - 1 {
        return Err(Error::InvalidArgument(format!(
            "psi exponent {a} exceeds 2s-1 = {} (negative hyperplane exponent)",
            2 * s - 1
        )));
    }
    let (s, a) = (s as i64, a as i64);
    Ok(sign(a - s - 1) * binomial(a + 1, s))
}

/// `∫ ψ^a ev*(H)^b` over `M_{0,1}(P^s, n)`; zero off the dimension gate,
/// for `b > s`, and for negative exponents.
pub fn one_point_descendant(q: DescendantQuery) -> Result<Rational> {
    require_dimension(q.s)?;
    if q.n < 1 {
        return Err(Error::InvalidArgument(format!("curve degree n must be >= 1, got {}", q.n)));
    }
    if !q.is_admissible() {
        return Ok(Rational::zero());
    }
    let series = j_function_coefficients(q.s, q.n);
    Ok(series[(q.s as i64 - q.b) as usize].clone())
}

/// Coefficients `c_e` of `x^e` (`x = H/ħ`, `e <= s`) in
/// `ħ^{n(s+1)} prod_{m=1..n} (H + mħ)^-(s+1)`.
fn j_function_coefficients(s: u32, n: u32) -> Vec<Rational> {
    let s = s as usize;
    let mut acc = vec![Rational::zero(); s + 1];
    acc[0] = Rational::one();
    for m in 1..=n as i64 {
        // (H + mħ)^-(s+1) = (mħ)^-(s+1) sum_c (-1)^c C(s+c, c) (x/m)^c
        let m_big = BigInt::from(m);
        let factor: Vec<Rational> = (0..=s as i64)
            .map(|c| {
                let den = num_traits::pow(m_big.clone(), s + 1 + c as usize);
                sign(c) * Rational::new(binomial_int(s as i64 + c, c), den)
            })
            .collect();
        let mut next = vec![Rational::zero(); s + 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in factor.iter().enumerate().take(s + 1 - i) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// `∫ ψ_1^j` over `M_{0,1+r}` (dimension `r - 2`): one when `j = r - 2`.
pub fn psi_power_on_points(r: u32, j: u32) -> Result<Rational> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("need r >= 2 points besides the first, got {r}")));
    }
    Ok(if j == r - 2 { Rational::one() } else { Rational::zero() })
}

/// Polynomial in `ev*(H)` and `ψ` on a one-pointed space, used to expand
/// products such as `(ev*H)(ev*H + ψ)(ev*H + 2ψ)` before integrating.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassPolynomial {
    // (psi exponent, hyperplane exponent) -> coefficient
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ClassPolynomial {
    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn monomial(coefficient: Rational, psi: u32, hyperplane: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert((psi, hyperplane), coefficient);
        }
        Self { terms }
    }

    /// `h·ev*(H) + p·ψ`.
    pub fn linear(h: Rational, p: Rational) -> Self {
        let mut out = Self::monomial(h, 0, 1);
        out.add_term(1, 0, p);
        out
    }

    fn add_term(&mut self, psi: u32, hyperplane: u32, coefficient: Rational) {
        let slot = self.terms.entry((psi, hyperplane)).or_insert_with(Rational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&(psi, hyperplane));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(p, h), c)| (p, h, c))
    }

    /// Integral over `M_{0,1}(P^s, n)`, term by term.
    pub fn integrate(&self, s: u32, n: u32) -> Result<Rational> {
        let mut total = Rational::zero();
        for (psi, h, c) in self.terms() {
            total += c * one_point_descendant(DescendantQuery::new(s, n, psi as i64, h as i64))?;
        }
        Ok(total)
    }
}

impl Mul for &ClassPolynomial {
    type Output = ClassPolynomial;

    fn mul(self, rhs: Self) -> ClassPolynomial {
        let mut out = ClassPolynomial::default();
        for (&(p1, h1), c1) in &self.terms {
            for (&(p2, h2), c2) in &rhs.terms {
                out.add_term(p1 + p2, h1 + h2, c1 * c2);
            }
        }
        out
    }
}
