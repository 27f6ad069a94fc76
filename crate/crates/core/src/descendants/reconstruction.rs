//! Genus-0 descendant correlators of `P^1` and `P^2` rebuilt from the
//! string equation, the divisor equation and the topological recursion
//! relation, with Kontsevich's recursion supplying the point-class
//! primaries of `P^2` from the single input "one line through two points".
//!
//! Deliberately independent of the J-function expansion in the parent
//! module; it exists to cross-check it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qrationals::{binomial_int, multinomial, Rational};

/// `τ_a(H^b)`: psi exponent `a`, hyperplane exponent `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub a: u32,
    pub b: u32,
}

impl Insertion {
    pub fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }
}

/// Memoized evaluator of `<τ_{a_1}(H^{b_1}) ... τ_{a_N}(H^{b_N})>_{0,n}`
/// on `P^s`, `s ∈ {1, 2}`.
#[derive(Debug)]
pub struct Reconstructor {
    s: u32,
    memo: HashMap<(u32, Vec<Insertion>), Rational>,
    kontsevich: Vec<BigInt>,
}

impl Reconstructor {
    pub fn new(s: u32) -> Result<Self> {
        if !(1..=2).contains(&s) {
            return Err(Error::InvalidArgument(format!(
                "reconstruction is only available for P^1 and P^2, got s = {s}"
            )));
        }
        Ok(Self { s, memo: HashMap::new(), kontsevich: vec![BigInt::zero(), BigInt::one()] })
    }

    /// One-point invariant `∫ ψ^a ev*(H)^b` over `M_{0,1}(P^s, n)`.
    pub fn one_point(&mut self, n: u32, a: u32, b: u32) -> Rational {
        self.correlator(n, vec![Insertion::new(a, b)])
    }

    pub fn correlator(&mut self, n: u32, mut points: Vec<Insertion>) -> Rational {
        points.sort_unstable();
        if let Some(v) = self.memo.get(&(n, points.clone())) {
            return v.clone();
        }
        let value = self.evaluate(n, &points);
        self.memo.insert((n, points), value.clone());
        value
    }

    fn evaluate(&mut self, n: u32, points: &[Insertion]) -> Rational {
        let s = self.s;
        let count = points.len() as i64;
        let degree: i64 = points.iter().map(|p| (p.a + p.b) as i64).sum();
        let dim = s as i64 + n as i64 * (s as i64 + 1) + count - 3;
        if points.iter().any(|p| p.b > s) || degree != dim {
            return Rational::zero();
        }
        if n == 0 {
            // M_{0,N}(P^s, 0) = M_{0,N} x P^s
            let total_b: u32 = points.iter().map(|p| p.b).sum();
            if count < 3 || total_b != s {
                return Rational::zero();
            }
            let psi: Vec<u64> = points.iter().map(|p| p.a as u64).collect();
            return Rational::from_integer(multinomial(&psi));
        }
        if points.is_empty() {
            // only M_{0,0}(P^1, 1) is zero-dimensional: a single point
            return Rational::one();
        }

        if let Some(first) = points.iter().position(|p| p.a > 0) {
            if points.len() >= 3 {
                return self.topological_recursion(n, points, first);
            }
            // <X>_n = (<τ_0(H) X>_n - sum_i <X with τ_{a_i}(γ_i) -> τ_{a_i-1}(γ_i H)>_n) / n
            let mut with_divisor = points.to_vec();
            with_divisor.push(Insertion::new(0, 1));
            let mut value = self.correlator(n, with_divisor);
            for i in 0..points.len() {
                if let Some(lowered) = lower(points, i) {
                    value -= self.correlator(n, lowered);
                }
            }
            return value / Rational::from_integer(BigInt::from(n));
        }

        // primary invariants
        if points.iter().any(|p| p.b == 0) {
            // string equation: every term would lower a psi exponent below zero
            return Rational::zero();
        }
        if let Some(i) = points.iter().position(|p| p.b == 1) {
            let mut rest = points.to_vec();
            rest.remove(i);
            return Rational::from_integer(BigInt::from(n)) * self.correlator(n, rest);
        }
        // every insertion is a point class, which forces s = 2 and N = 3n - 1
        Rational::from_integer(self.kontsevich_number(n))
    }

    fn topological_recursion(&mut self, n: u32, points: &[Insertion], first: usize) -> Rational {
        let head = points[first];
        let others: Vec<Insertion> =
            points.iter().enumerate().filter(|&(i, _)| i != first).map(|(_, p)| *p).collect();
        let (second, third) = (others[0], others[1]);
        let spectators = &others[2..];
        let lowered_head = Insertion::new(head.a - 1, head.b);
        let mut total = Rational::zero();
        for mask in 0u32..(1 << spectators.len()) {
            let (mut left, mut right) = (vec![lowered_head], vec![second, third]);
            for (i, p) in spectators.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(*p);
                } else {
                    right.push(*p);
                }
            }
            for n_left in 0..=n {
                if n_left == 0 && left.len() < 2 {
                    continue; // unstable
                }
                for e in 0..=self.s {
                    let mut l = left.clone();
                    l.push(Insertion::new(0, e));
                    let lv = self.correlator(n_left, l);
                    if lv.is_zero() {
                        continue;
                    }
                    let mut r = right.clone();
                    r.push(Insertion::new(0, self.s - e));
                    total += lv * self.correlator(n - n_left, r);
                }
            }
        }
        total
    }

    fn kontsevich_number(&mut self, n: u32) -> BigInt {
        let n = n as usize;
        while self.kontsevich.len() <= n {
            let d = self.kontsevich.len() as i64;
            let mut acc = BigInt::zero();
            for d1 in 1..d {
                let d2 = d - d1;
                let weight = BigInt::from(d1 * d1 * d2 * d2) * binomial_int(3 * d - 4, 3 * d1 - 2)
                    - BigInt::from(d1 * d1 * d1 * d2) * binomial_int(3 * d - 4, 3 * d1 - 1);
                acc += &self.kontsevich[d1 as usize] * &self.kontsevich[d2 as usize] * weight;
            }
            self.kontsevich.push(acc);
        }
        self.kontsevich[n].clone()
    }
}

/// Replace `τ_{a_i}(H^{b_i})` by `τ_{a_i - 1}(H^{b_i + 1})`, if `a_i > 0`.
fn lower(points: &[Insertion], i: usize) -> Option<Vec<Insertion>> {
    let p = points[i];
    (p.a > 0).then(|| {
        let mut out = points.to_vec();
        out[i] = Insertion::new(p.a - 1, p.b + 1);
        out
    })
}
