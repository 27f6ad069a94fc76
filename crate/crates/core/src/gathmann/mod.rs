//! The multiplicity-raising recursion for one-point relative invariants
//!
//! `I(m, n, k, j) = ∫ ev*(Y)^k ψ^j` against the virtual class of the space
//! of degree-`n` maps to `P^s` with contact order at least `m` to a smooth
//! degree-`d` hypersurface `Y`. The class satisfies
//!
//! ```text
//! (ev*(Y) + m ψ) · [M_(m)] = [M_(m+1)] + [D_(m)]
//! ```
//!
//! where `D_(m)` is the locus of comb curves: a contracted component in `Y`
//! carrying the marked point and `r >= 2` teeth of degrees `n_i` meeting
//! `Y` with contact orders `m_i`. `Y` is assumed to contain no rational
//! curves, so the central component always has degree zero.

mod cache;
mod memo;

pub use cache::{load_cache, save_cache, CACHE_HEADER};
pub use memo::{InvariantKey, MemoTable};

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::descendants::{one_point_descendant, psi_power_on_points, DescendantQuery};
use crate::error::{Error, Result};
use crate::qrationals::{binomial, factorial, stirling_first_table, Rational};

/// Memoizing evaluator. Shareable across threads: the table takes
/// concurrent reads and idempotent writes.
#[derive(Debug, Default)]
pub struct Engine {
    memo: MemoTable,
    deepest: AtomicUsize,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_memo(memo: MemoTable) -> Self {
        Self { memo, deepest: AtomicUsize::new(0) }
    }

    pub fn memo(&self) -> &MemoTable {
        &self.memo
    }

    /// Deepest recursion reached so far (the top-level call is depth 0).
    pub fn deepest_recursion(&self) -> usize {
        self.deepest.load(Ordering::Relaxed)
    }

    /// `∫ ev*(Y)^k ψ^j` over `[M_(m)]`. Zero off the dimension gate and,
    /// once `m >= 1`, for `k >= s`.
    pub fn relative_invariant(&self, key: InvariantKey) -> Result<Rational> {
        key.validate()?;
        self.invariant_at(key, 0, key.m as usize + 1)
    }

    fn invariant_at(&self, key: InvariantKey, depth: usize, bound: usize) -> Result<Rational> {
        if key.vanishes() {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.memo.get(&key) {
            return Ok(v);
        }
        // every recursive call lowers m by at least one
        assert!(depth <= bound, "recursion depth {depth} exceeds bound {bound} at {key}");
        self.deepest.fetch_max(depth, Ordering::Relaxed);

        let value = if key.m == 0 {
            let d = Rational::from_integer(BigInt::from(key.d));
            let q = DescendantQuery::new(key.s, key.n, key.j as i64, key.k as i64);
            num_traits::pow(d, key.k as usize) * one_point_descendant(q)?
        } else {
            let lower = InvariantKey { m: key.m - 1, ..key };
            let raise_k = self.invariant_at(InvariantKey { k: key.k + 1, ..lower }, depth + 1, bound)?;
            let raise_psi = if lower.m == 0 {
                Rational::zero()
            } else {
                Rational::from_integer(BigInt::from(lower.m))
                    * self.invariant_at(InvariantKey { j: key.j + 1, ..lower }, depth + 1, bound)?
            };
            raise_k + raise_psi - self.correction_at(lower, depth + 1, bound)?
        };
        self.memo.insert(key, value.clone())?;
        Ok(value)
    }

    /// `∫_{D_(m)} ev*(Y)^k ψ^j` for the key's `(s, d, m, n, k, j)`.
    ///
    /// Only `r = j + 2` teeth survive the psi integral on `M_{0,1+r}`. The
    /// sum runs over ordered tuples with `m_i >= 1`, `n_i >= 1` and
    /// `0 <= t_i <= s-1`, `sum t_i = s-1-k`:
    ///
    /// ```text
    /// (1/r!) d^(k+1) prod_i m_i d^-(s-t_i) I(m_i, n_i, s-1-t_i, 0)
    /// ```
    pub fn correction_term(&self, key: InvariantKey) -> Result<Rational> {
        key.validate()?;
        self.correction_at(key, 0, key.m as usize + 1)
    }

    fn correction_at(&self, key: InvariantKey, depth: usize, bound: usize) -> Result<Rational> {
        let InvariantKey { s, d, m, n, k, j } = key;
        let r = j + 2;
        if k + 1 > s || r > m || r > n {
            return Ok(Rational::zero());
        }
        let psi = psi_power_on_points(r, j)?;
        let d_big = Rational::from_integer(BigInt::from(d));
        let mut total = Rational::zero();
        for ms in compositions(m, r) {
            for ns in compositions(n, r) {
                for ts in bounded_compositions(s - 1 - k, r, s - 1) {
                    let mut product = Rational::one();
                    for ((&mi, &ni), &ti) in ms.iter().zip(&ns).zip(&ts) {
                        let tooth = InvariantKey { s, d, m: mi, n: ni, k: s - 1 - ti, j: 0 };
                        let value = self.invariant_at(tooth, depth, bound)?;
                        if value.is_zero() {
                            product = Rational::zero();
                            break;
                        }
                        product *= value * Rational::from_integer(BigInt::from(mi))
                            / num_traits::pow(d_big.clone(), (s - ti) as usize);
                    }
                    total += product;
                }
            }
        }
        let prefactor = num_traits::pow(d_big, (k + 1) as usize) / Rational::from_integer(factorial(r as u64));
        Ok(psi * prefactor * total)
    }

    /// `T_{s,n}(d)`: degree of the maximal-contact class, contact order
    /// `s - 2 + n(s+1)`.
    pub fn virtual_count(&self, s: u32, n: u32, d: u32) -> Result<Rational> {
        if s < 1 || n < 1 || d < 1 {
            return Err(Error::InvalidArgument(format!("T_(s,n)(d) needs s, n, d >= 1, got ({s}, {n}, {d})")));
        }
        self.relative_invariant(InvariantKey { s, d, m: s + n * (s + 1) - 2, n, k: 0, j: 0 })
    }
}

/// `(-1)^(s+1) sum_{k=1..s} S(2s-1, k) C(2s-k, s) d^k`, the number of lines
/// with maximal contact order `2s - 1`.
pub fn max_contact_lines_closed(s: u32, d: &Rational) -> Result<Rational> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("s must be >= 1, got {s}")));
    }
    let n = (2 * s - 1) as usize;
    let stirling = &stirling_first_table(n)[n];
    let mut total = Rational::zero();
    for (k, coefficient) in stirling.iter().enumerate().take(s as usize + 1).skip(1) {
        total += Rational::from_integer(coefficient.clone())
            * binomial(2 * s as i64 - k as i64, s as i64)
            * num_traits::pow(d.clone(), k);
    }
    Ok(if s % 2 == 1 { total } else { -total })
}

/// Ordered `parts`-tuples of positive integers summing to `total`.
fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        for first in 1..=total - (parts - 1) {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Ordered `parts`-tuples in `0..=max_part` summing to `total`.
fn bounded_compositions(total: u32, parts: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 0..=total.min(max_part) {
            prefix.push(first);
            go(total - first, parts - 1, max_part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max_part, &mut Vec::new(), &mut out);
    out
}
