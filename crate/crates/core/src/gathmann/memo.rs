use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::descendants::one_pointed_dimension;
use crate::error::{Error, Result};
use crate::qrationals::Rational;

/// Identifies `∫ ev*(Y)^k ψ^j` over `[M_(m)]` for degree-`n` maps to `P^s`
/// relative to a degree-`d` hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantKey {
    pub s: u32,
    pub d: u32,
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub j: u32,
}

impl InvariantKey {
    pub fn new(s: u32, d: u32, m: u32, n: u32, k: u32, j: u32) -> Self {
        Self { s, d, m, n, k, j }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 1 || self.d < 1 || self.n < 1 {
            return Err(Error::InvalidArgument(format!("s, d and n must be >= 1 in {self}")));
        }
        Ok(())
    }

    /// Expected dimension `s + n(s+1) - 2 - m` of the relative space.
    pub fn expected_dimension(&self) -> i64 {
        one_pointed_dimension(self.s, self.n) - self.m as i64
    }

    /// True when a vanishing gate fires: wrong integrand degree, or
    /// `ev*(Y)^k` with `k >= s` once the mark is forced onto `Y` (`m >= 1`).
    /// With `m = 0` the class is `d^k ev*(H)^k`, which survives up to `k = s`.
    pub fn vanishes(&self) -> bool {
        let wrong_degree = (self.k + self.j) as i64 != self.expected_dimension();
        let top = if self.m == 0 { self.s + 1 } else { self.s };
        wrong_degree || self.k >= top
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.s, self.d, self.m, self.n, self.k, self.j)
    }
}

/// Concurrent memo: a stored key is never overwritten with another value.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: RwLock<HashMap<InvariantKey, Rational>>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &InvariantKey) -> Option<Rational> {
        self.entries.read().expect("memo lock poisoned").get(key).cloned()
    }

    /// Idempotent insert; a differing value for a stored key is an error.
    pub fn insert(&self, key: InvariantKey, value: Rational) -> Result<()> {
        let mut entries = self.entries.write().expect("memo lock poisoned");
        match entries.get(&key) {
            Some(stored) if *stored != value => Err(Error::MemoConflict {
                key: key.to_string(),
                stored: Box::new(stored.clone()),
                new: Box::new(value),
            }),
            Some(_) => Ok(()),
            None => {
                entries.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot sorted by key.
    pub fn entries(&self) -> Vec<(InvariantKey, Rational)> {
        let mut out: Vec<_> = self
            .entries
            .read()
            .expect("memo lock poisoned")
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}
