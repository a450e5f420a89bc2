use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector with `n + 1` entries for ambient rank `n`.
///
/// Entries are checked `i64`; every arithmetic helper panics on overflow
/// rather than wrapping, which keeps all downstream sums exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    /// Zero vector of `n + 1` entries for rank `n`.
    pub fn zero(rank: usize) -> Self {
        MultiIndex(vec![0; rank + 1])
    }

    /// Unit vector `e_pos` (0-based) for rank `n`.
    pub fn unit(rank: usize, pos: usize) -> Self {
        let mut v = vec![0; rank + 1];
        v[pos] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.0.len() != rank + 1 {
            return Err(Error::LengthMismatch {
                len: self.0.len(),
                expected: rank + 1,
            });
        }
        Ok(())
    }

    pub fn get(&self, pos: usize) -> i64 {
        self.0[pos]
    }

    pub fn set(&mut self, pos: usize, value: i64) {
        self.0[pos] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("empty multi-index")
    }

    /// Sum of the first `n` entries (all but the last).
    pub fn head_sum(&self) -> i64 {
        self.0[..self.0.len() - 1]
            .iter()
            .try_fold(0i64, |a, &b| a.checked_add(b))
            .expect("multi-index sum overflow")
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.0
            .iter()
            .try_fold(0i64, |a, &b| a.checked_add(b))
            .expect("multi-index sum overflow")
    }

    /// Sum of absolute values of all entries.
    pub fn abs_total(&self) -> i64 {
        self.0
            .iter()
            .try_fold(0i64, |a, &b| a.checked_add(b.abs()))
            .expect("multi-index sum overflow")
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_sub(b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_are_exact() {
        let m = MultiIndex::new(vec![3, -1, 2]);
        assert_eq!(m.head_sum(), 2);
        assert_eq!(m.total(), 4);
        assert_eq!(m.abs_total(), 6);
        assert_eq!(m.last(), 2);
    }

    #[test]
    fn lex_order_is_derived() {
        let a = MultiIndex::new(vec![0, 1]);
        let b = MultiIndex::new(vec![1, 0]);
        assert!(a < b);
    }

    #[test]
    fn display_round_trip_shape() {
        let m = MultiIndex::new(vec![1, -2, 0]);
        assert_eq!(m.to_string(), "[1,-2,0]");
    }
}
