//! Monomial supports for the cohomology modules and the sparse vectors
//! living on them.
//!
//! Top cohomology is modeled Cech-style: a monomial whose exponents leave the
//! support region represents a coboundary and is silently dropped by
//! [`crate::weyl::apply`]. That truncation is the module structure, not an
//! approximation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::index::MultiIndex;
use crate::rat::{self, Coeff};

/// The four cohomology supports, plus two unconstrained supports used by
/// generic operator identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SupportKind {
    /// `H^0` of the resolution: all exponents nonnegative.
    H0ResX,
    /// `H^(n-1)` of the resolution: first `n` exponents negative, last one
    /// nonnegative.
    HtopResX,
    /// `H^0` of the weighted projective space: all exponents nonnegative.
    H0Y,
    /// `H^n` of the weighted projective space: all exponents negative.
    HtopY,
    /// Polynomials, no homogeneity constraint.
    Polynomial,
    /// All Laurent monomials, no constraint at all.
    AllLaurent,
}

/// A support region: exponent sign conditions plus a homogeneity constraint
/// tying the head exponents to the last one via the twist.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SupportPredicate {
    pub kind: SupportKind,
    pub rank: usize,
    pub twist: i64,
}

impl SupportPredicate {
    pub fn new(kind: SupportKind, rank: usize, twist: i64) -> Self {
        SupportPredicate { kind, rank, twist }
    }

    pub fn polynomial(rank: usize) -> Self {
        SupportPredicate::new(SupportKind::Polynomial, rank, 0)
    }

    pub fn all_laurent(rank: usize) -> Self {
        SupportPredicate::new(SupportKind::AllLaurent, rank, 0)
    }

    pub fn contains(&self, mu: &MultiIndex) -> bool {
        if mu.len() != self.rank + 1 {
            return false;
        }
        let head = &mu.entries()[..self.rank];
        let last = mu.last();
        match self.kind {
            SupportKind::H0ResX => {
                head.iter().all(|&e| e >= 0)
                    && last >= 0
                    && mu.head_sum() - 2 * last == self.twist
            }
            SupportKind::HtopResX => {
                head.iter().all(|&e| e < 0)
                    && last >= 0
                    && mu.head_sum() - 2 * last == self.twist
            }
            SupportKind::H0Y => {
                head.iter().all(|&e| e >= 0)
                    && last >= 0
                    && mu.head_sum() + 2 * last == self.twist
            }
            SupportKind::HtopY => {
                head.iter().all(|&e| e < 0)
                    && last < 0
                    && mu.head_sum() + 2 * last == self.twist
            }
            SupportKind::Polynomial => mu.entries().iter().all(|&e| e >= 0),
            SupportKind::AllLaurent => true,
        }
    }

    /// The `z`-grading weight of a supported monomial: `-mu_last` on the
    /// resolution, `mu_last + 1` on the weighted projective space.
    pub fn weight_of(&self, mu: &MultiIndex) -> i64 {
        match self.kind {
            SupportKind::H0ResX | SupportKind::HtopResX => -mu.last(),
            SupportKind::H0Y | SupportKind::HtopY => mu.last() + 1,
            SupportKind::Polynomial | SupportKind::AllLaurent => {
                panic!("unconstrained supports are not weight-graded")
            }
        }
    }

    /// Natural weight range `(min, max)` where both ends are finite, or
    /// `None` for the unbounded-below `H^0` of the resolution (only its top
    /// is natural) and for unconstrained supports.
    ///
    /// Empty modules are reported as `Some((1, 0))`-style inverted ranges.
    pub fn natural_weight_range(&self) -> Option<(i64, i64)> {
        let (n, ell) = (self.rank as i64, self.twist);
        match self.kind {
            SupportKind::H0ResX => None,
            // head sum <= -n forces mu_last <= (-n - ell)/2, with mu_last >= 0.
            SupportKind::HtopResX => Some((rat::ceil_div(ell + n, 2), 0)),
            // 0 <= mu_last <= ell/2.
            SupportKind::H0Y => Some((1, rat::floor_div(ell, 2) + 1)),
            // head sum <= -n forces mu_last >= ceil((ell+n)/2), with mu_last <= -1.
            SupportKind::HtopY => Some((rat::ceil_div(ell + n, 2) + 1, 0)),
            SupportKind::Polynomial | SupportKind::AllLaurent => None,
        }
    }

    /// Largest weight carrying a nonzero space (for the graded kinds).
    pub fn top_weight(&self) -> Option<i64> {
        let ell = self.twist;
        match self.kind {
            SupportKind::H0ResX => {
                // mu_last >= max(0, ceil(-ell/2)); weight = -mu_last.
                let min_last = if ell >= 0 { 0 } else { rat::ceil_div(-ell, 2) };
                Some(-min_last)
            }
            _ => self.natural_weight_range().map(|(_, top)| top),
        }
    }

    /// All supported monomials of the given weight, in lexicographic order.
    pub fn enumerate_weight(&self, weight: i64) -> Vec<MultiIndex> {
        let n = self.rank;
        let (last, head_sum, strict_negative) = match self.kind {
            SupportKind::H0ResX | SupportKind::HtopResX => {
                let last = -weight;
                (last, self.twist + 2 * last, self.kind == SupportKind::HtopResX)
            }
            SupportKind::H0Y | SupportKind::HtopY => {
                let last = weight - 1;
                (last, self.twist - 2 * last, self.kind == SupportKind::HtopY)
            }
            _ => panic!("unconstrained supports cannot be enumerated by weight"),
        };
        let last_ok = match self.kind {
            SupportKind::H0ResX | SupportKind::HtopResX | SupportKind::H0Y => last >= 0,
            SupportKind::HtopY => last < 0,
            _ => unreachable!(),
        };
        if !last_ok {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut head = vec![0i64; n];
        enumerate_compositions(head_sum, n, strict_negative, &mut head, 0, &mut |h| {
            let mut v = h.to_vec();
            v.push(last);
            out.push(MultiIndex::new(v));
        });
        out.sort();
        out
    }

    pub fn dimension(&self, weight: i64) -> usize {
        self.enumerate_weight(weight).len()
    }
}

/// Enumerates integer vectors of length `n` summing to `total`, either all
/// nonnegative or all strictly negative.
fn enumerate_compositions(
    total: i64,
    n: usize,
    strict_negative: bool,
    buf: &mut Vec<i64>,
    pos: usize,
    emit: &mut impl FnMut(&[i64]),
) {
    if pos == n {
        if total == 0 {
            emit(buf);
        }
        return;
    }
    let remaining = (n - pos - 1) as i64;
    if strict_negative {
        // each entry <= -1, so this entry ranges over [total + remaining, -1]
        let lo = total + remaining;
        if lo > -1 {
            return;
        }
        for e in lo..=-1 {
            buf[pos] = e;
            enumerate_compositions(total - e, n, strict_negative, buf, pos + 1, emit);
        }
    } else {
        if total < 0 {
            return;
        }
        for e in 0..=total {
            buf[pos] = e;
            enumerate_compositions(total - e, n, strict_negative, buf, pos + 1, emit);
        }
    }
}

/// Sparse rational combination of Laurent monomials `Q^mu`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModuleVector {
    coeffs: BTreeMap<MultiIndex, Coeff>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn monomial(mu: MultiIndex) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(mu, rat::int(1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mu: &MultiIndex) -> Coeff {
        self.coeffs.get(mu).cloned().unwrap_or_else(|| rat::int(0))
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, MultiIndex, Coeff> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, mu: MultiIndex, c: Coeff) {
        if rat::is_zero(&c) {
            return;
        }
        let entry = self.coeffs.entry(mu);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if rat::is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (mu, c) in &other.coeffs {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> ModuleVector {
        if rat::is_zero(c) {
            return ModuleVector::zero();
        }
        let mut out = ModuleVector::zero();
        for (mu, v) in &self.coeffs {
            out.coeffs.insert(mu.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        self.add(&other.scale(&rat::int(-1)))
    }

    /// The single monomial of a one-term vector.
    pub fn as_monomial(&self) -> Option<(&MultiIndex, &Coeff)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next()
        } else {
            None
        }
    }

    /// Scales so that the lexicographically largest monomial has coefficient 1.
    pub fn normalized(&self) -> ModuleVector {
        match self.coeffs.iter().next_back() {
            None => ModuleVector::zero(),
            Some((_, lead)) => {
                let inv = rat::int(1) / lead.clone();
                self.scale(&inv)
            }
        }
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mu, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{} * Q^{}", rat::coeff_string(c), mu)?;
        }
        Ok(())
    }
}
