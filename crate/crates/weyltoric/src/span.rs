//! Spanning oracle: certifies that every admissible monomial of bounded
//! filtration order is an exact rational combination of products of ring
//! generators of bounded word length.
//!
//! Every term of a product of generators has the same exponent difference
//! `tau = mu - nu` (normal ordering only moves paired exponents), so the
//! computation splits into independent blocks indexed by `tau`. Each block
//! keeps an incrementally reduced row space with deterministic pivoting
//! (largest `(mu, nu)` key) and tracks, per row, the combination of words
//! that produced it; membership of a target monomial then comes with an
//! explicit certificate, which is re-validated by multiplying out before it
//! is reported.

use std::collections::BTreeMap;

use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::index::MultiIndex;
use crate::rat::{self, int, Coeff};
use crate::rings::RingSpec;
use crate::weyl::{product, WeylElement};

type Key = (MultiIndex, MultiIndex);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertTerm {
    pub coeff: String,
    /// Generator indices of the word, leftmost factor first; empty for the
    /// identity word.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialStatus {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub order: i64,
    pub spanned: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_word_len: Option<u32>,
    pub certificate: Vec<CertTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpanReport {
    pub ring: RingSpec,
    pub max_order: u32,
    pub max_word_len: u32,
    pub generators: Vec<String>,
    pub monomials: Vec<MonomialStatus>,
    pub all_spanned: bool,
    pub certificates_validated: bool,
    /// For each filtration order, the smallest word length that spans every
    /// admissible monomial of that order (`None` while something is missed).
    pub min_word_len_per_order: Vec<(i64, Option<u32>)>,
    pub pass: bool,
}

struct CertRow {
    vec: BTreeMap<Key, Coeff>,
    combo: BTreeMap<usize, Coeff>,
}

#[derive(Default)]
struct Block {
    rows: BTreeMap<Key, CertRow>,
    words: Vec<Vec<usize>>,
    targets: Vec<usize>,
}

impl Block {
    /// Reduces `(vec, combo)` against the rows, accumulating into `combo`
    /// the row combinations used, so that on full reduction
    /// `original_vec = sum(combo_w * word_w)`.
    fn reduce(
        &self,
        mut vec: BTreeMap<Key, Coeff>,
        mut combo: BTreeMap<usize, Coeff>,
    ) -> (BTreeMap<Key, Coeff>, BTreeMap<usize, Coeff>) {
        loop {
            let Some((lead, c)) = vec.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
            else {
                return (vec, combo);
            };
            let Some(row) = self.rows.get(&lead) else {
                return (vec, combo);
            };
            for (k, rc) in &row.vec {
                sub_assign(&mut vec, k.clone(), rc * &c);
            }
            for (w, rc) in &row.combo {
                add_assign(&mut combo, *w, rc * &c);
            }
        }
    }

    /// Inserts a word product; `true` if it enlarged the block span.
    fn insert_word(&mut self, word: Vec<usize>, el: &WeylElement) -> bool {
        let id = self.words.len();
        self.words.push(word);
        let vec: BTreeMap<Key, Coeff> = el
            .terms()
            .map(|(mu, nu, c)| ((mu.clone(), nu.clone()), c.clone()))
            .collect();
        let mut combo = BTreeMap::new();
        combo.insert(id, int(1));
        // reduce the vector while keeping vec = sum(combo) - sum(used rows);
        // rearranged below so that the invariant is vec = combo - rows part
        let (mut rem, used) = self.reduce_keep_identity(vec, combo);
        let Some((lead, c)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = int(1) / c;
        for v in rem.values_mut() {
            *v = &*v * &inv;
        }
        let combo = used.into_iter().map(|(w, c)| (w, &c * &inv)).collect();
        self.rows.insert(lead, CertRow { vec: rem, combo });
        true
    }

    /// Like `reduce`, but maintains `vec = sum(combo_w * word_w)` as an exact
    /// identity throughout (row subtractions also subtract row combos).
    fn reduce_keep_identity(
        &self,
        mut vec: BTreeMap<Key, Coeff>,
        mut combo: BTreeMap<usize, Coeff>,
    ) -> (BTreeMap<Key, Coeff>, BTreeMap<usize, Coeff>) {
        loop {
            let Some((lead, c)) = vec.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
            else {
                return (vec, combo);
            };
            let Some(row) = self.rows.get(&lead) else {
                return (vec, combo);
            };
            for (k, rc) in &row.vec {
                sub_assign(&mut vec, k.clone(), rc * &c);
            }
            for (w, rc) in &row.combo {
                sub_assign_usize(&mut combo, *w, rc * &c);
            }
        }
    }

    /// Certificate for a single target monomial, if it lies in the span.
    fn express(&self, key: Key) -> Option<BTreeMap<usize, Coeff>> {
        let mut vec = BTreeMap::new();
        vec.insert(key, int(1));
        let (rem, combo) = self.reduce(vec, BTreeMap::new());
        if rem.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

fn add_assign(map: &mut BTreeMap<usize, Coeff>, k: usize, delta: Coeff) {
    if delta.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(delta);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &delta;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn sub_assign_usize(map: &mut BTreeMap<usize, Coeff>, k: usize, delta: Coeff) {
    add_assign(map, k, -delta);
}

fn sub_assign(map: &mut BTreeMap<Key, Coeff>, k: Key, delta: Coeff) {
    if delta.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(-delta);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() - &delta;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Common `mu - nu` of all terms of an element, when it exists.
fn element_tau(el: &WeylElement) -> Option<Vec<i64>> {
    let mut tau: Option<Vec<i64>> = None;
    for (mu, nu, _) in el.terms() {
        let t: Vec<i64> = mu
            .entries()
            .iter()
            .zip(nu.entries())
            .map(|(&a, &b)| a - b)
            .collect();
        match &tau {
            None => tau = Some(t),
            Some(prev) if *prev != t => return None,
            _ => {}
        }
    }
    tau
}

/// Runs the oracle. Failure to span is a report outcome, not an error.
pub fn span_oracle(ring: &RingSpec, max_order: u32, max_word_len: u32) -> SpanReport {
    let gens: Vec<WeylElement> = ring.generators().all().cloned().collect();
    let gen_taus: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| element_tau(g).expect("generators are tau-homogeneous"))
        .collect();
    let targets = ring.admissible_monomials(max_order);

    // group the targets by tau
    let mut blocks: BTreeMap<Vec<i64>, Block> = BTreeMap::new();
    for (idx, (mu, nu)) in targets.iter().enumerate() {
        let tau: Vec<i64> = mu
            .entries()
            .iter()
            .zip(nu.entries())
            .map(|(&a, &b)| a - b)
            .collect();
        blocks.entry(tau).or_default().targets.push(idx);
    }

    let mut status: Vec<Option<(u32, Vec<CertTerm>)>> = vec![None; targets.len()];
    let mut unresolved = targets.len();
    let vars = ring.rank + 1;

    // the empty word spans the identity
    if let Some(block) = blocks.get_mut(&vec![0i64; vars]) {
        block.insert_word(Vec::new(), &WeylElement::one(ring.rank));
    }
    resolve_targets(&blocks, &targets, 0, &mut status, &mut unresolved, &gens);

    let mut length = 0u32;
    while unresolved > 0 && length < max_word_len {
        length += 1;
        let mut word = vec![0usize; length as usize];
        loop {
            // tau of the word, summed over factors
            let mut tau = vec![0i64; vars];
            for &g in &word {
                for (t, gt) in tau.iter_mut().zip(&gen_taus[g]) {
                    *t += gt;
                }
            }
            if let Some(block) = blocks.get_mut(&tau) {
                let mut el = gens[word[0]].clone();
                for &g in &word[1..] {
                    el = product(&el, &gens[g]).expect("same rank");
                }
                block.insert_word(word.clone(), &el);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == word.len() {
                    break;
                }
                if word[pos] + 1 < gens.len() {
                    word[pos] += 1;
                    break;
                }
                word[pos] = 0;
                pos += 1;
            }
            if pos == word.len() {
                break;
            }
        }
        resolve_targets(&blocks, &targets, length, &mut status, &mut unresolved, &gens);
    }

    // assemble the report
    let mut monomials = Vec::new();
    let mut per_order: BTreeMap<i64, Option<u32>> = BTreeMap::new();
    let mut certificates_validated = true;
    for (idx, (mu, nu)) in targets.iter().enumerate() {
        let order = mu.abs_total() + nu.abs_total();
        let entry = per_order.entry(order).or_insert(Some(0));
        match &status[idx] {
            Some((len, cert)) => {
                if let Some(cur) = entry {
                    *entry = Some((*cur).max(*len));
                }
                monomials.push(MonomialStatus {
                    mu: mu.entries().to_vec(),
                    nu: nu.entries().to_vec(),
                    order,
                    spanned: true,
                    min_word_len: Some(*len),
                    certificate: cert.clone(),
                });
            }
            None => {
                *entry = None;
                monomials.push(MonomialStatus {
                    mu: mu.entries().to_vec(),
                    nu: nu.entries().to_vec(),
                    order,
                    spanned: false,
                    min_word_len: None,
                    certificate: Vec::new(),
                });
            }
        }
    }
    // validate every certificate by multiplying it out
    for m in &monomials {
        if !m.spanned {
            continue;
        }
        let target = WeylElement::term(
            ring.rank,
            ring.laurent_last(),
            int(1),
            m.mu.clone(),
            m.nu.clone(),
        )
        .unwrap();
        let mut acc = WeylElement::zero(ring.rank);
        for t in &m.certificate {
            let c = rat::parse_coeff(&t.coeff).expect("own serialization");
            let mut el = WeylElement::one(ring.rank);
            for &g in &t.word {
                el = product(&el, &gens[g]).expect("same rank");
            }
            acc = acc.checked_add(&el.scale(&c)).expect("same rank");
        }
        if acc != target {
            certificates_validated = false;
        }
    }

    let all_spanned = unresolved == 0;
    SpanReport {
        ring: *ring,
        max_order,
        max_word_len,
        generators: gens.iter().map(|g| g.to_string()).collect(),
        monomials,
        all_spanned,
        certificates_validated,
        min_word_len_per_order: per_order.into_iter().collect(),
        pass: all_spanned && certificates_validated,
    }
}

fn resolve_targets(
    blocks: &BTreeMap<Vec<i64>, Block>,
    targets: &[(MultiIndex, MultiIndex)],
    length: u32,
    status: &mut [Option<(u32, Vec<CertTerm>)>],
    unresolved: &mut usize,
    _gens: &[WeylElement],
) {
    for block in blocks.values() {
        for &idx in &block.targets {
            if status[idx].is_some() {
                continue;
            }
            let (mu, nu) = &targets[idx];
            if let Some(combo) = block.express((mu.clone(), nu.clone())) {
                let cert = combo
                    .into_iter()
                    .map(|(w, c)| CertTerm {
                        coeff: rat::coeff_string(&c),
                        word: block.words[w].clone(),
                    })
                    .collect();
                status[idx] = Some((length, cert));
                *unresolved -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_contains_the_identity() {
        let report = span_oracle(&RingSpec::singular_x(2), 0, 1);
        assert!(report.all_spanned);
        let one = report
            .monomials
            .iter()
            .find(|m| m.order == 0)
            .expect("identity monomial enumerated");
        assert_eq!(one.min_word_len, Some(0));
        assert_eq!(one.certificate.len(), 1);
        assert!(one.certificate[0].word.is_empty());
    }

    #[test]
    fn singular_ring_spans_at_low_order() {
        let report = span_oracle(&RingSpec::singular_x(2), 3, 2);
        assert!(report.all_spanned, "unspanned: {:?}",
            report.monomials.iter().filter(|m| !m.spanned).collect::<Vec<_>>());
        assert!(report.certificates_validated);
    }

    #[test]
    fn resolution_ring_spans_at_order_four() {
        let report = span_oracle(&RingSpec::resolution_x(2, 0), 4, 3);
        assert!(report.all_spanned);
        assert!(report.certificates_validated);
        assert!(report.pass);
        for (_order, len) in &report.min_word_len_per_order {
            assert!(len.is_some());
        }
    }

    #[test]
    fn word_length_one_is_not_enough_at_order_four() {
        // an order-4 monomial like Q_1 P_1 Q_2 P_2 needs at least two factors
        let report = span_oracle(&RingSpec::resolution_x(2, 0), 4, 1);
        assert!(!report.all_spanned);
        assert!(!report.pass);
    }
}
