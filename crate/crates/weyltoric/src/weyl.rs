//! Sparse exact-rational Weyl algebra on `n + 1` variables, in normal order.
//!
//! An element is a finite sum of normal-ordered monomials `c * Q^mu P^nu`
//! stored canonically in a map keyed by `(mu, nu)` (lexicographic order, which
//! is also the serialization order). `P_i` is the derivative in `Q_i`, so
//! `[P_i, Q_i] = 1`. Multiplication uses the single-variable reordering
//!
//! ```text
//! P^a Q^b = sum_k binom(a, k) binom(b, k) k! Q^(b-k) P^(a-k)
//! ```
//!
//! where `binom(b, k)` is the falling-factorial polynomial, so `b` may be a
//! negative (Laurent) exponent. Laurent exponents are only admitted in the
//! last variable and only on elements flagged as Laurent; anywhere else they
//! are a structural error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::rat::{self, Coeff};
use crate::support::{ModuleVector, SupportPredicate};

#[derive(Clone)]
pub struct WeylElement {
    rank: usize,
    laurent: bool,
    terms: BTreeMap<(MultiIndex, MultiIndex), Coeff>,
}

/// Equality is mathematical: same rank, same canonical terms. The Laurent
/// permission flag does not enter.
impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    /// Zero element on `n + 1` variables, without Laurent permission.
    pub fn zero(rank: usize) -> Self {
        WeylElement {
            rank,
            laurent: false,
            terms: BTreeMap::new(),
        }
    }

    /// Zero element that may hold Laurent exponents in the last variable.
    pub fn zero_laurent(rank: usize) -> Self {
        WeylElement {
            rank,
            laurent: true,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, rat::int(1))
    }

    pub fn constant(rank: usize, c: Coeff) -> Self {
        let mut el = Self::zero(rank);
        el.add_term(MultiIndex::zero(rank), MultiIndex::zero(rank), c)
            .expect("constant term is always valid");
        el
    }

    /// Multiplication operator `Q_i` (0-based index).
    pub fn q(rank: usize, i: usize) -> Self {
        let mut el = Self::zero(rank);
        el.add_term(MultiIndex::unit(rank, i), MultiIndex::zero(rank), rat::int(1))
            .expect("valid");
        el
    }

    /// Derivative operator `P_i` (0-based index).
    pub fn p(rank: usize, i: usize) -> Self {
        let mut el = Self::zero(rank);
        el.add_term(MultiIndex::zero(rank), MultiIndex::unit(rank, i), rat::int(1))
            .expect("valid");
        el
    }

    /// Single-term element `c * Q^mu P^nu`.
    pub fn term(rank: usize, laurent: bool, c: Coeff, mu: Vec<i64>, nu: Vec<i64>) -> Result<Self> {
        let mut el = WeylElement {
            rank,
            laurent,
            terms: BTreeMap::new(),
        };
        el.add_term(MultiIndex::new(mu), MultiIndex::new(nu), c)?;
        Ok(el)
    }

    pub fn from_terms(
        rank: usize,
        laurent: bool,
        terms: impl IntoIterator<Item = (Vec<i64>, Vec<i64>, Coeff)>,
    ) -> Result<Self> {
        let mut el = WeylElement {
            rank,
            laurent,
            terms: BTreeMap::new(),
        };
        for (mu, nu, c) in terms {
            el.add_term(MultiIndex::new(mu), MultiIndex::new(nu), c)?;
        }
        Ok(el)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of variables, `rank + 1`.
    pub fn vars(&self) -> usize {
        self.rank + 1
    }

    pub fn laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &Coeff)> {
        self.terms.iter().map(|((mu, nu), c)| (mu, nu, c))
    }

    pub fn coeff_of(&self, mu: &MultiIndex, nu: &MultiIndex) -> Coeff {
        self.terms
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(|| rat::int(0))
    }

    fn validate_term(&self, mu: &MultiIndex, nu: &MultiIndex) -> Result<()> {
        mu.check_rank(self.rank)?;
        nu.check_rank(self.rank)?;
        for (pos, &e) in nu.entries().iter().enumerate() {
            if e < 0 {
                return Err(Error::NegativePExponent { pos, value: e });
            }
        }
        for (pos, &e) in mu.entries().iter().enumerate() {
            if e < 0 && (pos < self.rank || !self.laurent) {
                return Err(Error::LaurentViolation { pos, value: e });
            }
        }
        Ok(())
    }

    /// Adds `c * Q^mu P^nu`, merging with an existing term and dropping the
    /// entry if the sum is zero.
    pub fn add_term(&mut self, mu: MultiIndex, nu: MultiIndex, c: Coeff) -> Result<()> {
        self.validate_term(&mu, &nu)?;
        self.add_term_unchecked(mu, nu, c);
        Ok(())
    }

    fn add_term_unchecked(&mut self, mu: MultiIndex, nu: MultiIndex, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((mu, nu)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> WeylElement {
        let mut out = WeylElement {
            rank: self.rank,
            laurent: self.laurent,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for ((mu, nu), v) in &self.terms {
            out.terms.insert((mu.clone(), nu.clone()), v * c);
        }
        out
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        out.laurent = self.laurent || other.laurent;
        for ((mu, nu), c) in &other.terms {
            out.add_term_unchecked(mu.clone(), nu.clone(), c.clone());
        }
        Ok(out)
    }

    /// Degree `|mu| - |nu|` of a single normal-ordered monomial.
    pub fn term_degree(mu: &MultiIndex, nu: &MultiIndex) -> i64 {
        mu.total() - nu.total()
    }

    /// The common degree of all terms, if the element is degree-homogeneous.
    /// The zero element reports `Some(0)`.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (mu, nu) in self.terms.keys() {
            let d = Self::term_degree(mu, nu);
            match deg {
                None => deg = Some(d),
                Some(old) if old != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Largest `|mu| + |nu|` (absolute values) over all terms.
    pub fn filtration_order(&self) -> i64 {
        self.terms
            .keys()
            .map(|(mu, nu)| mu.abs_total() + nu.abs_total())
            .max()
            .unwrap_or(0)
    }

    /// If `self == c * other` for a single rational `c`, returns `c`.
    /// Zero `self` gives `Some(0)` when `other` is nonzero.
    pub fn proportionality(&self, other: &WeylElement) -> Option<Coeff> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(rat::int(0));
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Coeff> = None;
        for (key, c) in &self.terms {
            let oc = other.terms.get(key)?;
            let r = c / oc;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev != r => return None,
                _ => {}
            }
        }
        ratio
    }

    /// Serializes to the canonical text form and parses back with
    /// [`WeylElement::parse`]; both directions are bit-exact.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str, rank: usize, laurent: bool) -> Result<Self> {
        let s = s.trim();
        let mut el = WeylElement {
            rank,
            laurent,
            terms: BTreeMap::new(),
        };
        if s == "0" {
            return Ok(el);
        }
        for part in s.split(" + ") {
            let (coeff, rest) = part
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term without '*': {part:?}")))?;
            let c = rat::parse_coeff(coeff)
                .ok_or_else(|| Error::Parse(format!("bad coefficient: {coeff:?}")))?;
            let rest = rest.trim();
            let rest = rest
                .strip_prefix("Q^[")
                .ok_or_else(|| Error::Parse(format!("missing Q^[: {part:?}")))?;
            let (mu_s, rest) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse(format!("unterminated mu: {part:?}")))?;
            let rest = rest
                .trim_start()
                .strip_prefix("P^[")
                .ok_or_else(|| Error::Parse(format!("missing P^[: {part:?}")))?;
            let (nu_s, tail) = rest
                .split_once(']')
                .ok_or_else(|| Error::Parse(format!("unterminated nu: {part:?}")))?;
            if !tail.trim().is_empty() {
                return Err(Error::Parse(format!("trailing input: {tail:?}")));
            }
            let mu = parse_exponents(mu_s)?;
            let nu = parse_exponents(nu_s)?;
            el.add_term(MultiIndex::new(mu), MultiIndex::new(nu), c)?;
        }
        Ok(el)
    }
}

fn parse_exponents(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad exponent {t:?}: {e}")))
        })
        .collect()
}

/// Normal-ordered product. Bilinear, associative, and it agrees with
/// composition of the differential-operator actions.
pub fn product(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let vars = a.rank + 1;
    let mut out = WeylElement {
        rank: a.rank,
        laurent: a.laurent || b.laurent,
        terms: BTreeMap::new(),
    };
    for ((mu1, nu1), c1) in &a.terms {
        for ((mu2, nu2), c2) in &b.terms {
            // Reorder P^nu1 past Q^mu2; each variable contracts independently.
            let bounds: Vec<i64> = (0..vars)
                .map(|i| {
                    let cap = nu1.get(i);
                    let m2 = mu2.get(i);
                    if m2 >= 0 {
                        cap.min(m2)
                    } else {
                        cap
                    }
                })
                .collect();
            let base = c1 * c2;
            let mut k = vec![0i64; vars];
            loop {
                let mut coeff = base.clone();
                for (i, &ki) in k.iter().enumerate() {
                    if ki > 0 {
                        let ki = ki as u64;
                        let factor = rat::binom(nu1.get(i), ki)
                            * rat::binom(mu2.get(i), ki)
                            * rat::factorial(ki);
                        coeff *= Coeff::from_integer(factor);
                    }
                }
                if !coeff.is_zero() {
                    let kv = MultiIndex::new(k.clone());
                    let mu = mu1.add(mu2).sub(&kv);
                    let nu = nu1.add(nu2).sub(&kv);
                    out.add_term_unchecked(mu, nu, coeff);
                }
                // odometer over the contraction vector
                let mut pos = 0;
                loop {
                    if pos == vars {
                        break;
                    }
                    if k[pos] < bounds[pos] {
                        k[pos] += 1;
                        break;
                    }
                    k[pos] = 0;
                    pos += 1;
                }
                if pos == vars {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `[a, b] = a b - b a`.
pub fn commutator(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    let ab = product(a, b)?;
    let ba = product(b, a)?;
    ab.checked_add(&ba.scale(&rat::int(-1)))
}

/// Applies a normal-ordered operator to a monomial vector: `P_i` sends
/// `Q_i^k` to `k Q_i^(k-1)` (for any integer `k`) and `Q_i` multiplies.
/// Result monomials outside the support are discarded.
pub fn apply(op: &WeylElement, v: &ModuleVector, support: &SupportPredicate) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for ((mu, nu), c) in &op.terms {
        'mono: for (m, cv) in v.iter() {
            let mut coeff = c * cv;
            for i in 0..m.len() {
                let e = nu.get(i);
                if e > 0 {
                    let f = rat::falling(m.get(i), e as u64);
                    if f.is_zero() {
                        continue 'mono;
                    }
                    coeff *= Coeff::from_integer(f);
                }
            }
            let target = m.sub(nu).add(mu);
            if support.contains(&target) {
                out.add_term(target, coeff);
            }
        }
    }
    out
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((mu, nu), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{} * Q^{} P^{}", rat::coeff_string(c), mu, nu)?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(n={}, {})", self.rank, self)
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(rhs).expect("rank mismatch in +")
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(&rhs.scale(&rat::int(-1)))
            .expect("rank mismatch in -")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&rat::int(-1))
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        product(self, rhs).expect("rank mismatch in *")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: String,
    mu: Vec<i64>,
    nu: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    rank: usize,
    laurent: bool,
    terms: Vec<TermRecord>,
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = ElementRecord {
            rank: self.rank,
            laurent: self.laurent,
            terms: self
                .terms
                .iter()
                .map(|((mu, nu), c)| TermRecord {
                    coeff: rat::coeff_string(c),
                    mu: mu.entries().to_vec(),
                    nu: nu.entries().to_vec(),
                })
                .collect(),
        };
        rec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = ElementRecord::deserialize(deserializer)?;
        let mut el = if rec.laurent {
            WeylElement::zero_laurent(rec.rank)
        } else {
            WeylElement::zero(rec.rank)
        };
        for t in rec.terms {
            let c = rat::parse_coeff(&t.coeff)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            el.add_term(MultiIndex::new(t.mu), MultiIndex::new(t.nu), c)
                .map_err(D::Error::custom)?;
        }
        Ok(el)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use crate::support::SupportKind;

    fn q(rank: usize, i: usize) -> WeylElement {
        WeylElement::q(rank, i)
    }
    fn p(rank: usize, i: usize) -> WeylElement {
        WeylElement::p(rank, i)
    }

    #[test]
    fn canonical_commutation() {
        // P_1 Q_1 = Q_1 P_1 + 1
        let lhs = product(&p(1, 0), &q(1, 0)).unwrap();
        let rhs = &(&q(1, 0) * &p(1, 0)) + &WeylElement::one(1);
        assert_eq!(lhs, rhs);
    }

    /// Independent oracle: compare two operators by their action on a basis
    /// of polynomial monomials (degree up to `deg`) through `apply` only.
    fn agree_on_polynomials(a: &WeylElement, b: &WeylElement, deg: i64) -> bool {
        let rank = a.rank();
        let support = SupportPredicate::all_laurent(rank);
        let mut stack = vec![Vec::<i64>::new()];
        for _ in 0..=rank {
            let mut next = Vec::new();
            for prefix in &stack {
                let used: i64 = prefix.iter().sum();
                for e in 0..=(deg - used) {
                    let mut v = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            stack = next;
        }
        stack.into_iter().all(|mono| {
            let v = ModuleVector::monomial(MultiIndex::new(mono));
            apply(a, &v, &support) == apply(b, &v, &support)
        })
    }

    #[test]
    fn squared_reordering_matches_action_on_basis() {
        // P_1^2 Q_1^2 = Q_1^2 P_1^2 + 4 Q_1 P_1 + 2, checked against the
        // action on 1, Q_1, Q_1^2, Q_1^3 and frozen.
        let lhs = product(
            &WeylElement::term(1, false, int(1), vec![0, 0], vec![2, 0]).unwrap(),
            &WeylElement::term(1, false, int(1), vec![2, 0], vec![0, 0]).unwrap(),
        )
        .unwrap();
        let expected = WeylElement::from_terms(
            1,
            false,
            vec![
                (vec![2, 0], vec![2, 0], int(1)),
                (vec![1, 0], vec![1, 0], int(4)),
                (vec![0, 0], vec![0, 0], int(2)),
            ],
        )
        .unwrap();
        assert!(agree_on_polynomials(&lhs, &expected, 3));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn laurent_product_collapses() {
        // (P_n P_n Q_{n+1}^{-1}) (Q_{n+1} P_{n+1}) = P_n^2 P_{n+1}, n = 2
        let a = WeylElement::term(2, true, int(1), vec![0, 0, -1], vec![0, 2, 0]).unwrap();
        let b = WeylElement::term(2, false, int(1), vec![0, 0, 1], vec![0, 0, 1]).unwrap();
        let prod = product(&a, &b).unwrap();
        let expected =
            WeylElement::term(2, true, int(1), vec![0, 0, 0], vec![0, 2, 1]).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn commutator_examples() {
        let c = commutator(&p(1, 0), &q(1, 0)).unwrap();
        assert_eq!(c, WeylElement::one(1));
        let a = &(&q(2, 0) * &q(2, 1)) * &p(2, 2);
        assert!(commutator(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn degree_examples() {
        // Q_1 Q_2 Q_3 for n = 2 has degree 3; Q_1 P_2 has degree 0.
        let m = MultiIndex::new(vec![1, 1, 1]);
        let z = MultiIndex::zero(2);
        assert_eq!(WeylElement::term_degree(&m, &z), 3);
        assert_eq!(
            WeylElement::term_degree(&MultiIndex::new(vec![1, 0, 0]), &MultiIndex::new(vec![0, 1, 0])),
            0
        );
        assert_eq!(WeylElement::term_degree(&z, &z), 0);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert!(product(&q(1, 0), &q(2, 0)).is_err());
    }

    #[test]
    fn laurent_flag_is_enforced() {
        assert!(WeylElement::term(2, false, int(1), vec![0, 0, -1], vec![0, 0, 0]).is_err());
        assert!(WeylElement::term(2, true, int(1), vec![0, -1, 0], vec![0, 0, 0]).is_err());
        assert!(WeylElement::term(2, true, int(1), vec![0, 0, -1], vec![0, 0, 0]).is_ok());
        assert!(WeylElement::term(2, true, int(1), vec![0, 0, 0], vec![0, 0, -1]).is_err());
    }

    #[test]
    fn apply_euler_operator() {
        let op = &q(1, 0) * &p(1, 0);
        let v = ModuleVector::monomial(MultiIndex::new(vec![3, 0]));
        let out = apply(&op, &v, &SupportPredicate::all_laurent(1));
        assert_eq!(out, v.scale(&int(3)));
    }

    #[test]
    fn apply_differentiates_laurent_monomials() {
        let v = ModuleVector::monomial(MultiIndex::new(vec![-1, -1, 0]));
        let out = apply(&p(2, 0), &v, &SupportPredicate::all_laurent(2));
        let mut expected = ModuleVector::zero();
        expected.add_term(MultiIndex::new(vec![-2, -1, 0]), int(-1));
        assert_eq!(out, expected);
    }

    #[test]
    fn apply_truncates_outside_support() {
        // Multiplying the top-cohomology generator by Q_1 leaves the
        // all-negative region: the image is a coboundary, so it is dropped.
        let support = SupportPredicate::new(SupportKind::HtopResX, 2, -2);
        let v = ModuleVector::monomial(MultiIndex::new(vec![-1, -1, 0]));
        let out = apply(&q(2, 0), &v, &support);
        assert!(out.is_zero());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let el = WeylElement::from_terms(
            2,
            true,
            vec![
                (vec![2, 0, -1], vec![0, 1, 0], rat(-3, 2)),
                (vec![0, 0, 0], vec![0, 0, 0], rat(1, 4)),
            ],
        )
        .unwrap();
        let text = el.to_text();
        let back = WeylElement::parse(&text, 2, true).unwrap();
        assert_eq!(el, back);
        assert_eq!(back.to_text(), text);

        let zero = WeylElement::zero(3);
        assert_eq!(WeylElement::parse(&zero.to_text(), 3, false).unwrap(), zero);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let el = WeylElement::from_terms(
            2,
            true,
            vec![
                (vec![1, 1, -2], vec![0, 0, 3], rat(7, 3)),
                (vec![0, 2, 0], vec![1, 0, 0], int(-5)),
            ],
        )
        .unwrap();
        let js = serde_json::to_string(&el).unwrap();
        let back: WeylElement = serde_json::from_str(&js).unwrap();
        assert_eq!(el, back);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_element(rank: usize, laurent: bool) -> impl Strategy<Value = WeylElement> {
            let vars = rank + 1;
            let term = (
                proptest::collection::vec(0i64..3, vars),
                proptest::collection::vec(0i64..3, vars),
                -4i64..5,
                1i64..4,
            )
                .prop_map(move |(mut mu, nu, p, q)| {
                    if laurent && !mu.is_empty() {
                        // occasionally make the last exponent negative
                        if p % 2 == 0 {
                            let last = mu.len() - 1;
                            mu[last] -= 2;
                        }
                    }
                    (mu, nu, rat(if p == 0 { 1 } else { p }, q))
                });
            proptest::collection::vec(term, 1..4).prop_map(move |ts| {
                WeylElement::from_terms(rank, laurent, ts).expect("valid random element")
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn product_is_associative(
                a in arb_element(2, false),
                b in arb_element(2, true),
                c in arb_element(2, false),
            ) {
                let left = product(&product(&a, &b).unwrap(), &c).unwrap();
                let right = product(&a, &product(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn product_distributes_over_addition(
                a in arb_element(2, false),
                b in arb_element(2, true),
                c in arb_element(2, false),
            ) {
                let left = product(&a, &b.checked_add(&c).unwrap()).unwrap();
                let right = product(&a, &b).unwrap().checked_add(&product(&a, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
                let left = product(&b.checked_add(&c).unwrap(), &a).unwrap();
                let right = product(&b, &a).unwrap().checked_add(&product(&c, &a).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn jacobi_identity(
                a in arb_element(2, false),
                b in arb_element(2, false),
                c in arb_element(2, true),
            ) {
                let j1 = commutator(&commutator(&a, &b).unwrap(), &c).unwrap();
                let j2 = commutator(&commutator(&b, &c).unwrap(), &a).unwrap();
                let j3 = commutator(&commutator(&c, &a).unwrap(), &b).unwrap();
                let sum = j1.checked_add(&j2).unwrap().checked_add(&j3).unwrap();
                prop_assert!(sum.is_zero());
            }

            #[test]
            fn renormalizing_is_identity(a in arb_element(2, true)) {
                // rebuilding an element from its own canonical terms is the identity
                let rebuilt = WeylElement::from_terms(
                    a.rank(),
                    a.laurent(),
                    a.terms().map(|(mu, nu, c)| (mu.entries().to_vec(), nu.entries().to_vec(), c.clone())),
                ).unwrap();
                prop_assert_eq!(rebuilt, a);
            }

            #[test]
            fn degree_is_additive_on_single_terms(
                mu1 in proptest::collection::vec(0i64..3, 3),
                nu1 in proptest::collection::vec(0i64..3, 3),
                mu2 in proptest::collection::vec(0i64..3, 3),
                nu2 in proptest::collection::vec(0i64..3, 3),
            ) {
                let a = WeylElement::term(2, false, int(1), mu1.clone(), nu1.clone()).unwrap();
                let b = WeylElement::term(2, false, int(1), mu2.clone(), nu2.clone()).unwrap();
                let d = WeylElement::term_degree(&MultiIndex::new(mu1), &MultiIndex::new(nu1))
                    + WeylElement::term_degree(&MultiIndex::new(mu2), &MultiIndex::new(nu2));
                let prod = product(&a, &b).unwrap();
                for (mu, nu, _) in prod.terms() {
                    prop_assert_eq!(WeylElement::term_degree(mu, nu), d);
                }
            }

            #[test]
            fn product_agrees_with_composed_action(
                a in arb_element(2, false),
                b in arb_element(2, false),
                mono in proptest::collection::vec(0i64..4, 3),
            ) {
                let support = SupportPredicate::polynomial(2);
                let v = ModuleVector::monomial(MultiIndex::new(mono));
                let ab = product(&a, &b).unwrap();
                let direct = apply(&ab, &v, &support);
                let composed = apply(&a, &apply(&b, &v, &support), &support);
                prop_assert_eq!(direct, composed);
            }
        }
    }
}
