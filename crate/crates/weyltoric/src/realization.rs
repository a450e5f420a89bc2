//! Realization of `sp(2n)` inside the (Laurent-extended) Weyl algebra on
//! `n + 1` variables, with the parabolic data used downstream.
//!
//! Chevalley-Cartan generators:
//!
//! ```text
//! e_i = -Q_{i+1} P_i            h_i = -Q_i P_i + Q_{i+1} P_{i+1}      f_i = -Q_i P_{i+1}        (i < n)
//! e_n = (1/2) P_n^2 Q_{n+1}^-1  h_n = -Q_n P_n - 1/2                  f_n = -(1/2) Q_n^2 Q_{n+1}
//! ```
//!
//! The reductive part is realized by `m_ij = -Q_j P_i` together with the
//! central element `z = -(1/2) sum Q_i P_i - n/4`; the nilradical basis is
//! `rplus_ij = P_i P_j Q_{n+1}^-1` (signs fixed by `[z, x] = x`), the
//! opposite one `rminus_ij = Q_i Q_j Q_{n+1}`, and the degree `-3` operators
//! `aplus_ij = rplus_ij * z_ell` with `z_ell = -Q_{n+1} P_{n+1}`. Every
//! stated bracket is verified exactly; nothing is assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{self, int, rat, Coeff};
use crate::weyl::{commutator, product, WeylElement};

/// Names for the realized elements. Indices are 1-based, matching the usual
/// generator numbering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Symbol {
    E(usize),
    H(usize),
    F(usize),
    Z,
    ZEll,
    M(usize, usize),
    RPlus(usize, usize),
    RMinus(usize, usize),
    APlus(usize, usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::E(i) => write!(f, "e{i}"),
            Symbol::H(i) => write!(f, "h{i}"),
            Symbol::F(i) => write!(f, "f{i}"),
            Symbol::Z => write!(f, "z"),
            Symbol::ZEll => write!(f, "z_ell"),
            Symbol::M(i, j) => write!(f, "m[{i},{j}]"),
            Symbol::RPlus(i, j) => write!(f, "rplus[{i},{j}]"),
            Symbol::RMinus(i, j) => write!(f, "rminus[{i},{j}]"),
            Symbol::APlus(i, j) => write!(f, "aplus[{i},{j}]"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown symbol {s:?}"));
        if s == "z" {
            return Ok(Symbol::Z);
        }
        if s == "z_ell" {
            return Ok(Symbol::ZEll);
        }
        if let Some(rest) = s.strip_prefix("e") {
            if let Ok(i) = rest.parse() {
                return Ok(Symbol::E(i));
            }
        }
        if let Some(rest) = s.strip_prefix("h") {
            if let Ok(i) = rest.parse() {
                return Ok(Symbol::H(i));
            }
        }
        if let Some(rest) = s.strip_prefix("f") {
            if let Ok(i) = rest.parse() {
                return Ok(Symbol::F(i));
            }
        }
        for (prefix, ctor) in [
            ("m", Symbol::M as fn(usize, usize) -> Symbol),
            ("rplus", Symbol::RPlus),
            ("rminus", Symbol::RMinus),
            ("aplus", Symbol::APlus),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                if let Some(body) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    if let Some((a, b)) = body.split_once(',') {
                        if let (Ok(i), Ok(j)) = (a.trim().parse(), b.trim().parse()) {
                            return Ok(ctor(i, j));
                        }
                    }
                }
            }
        }
        Err(bad())
    }
}

/// A labeled map from generator symbols to Weyl elements. Transported
/// realizations (on the weighted side) omit the symbols without polynomial
/// images (`e_n` and the `rplus` family).
#[derive(Clone, Debug)]
pub struct Realization {
    rank: usize,
    twist: i64,
    table: BTreeMap<Symbol, WeylElement>,
}

impl Realization {
    pub fn from_table(rank: usize, twist: i64, table: BTreeMap<Symbol, WeylElement>) -> Self {
        Realization { rank, twist, table }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn get(&self, sym: Symbol) -> Option<&WeylElement> {
        self.table.get(&sym)
    }

    pub fn element(&self, sym: Symbol) -> &WeylElement {
        self.table
            .get(&sym)
            .unwrap_or_else(|| panic!("symbol {sym} not in realization table"))
    }

    pub fn has(&self, sym: Symbol) -> bool {
        self.table.contains_key(&sym)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Symbol, &WeylElement)> {
        self.table.iter()
    }

    /// Basis of the realized reductive part: all `m_ij` plus the central
    /// Euler element `z`.
    pub fn m_symbols(&self) -> Vec<Symbol> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                out.push(Symbol::M(i, j));
            }
        }
        out.push(Symbol::Z);
        out
    }

    pub fn pair_symbols(&self, ctor: fn(usize, usize) -> Symbol) -> Vec<Symbol> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                out.push(ctor(i, j));
            }
        }
        out
    }

    pub fn rplus_symbols(&self) -> Vec<Symbol> {
        self.pair_symbols(Symbol::RPlus)
    }

    pub fn rminus_symbols(&self) -> Vec<Symbol> {
        self.pair_symbols(Symbol::RMinus)
    }

    pub fn aplus_symbols(&self) -> Vec<Symbol> {
        self.pair_symbols(Symbol::APlus)
    }
}

/// Builds the full table at rank `n >= 2`. The twist only matters for the
/// modules acted on; the operator table itself is twist-independent.
pub fn build_realization(n: usize, twist: i64) -> Result<Realization> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut table = BTreeMap::new();
    let vars = n + 1;
    let term = |c: Coeff, mu: Vec<i64>, nu: Vec<i64>| -> WeylElement {
        let laurent = mu[vars - 1] < 0;
        WeylElement::term(n, laurent, c, mu, nu).unwrap()
    };
    let zero = || vec![0i64; vars];

    for i in 1..n {
        // e_i = -Q_{i+1} P_i
        let mut mu = zero();
        let mut nu = zero();
        mu[i] = 1;
        nu[i - 1] = 1;
        table.insert(Symbol::E(i), term(int(-1), mu, nu));
        // f_i = -Q_i P_{i+1}
        let mut mu = zero();
        let mut nu = zero();
        mu[i - 1] = 1;
        nu[i] = 1;
        table.insert(Symbol::F(i), term(int(-1), mu, nu));
        // h_i = -Q_i P_i + Q_{i+1} P_{i+1}
        let mut a_mu = zero();
        let mut a_nu = zero();
        a_mu[i - 1] = 1;
        a_nu[i - 1] = 1;
        let mut b_mu = zero();
        let mut b_nu = zero();
        b_mu[i] = 1;
        b_nu[i] = 1;
        let h = &term(int(-1), a_mu, a_nu) + &term(int(1), b_mu, b_nu);
        table.insert(Symbol::H(i), h);
    }
    // e_n = (1/2) P_n^2 Q_{n+1}^{-1}
    let mut mu = zero();
    let mut nu = zero();
    mu[vars - 1] = -1;
    nu[n - 1] = 2;
    table.insert(Symbol::E(n), term(rat(1, 2), mu, nu));
    // f_n = -(1/2) Q_n^2 Q_{n+1}
    let mut mu = zero();
    mu[n - 1] = 2;
    mu[vars - 1] = 1;
    table.insert(Symbol::F(n), term(rat(-1, 2), mu, zero()));
    // h_n = -Q_n P_n - 1/2
    let mut mu = zero();
    let mut nu = zero();
    mu[n - 1] = 1;
    nu[n - 1] = 1;
    let h = &term(int(-1), mu, nu) + &WeylElement::constant(n, rat(-1, 2));
    table.insert(Symbol::H(n), h);

    // z = -(1/2) sum_i Q_i P_i - n/4
    let mut z = WeylElement::constant(n, rat(-(n as i64), 4));
    for i in 0..n {
        let mut mu = zero();
        let mut nu = zero();
        mu[i] = 1;
        nu[i] = 1;
        z = &z + &term(rat(-1, 2), mu, nu);
    }
    table.insert(Symbol::Z, z);

    // z_ell = -Q_{n+1} P_{n+1}
    let mut mu = zero();
    let mut nu = zero();
    mu[vars - 1] = 1;
    nu[vars - 1] = 1;
    let z_ell = term(int(-1), mu, nu);
    table.insert(Symbol::ZEll, z_ell.clone());

    // m_ij = -Q_j P_i
    for i in 1..=n {
        for j in 1..=n {
            let mut mu = zero();
            let mut nu = zero();
            mu[j - 1] = 1;
            nu[i - 1] = 1;
            table.insert(Symbol::M(i, j), term(int(-1), mu, nu));
        }
    }

    for i in 1..=n {
        for j in i..=n {
            // rplus_ij = P_i P_j Q_{n+1}^{-1}
            let mut mu = zero();
            let mut nu = zero();
            mu[vars - 1] = -1;
            nu[i - 1] += 1;
            nu[j - 1] += 1;
            let rplus = term(int(1), mu, nu);
            // rminus_ij = Q_i Q_j Q_{n+1}
            let mut mu = zero();
            mu[i - 1] += 1;
            mu[j - 1] += 1;
            mu[vars - 1] = 1;
            table.insert(Symbol::RMinus(i, j), term(int(1), mu, zero()));
            // aplus_ij = rplus_ij * z_ell = -P_i P_j P_{n+1}
            let aplus = product(&rplus, &z_ell).expect("same rank");
            table.insert(Symbol::RPlus(i, j), rplus);
            table.insert(Symbol::APlus(i, j), aplus);
        }
    }

    Ok(Realization::from_table(n, twist, table))
}

/// Bourbaki Cartan matrix of type `C_n`, with `a_ij` read through
/// `[h_i, e_j] = a_ij e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub matrix: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<String>,
    /// The last simple root restricted to the `sl_n` Cartan, in fundamental
    /// weight coordinates.
    pub alpha_n_restriction: String,
}

impl CartanData {
    pub fn bourbaki_c(n: usize) -> Self {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for i in 0..n.saturating_sub(1) {
            // a_{i,i+1} = a_{i+1,i} = -1 except in the last corner
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
        if n >= 2 {
            m[n - 2][n - 1] = -2;
            m[n - 1][n - 2] = -1;
        }
        CartanData {
            matrix: m,
            fundamental_weights: (1..=n).map(|i| format!("w{i}")).collect(),
            alpha_n_restriction: format!("-2*w{}", n - 1),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub status: String,
}

impl RelationCheck {
    pub fn ok(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub n: usize,
    pub twist: i64,
    pub checks: Vec<RelationCheck>,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan_read: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan_expected: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan_matches: Option<bool>,
    pub pass: bool,
}

impl RelationReport {
    fn new(n: usize, twist: i64) -> Self {
        RelationReport {
            n,
            twist,
            checks: Vec::new(),
            failures: 0,
            cartan_read: None,
            cartan_expected: None,
            cartan_matches: None,
            pass: true,
        }
    }

    fn push(&mut self, relation: String, ok: bool, lhs: String, rhs: String) {
        if !ok {
            self.failures += 1;
            self.pass = false;
        }
        self.checks.push(RelationCheck {
            relation,
            lhs,
            rhs,
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
    }

    fn push_zero(&mut self, relation: String, el: &WeylElement) {
        let ok = el.is_zero();
        self.push(relation, ok, el.to_string(), "0".to_string());
    }

    fn push_eq(&mut self, relation: String, got: &WeylElement, want: &WeylElement) {
        let ok = got == want;
        self.push(relation, ok, got.to_string(), want.to_string());
    }
}

/// Checks the Chevalley-Serre presentation exactly: Cartan commutativity,
/// `[e_i, f_j] = delta_ij h_i`, the eigenvalue relations with the Cartan
/// matrix read off (not assumed), and both families of Serre relations.
pub fn verify_sp2n(r: &Realization) -> RelationReport {
    let n = r.rank();
    let mut report = RelationReport::new(n, r.twist());
    let e = |i: usize| r.element(Symbol::E(i));
    let f = |i: usize| r.element(Symbol::F(i));
    let h = |i: usize| r.element(Symbol::H(i));

    for i in 1..=n {
        for j in 1..=n {
            let c = commutator(h(i), h(j)).expect("same rank");
            report.push_zero(format!("[h{i},h{j}] = 0"), &c);
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            let c = commutator(e(i), f(j)).expect("same rank");
            if i == j {
                report.push_eq(format!("[e{i},f{i}] = h{i}"), &c, h(i));
            } else {
                report.push_zero(format!("[e{i},f{j}] = 0"), &c);
            }
        }
    }

    // read off the Cartan matrix from [h_i, e_j] and confirm on [h_i, f_j]
    let mut a = vec![vec![0i64; n]; n];
    let mut read_ok = true;
    for i in 1..=n {
        for j in 1..=n {
            let c = commutator(h(i), e(j)).expect("same rank");
            let coeff = if c.is_zero() {
                Some(int(0))
            } else {
                c.proportionality(e(j))
            };
            match coeff.as_ref().and_then(rat::to_i64) {
                Some(v) => {
                    a[i - 1][j - 1] = v;
                    report.push(
                        format!("[h{i},e{j}] = a*e{j}"),
                        true,
                        c.to_string(),
                        format!("{v} * e{j}"),
                    );
                }
                None => {
                    read_ok = false;
                    report.push(
                        format!("[h{i},e{j}] = a*e{j}"),
                        false,
                        c.to_string(),
                        "an integer multiple".to_string(),
                    );
                }
            }
            let cf = commutator(h(i), f(j)).expect("same rank");
            let want = f(j).scale(&int(-a[i - 1][j - 1]));
            report.push_eq(format!("[h{i},f{j}] = -a*f{j}"), &cf, &want);
        }
    }

    let expected = CartanData::bourbaki_c(n);
    if read_ok {
        let matches = a == expected.matrix;
        report.push(
            "cartan matrix equals Bourbaki C_n".to_string(),
            matches,
            format!("{a:?}"),
            format!("{:?}", expected.matrix),
        );
        // alpha_n restricted to the sl_n Cartan: column n above the corner
        let col: Vec<i64> = (0..n - 1).map(|i| a[i][n - 1]).collect();
        let mut want = vec![0i64; n - 1];
        want[n - 2] = -2;
        report.push(
            format!("alpha_{n} restriction = {}", expected.alpha_n_restriction),
            col == want,
            format!("{col:?}"),
            format!("{want:?}"),
        );
        report.cartan_matches = Some(matches);
    } else {
        report.push(
            "cartan matrix equals Bourbaki C_n".to_string(),
            false,
            "unreadable".to_string(),
            format!("{:?}", expected.matrix),
        );
        report.cartan_matches = Some(false);
    }
    report.cartan_read = Some(a.clone());
    report.cartan_expected = Some(expected.matrix);

    // Serre relations ad(x_i)^(1 - a_ij) x_j = 0
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let times = (1 - a[i - 1][j - 1]) as usize;
            let mut acc = e(j).clone();
            for _ in 0..times {
                acc = commutator(e(i), &acc).expect("same rank");
            }
            report.push_zero(format!("ad(e{i})^{times}(e{j}) = 0"), &acc);
            let mut acc = f(j).clone();
            for _ in 0..times {
                acc = commutator(f(i), &acc).expect("same rank");
            }
            report.push_zero(format!("ad(f{i})^{times}(f{j}) = 0"), &acc);
        }
    }

    report
}

/// Checks the parabolic bracket identities on whatever part of the table is
/// present: `[z_ell, x z_ell] = x z_ell`, commutativity of the `x z_ell`,
/// centrality of `z_ell` against the reductive part, the `z`-grading
/// brackets, and stability of the `aplus` span under the reductive part.
pub fn verify_parabolic(r: &Realization) -> RelationReport {
    let n = r.rank();
    let mut report = RelationReport::new(n, r.twist());
    let z_ell = r.element(Symbol::ZEll);
    let aplus: Vec<Symbol> = r.aplus_symbols();

    for &s in &aplus {
        let x = r.element(s);
        let c = commutator(z_ell, x).expect("same rank");
        report.push_eq(format!("[z_ell, {s}] = {s}"), &c, x);
    }
    for &s1 in &aplus {
        for &s2 in &aplus {
            let c = commutator(r.element(s1), r.element(s2)).expect("same rank");
            report.push_zero(format!("[{s1},{s2}] = 0"), &c);
        }
    }

    if let Some(z) = r.get(Symbol::Z) {
        for s in r.rplus_symbols() {
            match r.get(s) {
                Some(x) => {
                    let c = commutator(z, x).expect("same rank");
                    report.push_eq(format!("[z, {s}] = {s}"), &c, x);
                }
                None => report.push(
                    format!("[z, {s}] = {s}"),
                    true,
                    "skipped".to_string(),
                    "no polynomial image under the reflection".to_string(),
                ),
            }
        }
        for s in r.rminus_symbols() {
            let y = r.element(s);
            let c = commutator(z, y).expect("same rank");
            report.push_eq(format!("[z, {s}] = -{s}"), &c, &y.scale(&int(-1)));
        }
    }

    // the reductive part preserves the aplus span, and z_ell commutes with it
    let aplus_els: Vec<WeylElement> = aplus.iter().map(|&s| r.element(s).clone()).collect();
    for m_sym in r.m_symbols() {
        let m = r.element(m_sym);
        let c = commutator(z_ell, m).expect("same rank");
        report.push_zero(format!("[z_ell, {m_sym}] = 0"), &c);
        for &s in &aplus {
            let b = commutator(m, r.element(s)).expect("same rank");
            let ok = b.is_zero() || linalg::express_in_span(&b, &aplus_els).is_some();
            report.push(
                format!("[{m_sym}, {s}] in span(aplus)"),
                ok,
                b.to_string(),
                "a combination of the aplus basis".to_string(),
            );
        }
    }

    report
}

/// The generating set of the associative subalgebra: `1`, the reductive
/// basis (`m_ij` and `z`), the `rminus` family, and the `aplus` family.
pub fn a_ell_generating_set(r: &Realization) -> Vec<WeylElement> {
    let mut out = vec![WeylElement::one(r.rank())];
    for s in r.m_symbols() {
        out.push(r.element(s).clone());
    }
    for s in r.rminus_symbols() {
        out.push(r.element(s).clone());
    }
    for s in r.aplus_symbols() {
        out.push(r.element(s).clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::rings::RingSpec;

    #[test]
    fn chevalley_images_at_rank_two() {
        let r = build_realization(2, 0).unwrap();
        // e_2 = (1/2) P_2^2 Q_3^{-1}
        let e2 = WeylElement::term(2, true, rat(1, 2), vec![0, 0, -1], vec![0, 2, 0]).unwrap();
        assert_eq!(r.element(Symbol::E(2)), &e2);
        // h_2 = -Q_2 P_2 - 1/2
        let h2 = &WeylElement::term(2, false, int(-1), vec![0, 1, 0], vec![0, 1, 0]).unwrap()
            + &WeylElement::constant(2, rat(-1, 2));
        assert_eq!(r.element(Symbol::H(2)), &h2);
        // z_ell = -Q_3 P_3 regardless of the twist
        for ell in [-4, 0, 3] {
            let r = build_realization(2, ell).unwrap();
            let z_ell =
                WeylElement::term(2, false, int(-1), vec![0, 0, 1], vec![0, 0, 1]).unwrap();
            assert_eq!(r.element(Symbol::ZEll), &z_ell);
        }
    }

    #[test]
    fn brackets_at_rank_two() {
        let r = build_realization(2, 0).unwrap();
        let c = commutator(r.element(Symbol::E(1)), r.element(Symbol::F(1))).unwrap();
        assert_eq!(&c, r.element(Symbol::H(1)));
        let c = commutator(r.element(Symbol::H(2)), r.element(Symbol::E(1))).unwrap();
        assert_eq!(c, r.element(Symbol::E(1)).scale(&int(-1)));
        let c = commutator(r.element(Symbol::H(1)), r.element(Symbol::H(2))).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn sp2n_relations_hold_for_small_ranks() {
        for n in [2, 3] {
            let r = build_realization(n, 0).unwrap();
            let report = verify_sp2n(&r);
            assert_eq!(report.failures, 0, "failures at n={n}: {:#?}",
                report.checks.iter().filter(|c| !c.ok()).collect::<Vec<_>>());
            assert_eq!(report.cartan_matches, Some(true));
        }
    }

    #[test]
    fn parabolic_relations_hold() {
        for ell in [-4, 0, 4] {
            let r = build_realization(2, ell).unwrap();
            let report = verify_parabolic(&r);
            assert_eq!(report.failures, 0);
        }
    }

    #[test]
    fn aplus_is_rplus_times_z_ell() {
        let r = build_realization(2, 0).unwrap();
        // aplus[2,2] = -P_2^2 P_3, and e_2 * z_ell = aplus[2,2] / 2
        let want = WeylElement::term(2, false, int(-1), vec![0, 0, 0], vec![0, 2, 1]).unwrap();
        assert_eq!(r.element(Symbol::APlus(2, 2)), &want);
        let e2z = product(r.element(Symbol::E(2)), r.element(Symbol::ZEll)).unwrap();
        assert_eq!(e2z, r.element(Symbol::APlus(2, 2)).scale(&rat(1, 2)));
    }

    #[test]
    fn generating_set_counts_and_membership() {
        let r = build_realization(2, 0).unwrap();
        let set = a_ell_generating_set(&r);
        // 1, four m_ij plus z, three rminus, three aplus
        assert_eq!(set.len(), 1 + 5 + 3 + 3);
        let spec = RingSpec::resolution_x(2, 0);
        for el in &set {
            assert!(spec.is_member(el).unwrap(), "{el}");
        }
        // the Laurent e_n is not in the set
        let e2 = r.element(Symbol::E(2));
        assert!(!set.contains(e2));
    }

    #[test]
    fn degree_grading_of_the_table() {
        let r = build_realization(3, 1).unwrap();
        let n = 3;
        for i in 1..=n {
            assert_eq!(r.element(Symbol::H(i)).degree(), Some(0));
        }
        for i in 1..n {
            assert_eq!(r.element(Symbol::E(i)).degree(), Some(0));
            assert_eq!(r.element(Symbol::F(i)).degree(), Some(0));
        }
        assert_eq!(r.element(Symbol::F(n)).degree(), Some(3));
        assert_eq!(r.element(Symbol::Z).degree(), Some(0));
        for s in r.rminus_symbols() {
            assert_eq!(r.element(s).degree(), Some(3));
        }
        for s in r.aplus_symbols() {
            assert_eq!(r.element(s).degree(), Some(-3));
        }
        for s in r.m_symbols() {
            assert_eq!(r.element(s).degree(), Some(0));
        }
    }

    #[test]
    fn realization_membership_split() {
        let r = build_realization(3, 2).unwrap();
        let res = RingSpec::resolution_x(3, 2);
        let sing = RingSpec::singular_x(3);
        for i in 1..3 {
            assert!(res.is_member(r.element(Symbol::E(i))).unwrap());
            assert!(res.is_member(r.element(Symbol::F(i))).unwrap());
        }
        for i in 1..=3 {
            assert!(res.is_member(r.element(Symbol::H(i))).unwrap());
        }
        assert!(res.is_member(r.element(Symbol::F(3))).unwrap());
        let en = r.element(Symbol::E(3));
        assert!(!res.is_member(en).unwrap());
        assert!(sing.is_member(en).unwrap());
        for s in r.rplus_symbols() {
            assert!(sing.is_member(r.element(s)).unwrap());
            assert!(!res.is_member(r.element(s)).unwrap());
        }
    }

    #[test]
    fn symbol_strings_round_trip() {
        for s in [
            Symbol::E(1),
            Symbol::H(3),
            Symbol::F(2),
            Symbol::Z,
            Symbol::ZEll,
            Symbol::M(1, 2),
            Symbol::RPlus(2, 3),
            Symbol::RMinus(1, 1),
            Symbol::APlus(3, 3),
        ] {
            assert_eq!(s.to_string().parse::<Symbol>().unwrap(), s);
        }
    }

    #[test]
    fn rank_below_two_is_rejected() {
        assert!(build_realization(1, 0).is_err());
    }

    #[test]
    fn z_acts_like_minus_mu_last_on_covariants() {
        // on twist-ell covariants the euler relation makes z equal to
        // z_ell - ell/2 - n/4
        use crate::support::{ModuleVector, SupportKind, SupportPredicate};
        use crate::weyl::apply;
        let (n, ell) = (2usize, 2i64);
        let r = build_realization(n, ell).unwrap();
        let support = SupportPredicate::new(SupportKind::H0ResX, n, ell);
        for w in [0i64, -1, -2] {
            for mono in support.enumerate_weight(w) {
                let v = ModuleVector::monomial(mono.clone());
                let zv = apply(r.element(Symbol::Z), &v, &support);
                let expected = v.scale(&(int(w) - rat(ell, 2) - rat(n as i64, 4)));
                assert_eq!(zv, expected);
                let zlv = apply(r.element(Symbol::ZEll), &v, &support);
                assert_eq!(zlv, v.scale(&int(w)));
                let _ = MultiIndex::zero(n);
            }
        }
    }
}
