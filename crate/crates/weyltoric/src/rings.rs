//! The three rings as extensional data: a membership predicate on
//! normal-ordered monomials (exponent sign conditions plus a torus-weight
//! homogeneity functional) and the generator sets they are spanned by.
//!
//! `SingularX` is the ring of differential operators on the affine cone of
//! rank-one quadrics (Laurent in the last variable), `ResolutionX` the
//! twisted ring on its resolution, and `WeightedY` the twisted ring on the
//! weighted projective space, obtained from `ResolutionX` by the Fourier
//! transform in the last variable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{self, ReflectionSpec};
use crate::index::MultiIndex;
use crate::rat::int;
use crate::weyl::WeylElement;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RingKind {
    SingularX,
    ResolutionX,
    WeightedY,
}

impl RingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingKind::SingularX => "singular-x",
            RingKind::ResolutionX => "resolution-x",
            RingKind::WeightedY => "weighted-y",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub kind: RingKind,
    pub rank: usize,
    /// Twist of the line bundle; unused for `SingularX`.
    pub twist: i64,
}

impl RingSpec {
    pub fn singular_x(rank: usize) -> Self {
        RingSpec {
            kind: RingKind::SingularX,
            rank,
            twist: 0,
        }
    }

    pub fn resolution_x(rank: usize, twist: i64) -> Self {
        RingSpec {
            kind: RingKind::ResolutionX,
            rank,
            twist,
        }
    }

    /// The Serre sheaf on the weighted projective space is invertible only
    /// for even twists.
    pub fn weighted_y(rank: usize, twist: i64) -> Result<Self> {
        if twist.rem_euclid(2) != 0 {
            return Err(Error::OddTwist(twist));
        }
        Ok(RingSpec {
            kind: RingKind::WeightedY,
            rank,
            twist,
        })
    }

    /// Whether the ring admits Laurent exponents in the last variable.
    pub fn laurent_last(&self) -> bool {
        self.kind == RingKind::SingularX
    }

    /// Torus-weight functional on `tau = mu - nu`; it vanishes on every
    /// member monomial.
    pub fn homogeneity(&self, tau: &MultiIndex) -> i64 {
        match self.kind {
            RingKind::SingularX | RingKind::ResolutionX => tau.head_sum() - 2 * tau.last(),
            RingKind::WeightedY => tau.head_sum() + 2 * tau.last(),
        }
    }

    pub fn is_member_term(&self, mu: &MultiIndex, nu: &MultiIndex) -> bool {
        if mu.len() != self.rank + 1 || nu.len() != self.rank + 1 {
            return false;
        }
        if nu.entries().iter().any(|&e| e < 0) {
            return false;
        }
        let head_ok = mu.entries()[..self.rank].iter().all(|&e| e >= 0);
        let last_ok = self.laurent_last() || mu.last() >= 0;
        head_ok && last_ok && self.homogeneity(&mu.sub(nu)) == 0
    }

    /// True iff every term of the element is a member monomial.
    pub fn is_member(&self, el: &WeylElement) -> Result<bool> {
        if el.rank() != self.rank {
            return Err(Error::RankMismatch(el.rank(), self.rank));
        }
        Ok(el.terms().all(|(mu, nu, _)| self.is_member_term(mu, nu)))
    }

    /// The Euler relation that annihilates every covariant monomial of the
    /// matching module: `sum Q_i P_i - 2 Q_last P_last` (minus the twist on
    /// the resolution), or its Fourier image on the weighted side.
    pub fn euler_relation(&self) -> WeylElement {
        let n = self.rank;
        let mut el = WeylElement::zero(n);
        match self.kind {
            RingKind::SingularX | RingKind::ResolutionX => {
                for i in 0..n {
                    el = &el + &qp(n, i, i);
                }
                el = &el - &qp(n, n, n).scale(&int(2));
                if self.kind == RingKind::ResolutionX {
                    el = &el - &WeylElement::constant(n, int(self.twist));
                }
            }
            RingKind::WeightedY => {
                for i in 0..n {
                    el = &el + &qp(n, i, i);
                }
                el = &el + &qp(n, n, n).scale(&int(2));
                el = &el - &WeylElement::constant(n, int(self.twist));
            }
        }
        el
    }

    pub fn generators(&self) -> GeneratorSet {
        let n = self.rank;
        match self.kind {
            RingKind::SingularX | RingKind::ResolutionX => {
                let mut degree_zero = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        degree_zero.push(qp(n, i, j));
                    }
                }
                degree_zero.push(qp(n, n, n));
                let mut degree_plus = Vec::new();
                let mut degree_minus = Vec::new();
                for i in 0..n {
                    for j in i..n {
                        // Q_i Q_j Q_last
                        let mut mu = vec![0i64; n + 1];
                        mu[i] += 1;
                        mu[j] += 1;
                        mu[n] += 1;
                        degree_plus.push(
                            WeylElement::term(n, false, int(1), mu, vec![0; n + 1]).unwrap(),
                        );
                        // P_i P_j Q_last^{-1}  (singular)  /  P_i P_j P_last  (resolution)
                        let mut nu = vec![0i64; n + 1];
                        nu[i] += 1;
                        nu[j] += 1;
                        let term = if self.kind == RingKind::SingularX {
                            let mut mu = vec![0i64; n + 1];
                            mu[n] = -1;
                            WeylElement::term(n, true, int(1), mu, nu).unwrap()
                        } else {
                            nu[n] += 1;
                            WeylElement::term(n, false, int(1), vec![0; n + 1], nu).unwrap()
                        };
                        degree_minus.push(term);
                    }
                }
                GeneratorSet {
                    degree_zero,
                    degree_plus,
                    degree_minus,
                    euler_relation: self.euler_relation(),
                }
            }
            RingKind::WeightedY => {
                // Fourier images of the resolution generators at twist + 2.
                let res = RingSpec::resolution_x(n, self.twist + 2);
                let gens = res.generators();
                let spec = ReflectionSpec::standard(n);
                let map = |els: &[WeylElement]| -> Vec<WeylElement> {
                    els.iter()
                        .map(|g| {
                            fourier::fourier_i(g, &spec)
                                .expect("resolution generators are polynomial")
                        })
                        .collect()
                };
                GeneratorSet {
                    degree_zero: map(&gens.degree_zero),
                    degree_plus: map(&gens.degree_plus),
                    degree_minus: map(&gens.degree_minus),
                    euler_relation: fourier::fourier_i(&gens.euler_relation, &spec)
                        .expect("euler relation is polynomial"),
                }
            }
        }
    }

    /// All member monomials `(mu, nu)` with `|mu| + |nu| <= max_order`
    /// (absolute values), sorted lexicographically.
    pub fn admissible_monomials(&self, max_order: u32) -> Vec<(MultiIndex, MultiIndex)> {
        let n = self.rank;
        let budget = max_order as i64;
        let mut out = Vec::new();
        let mut head_mu = vec![0i64; n];
        enumerate_nonneg(&mut head_mu, 0, budget, &mut |head_mu, used_mu| {
            let mut nu = vec![0i64; n + 1];
            let head_mu = head_mu.to_vec();
            enumerate_nonneg(&mut nu, 0, budget - used_mu, &mut |nu, used_nu| {
                // homogeneity pins the last mu exponent
                let head_tau: i64 =
                    head_mu.iter().sum::<i64>() - nu[..n].iter().sum::<i64>();
                if head_tau.rem_euclid(2) != 0 {
                    return;
                }
                let tau_last = match self.kind {
                    RingKind::SingularX | RingKind::ResolutionX => head_tau / 2,
                    RingKind::WeightedY => -head_tau / 2,
                };
                let mu_last = nu[n] + tau_last;
                if !self.laurent_last() && mu_last < 0 {
                    return;
                }
                if used_mu + used_nu + mu_last.abs() > budget {
                    return;
                }
                let mut mu = head_mu.clone();
                mu.push(mu_last);
                out.push((MultiIndex::new(mu), MultiIndex::new(nu.to_vec())));
            });
        });
        out.sort();
        out
    }
}

/// `Q_i P_j` as an element (0-based indices).
fn qp(rank: usize, i: usize, j: usize) -> WeylElement {
    let mut mu = vec![0i64; rank + 1];
    let mut nu = vec![0i64; rank + 1];
    mu[i] = 1;
    nu[j] = 1;
    WeylElement::term(rank, false, int(1), mu, nu).unwrap()
}

fn enumerate_nonneg(
    buf: &mut Vec<i64>,
    pos: usize,
    budget: i64,
    emit: &mut impl FnMut(&[i64], i64),
) {
    if pos == buf.len() {
        let used: i64 = buf.iter().sum();
        emit(buf, used);
        return;
    }
    for e in 0..=budget {
        buf[pos] = e;
        enumerate_nonneg(buf, pos + 1, budget - e, emit);
    }
    buf[pos] = 0;
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub degree_zero: Vec<WeylElement>,
    pub degree_plus: Vec<WeylElement>,
    pub degree_minus: Vec<WeylElement>,
    pub euler_relation: WeylElement,
}

impl GeneratorSet {
    pub fn all(&self) -> impl Iterator<Item = &WeylElement> {
        self.degree_zero
            .iter()
            .chain(&self.degree_plus)
            .chain(&self.degree_minus)
    }

    /// Common degree of each family `(zero, plus, minus)`; requires every
    /// family to be degree-homogeneous.
    pub fn degree_labels(&self) -> Option<(i64, i64, i64)> {
        fn family_degree(els: &[WeylElement]) -> Option<i64> {
            let mut deg = None;
            for el in els {
                let d = el.degree()?;
                match deg {
                    None => deg = Some(d),
                    Some(old) if old != d => return None,
                    _ => {}
                }
            }
            deg
        }
        Some((
            family_degree(&self.degree_zero)?,
            family_degree(&self.degree_plus)?,
            family_degree(&self.degree_minus)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::{ModuleVector, SupportKind, SupportPredicate};
    use crate::weyl::{apply, product};

    #[test]
    fn membership_examples() {
        // P_1 P_2 Q_3^{-1} is in the singular ring but not in the resolution.
        let el = WeylElement::term(2, true, int(1), vec![0, 0, -1], vec![1, 1, 0]).unwrap();
        assert!(RingSpec::singular_x(2).is_member(&el).unwrap());
        assert!(!RingSpec::resolution_x(2, 0).is_member(&el).unwrap());
        // and P_1 P_2 P_3 the other way around
        let el = WeylElement::term(2, false, int(1), vec![0, 0, 0], vec![1, 1, 1]).unwrap();
        assert!(RingSpec::resolution_x(2, 5).is_member(&el).unwrap());
        // the identity is in every ring
        for spec in [
            RingSpec::singular_x(2),
            RingSpec::resolution_x(2, -3),
            RingSpec::weighted_y(2, 4).unwrap(),
        ] {
            assert!(spec.is_member(&WeylElement::one(2)).unwrap());
        }
    }

    #[test]
    fn odd_weighted_twist_is_rejected() {
        assert!(matches!(RingSpec::weighted_y(2, 1), Err(Error::OddTwist(1))));
    }

    #[test]
    fn generator_counts_and_degrees() {
        let gens = RingSpec::singular_x(2).generators();
        assert_eq!(gens.degree_zero.len(), 5);
        assert_eq!(gens.degree_plus.len(), 3);
        assert_eq!(gens.degree_minus.len(), 3);
        assert_eq!(gens.degree_labels(), Some((0, 3, -3)));

        let gens = RingSpec::resolution_x(2, 1).generators();
        assert_eq!(gens.degree_labels(), Some((0, 3, -3)));
        // P_i P_j P_3 replaces P_i P_j Q_3^{-1}
        let p11p3 = WeylElement::term(2, false, int(1), vec![0, 0, 0], vec![2, 0, 1]).unwrap();
        assert!(gens.degree_minus.contains(&p11p3));
    }

    #[test]
    fn every_generator_is_a_member() {
        for spec in [
            RingSpec::singular_x(3),
            RingSpec::resolution_x(3, -2),
            RingSpec::weighted_y(3, 2).unwrap(),
        ] {
            for g in spec.generators().all() {
                assert!(spec.is_member(g).unwrap(), "{g} not in {:?}", spec.kind);
            }
        }
    }

    #[test]
    fn membership_is_multiplicative() {
        // deterministic sample of member pairs; the product of members has
        // all terms members again
        for spec in [RingSpec::singular_x(2), RingSpec::resolution_x(2, 0)] {
            let monos = spec.admissible_monomials(3);
            for (a_idx, b_idx) in [(0usize, 1usize), (1, 5), (3, 7), (2, 4), (6, 3)] {
                let (mu_a, nu_a) = &monos[a_idx % monos.len()];
                let (mu_b, nu_b) = &monos[b_idx % monos.len()];
                let a = WeylElement::term(
                    2,
                    spec.laurent_last(),
                    int(3),
                    mu_a.entries().to_vec(),
                    nu_a.entries().to_vec(),
                )
                .unwrap();
                let b = WeylElement::term(
                    2,
                    spec.laurent_last(),
                    int(-2),
                    mu_b.entries().to_vec(),
                    nu_b.entries().to_vec(),
                )
                .unwrap();
                let prod = product(&a, &b).unwrap();
                assert!(spec.is_member(&prod).unwrap());
            }
        }
    }

    #[test]
    fn euler_relation_annihilates_covariants() {
        // twist-ell covariant monomials on the resolution satisfy
        // sum mu' - 2 mu_last = ell
        for ell in [-3i64, 0, 2] {
            let spec = RingSpec::resolution_x(2, ell);
            let support = SupportPredicate::new(SupportKind::H0ResX, 2, ell);
            let euler = spec.euler_relation();
            for w in [0, -1, -2] {
                for mono in support.enumerate_weight(w) {
                    let v = ModuleVector::monomial(mono);
                    assert!(apply(&euler, &v, &support).is_zero());
                }
            }
        }
    }

    #[test]
    fn admissible_enumeration_is_homogeneous() {
        let spec = RingSpec::singular_x(2);
        let monos = spec.admissible_monomials(3);
        assert!(monos.iter().all(|(mu, nu)| spec.is_member_term(mu, nu)));
        assert!(monos
            .iter()
            .all(|(mu, nu)| mu.abs_total() + nu.abs_total() <= 3));
        // contains the Laurent generator P_1 P_2 Q_3^{-1}
        assert!(monos.contains(&(
            MultiIndex::new(vec![0, 0, -1]),
            MultiIndex::new(vec![1, 1, 0])
        )));
    }
}
