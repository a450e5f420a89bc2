//! Graded monomial models of the cohomology groups, with the generator
//! action wired through truncating application, and the per-weight checks:
//! decomposition into irreducible `sl_n` pieces, primitive subspaces,
//! irreducibility, generation, lifting, and the lowering chains.
//!
//! The `H^0` module of the resolution is infinite; it is handled through a
//! weight window whose bottom row is flagged untrusted, since a generator
//! application can step out of the window once. Everything else is finite
//! and fully trusted.

mod chain;
mod decompose;
mod generation;
mod lift;
mod orbit;
mod primitive;

pub use chain::{check_lemma_hw_chain, ChainReport, ChainStep};
pub use decompose::{weight_decompose, DecompositionReport, WeightRow};
pub use generation::{
    check_generation, expected_generator, CertificateRecord, ClosureOutcome, GenerationReport,
    GenerationStrategy,
};
pub use lift::{hw_profile, lift_to_g, LiftReport};
pub use orbit::{weyl_orbit_check, OrbitReport};
pub use primitive::{check_irreducible, find_primitive, PrimitiveSpace, PrimitiveSummary};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fourier::{self, ReflectionSpec};
use crate::index::MultiIndex;
use crate::linalg;
use crate::rat::Coeff;
use crate::realization::{build_realization, Realization, Symbol};
use crate::support::{ModuleVector, SupportKind, SupportPredicate};
use crate::weyl::{apply, WeylElement};

/// A weight-graded monomial module with its acting realization.
#[derive(Clone, Debug)]
pub struct WeightModule {
    support: SupportPredicate,
    realization: Realization,
    window: (i64, i64),
    trusted: (i64, i64),
    finite: bool,
    basis: BTreeMap<i64, Vec<MultiIndex>>,
}

/// Default depth of the truncation window for the infinite modules.
pub const DEFAULT_WINDOW_DEPTH: i64 = 6;

/// Builds the module for one of the four cohomology supports. For the
/// weighted projective space the action table is the Fourier transport of
/// the realization at twist `ell + 2`.
pub fn build_module(
    kind: SupportKind,
    n: usize,
    ell: i64,
    window: Option<(i64, i64)>,
) -> Result<WeightModule> {
    let support = SupportPredicate::new(kind, n, ell);
    let (realization, is_y) = match kind {
        SupportKind::H0ResX | SupportKind::HtopResX => (build_realization(n, ell)?, false),
        SupportKind::H0Y | SupportKind::HtopY => {
            if ell.rem_euclid(2) != 0 {
                return Err(Error::OddTwist(ell));
            }
            let r = build_realization(n, ell + 2)?;
            let (transported, _skipped) =
                fourier::transport_realization(&r, &ReflectionSpec::standard(n));
            (transported, true)
        }
        SupportKind::Polynomial | SupportKind::AllLaurent => {
            return Err(Error::Config(
                "unconstrained supports do not define weight modules".into(),
            ));
        }
    };
    let _ = is_y;

    // a window edge strictly inside the natural weight range is untrusted:
    // generator application can step over it by one
    let (window, trusted, finite) = match support.natural_weight_range() {
        Some((nat_lo, nat_hi)) => {
            let win = match window {
                Some((lo, hi)) => (lo.max(nat_lo), hi.min(nat_hi)),
                None => (nat_lo, nat_hi),
            };
            let covers_bottom = win.0 <= nat_lo;
            let covers_top = win.1 >= nat_hi;
            let trusted = (
                if covers_bottom { win.0 } else { win.0 + 1 },
                if covers_top { win.1 } else { win.1 - 1 },
            );
            (win, trusted, covers_bottom && covers_top)
        }
        None => {
            let top = support.top_weight().expect("graded support");
            let win = match window {
                Some((lo, hi)) => (lo, hi.min(top)),
                None => (top - (DEFAULT_WINDOW_DEPTH - 1), top),
            };
            let trusted_hi = if win.1 >= top { win.1 } else { win.1 - 1 };
            ((win.0, win.1), (win.0 + 1, trusted_hi), false)
        }
    };

    let mut basis = BTreeMap::new();
    for w in window.0..=window.1 {
        basis.insert(w, support.enumerate_weight(w));
    }

    Ok(WeightModule {
        support,
        realization,
        window,
        trusted,
        finite,
        basis,
    })
}

impl WeightModule {
    pub fn support(&self) -> &SupportPredicate {
        &self.support
    }

    pub fn kind(&self) -> SupportKind {
        self.support.kind
    }

    pub fn rank(&self) -> usize {
        self.support.rank
    }

    pub fn twist(&self) -> i64 {
        self.support.twist
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn trusted(&self) -> (i64, i64) {
        self.trusted
    }

    /// True when the window contains the whole (finite) module.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn is_empty(&self) -> bool {
        self.basis.values().all(Vec::is_empty)
    }

    pub fn is_trusted(&self, weight: i64) -> bool {
        weight >= self.trusted.0 && weight <= self.trusted.1
    }

    /// Weights of the window, descending (top weight first).
    pub fn weights(&self) -> Vec<i64> {
        (self.window.0..=self.window.1).rev().collect()
    }

    pub fn trusted_weights(&self) -> Vec<i64> {
        (self.trusted.0..=self.trusted.1).rev().collect()
    }

    /// Top weight carrying a nonzero space, within the window.
    pub fn top_weight(&self) -> Option<i64> {
        self.weights().into_iter().find(|&w| self.dim(w) > 0)
    }

    pub fn dim(&self, weight: i64) -> usize {
        self.basis.get(&weight).map_or(0, Vec::len)
    }

    pub fn basis(&self, weight: i64) -> &[MultiIndex] {
        self.basis.get(&weight).map_or(&[], Vec::as_slice)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// Applies an operator through the support predicate and then drops
    /// monomials whose weight left the window.
    pub fn apply_op(&self, op: &WeylElement, v: &ModuleVector) -> ModuleVector {
        let image = apply(op, v, &self.support);
        let mut out = ModuleVector::zero();
        for (mu, c) in image.iter() {
            let w = self.support.weight_of(mu);
            if w >= self.window.0 && w <= self.window.1 {
                out.add_term(mu.clone(), c.clone());
            }
        }
        out
    }

    pub fn apply_symbol(&self, sym: Symbol, v: &ModuleVector) -> ModuleVector {
        self.apply_op(self.realization.element(sym), v)
    }

    /// The common weight of a vector's monomials, if homogeneous.
    pub fn vector_weight(&self, v: &ModuleVector) -> Option<i64> {
        let mut weight = None;
        for (mu, _) in v.iter() {
            let w = self.support.weight_of(mu);
            match weight {
                None => weight = Some(w),
                Some(old) if old != w => return None,
                _ => {}
            }
        }
        weight
    }

    /// Coordinates of a weight-`w` vector on the stored basis.
    pub fn coords(&self, weight: i64, v: &ModuleVector) -> Option<Vec<Coeff>> {
        let basis = self.basis(weight);
        let mut out = vec![crate::rat::int(0); basis.len()];
        for (mu, c) in v.iter() {
            let pos = basis.binary_search(mu).ok()?;
            out[pos] = c.clone();
        }
        Some(out)
    }

    pub fn vector_from_coords(&self, weight: i64, coords: &[Coeff]) -> ModuleVector {
        let mut v = ModuleVector::zero();
        for (mu, c) in self.basis(weight).iter().zip(coords) {
            v.add_term(mu.clone(), c.clone());
        }
        v
    }

    /// Joint kernel of a family of operators restricted to the weight space,
    /// as vectors of that space.
    pub fn joint_kernel(&self, weight: i64, ops: &[&WeylElement]) -> Vec<ModuleVector> {
        let dim = self.dim(weight);
        if dim == 0 {
            return Vec::new();
        }
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for op in ops {
            // images of the basis vectors, assembled column by column
            let images: Vec<ModuleVector> = self
                .basis(weight)
                .iter()
                .map(|mu| self.apply_op(op, &ModuleVector::monomial(mu.clone())))
                .collect();
            let mut keys = std::collections::BTreeSet::new();
            for im in &images {
                for (mu, _) in im.iter() {
                    keys.insert(mu.clone());
                }
            }
            for key in keys {
                rows.push(images.iter().map(|im| im.coeff(&key)).collect());
            }
        }
        linalg::kernel_basis(&rows, dim)
            .into_iter()
            .map(|coords| self.vector_from_coords(weight, &coords))
            .collect()
    }

    /// The raising generators of the action table (`r_+ z_ell` images).
    pub fn aplus_ops(&self) -> Vec<&WeylElement> {
        self.realization
            .aplus_symbols()
            .into_iter()
            .map(|s| self.realization.element(s))
            .collect()
    }

    /// The `sl_n` raising operators `e_1 .. e_{n-1}`.
    pub fn sl_raising_ops(&self) -> Vec<&WeylElement> {
        (1..self.rank())
            .map(|i| self.realization.element(Symbol::E(i)))
            .collect()
    }

    /// All generators of the associative algebra action: reductive part,
    /// `rminus`, and `aplus` families (plus `z_ell` for the grading).
    pub fn action_symbols(&self) -> Vec<Symbol> {
        let mut out = self.realization.m_symbols();
        out.extend(self.realization.rminus_symbols());
        out.extend(self.realization.aplus_symbols());
        out.push(Symbol::ZEll);
        out
    }

    /// Exact `z_ell`-eigenvalue check on every basis monomial of the window.
    pub fn check_z_eigenvalues(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let z_ell = self.realization.element(Symbol::ZEll);
        for (&w, monos) in &self.basis {
            for mu in monos {
                let v = ModuleVector::monomial(mu.clone());
                let zv = apply(z_ell, &v, &self.support);
                if zv != v.scale(&crate::rat::int(w)) {
                    failures.push(format!("z_ell on Q^{mu} gave {zv}, want weight {w}"));
                }
            }
        }
        failures
    }

    /// Checks that each action generator shifts weight by its declared step
    /// (`0` for the reductive part, `-1` for `rminus`, `+1` for `aplus`).
    pub fn check_weight_shifts(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let mut expected: Vec<(Symbol, i64)> = Vec::new();
        for s in self.realization.m_symbols() {
            expected.push((s, 0));
        }
        for s in self.realization.rminus_symbols() {
            expected.push((s, -1));
        }
        for s in self.realization.aplus_symbols() {
            expected.push((s, 1));
        }
        for (&w, monos) in &self.basis {
            for mu in monos {
                let v = ModuleVector::monomial(mu.clone());
                for (sym, delta) in &expected {
                    let image = apply(self.realization.element(*sym), &v, &self.support);
                    if image.is_zero() {
                        continue;
                    }
                    match image
                        .iter()
                        .map(|(m, _)| self.support.weight_of(m))
                        .collect::<std::collections::BTreeSet<_>>()
                        .into_iter()
                        .collect::<Vec<_>>()
                        .as_slice()
                    {
                        [single] if *single == w + delta => {}
                        other => failures.push(format!(
                            "{sym} on Q^{mu} hit weights {other:?}, want {}",
                            w + delta
                        )),
                    }
                }
            }
        }
        failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::binom;

    #[test]
    fn h0_res_dimensions() {
        let m = build_module(SupportKind::H0ResX, 3, 2, Some((-2, 0))).unwrap();
        assert_eq!(m.dim(0), 6);
        assert_eq!(m.dim(-1), 15);
        assert_eq!(m.dim(-2), 28);
        assert_eq!(m.trusted(), (-1, 0));
        assert!(!m.is_finite());
    }

    #[test]
    fn htop_res_single_line() {
        let m = build_module(SupportKind::HtopResX, 2, -2, None).unwrap();
        assert!(m.is_finite());
        assert_eq!(m.window(), (0, 0));
        assert_eq!(m.dim(0), 1);
        assert_eq!(m.basis(0), &[MultiIndex::new(vec![-1, -1, 0])]);
        // empty for ell > -n
        let m = build_module(SupportKind::HtopResX, 2, -1, None).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn htop_y_generator() {
        let m = build_module(SupportKind::HtopY, 2, -4, None).unwrap();
        assert_eq!(m.total_dim(), 1);
        assert_eq!(m.basis(0), &[MultiIndex::new(vec![-1, -1, -1])]);
    }

    #[test]
    fn dimension_law_matches_binomials() {
        for n in [2usize, 3] {
            for ell in -6..=6 {
                let m = build_module(SupportKind::H0ResX, n, ell, None).unwrap();
                for w in m.weights() {
                    let expected = if ell - 2 * w >= 0 && w <= 0 {
                        let k = ell - 2 * w + n as i64 - 1;
                        binom(k, (n - 1) as u64)
                    } else {
                        num::BigInt::from(0)
                    };
                    assert_eq!(num::BigInt::from(m.dim(w)), expected, "n={n} ell={ell} w={w}");
                }
            }
        }
    }

    #[test]
    fn z_eigenvalues_and_weight_shifts() {
        for (kind, n, ell) in [
            (SupportKind::H0ResX, 2, 1),
            (SupportKind::H0ResX, 2, -2),
            (SupportKind::HtopResX, 2, -4),
            (SupportKind::H0Y, 2, 2),
            (SupportKind::HtopY, 2, -6),
        ] {
            let m = build_module(kind, n, ell, None).unwrap();
            assert!(m.check_z_eigenvalues().is_empty(), "{kind:?}");
            assert!(m.check_weight_shifts().is_empty(), "{kind:?}");
        }
    }

    #[test]
    fn odd_twist_rejected_on_the_weighted_side() {
        assert!(build_module(SupportKind::H0Y, 2, 3, None).is_err());
    }

    #[test]
    fn window_edges_inside_the_natural_range_are_untrusted() {
        // natural top of the twist-2 sections is 0; a window stopping at -1
        // cannot trust its own top row (raising exits the window), and a
        // kernel computed there would be a truncation artifact
        let m = build_module(SupportKind::H0ResX, 2, 2, Some((-4, -1))).unwrap();
        assert_eq!(m.window(), (-4, -1));
        assert_eq!(m.trusted(), (-3, -2));
        let spaces = crate::modules::find_primitive(&m);
        assert!(spaces.iter().all(|s| !s.trusted));
        // a finite module clipped on both sides
        let m = build_module(SupportKind::HtopResX, 2, -8, Some((-2, -1))).unwrap();
        assert_eq!(m.window(), (-2, -1));
        assert_eq!(m.trusted(), (-1, -2));
        assert!(!m.is_finite());
        assert!(m.trusted_weights().is_empty());
    }

    #[test]
    fn euler_relation_annihilates_every_module_basis() {
        use crate::rings::RingSpec;
        for (kind, ring) in [
            (SupportKind::H0ResX, RingSpec::resolution_x(2, -2)),
            (SupportKind::HtopResX, RingSpec::resolution_x(2, -4)),
            (SupportKind::H0Y, RingSpec::weighted_y(2, 4).unwrap()),
            (SupportKind::HtopY, RingSpec::weighted_y(2, -6).unwrap()),
        ] {
            let m = build_module(kind, 2, ring.twist, None).unwrap();
            let euler = ring.euler_relation();
            for w in m.weights() {
                for mu in m.basis(w) {
                    let v = ModuleVector::monomial(mu.clone());
                    assert!(
                        apply(&euler, &v, m.support()).is_zero(),
                        "{kind:?} {mu}"
                    );
                }
            }
        }
    }
}
