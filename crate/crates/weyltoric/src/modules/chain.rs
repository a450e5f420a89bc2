//! Lowering chains: repeated application of the weight-lowering operator
//! `f_n` to a highest-weight vector produces `sl_n`-singular vectors whose
//! dominant weight grows by `2 w_{n-1}` per step. The chain must die exactly
//! when the module is finite.

use serde::{Deserialize, Serialize};

use crate::rat::{self, Coeff};
use crate::realization::Symbol;
use crate::support::ModuleVector;
use crate::weyl::apply;

use super::WeightModule;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStep {
    pub m: usize,
    pub weight: i64,
    pub vector: String,
    pub singular_ok: bool,
    pub profile_ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainReport {
    pub start: Vec<i64>,
    pub steps: Vec<ChainStep>,
    /// `Some(m)` when the chain genuinely hits zero after `m` nonzero
    /// vectors; `None` when it is still alive at the window edge.
    pub terminated: Option<usize>,
    /// A finite module kills the chain, an infinite one keeps it alive
    /// inside the window. (The steps may die early: lowered vectors are
    /// allowed to be trivial.)
    pub consistent_with_finiteness: bool,
    /// The chain produced one nonzero vector per occupied weight at or
    /// below the start; holds for the section modules, not for the top
    /// cohomology, whose weight spaces are connected by a different
    /// lowering element.
    pub covers_all_weights: bool,
    pub pass: bool,
}

/// Applies the lowering operator repeatedly to the given highest-weight
/// monomial vector and checks singularity and the profile shift at each
/// step.
pub fn check_lemma_hw_chain(m: &WeightModule, start: &ModuleVector) -> ChainReport {
    let lowering = m.realization().element(Symbol::F(m.rank()));
    let raising = m.sl_raising_ops();
    let start_weight = m
        .vector_weight(start)
        .expect("chain start must be weight-homogeneous");
    let base_profile = super::decompose::cartan_profile(m, start);

    let mut steps = Vec::new();
    let mut current = start.clone();
    let mut step = 0usize;
    let mut terminated = None;
    loop {
        let weight = start_weight - step as i64;
        let singular_ok = raising.iter().all(|op| m.apply_op(op, &current).is_zero());
        let profile_ok = match (&base_profile, super::decompose::cartan_profile(m, &current)) {
            (Some(base), Some(profile)) => {
                // sl_n part shifts by 2m on the last simple coordinate
                let mut expected: Vec<Coeff> = base[..m.rank() - 1].to_vec();
                if let Some(last) = expected.last_mut() {
                    *last = &*last + &rat::int(2 * step as i64);
                }
                profile[..m.rank() - 1] == expected[..]
            }
            _ => false,
        };
        steps.push(ChainStep {
            m: step,
            weight,
            vector: current.to_string(),
            singular_ok,
            profile_ok,
        });

        // lower once more; distinguish a genuine zero from window exit
        let image = apply(lowering, &current, m.support());
        if image.is_zero() {
            terminated = Some(step + 1);
            break;
        }
        let image_weight = weight - 1;
        if image_weight < m.window().0 {
            break; // alive at the edge
        }
        current = image;
        step += 1;
    }

    let expected_len = (m.window().0..=start_weight)
        .filter(|&w| m.dim(w) > 0)
        .count();
    let consistent = if m.is_finite() {
        terminated.is_some()
    } else {
        terminated.is_none()
    };
    let covers_all_weights = terminated == Some(expected_len);
    let pass = steps.iter().all(|s| s.singular_ok && s.profile_ok) && consistent;

    ChainReport {
        start: start
            .as_monomial()
            .map(|(mu, _)| mu.entries().to_vec())
            .unwrap_or_default(),
        steps,
        terminated,
        consistent_with_finiteness: consistent,
        covers_all_weights,
        pass,
    }
}
