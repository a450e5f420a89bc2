//! Primitive subspaces: per weight, the joint kernel of the raising family
//! `r_+ z_ell`, as an `sl_n`-stable subspace. A unique trusted primitive
//! subspace sitting at the top weight certifies irreducibility.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::index::MultiIndex;
use crate::linalg::{self, RowSpace};
use crate::rat::Coeff;
use crate::realization::Symbol;
use crate::support::ModuleVector;

use super::WeightModule;

#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    pub weight: i64,
    pub dim: usize,
    pub trusted: bool,
    pub basis: Vec<ModuleVector>,
    pub sl_stable: bool,
    /// Singular lines inside the subspace (highest-weight vectors of its
    /// `sl_n`-constituents).
    pub singular: Vec<ModuleVector>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimitiveSummary {
    pub weight: i64,
    pub dim: usize,
    pub trusted: bool,
    pub sl_stable: bool,
    pub basis: Vec<String>,
    pub singular: Vec<String>,
}

impl PrimitiveSpace {
    pub fn summary(&self) -> PrimitiveSummary {
        PrimitiveSummary {
            weight: self.weight,
            dim: self.dim,
            trusted: self.trusted,
            sl_stable: self.sl_stable,
            basis: self.basis.iter().map(|v| v.to_string()).collect(),
            singular: self.singular.iter().map(|v| v.to_string()).collect(),
        }
    }
}

fn vector_map(v: &ModuleVector) -> BTreeMap<MultiIndex, Coeff> {
    v.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// All weights with a nonzero joint kernel of the `aplus` family, top weight
/// first.
pub fn find_primitive(m: &WeightModule) -> Vec<PrimitiveSpace> {
    let aplus = m.aplus_ops();
    let mut out = Vec::new();
    for weight in m.weights() {
        if m.dim(weight) == 0 {
            continue;
        }
        let kernel = m.joint_kernel(weight, &aplus);
        if kernel.is_empty() {
            continue;
        }
        // sl_n-stability of the subspace
        let mut span: RowSpace<MultiIndex> = RowSpace::new();
        for v in &kernel {
            span.insert(vector_map(v));
        }
        let mut sl_stable = true;
        for i in 1..m.rank() {
            for sym in [Symbol::E(i), Symbol::F(i)] {
                let op = m.realization().element(sym);
                for v in &kernel {
                    let image = m.apply_op(op, v);
                    if !image.is_zero() && !span.contains(vector_map(&image)) {
                        sl_stable = false;
                    }
                }
            }
        }
        let singular = singular_in_subspace(m, weight, &kernel);
        out.push(PrimitiveSpace {
            weight,
            dim: kernel.len(),
            trusted: m.is_trusted(weight),
            basis: kernel.into_iter().map(|v| v.normalized()).collect(),
            sl_stable,
            singular,
        });
    }
    out
}

/// Joint kernel of the `sl_n` raising operators restricted to the span of
/// the given vectors.
fn singular_in_subspace(
    m: &WeightModule,
    _weight: i64,
    basis: &[ModuleVector],
) -> Vec<ModuleVector> {
    let raising = m.sl_raising_ops();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for op in &raising {
        let images: Vec<ModuleVector> = basis.iter().map(|v| m.apply_op(op, v)).collect();
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
    linalg::kernel_basis(&rows, basis.len())
        .into_iter()
        .map(|coords| {
            let mut v = ModuleVector::zero();
            for (b, c) in basis.iter().zip(&coords) {
                v = v.add(&b.scale(c));
            }
            v.normalized()
        })
        .collect()
}

/// Irreducibility criterion: exactly one trusted primitive subspace, sitting
/// at the top weight of the module. Returns the verdict together with the
/// trusted primitive weights found.
pub fn check_irreducible(m: &WeightModule) -> (bool, Vec<i64>) {
    let spaces = find_primitive(m);
    let trusted: Vec<i64> = spaces
        .iter()
        .filter(|s| s.trusted)
        .map(|s| s.weight)
        .collect();
    let verdict = match (trusted.as_slice(), m.top_weight()) {
        ([w], Some(top)) => *w == top,
        _ => false,
    };
    (verdict, trusted)
}
