//! Per-weight decomposition: dimensions, singular vectors under the `sl_n`
//! raising operators, eigenvalue profiles under the realized Cartan, and the
//! resulting irreducible-module labels.

use serde::{Deserialize, Serialize};

use crate::rat::{self, Coeff};
use crate::realization::Symbol;
use crate::support::{ModuleVector, SupportKind};

use super::WeightModule;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: i64,
    pub dim: usize,
    pub trusted: bool,
    pub singular_dim: usize,
    /// Normalized singular vector, when the singular space is a single line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_vector: Option<String>,
    /// Its exponents, when that vector is a single monomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_monomial: Option<Vec<i64>>,
    /// Eigenvalues of `h_1 .. h_n` on the singular vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_profile: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_dimension_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub kind: SupportKind,
    pub n: usize,
    pub ell: i64,
    pub window: (i64, i64),
    pub trusted: (i64, i64),
    pub finite: bool,
    /// Rows in descending weight order, top weight first.
    pub rows: Vec<WeightRow>,
    /// Every nonempty trusted row has exactly one singular line with a
    /// recognized label of matching dimension.
    pub all_rows_identified: bool,
    pub primitive_weights: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<i64>>,
    pub lift_status: String,
}

/// Label of the irreducible `sl_n`-module with the given highest-weight
/// profile (`h_1 .. h_{n-1}` eigenvalues), when it is a multiple of the
/// first or last fundamental weight.
fn label_from_profile(profile: &[Coeff], n: usize) -> Option<(String, i64)> {
    let ints: Vec<i64> = profile.iter().map(rat::to_i64).collect::<Option<_>>()?;
    if ints.iter().any(|&k| k < 0) {
        return None;
    }
    let nonzero: Vec<usize> = (0..ints.len()).filter(|&i| ints[i] != 0).collect();
    match nonzero.as_slice() {
        [] => Some(("L(0)".to_string(), 0)),
        [0] => Some((format!("L({}*w1)", ints[0]), ints[0])),
        [i] if *i == n - 2 => Some((format!("L({}*w{})", ints[*i], n - 1), ints[*i])),
        _ => None,
    }
}

/// Computes the common eigenvalue profile of `h_1 .. h_n` on a vector, when
/// the vector is a joint eigenvector.
pub fn cartan_profile(m: &WeightModule, v: &ModuleVector) -> Option<Vec<Coeff>> {
    if v.is_zero() {
        return None;
    }
    let mut profile = Vec::new();
    for i in 1..=m.rank() {
        let image = m.apply_op(m.realization().element(Symbol::H(i)), v);
        if image.is_zero() {
            profile.push(rat::int(0));
            continue;
        }
        // take the candidate eigenvalue from the leading monomial of v
        let (lead, lead_coeff) = v.iter().next_back()?;
        let c = image.coeff(lead) / lead_coeff.clone();
        if image != v.scale(&c) {
            return None;
        }
        profile.push(c);
    }
    Some(profile)
}

/// Per-weight decomposition over the window. Callers fill in the
/// primitivity, irreducibility, generation, and lift fields.
pub fn weight_decompose(m: &WeightModule) -> DecompositionReport {
    let n = m.rank();
    let raising = m.sl_raising_ops();
    let mut rows = Vec::new();
    let mut all_rows_identified = true;
    for weight in m.weights() {
        let dim = m.dim(weight);
        let trusted = m.is_trusted(weight);
        if dim == 0 {
            rows.push(WeightRow {
                weight,
                dim,
                trusted,
                singular_dim: 0,
                singular_vector: None,
                singular_monomial: None,
                h_profile: None,
                label: None,
                label_dimension_ok: None,
            });
            continue;
        }
        let kernel = m.joint_kernel(weight, &raising);
        let singular_dim = kernel.len();
        let mut row = WeightRow {
            weight,
            dim,
            trusted,
            singular_dim,
            singular_vector: None,
            singular_monomial: None,
            h_profile: None,
            label: None,
            label_dimension_ok: None,
        };
        if singular_dim == 1 {
            let v = kernel[0].normalized();
            row.singular_vector = Some(v.to_string());
            if let Some((mono, _)) = v.as_monomial() {
                row.singular_monomial = Some(mono.entries().to_vec());
            }
            if let Some(profile) = cartan_profile(m, &v) {
                row.h_profile = Some(profile.iter().map(rat::coeff_string).collect());
                if let Some((label, k)) = label_from_profile(&profile[..n - 1], n) {
                    let expected = rat::binom(k + n as i64 - 1, (n - 1) as u64);
                    let ok = num::BigInt::from(dim) == expected;
                    row.label = Some(label);
                    row.label_dimension_ok = Some(ok);
                }
            }
        }
        if trusted && !(row.singular_dim == 1 && row.label_dimension_ok == Some(true)) {
            all_rows_identified = false;
        }
        rows.push(row);
    }
    DecompositionReport {
        kind: m.kind(),
        n,
        ell: m.twist(),
        window: m.window(),
        trusted: m.trusted(),
        finite: m.is_finite(),
        rows,
        all_rows_identified,
        primitive_weights: Vec::new(),
        irreducible: None,
        generator: None,
        lift_status: "not-checked".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::modules::build_module;

    #[test]
    fn positive_twist_rows() {
        // twist 1, rank 2: weight 0 is L(1*w1) with singular vector Q_2
        let m = build_module(SupportKind::H0ResX, 2, 1, Some((-3, 0))).unwrap();
        let rep = weight_decompose(&m);
        let row0 = rep.rows.iter().find(|r| r.weight == 0).unwrap();
        assert_eq!(row0.dim, 2);
        assert_eq!(row0.singular_dim, 1);
        assert_eq!(row0.singular_monomial, Some(vec![0, 1, 0]));
        assert_eq!(row0.label.as_deref(), Some("L(1*w1)"));
        assert_eq!(row0.label_dimension_ok, Some(true));
        assert!(rep.all_rows_identified);
        // the generic label law L((ell - 2w) * w_{n-1})
        for r in &rep.rows {
            let k = 1 - 2 * r.weight;
            assert_eq!(r.label.as_deref(), Some(format!("L({k}*w1)").as_str()));
        }
    }

    #[test]
    fn top_cohomology_rows_at_rank_three() {
        // twist -3, rank 3: a single weight 0 of dimension 1 with the
        // all-negative singular monomial
        let m = build_module(SupportKind::HtopResX, 3, -3, None).unwrap();
        let rep = weight_decompose(&m);
        assert_eq!(rep.rows.len(), 1);
        let row = &rep.rows[0];
        assert_eq!(row.weight, 0);
        assert_eq!(row.dim, 1);
        assert_eq!(row.singular_monomial, Some(vec![-1, -1, -1, 0]));
        assert_eq!(row.label.as_deref(), Some("L(0)"));
    }

    #[test]
    fn weighted_side_rows() {
        // twist 2, rank 2 on the weighted space: weights 1 and 2
        let m = build_module(SupportKind::H0Y, 2, 2, None).unwrap();
        let rep = weight_decompose(&m);
        let top = rep.rows.iter().find(|r| r.weight == 2).unwrap();
        assert_eq!(top.dim, 1);
        assert_eq!(top.singular_monomial, Some(vec![0, 0, 1]));
        let below = rep.rows.iter().find(|r| r.weight == 1).unwrap();
        assert_eq!(below.dim, 3);
        assert_eq!(below.label.as_deref(), Some("L(2*w1)"));
        assert_eq!(below.singular_monomial, Some(vec![0, 2, 0]));
    }

    #[test]
    fn hres_highest_weight_vectors() {
        // twist -4, rank 2: weights 0 and -1 with hw vectors
        // Q_1^{ell+n-2w-1} Q_2^{-1} Q_3^{-w}
        let m = build_module(SupportKind::HtopResX, 2, -4, None).unwrap();
        let rep = weight_decompose(&m);
        for r in &rep.rows {
            let w = r.weight;
            let expected = MultiIndex::new(vec![-4 + 2 - 2 * w - 1, -1, -w]);
            assert_eq!(r.singular_monomial, Some(expected.entries().to_vec()));
            let k = -(-4 + 2 - 2 * w);
            let label = if k == 0 { "L(0)".to_string() } else { format!("L({k}*w1)") };
            assert_eq!(r.label.as_deref(), Some(label.as_str()));
            assert_eq!(r.label_dimension_ok, Some(true));
        }
    }
}
