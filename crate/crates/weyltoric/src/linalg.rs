//! Exact rational linear algebra: reduced row echelon form, kernels, and
//! incremental row spaces with deterministic pivoting (always the largest
//! key, respectively the first nonzero column).

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::rat::{int, Coeff};
use crate::weyl::WeylElement;

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row, in order.
pub fn rref(mat: &mut [Vec<Coeff>]) -> Vec<usize> {
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = int(1) / mat[row][col].clone();
        for v in mat[row][col..].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_tail = mat[row][col..].to_vec();
        for (r, row_vec) in mat.iter_mut().enumerate() {
            if r != row && !row_vec[col].is_zero() {
                let f = row_vec[col].clone();
                for (v, p) in row_vec[col..].iter_mut().zip(&pivot_tail) {
                    *v = &*v - &(p * &f);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    pivots
}

/// Basis of the solution space of `A x = 0`, one vector per free column,
/// in column order.
pub fn kernel_basis(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut mat: Vec<Vec<Coeff>> = rows.to_vec();
    for r in &mat {
        debug_assert_eq!(r.len(), ncols);
    }
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![int(0); ncols];
        v[free] = int(1);
        for (r, &pc) in pivots.iter().enumerate() {
            let c = -mat[r][free].clone();
            if !c.is_zero() {
                v[pc] = c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `sum_j x_j columns_j = target`; `None` if the target is outside
/// the span. Free coefficients are set to zero.
pub fn solve_in_span(columns: &[Vec<Coeff>], target: &[Coeff]) -> Option<Vec<Coeff>> {
    let nrows = target.len();
    let ncols = columns.len();
    let mut mat: Vec<Vec<Coeff>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<Coeff> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut mat);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![int(0); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = mat[r][ncols].clone();
    }
    Some(x)
}

/// Expresses a Weyl element in the rational span of a list of elements.
pub fn express_in_span(target: &WeylElement, basis: &[WeylElement]) -> Option<Vec<Coeff>> {
    let mut keys = std::collections::BTreeSet::new();
    for el in basis.iter().chain(std::iter::once(target)) {
        for (mu, nu, _) in el.terms() {
            keys.insert((mu.clone(), nu.clone()));
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let columns: Vec<Vec<Coeff>> = basis
        .iter()
        .map(|el| keys.iter().map(|(mu, nu)| el.coeff_of(mu, nu)).collect())
        .collect();
    let t: Vec<Coeff> = keys
        .iter()
        .map(|(mu, nu)| target.coeff_of(mu, nu))
        .collect();
    solve_in_span(&columns, &t)
}

/// Incrementally maintained row space of sparse vectors keyed by `K`.
/// Rows are kept reduced with pivot on the largest key and pivot entry 1.
#[derive(Clone, Debug)]
pub struct RowSpace<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Coeff>>,
}

impl<K: Ord + Clone> Default for RowSpace<K> {
    fn default() -> Self {
        RowSpace::new()
    }
}

impl<K: Ord + Clone> RowSpace<K> {
    pub fn new() -> Self {
        RowSpace {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a vector against the current rows; the remainder has no
    /// leading component on any existing pivot.
    pub fn reduce(&self, mut v: BTreeMap<K, Coeff>) -> BTreeMap<K, Coeff> {
        loop {
            let Some((lead, coeff)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
            else {
                return v;
            };
            let Some(row) = self.rows.get(&lead) else {
                return v;
            };
            for (k, c) in row {
                let delta = c * &coeff;
                match v.entry(k.clone()) {
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
        }
    }

    /// Inserts a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: BTreeMap<K, Coeff>) -> bool {
        let rem = self.reduce(v);
        let Some((lead, coeff)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
        else {
            return false;
        };
        let inv = int(1) / coeff;
        let normalized: BTreeMap<K, Coeff> = rem.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.rows.insert(lead, normalized);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, Coeff>) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn rref_and_kernel() {
        // x + y + z = 0 has a 2-dimensional kernel
        let rows = vec![vec![int(1), int(1), int(1)]];
        let ker = kernel_basis(&rows, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s = &(&v[0] + &v[1]) + &v[2];
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        let x = solve_in_span(&cols, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        let cols = vec![vec![int(1), int(2)]];
        assert!(solve_in_span(&cols, &[int(1), int(0)]).is_none());
    }

    #[test]
    fn row_space_rank_and_membership() {
        let mut rs: RowSpace<usize> = RowSpace::new();
        let v1: BTreeMap<usize, Coeff> = [(0, int(1)), (1, int(2))].into_iter().collect();
        let v2: BTreeMap<usize, Coeff> = [(0, rat(1, 2)), (1, int(1))].into_iter().collect();
        let v3: BTreeMap<usize, Coeff> = [(1, int(1)), (2, int(1))].into_iter().collect();
        assert!(rs.insert(v1.clone()));
        assert!(!rs.insert(v2)); // dependent
        assert!(rs.insert(v3));
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(v1));
    }
}
