//! The two highest weights produced by the section modules (for even and
//! odd twists) lie in one orbit of the hyperoctahedral Weyl group after the
//! rho shift. Checked by brute-force orbit enumeration in epsilon
//! coordinates (doubled to stay integral).

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub n: usize,
    /// `rho`-shifted weights in doubled epsilon coordinates.
    pub even_shifted: Vec<i64>,
    pub odd_shifted: Vec<i64>,
    pub orbit_size: usize,
    pub same_orbit: bool,
}

/// Doubled epsilon coordinates of `sum c_i w_i` where `w_i = e_1 + .. + e_i`.
fn doubled_eps(fundamental_coeffs_halves: &[i64]) -> Vec<i64> {
    // input: 2 * c_i (so half-integers stay integral)
    let n = fundamental_coeffs_halves.len();
    (0..n)
        .map(|j| fundamental_coeffs_halves[j..].iter().sum())
        .collect()
}

/// Enumerates the full signed-permutation orbit of a vector.
fn orbit(v: &[i64]) -> std::collections::BTreeSet<Vec<i64>> {
    let n = v.len();
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let mut out = std::collections::BTreeSet::new();
    for p in &perms {
        for signs in 0..(1u32 << n) {
            let w: Vec<i64> = (0..n)
                .map(|i| {
                    let x = v[p[i]];
                    if signs & (1 << i) != 0 {
                        -x
                    } else {
                        x
                    }
                })
                .collect();
            out.insert(w);
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Checks the orbit statement at rank `n`: the even-twist weight
/// `-(1/2) w_n` and the odd-twist weight `w_{n-1} - (3/2) w_n`, both shifted
/// by `rho`, are signed-permutations of each other.
pub fn weyl_orbit_check(n: usize) -> OrbitReport {
    // doubled fundamental coordinates
    let mut even = vec![0i64; n];
    even[n - 1] = -1; // -(1/2) w_n
    let mut odd = vec![0i64; n];
    odd[n - 2] = 2; // w_{n-1}
    odd[n - 1] = -3; // -(3/2) w_n
    let rho: Vec<i64> = vec![2; n]; // doubled coefficients of rho = sum w_i

    let shift = |w: &[i64]| -> Vec<i64> {
        let summed: Vec<i64> = w.iter().zip(&rho).map(|(a, b)| a + b).collect();
        doubled_eps(&summed)
    };
    let even_shifted = shift(&even);
    let odd_shifted = shift(&odd);
    let orb = orbit(&even_shifted);
    let same_orbit = orb.contains(&odd_shifted);
    OrbitReport {
        n,
        orbit_size: orb.len(),
        even_shifted,
        odd_shifted,
        same_orbit,
    }
}
