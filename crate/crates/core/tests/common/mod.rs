//! Oracles shared by the integration tests. Nothing here calls the library's
//! linear algebra: Betti numbers come from ranks over a large prime field.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use strat_sheaf::complex::{SimplexId, StratifiedComplex};

const P: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` of a matrix given as rows of `(column, ±1)` entries.
pub fn rank_mod_p(rows: Vec<Vec<(usize, i64)>>, ncols: usize) -> usize {
    let mut dense: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![0u64; ncols];
            for (c, x) in r {
                v[c] = (v[c] + x.rem_euclid(P as i64) as u64) % P;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..dense.len()).find(|&i| dense[i][col] != 0) else { continue };
        dense.swap(rank, piv);
        let inv = pow_mod(dense[rank][col], P - 2);
        for x in dense[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for i in 0..dense.len() {
            if i != rank && dense[i][col] != 0 {
                let f = dense[i][col];
                for c in col..ncols {
                    let sub = f * dense[rank][c] % P;
                    dense[i][c] = (dense[i][c] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rational Betti numbers of a simplicial complex given by all of its
/// nonempty simplices, each a sorted vertex list.
pub fn betti(simplices: &[Vec<usize>]) -> Vec<usize> {
    let top = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in simplices {
        by_dim[s.len() - 1].push(s.clone());
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    // ranks[d] = rank of the boundary from dimension d to d - 1
    let mut ranks = vec![0; top + 1];
    for d in 1..top {
        let rows = by_dim[d]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (index[d - 1][&f], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ranks[d] = rank_mod_p(rows, by_dim[d - 1].len());
    }
    (0..top).map(|d| by_dim[d].len() - ranks[d] - ranks[d + 1]).collect()
}

/// All simplices of the link of `sigma`, read off the vertex lists.
pub fn link_simplices(space: &StratifiedComplex, sigma: SimplexId) -> Vec<Vec<usize>> {
    let s: BTreeSet<usize> = space.simplex(sigma).iter().copied().collect();
    (0..space.len())
        .filter_map(|t| {
            let verts = space.simplex(t);
            if verts.len() > s.len() && s.iter().all(|v| verts.contains(v)) {
                Some(verts.iter().copied().filter(|v| !s.contains(v)).collect())
            } else {
                None
            }
        })
        .collect()
}

pub fn link_betti(space: &StratifiedComplex, sigma: SimplexId) -> Vec<usize> {
    betti(&link_simplices(space, sigma))
}

pub fn all_simplices(space: &StratifiedComplex) -> Vec<Vec<usize>> {
    (0..space.len()).map(|s| space.simplex(s).to_vec()).collect()
}

/// Hypercohomology of a two-point suspension of a closed connected
/// orientable manifold `Z` with Betti numbers `b`, from Mayer–Vietoris over
/// the two open cones. Each cone contributes `H^j(Z)` for `j < p`, the
/// chosen subspaces `E₊`, `E₋ ⊆ H^p(Z)` in degree `p`, and nothing above.
/// With `a^j` the rank of `A₊^j ⊕ A₋^j → H^j(Z)`,
/// `ℍ^j = dim ker + (b_{j-1} - a^{j-1})`.
/// `meet` and `join` are `dim(E₊ ∩ E₋)` and `dim(E₊ + E₋)`.
pub fn suspension_table(b: &[usize], p: i32, meet: usize, join: usize) -> Vec<usize> {
    let n = b.len();
    let bj = |j: i32| if j >= 0 && (j as usize) < b.len() { b[j as usize] } else { 0 };
    // (dim of A₊ ⊕ A₋, rank of the difference map) in degree j
    let cone = |j: i32| -> (usize, usize) {
        if j < 0 || j > p {
            (0, 0)
        } else if j < p {
            (2 * bj(j), bj(j))
        } else {
            (meet + join, join)
        }
    };
    (0..=n as i32)
        .map(|j| {
            let (s, r) = cone(j);
            let (_, r1) = cone(j - 1);
            (s - r) + (bj(j - 1) - r1)
        })
        .collect()
}

/// The table for a plain truncation at `p` on both cones.
pub fn suspension_table_plain(b: &[usize], p: i32) -> Vec<usize> {
    let bp = if p >= 0 && (p as usize) < b.len() { b[p as usize] } else { 0 };
    suspension_table(b, p, bp, bp)
}

pub fn trim(v: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|i| v.get(i).copied().unwrap_or(0)).collect()
}
