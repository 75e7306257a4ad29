//! Elimination: fraction-free rank, reduced row echelon form, kernels,
//! linear solves and canonical subspaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{axpy, to_dense, RationalMatrix, SparseVec};
use super::Rational;

type IntRow = Vec<(usize, BigInt)>;

fn integer_row(r: &SparseVec) -> IntRow {
    let mut l = BigInt::one();
    for (_, v) in r {
        l = l.lcm(v.denom());
    }
    r.iter().map(|(j, v)| (*j, v.numer() * (&l / v.denom()))).collect()
}

/// Rank over the rationals by Bareiss fraction-free elimination.
///
/// Rows are bucketed by leading column; inside a bucket the shortest row is
/// taken as pivot (Markowitz count with the column count fixed). Rows that do
/// not meet the pivot column are rescaled lazily: after steps `s..t` the
/// Bareiss factor telescopes to `p_t / p_s`.
pub fn rank(m: &RationalMatrix) -> usize {
    // (row, step index of last update)
    let mut buckets: BTreeMap<usize, Vec<(IntRow, usize)>> = BTreeMap::new();
    for r in m.rows() {
        if let Some(&(lead, _)) = r.first() {
            buckets.entry(lead).or_default().push((integer_row(r), 0));
        }
    }
    // pivots[s] = pivot value used at step s (pivots[0] = 1)
    let mut pivots: Vec<BigInt> = vec![BigInt::one()];
    let mut rank = 0;
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let step = pivots.len() - 1;
        let best = (0..bucket.len()).min_by_key(|&i| bucket[i].0.len()).unwrap();
        let (prow, plast) = bucket.swap_remove(best);
        let prow = catch_up(prow, plast, &pivots, step);
        let p = prow[0].1.clone();
        let prev = pivots[step].clone();
        for (row, last) in bucket {
            let row = catch_up(row, last, &pivots, step);
            let a = row[0].1.clone();
            let reduced = bareiss_combine(&row, &p, &prow, &a, &prev);
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push((reduced, step + 1));
            }
        }
        pivots.push(p);
        rank += 1;
    }
    rank
}

fn catch_up(row: IntRow, last: usize, pivots: &[BigInt], now: usize) -> IntRow {
    if last == now {
        return row;
    }
    let num = &pivots[now];
    let den = &pivots[last];
    row.into_iter()
        .map(|(j, v)| {
            let t = v * num;
            debug_assert!((&t % den).is_zero());
            (j, t / den)
        })
        .collect()
}

/// `(p * row - a * prow) / prev`, exact.
fn bareiss_combine(row: &IntRow, p: &BigInt, prow: &IntRow, a: &BigInt, prev: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + prow.len());
    let (mut i, mut j) = (0, 0);
    let push = |out: &mut IntRow, col: usize, v: BigInt| {
        if !v.is_zero() {
            debug_assert!((&v % prev).is_zero());
            out.push((col, v / prev));
        }
    };
    while i < row.len() || j < prow.len() {
        if j >= prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
            push(&mut out, row[i].0, p * &row[i].1);
            i += 1;
        } else if i >= row.len() || prow[j].0 < row[i].0 {
            push(&mut out, prow[j].0, -(a * &prow[j].1));
            j += 1;
        } else {
            push(&mut out, row[i].0, p * &row[i].1 - a * &prow[j].1);
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// Reduced nonzero rows; row `i` has a leading 1 at `pivots[i]`.
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&j| !is_pivot[j]).collect()
    }
}

/// Gauss–Jordan elimination over the rationals. Pivots are the
/// lexicographically first independent columns.
pub fn rref(m: &RationalMatrix) -> Rref {
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for r in m.rows() {
        if let Some(&(lead, _)) = r.first() {
            buckets.entry(lead).or_default().push(r.clone());
        }
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();
    while let Some((lead, mut bucket)) = buckets.pop_first() {
        let best = (0..bucket.len()).min_by_key(|&i| bucket[i].len()).unwrap();
        let prow = bucket.swap_remove(best);
        let inv = Rational::one() / &prow[0].1;
        let prow: SparseVec = prow.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        for row in bucket {
            let c = -row[0].1.clone();
            let reduced = axpy(&row, &c, &prow);
            if let Some(&(l, _)) = reduced.first() {
                buckets.entry(l).or_default().push(reduced);
            }
        }
        rows.push(prow);
        pivots.push(lead);
    }
    // back substitution, last pivot first
    let mut pos_of_pivot = BTreeMap::new();
    for (i, &p) in pivots.iter().enumerate() {
        pos_of_pivot.insert(p, i);
    }
    for i in (0..rows.len()).rev() {
        let mut r = rows[i].clone();
        // eliminate every non-leading pivot column present in row i
        loop {
            let hit = r.iter().skip(1).find(|(j, _)| pos_of_pivot.contains_key(j)).map(|(j, v)| (*j, v.clone()));
            match hit {
                Some((j, v)) => {
                    let k = pos_of_pivot[&j];
                    r = axpy(&r, &-v, &rows[k]);
                }
                None => break,
            }
        }
        rows[i] = r;
    }
    Rref { ncols: m.ncols(), rows, pivots }
}

/// Basis of the right kernel `{x : M x = 0}` as the columns of the result.
/// The basis vector for free column `f` has a 1 at `f` and 0 at every other
/// free column.
pub fn kernel(m: &RationalMatrix) -> RationalMatrix {
    let r = rref(m);
    let free = r.free_columns();
    let mut entries = Vec::new();
    let mut free_pos = vec![usize::MAX; m.ncols()];
    for (k, &f) in free.iter().enumerate() {
        free_pos[f] = k;
        entries.push((f, k, Rational::one()));
    }
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (j, v) in row.iter().skip(1) {
            let k = free_pos[*j];
            debug_assert!(k != usize::MAX);
            entries.push((p, k, -v.clone()));
        }
    }
    RationalMatrix::from_triplets(m.ncols(), free.len(), entries)
}

/// Solves `A X = B`. Free variables are set to zero; `None` if inconsistent.
pub fn solve(a: &RationalMatrix, b: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(a.nrows(), b.nrows());
    let n = a.ncols();
    let aug = RationalMatrix::hstack(&[a, b]);
    let r = rref(&aug);
    let mut entries = Vec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if p >= n {
            return None;
        }
        for (j, v) in row {
            if *j >= n {
                entries.push((p, j - n, v.clone()));
            }
        }
    }
    Some(RationalMatrix::from_triplets(n, b.ncols(), entries))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &RationalMatrix) -> Option<RationalMatrix> {
    assert!(a.is_square());
    let x = solve(a, &RationalMatrix::identity(a.nrows()))?;
    if rank(a) == a.nrows() {
        Some(x)
    } else {
        None
    }
}

/// A linear subspace of `Q^ambient`, stored in reduced column echelon form:
/// basis vector `i` has entry 1 at row `pivots[i]` and 0 at every other pivot
/// row. Two subspaces are equal iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn column_span(m: &RationalMatrix) -> Subspace {
        let r = rref(&m.transpose());
        let basis = RationalMatrix::from_sparse_rows(m.nrows(), r.rows).transpose();
        Subspace { ambient: m.nrows(), basis, pivots: r.pivots }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: RationalMatrix::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: RationalMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Columns form the canonical basis.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, provided `v` lies in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of each column of `m` (all assumed to lie in the subspace).
    pub fn coords_matrix(&self, m: &RationalMatrix) -> RationalMatrix {
        m.select_rows(&self.pivots)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let c = self.coords(v);
        self.basis.mul_vec(&c) == v
    }

    pub fn contains_columns(&self, m: &RationalMatrix) -> bool {
        self.basis.mul(&self.coords_matrix(m)) == *m
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.contains_columns(&other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::column_span(&RationalMatrix::hstack(&[&self.basis, &other.basis]))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = A a = B b  <=>  [A | -B] (a, b) = 0
        let stacked = RationalMatrix::hstack(&[&self.basis, &other.basis.scale(&-Rational::one())]);
        let k = kernel(&stacked);
        let a_part = k.select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::column_span(&self.basis.mul(&a_part))
    }

    /// Image under a linear map.
    pub fn image(&self, map: &RationalMatrix) -> Subspace {
        assert_eq!(map.ncols(), self.ambient);
        Subspace::column_span(&map.mul(&self.basis))
    }

    /// Preimage under a linear map `map: Q^k -> Q^ambient`.
    pub fn preimage(&self, map: &RationalMatrix) -> Subspace {
        assert_eq!(map.nrows(), self.ambient);
        // x with map x in span(B): [map | -B](x, y) = 0
        let stacked = RationalMatrix::hstack(&[map, &self.basis.scale(&-Rational::one())]);
        let k = kernel(&stacked);
        let x_part = k.select_rows(&(0..map.ncols()).collect::<Vec<_>>());
        Subspace::column_span(&x_part)
    }

    /// `{ v : w^T form v = 0 for all w in self }`.
    pub fn annihilator(&self, form: &RationalMatrix) -> Subspace {
        assert_eq!(form.nrows(), self.ambient);
        let constraints = self.basis.transpose().mul(form);
        Subspace::column_span(&kernel(&constraints))
    }

    /// Some complement-free extension: columns of `self` followed by standard
    /// basis vectors completing it to a basis of the ambient space.
    pub fn extend_to_basis(&self) -> RationalMatrix {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let extra: Vec<usize> = (0..self.ambient).filter(|&i| !is_pivot[i]).collect();
        let ext = RationalMatrix::identity(self.ambient).select_cols(&extra);
        RationalMatrix::hstack(&[&self.basis, &ext])
    }

    pub fn basis_columns(&self) -> Vec<Vec<Rational>> {
        let t = self.basis.transpose();
        t.rows().iter().map(|r| to_dense(r, self.ambient)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::q;

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&RationalMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let m = RationalMatrix::from_i64(&[&[0, 0, 5], &[0, 3, 1], &[7, 1, 1], &[7, 4, 7]]);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn rank_matches_rref_on_rational_entries() {
        let m = RationalMatrix::from_dense(&[
            vec![crate::linalg::matrix::q_frac(1, 2), q(1), q(0)],
            vec![q(1), q(2), q(0)],
            vec![q(0), q(0), crate::linalg::matrix::q_frac(-3, 7)],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rref(&m).rank(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = RationalMatrix::from_i64(&[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.ncols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), RationalMatrix::identity(2));
        assert!(inverse(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        let b = RationalMatrix::from_i64(&[&[1], &[2]]);
        assert!(solve(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]), &b).is_some());
        let b = RationalMatrix::from_i64(&[&[1], &[3]]);
        assert!(solve(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]), &b).is_none());
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::column_span(&RationalMatrix::from_i64(&[&[1, 2], &[1, 2], &[0, 1]]));
        let b = Subspace::column_span(&RationalMatrix::from_i64(&[&[3, 0], &[3, 0], &[1, 5]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        let line = Subspace::column_span(&RationalMatrix::from_i64(&[&[1], &[0], &[0]]));
        assert_eq!(a.intersection(&line).dim(), 0);
        assert_eq!(a.sum(&line), Subspace::full(3));
    }
}
