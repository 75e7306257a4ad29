//! Sparse matrices over the rationals.
//!
//! Storage is row-major: every row is a list of `(column, value)` pairs sorted
//! by column with no stored zeros.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A sparse row vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `a += c * b` on sparse vectors.
pub fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_dot(a: &SparseVec, b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, v) in a {
        if !b[*i].is_zero() {
            acc += v * &b[*i];
        }
    }
    acc
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl RationalMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        RationalMatrix { nrows: n, ncols: n, rows }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of range {nrows}x{ncols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[i].entry(j).or_insert_with(Rational::zero);
            *slot += v;
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        RationalMatrix { nrows, ncols, rows }
    }

    pub fn from_sparse_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(j, v)| *j < ncols && !v.is_zero())));
        RationalMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged dense matrix");
        RationalMatrix { nrows: rows.len(), ncols, rows: rows.iter().map(|r| to_sparse(r)).collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose columns are the given dense vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Rational>]) -> Self {
        let entries = cols.iter().enumerate().flat_map(|(j, c)| {
            assert_eq!(c.len(), nrows);
            c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(i, v)| (i, j, v.clone()))
        });
        Self::from_triplets(nrows, cols.len(), entries)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        let t = self.transpose();
        (0..self.ncols).map(|j| to_dense(&t.rows[j], self.nrows)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| to_dense(r, self.ncols)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        RationalMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        RationalMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.ncols, v.len());
        self.rows.iter().map(|r| sparse_dot(r, v)).collect()
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let one = Rational::one();
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, &one, b)).collect();
        RationalMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect()).collect();
        RationalMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn select_rows(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix { nrows: idx.len(), ncols: self.ncols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> RationalMatrix {
        let mut map = vec![usize::MAX; self.ncols];
        for (new, &old) in idx.iter().enumerate() {
            map[old] = new;
        }
        let entries = self
            .entries()
            .filter(|(_, j, _)| map[*j] != usize::MAX)
            .map(|(i, j, v)| (i, map[j], v.clone()));
        Self::from_triplets(self.nrows, idx.len(), entries)
    }

    /// `[A | B | ...]`
    pub fn hstack(blocks: &[&RationalMatrix]) -> RationalMatrix {
        let nrows = blocks.first().map_or(0, |b| b.nrows);
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.nrows, nrows, "hstack row mismatch");
            for (i, r) in b.rows.iter().enumerate() {
                rows[i].extend(r.iter().map(|(j, v)| (j + off, v.clone())));
            }
            off += b.ncols;
        }
        RationalMatrix { nrows, ncols: off, rows }
    }

    pub fn vstack(blocks: &[&RationalMatrix]) -> RationalMatrix {
        let ncols = blocks.first().map_or(0, |b| b.ncols);
        let mut rows = Vec::new();
        for b in blocks {
            assert_eq!(b.ncols, ncols, "vstack column mismatch");
            rows.extend(b.rows.iter().cloned());
        }
        RationalMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&-Rational::one())
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.entries().map(|(_, _, v)| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.nrows, self.ncols)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
