//! Bounded cochain complexes of finite-dimensional rational vector spaces.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::echelon::{rank, rref, solve};
use super::matrix::RationalMatrix;
use crate::error::{Error, Result};

/// Dimensions indexed by degree. Zero entries are not stored.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(BTreeMap<i32, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dimensions `dims[i]` in degree `start + i`.
    pub fn from_slice(start: i32, dims: &[usize]) -> Self {
        let mut g = Self::new();
        for (i, &d) in dims.iter().enumerate() {
            g.set(start + i as i32, d);
        }
        g
    }

    pub fn get(&self, degree: i32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i32, dim: usize) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().map(|(&j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    /// Dimensions in degrees `lo..=hi`.
    pub fn range(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|j| self.get(j)).collect()
    }

    /// Dimensions in degrees `0..len`.
    pub fn to_vec(&self, len: usize) -> Vec<usize> {
        self.range(0, len as i32 - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.0.iter().map(|(&j, &d)| (j, d))
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// `C^lo → C^{lo+1} → …` with `diffs[i]: C^{lo+i} → C^{lo+i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<RationalMatrix>,
}

/// Cohomology in one degree: `reps` are cocycles (columns) whose classes form
/// a basis; `proj` sends a cocycle to its coordinates in that basis and kills
/// coboundaries.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: i32,
    pub reps: RationalMatrix,
    pub proj: RationalMatrix,
}

impl DegreeCohomology {
    pub fn dim(&self) -> usize {
        self.reps.ncols()
    }
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    lo: i32,
    degrees: Vec<DegreeCohomology>,
}

impl Cohomology {
    pub fn degree(&self, j: i32) -> Option<&DegreeCohomology> {
        let i = j - self.lo;
        if i < 0 {
            return None;
        }
        self.degrees.get(i as usize)
    }

    pub fn dim(&self, j: i32) -> usize {
        self.degree(j).map_or(0, |d| d.dim())
    }

    pub fn dims(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for d in &self.degrees {
            g.set(d.degree, d.dim());
        }
        g
    }

    pub fn degrees(&self) -> &[DegreeCohomology] {
        &self.degrees
    }
}

impl CochainComplex {
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<RationalMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(lo, dims, diffs)?;
        for i in 1..c.diffs.len() {
            if !c.diffs[i].mul(&c.diffs[i - 1]).is_zero() {
                return Err(Error::NotAComplex(lo + i as i32 - 1));
            }
        }
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(lo: i32, dims: Vec<usize>, diffs: Vec<RationalMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!("{} spaces but {} differentials", dims.len(), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ncols() != dims[i] || d.nrows() != dims[i + 1] {
                return Err(Error::Shape(format!(
                    "differential in degree {} is {}×{}, expected {}×{}",
                    lo + i as i32,
                    d.nrows(),
                    d.ncols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(CochainComplex { lo, dims, diffs })
    }

    pub fn zero() -> Self {
        CochainComplex { lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32
    }

    pub fn dim(&self, j: i32) -> usize {
        let i = j - self.lo;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    /// `d^j: C^j → C^{j+1}` (a zero matrix outside the stored range).
    pub fn d(&self, j: i32) -> RationalMatrix {
        let i = j - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            RationalMatrix::zeros(self.dim(j + 1), self.dim(j))
        }
    }

    pub fn d_ref(&self, j: i32) -> Option<&RationalMatrix> {
        let i = j - self.lo;
        if i >= 0 {
            self.diffs.get(i as usize)
        } else {
            None
        }
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        let ranks: Vec<usize> = self.diffs.par_iter().map(rank).collect();
        let mut g = GradedDims::new();
        for (i, &c) in self.dims.iter().enumerate() {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            g.set(self.lo + i as i32, c - out - inc);
        }
        g
    }

    pub fn cohomology(&self) -> Cohomology {
        let degrees = (self.lo..self.hi()).collect::<Vec<_>>().into_par_iter().map(|j| self.cohomology_at(j)).collect();
        Cohomology { lo: self.lo, degrees }
    }

    pub fn cohomology_at(&self, j: i32) -> DegreeCohomology {
        let c = self.dim(j);
        let z = super::echelon::kernel(&self.d(j));
        let b = self.d(j - 1);
        let a = RationalMatrix::hstack(&[&b, &z]);
        let r = rref(&a);
        let nb = b.ncols();
        let bcols: Vec<usize> = r.pivots.iter().copied().filter(|&p| p < nb).collect();
        let zcols: Vec<usize> = r.pivots.iter().filter(|&&p| p >= nb).map(|&p| p - nb).collect();
        let reps = z.select_cols(&zcols);
        let h = reps.ncols();
        let m = RationalMatrix::hstack(&[&b.select_cols(&bcols), &reps]);
        let mut rhs = Vec::new();
        for i in 0..h {
            rhs.push((bcols.len() + i, i, super::Rational::from_integer(1.into())));
        }
        let rhs = RationalMatrix::from_triplets(m.ncols(), h, rhs);
        let x = solve(&m.transpose(), &rhs).expect("independent columns");
        debug_assert_eq!(x.nrows(), c);
        DegreeCohomology { degree: j, reps, proj: x.transpose() }
    }
}

/// Cohomology dimensions of `C^0 → C^1 → …` given by its differentials.
pub fn homology_dims(diffs: &[RationalMatrix]) -> Result<GradedDims> {
    if diffs.is_empty() {
        return Ok(GradedDims::new());
    }
    let mut dims: Vec<usize> = diffs.iter().map(|d| d.ncols()).collect();
    dims.push(diffs.last().unwrap().nrows());
    for i in 1..diffs.len() {
        if diffs[i].ncols() != diffs[i - 1].nrows() {
            return Err(Error::Shape(format!("differentials {} and {} do not compose", i - 1, i)));
        }
    }
    Ok(CochainComplex::new(0, dims, diffs.to_vec())?.cohomology_dims())
}
