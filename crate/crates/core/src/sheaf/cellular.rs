//! Cellular (compactly supported) total complexes.
//!
//! Over an up-closed set `U` the total complex has `F^q(σ)` in degree
//! `dim σ + q` and differential
//! `D x = Σ_{σ'} [σ':σ] F(σ→σ') x + (−1)^{dim σ} d x`.
//! It computes compactly supported hypercohomology of `U`: the
//! hypercohomology of the whole compact space, or the costalk at `τ` when
//! `U` is the open star of `τ`.

use std::collections::HashMap;

use super::{SheafComplex, SheafMorphism};
use crate::complex::{Region, SimplexId, StratifiedComplex};
use crate::error::{Error, Result};
use crate::linalg::{q, CochainComplex, GradedDims, RationalMatrix};

/// Placement of the blocks `F^q(σ)` inside the total complex.
#[derive(Clone, Debug)]
pub struct TotLayout {
    pub lo: i32,
    offsets: HashMap<(SimplexId, i32), usize>,
    dims: Vec<usize>,
}

impl TotLayout {
    fn new(space: &StratifiedComplex, f: &SheafComplex, members: &[SimplexId]) -> Self {
        let top = members.iter().map(|&s| space.simplex_dim(s)).max().unwrap_or(0) as i32;
        let lo = f.lo();
        let len = (f.hi() - f.lo() + top).max(0) as usize;
        let mut dims = vec![0; len];
        let mut offsets = HashMap::new();
        for &s in members {
            for j in f.degrees() {
                let d = f.stalk_dim(s, j);
                if d == 0 {
                    continue;
                }
                let m = (j + space.simplex_dim(s) as i32 - lo) as usize;
                offsets.insert((s, j), dims[m]);
                dims[m] += d;
            }
        }
        TotLayout { lo, offsets, dims }
    }

    pub fn offset(&self, s: SimplexId, j: i32) -> Option<usize> {
        self.offsets.get(&(s, j)).copied()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

pub(crate) fn tot_with_layout(space: &StratifiedComplex, f: &SheafComplex, region: &Region) -> (CochainComplex, TotLayout) {
    let members: Vec<SimplexId> = region.members();
    let layout = TotLayout::new(space, f, &members);
    let len = layout.dims.len();
    let mut diffs = Vec::with_capacity(len.saturating_sub(1));
    let mut entries: Vec<Vec<(usize, usize, crate::linalg::Rational)>> = vec![Vec::new(); len.saturating_sub(1)];
    for &s in &members {
        let ds = space.simplex_dim(s) as i32;
        for j in f.degrees() {
            let Some(col0) = layout.offset(s, j) else { continue };
            let m = (j + ds - layout.lo) as usize;
            if m + 1 >= len {
                continue;
            }
            let out = &mut entries[m];
            if let Some(row0) = layout.offset(s, j + 1) {
                let d = f.stalk(s).d(j);
                let sign = if ds % 2 == 0 { q(1) } else { q(-1) };
                for (r, c, v) in d.entries() {
                    out.push((row0 + r, col0 + c, v * &sign));
                }
            }
            for (t, maps) in f.restrictions_from(s) {
                if !region.contains(*t) {
                    continue;
                }
                let Some(row0) = layout.offset(*t, j) else { continue };
                let inc = q(space.incidence(*t, s));
                for (r, c, v) in maps[(j - f.lo()) as usize].entries() {
                    out.push((row0 + r, col0 + c, v * &inc));
                }
            }
        }
    }
    for (m, e) in entries.into_iter().enumerate() {
        diffs.push(RationalMatrix::from_triplets(layout.dims[m + 1], layout.dims[m], e));
    }
    let c = CochainComplex::new_unchecked(layout.lo, layout.dims.clone(), diffs).expect("shapes");
    (c, layout)
}

/// Total complex of `f` over an up-closed set of simplices.
pub fn tot_complex(space: &StratifiedComplex, f: &SheafComplex, region: &Region) -> Result<CochainComplex> {
    if !region.is_subset(f.region()) {
        return Err(Error::RegionMismatch("total complex over a set outside the domain".into()));
    }
    Ok(tot_with_layout(space, f, region).0)
}

/// Hypercohomology of a complex on the whole (compact) space.
pub fn hypercohomology_cellular(space: &StratifiedComplex, f: &SheafComplex) -> Result<GradedDims> {
    if *f.region() != space.full_region() {
        return Err(Error::RegionMismatch("cellular hypercohomology needs the whole space".into()));
    }
    Ok(tot_complex(space, f, f.region())?.cohomology_dims())
}

/// Total complex over the open star of `tau`.
pub fn star_tot(space: &StratifiedComplex, f: &SheafComplex, tau: SimplexId) -> Result<CochainComplex> {
    tot_complex(space, f, &space.star_region(tau))
}

/// `H^ℓ(i_x^! F)` for `x` in the open simplex `tau`.
pub fn costalk_cohomology(space: &StratifiedComplex, f: &SheafComplex, tau: SimplexId) -> Result<GradedDims> {
    if !f.region().contains(tau) {
        return Err(Error::RegionMismatch(format!("{} outside the domain", space.format_simplex(tau))));
    }
    Ok(star_tot(space, f, tau)?.cohomology_dims())
}

/// Chain map of total complexes induced by a morphism, with both complexes.
pub fn tot_map(
    space: &StratifiedComplex,
    phi: &SheafMorphism,
    source: &SheafComplex,
    target: &SheafComplex,
    region: &Region,
) -> Result<(CochainComplex, CochainComplex, Vec<RationalMatrix>)> {
    if source.region() != target.region() || !region.is_subset(source.region()) {
        return Err(Error::RegionMismatch("morphism regions".into()));
    }
    // a common degree window keeps the two layouts aligned
    let lo = source.lo().min(target.lo());
    let hi = source.hi().max(target.hi());
    let a = source.widen(lo, hi);
    let b = target.widen(lo, hi);
    let (ca, la) = tot_with_layout(space, &a, region);
    let (cb, lb) = tot_with_layout(space, &b, region);
    let mut maps = Vec::new();
    for m in 0..la.dims.len() {
        let mut e = Vec::new();
        for s in region.members() {
            let ds = space.simplex_dim(s) as i32;
            let j = la.lo + m as i32 - ds;
            let (Some(c0), Some(r0)) = (la.offset(s, j), lb.offset(s, j)) else { continue };
            for (r, c, v) in phi.component(source, target, s, j).entries() {
                e.push((r0 + r, c0 + c, v.clone()));
            }
        }
        maps.push(RationalMatrix::from_triplets(lb.dims[m], la.dims[m], e));
    }
    Ok((ca, cb, maps))
}

/// Rank of the map induced on cohomology in every degree.
pub fn induced_ranks(a: &CochainComplex, b: &CochainComplex, maps: &[RationalMatrix]) -> GradedDims {
    use rayon::prelude::*;
    let out: Vec<(i32, usize)> = (a.lo()..a.hi())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let ha = a.cohomology_at(j);
            if ha.dim() == 0 {
                return (j, 0);
            }
            let hb = b.cohomology_at(j);
            let m = hb.proj.mul(&maps[(j - a.lo()) as usize]).mul(&ha.reps);
            (j, crate::linalg::rank(&m))
        })
        .collect();
    let mut g = GradedDims::new();
    for (j, r) in out {
        g.set(j, r);
    }
    g
}
