//! Minimal injective models and derived pushforward.
//!
//! A model of `F` on an up-closed region `U` is a graded vector space `V_σ`
//! (zero differential) for every `σ ∈ U` together with blocks
//! `V_σ^j → V_ρ^{j+1}` for `ρ < σ`. It defines the complex of elementary
//! injectives `J(τ) = ⊕_{σ ≥ τ} V_σ`, with restrictions the projections onto
//! the summands that survive. Simplices are processed by decreasing
//! dimension: with `G_τ = ⊕_{σ > τ} V_σ` and `r : F(τ) → G_τ`, the label
//! `V_τ` is the cohomology of the cocone of `r`, which makes
//! `F(τ) → V_τ ⊕ G_τ` a quasi-isomorphism.
//!
//! Pushing forward along an open inclusion keeps the labels: the stalk of
//! `i_* J` at `τ` is the sum of the labels in the open star of `τ`.

use rayon::prelude::*;

use super::{SheafComplex, SheafMorphism};
use crate::complex::{Region, SimplexId, StratifiedComplex};
use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, GradedDims, RationalMatrix};

#[derive(Clone, Debug)]
pub struct InjectiveModel {
    region: Region,
    lo: i32,
    len: usize,
    /// `label_dims[σ][j - lo]`; empty outside the region.
    label_dims: Vec<Vec<usize>>,
    /// `blocks[ρ]`: for each `σ > ρ`, maps `V_σ^j → V_ρ^{j+1}` indexed by `j - lo`.
    blocks: Vec<Vec<(SimplexId, Vec<RationalMatrix>)>>,
    /// `phi[τ][j - lo]`: the quasi-isomorphism `F^j(τ) → J^j(τ)`.
    phi: Vec<Vec<RationalMatrix>>,
    source_window: (i32, usize),
}

struct LocalResult {
    dims: Vec<usize>,
    blocks: Vec<(SimplexId, Vec<RationalMatrix>)>,
    phi: Vec<RationalMatrix>,
}

impl InjectiveModel {
    pub fn build(space: &StratifiedComplex, f: &SheafComplex) -> Result<Self> {
        let region = f.region().clone();
        let lo = f.lo();
        let len = f.degree_count() + space.dim() + 2;
        let mut model = InjectiveModel {
            region: region.clone(),
            lo,
            len,
            label_dims: vec![Vec::new(); space.len()],
            blocks: vec![Vec::new(); space.len()],
            phi: vec![Vec::new(); space.len()],
            source_window: (f.lo(), f.degree_count()),
        };
        if region.is_empty() {
            model.len = 0;
            return Ok(model);
        }
        for d in (0..=space.dim()).rev() {
            let layer: Vec<SimplexId> = space.simplices_of_dim(d).filter(|&s| region.contains(s)).collect();
            let results: Vec<LocalResult> = layer.par_iter().map(|&tau| model.resolve_at(space, f, tau)).collect();
            for (tau, r) in layer.into_iter().zip(results) {
                model.label_dims[tau] = r.dims;
                model.blocks[tau] = r.blocks;
                model.phi[tau] = r.phi;
            }
        }
        model.trim();
        Ok(model)
    }

    fn degree_of(&self, i: usize) -> i32 {
        self.lo + i as i32
    }

    fn label_dim(&self, s: SimplexId, j: i32) -> usize {
        let i = j - self.lo;
        if i < 0 {
            return 0;
        }
        self.label_dims[s].get(i as usize).copied().unwrap_or(0)
    }

    /// Offsets of the labels `labels` (ascending) inside their direct sum, per degree.
    fn offsets(&self, labels: &[SimplexId]) -> Vec<Vec<usize>> {
        (0..self.len)
            .map(|i| {
                let j = self.degree_of(i);
                let mut acc = 0;
                let mut out = Vec::with_capacity(labels.len() + 1);
                for &s in labels {
                    out.push(acc);
                    acc += self.label_dim(s, j);
                }
                out.push(acc);
                out
            })
            .collect()
    }

    /// Differential of `⊕_{σ ∈ labels} V_σ` (labels closed upward within the
    /// sum's support) in every degree, given the offsets.
    fn sum_differential(&self, labels: &[SimplexId], offs: &[Vec<usize>]) -> Vec<RationalMatrix> {
        let pos = |s: SimplexId| labels.binary_search(&s).ok();
        (0..self.len)
            .map(|i| {
                let rows = if i + 1 < self.len { *offs[i + 1].last().unwrap() } else { 0 };
                let cols = *offs[i].last().unwrap();
                let mut e = Vec::new();
                if i + 1 < self.len {
                    for (a, &rho) in labels.iter().enumerate() {
                        for (sigma, maps) in &self.blocks[rho] {
                            let Some(b) = pos(*sigma) else { continue };
                            for (r, c, v) in maps[i].entries() {
                                e.push((offs[i + 1][a] + r, offs[i][b] + c, v.clone()));
                            }
                        }
                    }
                }
                RationalMatrix::from_triplets(rows, cols, e)
            })
            .collect()
    }

    fn resolve_at(&self, space: &StratifiedComplex, f: &SheafComplex, tau: SimplexId) -> LocalResult {
        let len = self.len;
        let cof: Vec<SimplexId> = space.cofaces(tau).into_iter().filter(|&s| s != tau).collect();
        let offs = self.offsets(&cof);
        let dg = self.sum_differential(&cof, &offs);
        let gdim = |i: usize| *offs[i].last().unwrap();
        let fdim = |i: usize| f.stalk_dim(tau, self.degree_of(i));
        // r = (q_σ F(τ→σ))_σ, read off the cofacets' quasi-isomorphisms
        let mut r: Vec<RationalMatrix> = Vec::with_capacity(len);
        for i in 0..len {
            let j = self.degree_of(i);
            let mut e = Vec::new();
            let mut filled = vec![false; cof.len()];
            for &t in space.cofacets(tau) {
                let res = f.restriction(tau, t, j);
                let phi_t = self.phi_component(f, t, j);
                let m = phi_t.mul(&res);
                let labels_t = space.cofaces(t);
                let mut off_t = 0;
                for &s in &labels_t {
                    let ds = self.label_dim(s, j);
                    let a = cof.binary_search(&s).unwrap();
                    if !filled[a] {
                        filled[a] = true;
                        for row in 0..ds {
                            for (c, v) in m.row(off_t + row) {
                                e.push((offs[i][a] + row, *c, v.clone()));
                            }
                        }
                    }
                    off_t += ds;
                }
            }
            r.push(RationalMatrix::from_triplets(gdim(i), fdim(i), e));
        }
        // cocone C^j = F^j ⊕ G^{j-1}, d(x, g) = (dx, r x − d g)
        let cdims: Vec<usize> = (0..len).map(|i| fdim(i) + if i > 0 { gdim(i - 1) } else { 0 }).collect();
        let mut diffs = Vec::with_capacity(len.saturating_sub(1));
        for i in 0..len.saturating_sub(1) {
            let j = self.degree_of(i);
            let df = f.stalk(tau).d(j);
            let mut e: Vec<_> = df.entries().map(|(a, b, v)| (a, b, v.clone())).collect();
            let fr = fdim(i + 1);
            let fc = fdim(i);
            for (a, b, v) in r[i].entries() {
                e.push((fr + a, b, v.clone()));
            }
            if i > 0 {
                for (a, b, v) in dg[i - 1].entries() {
                    e.push((fr + a, fc + b, -v.clone()));
                }
            }
            diffs.push(RationalMatrix::from_triplets(cdims[i + 1], cdims[i], e));
        }
        let cone = CochainComplex::new_unchecked(self.lo, cdims, diffs).expect("shapes");
        let h = cone.cohomology();
        let dims: Vec<usize> = (0..len).map(|i| h.dim(self.degree_of(i))).collect();
        let mut phi = Vec::with_capacity(len);
        for i in 0..len {
            let p = &h.degree(self.degree_of(i)).unwrap().proj;
            let q = p.select_cols(&(0..fdim(i)).collect::<Vec<_>>());
            phi.push(RationalMatrix::vstack(&[&q, &r[i]]));
        }
        // ψ^j : G^j → V_τ^{j+1} is −p^{j+1} on the G part
        let mut blocks: Vec<(SimplexId, Vec<RationalMatrix>)> = cof.iter().map(|&s| (s, Vec::with_capacity(len))).collect();
        for i in 0..len {
            let psi = if i + 1 < len {
                let p = &h.degree(self.degree_of(i + 1)).unwrap().proj;
                let fr = fdim(i + 1);
                p.select_cols(&(fr..fr + gdim(i)).collect::<Vec<_>>()).scale(&-crate::linalg::q(1))
            } else {
                RationalMatrix::zeros(0, gdim(i))
            };
            for (a, (_, maps)) in blocks.iter_mut().enumerate() {
                let cols: Vec<usize> = (offs[i][a]..offs[i][a + 1]).collect();
                maps.push(psi.select_cols(&cols));
            }
        }
        blocks.retain(|(_, maps)| maps.iter().any(|m| !m.is_zero()));
        LocalResult { dims, blocks, phi }
    }

    fn phi_component(&self, f: &SheafComplex, t: SimplexId, j: i32) -> RationalMatrix {
        let i = j - self.lo;
        if i >= 0 && (i as usize) < self.phi[t].len() {
            self.phi[t][i as usize].clone()
        } else {
            RationalMatrix::zeros(0, f.stalk_dim(t, j))
        }
    }

    fn trim(&mut self) {
        let members = self.region.members();
        let top = (0..self.len).rev().find(|&i| members.iter().any(|&s| self.label_dims[s][i] > 0));
        let src_hi = (self.source_window.0 + self.source_window.1 as i32 - self.lo) as usize;
        let new_len = top.map_or(0, |t| t + 1).max(src_hi);
        if new_len == self.len {
            return;
        }
        for s in members {
            self.label_dims[s].truncate(new_len);
            self.phi[s].truncate(new_len);
            for (_, maps) in self.blocks[s].iter_mut() {
                maps.truncate(new_len);
            }
        }
        self.len = new_len;
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.len as i32
    }

    /// Graded dimension of the label `V_σ`.
    pub fn label(&self, s: SimplexId) -> GradedDims {
        let mut g = GradedDims::new();
        for i in 0..self.len {
            g.set(self.degree_of(i), self.label_dim(s, self.degree_of(i)));
        }
        g
    }

    /// Sections over an up-closed subset of the region.
    pub fn sections(&self, over: &Region) -> CochainComplex {
        let labels: Vec<SimplexId> = over.members().into_iter().filter(|&s| self.region.contains(s)).collect();
        self.sum_complex(&labels)
    }

    /// Restriction from [`Self::sections`] over `over` to the stalk at `tau`
    /// of [`Self::to_sheaf`], per degree of the window.
    pub fn section_restriction(&self, space: &StratifiedComplex, over: &Region, tau: SimplexId) -> Result<Vec<RationalMatrix>> {
        let from: Vec<SimplexId> = over.members().into_iter().filter(|&s| self.region.contains(s)).collect();
        let to: Vec<SimplexId> = space.cofaces(tau).into_iter().filter(|&s| self.region.contains(s)).collect();
        if to.iter().any(|s| from.binary_search(s).is_err()) {
            return Err(Error::RegionMismatch(format!("open star of {} is not inside the section domain", space.format_simplex(tau))));
        }
        let (fo, to_offs) = (self.offsets(&from), self.offsets(&to));
        Ok((0..self.len)
            .map(|i| {
                let j = self.degree_of(i);
                let mut e = Vec::new();
                for (b, s) in to.iter().enumerate() {
                    let a = from.binary_search(s).unwrap();
                    for k in 0..self.label_dim(*s, j) {
                        e.push((to_offs[i][b] + k, fo[i][a] + k, crate::linalg::q(1)));
                    }
                }
                RationalMatrix::from_triplets(*to_offs[i].last().unwrap(), *fo[i].last().unwrap(), e)
            })
            .collect())
    }

    fn sum_complex(&self, labels: &[SimplexId]) -> CochainComplex {
        let offs = self.offsets(labels);
        let mut d = self.sum_differential(labels, &offs);
        d.pop();
        let dims = (0..self.len).map(|i| *offs[i].last().unwrap()).collect();
        CochainComplex::new_unchecked(self.lo, dims, d).expect("shapes")
    }

    /// `RΓ(U; F)`.
    pub fn global_sections(&self) -> CochainComplex {
        self.sections(&self.region)
    }

    pub fn hypercohomology(&self) -> GradedDims {
        self.global_sections().cohomology_dims()
    }

    /// Complex of `J` on an up-closed `target ⊇ region`: the stalk at `τ` is
    /// the sum of the labels in the open star of `τ`. With `target` equal to
    /// the region this is the model itself, otherwise the pushforward.
    pub fn to_sheaf(&self, space: &StratifiedComplex, target: &Region) -> Result<SheafComplex> {
        if !self.region.is_subset(target) {
            return Err(Error::RegionMismatch("pushforward target does not contain the domain".into()));
        }
        let members = target.members();
        let built: Vec<(SimplexId, CochainComplex, Vec<(SimplexId, Vec<RationalMatrix>)>)> = members
            .par_iter()
            .map(|&tau| {
                let labels: Vec<SimplexId> = space.cofaces(tau).into_iter().filter(|&s| self.region.contains(s)).collect();
                let stalk = self.sum_complex(&labels);
                let offs = self.offsets(&labels);
                let res = space
                    .cofacets(tau)
                    .iter()
                    .map(|&t| {
                        let maps = (0..self.len)
                            .map(|i| {
                                let j = self.degree_of(i);
                                let mut e = Vec::new();
                                let mut row = 0;
                                for (a, &s) in labels.iter().enumerate() {
                                    if space.is_face(t, s) {
                                        for k in 0..self.label_dim(s, j) {
                                            e.push((row + k, offs[i][a] + k, crate::linalg::q(1)));
                                        }
                                        row += self.label_dim(s, j);
                                    }
                                }
                                RationalMatrix::from_triplets(row, *offs[i].last().unwrap(), e)
                            })
                            .collect();
                        (t, maps)
                    })
                    .collect();
                (tau, stalk, res)
            })
            .collect();
        let mut stalks = vec![None; space.len()];
        let mut restrictions = vec![Vec::new(); space.len()];
        for (tau, st, res) in built {
            stalks[tau] = Some(st);
            restrictions[tau] = res;
        }
        Ok(SheafComplex::new_unchecked(target.clone(), self.lo, self.len, stalks, restrictions))
    }

    /// The quasi-isomorphism `F → J` as a morphism into [`Self::to_sheaf`]
    /// over the model's own region (degree window of the model).
    pub fn quasi_isomorphism(&self, f: &SheafComplex) -> SheafMorphism {
        let maps = (0..self.phi.len())
            .map(|s| self.region.contains(s).then(|| (0..self.len).map(|i| self.phi_component(f, s, self.degree_of(i))).collect()))
            .collect();
        SheafMorphism::new(maps, self.lo)
    }
}

/// `R i_* F` on `target`, for `F` on an up-closed subregion.
pub fn pushforward(space: &StratifiedComplex, f: &SheafComplex, target: &Region) -> Result<SheafComplex> {
    if !f.region().is_subset(target) {
        return Err(Error::RegionMismatch("source region is not contained in the target".into()));
    }
    InjectiveModel::build(space, f)?.to_sheaf(space, target)
}
