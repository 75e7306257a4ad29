//! Stratified simplicial pseudomanifolds.
//!
//! A filtration `X_0 ⊆ … ⊆ X_{n-2} ⊆ X_n` is stored as a level per simplex:
//! the least `d` with `σ ∈ X_d`, or `n` for simplices of the regular part.
//! Simplices are identified by dense ids ordered by dimension, then
//! lexicographically in the vertex order.

mod catalog;
mod generate;
mod parse;
mod region;
mod strata;

use std::collections::{BTreeSet, HashMap};

pub use catalog::{catalog, example, CatalogEntry};
pub use generate::{cone, join, product, suspension, Construction};
pub use parse::{parse_space, SpaceDocument};
pub use region::Region;
pub use strata::StratumComponent;

use crate::error::{Error, Result};

pub type SimplexId = usize;

#[derive(Clone, Debug)]
pub struct StratifiedComplex {
    name: String,
    vertices: Vec<String>,
    n: usize,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, SimplexId>,
    levels: Vec<usize>,
    facets: Vec<Vec<SimplexId>>,
    cofacets: Vec<Vec<SimplexId>>,
    by_dim: Vec<std::ops::Range<usize>>,
}

impl StratifiedComplex {
    /// Builds the face closure of `maximal` and assigns `level(σ)` to each
    /// simplex. Only the structural filtration invariants are checked here.
    pub(crate) fn from_levels<F>(name: &str, vertices: Vec<String>, maximal: &[Vec<usize>], level: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> usize,
    {
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for m in maximal {
            let mut s = m.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != m.len() {
                return Err(Error::Malformed(format!("repeated vertex in simplex {m:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert((face.len() - 1, face));
            }
        }
        let simplices: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let n = simplices.last().map_or(0, |s| s.len() - 1);
        let index: HashMap<Vec<usize>, SimplexId> = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut by_dim = vec![0..0; if simplices.is_empty() { 0 } else { n + 1 }];
        let mut start = 0;
        for (d, range) in by_dim.iter_mut().enumerate() {
            let mut end = start;
            while end < simplices.len() && simplices[end].len() == d + 1 {
                end += 1;
            }
            *range = start..end;
            start = end;
        }
        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let fid = index[&f];
                facets[id].push(fid);
                cofacets[fid].push(id);
            }
        }
        for c in cofacets.iter_mut() {
            c.sort_unstable();
        }
        let levels = simplices.iter().map(|s| level(s)).collect();
        let space = StratifiedComplex {
            name: name.to_string(),
            vertices,
            n,
            simplices,
            index,
            levels,
            facets,
            cofacets,
            by_dim,
        };
        space.check_levels()?;
        Ok(space)
    }

    fn check_levels(&self) -> Result<()> {
        for id in 0..self.len() {
            let l = self.levels[id];
            let d = self.simplex_dim(id);
            if l < d || l > self.n {
                return Err(Error::FiltrationDimension { key: l.min(d), dim: d, simplex: self.format_simplex(id) });
            }
            if self.n >= 1 && l == self.n - 1 {
                return Err(Error::CodimensionOneStratum);
            }
            for &f in &self.facets[id] {
                if self.levels[f] > l {
                    return Err(Error::NotNested { lower: l, upper: self.levels[f] });
                }
            }
        }
        Ok(())
    }

    /// Pseudomanifold conditions: purity, two top cofaces on the regular
    /// codimension-one simplices, and density of the regular part.
    pub fn validate(&self) -> Result<()> {
        self.validate_pure()?;
        if self.n >= 1 {
            for id in self.by_dim[self.n - 1].clone() {
                if self.levels[id] == self.n && self.cofacets[id].len() != 2 {
                    return Err(Error::NotPseudomanifold {
                        simplex: self.format_simplex(id),
                        cofaces: self.cofacets[id].len(),
                    });
                }
            }
        }
        for id in 0..self.len() {
            if !self.is_regular(id) && !self.cofaces(id).iter().any(|&c| self.is_regular(c)) {
                return Err(Error::NotDense(self.format_simplex(id)));
            }
        }
        Ok(())
    }

    /// Purity and density only; used for spaces with boundary.
    pub fn validate_pure(&self) -> Result<()> {
        for id in 0..self.len() {
            if self.simplex_dim(id) < self.n && self.cofacets[id].is_empty() {
                return Err(Error::NotPure(self.format_simplex(id)));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Sorted vertex indices.
    pub fn simplex(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id]
    }

    pub fn simplex_dim(&self, id: SimplexId) -> usize {
        self.simplices[id].len() - 1
    }

    pub fn id_of(&self, vertices: &[usize]) -> Option<SimplexId> {
        self.index.get(vertices).copied()
    }

    /// Looks up a simplex by vertex names.
    pub fn id_of_names(&self, names: &[&str]) -> Result<SimplexId> {
        let mut vs = Vec::with_capacity(names.len());
        for n in names {
            let v = self.vertices.iter().position(|x| x == n).ok_or_else(|| Error::UnknownVertex(n.to_string()))?;
            vs.push(v);
        }
        vs.sort_unstable();
        self.id_of(&vs).ok_or_else(|| Error::NotASimplex(format!("{{{}}}", names.join(","))))
    }

    pub fn simplices_of_dim(&self, d: usize) -> std::ops::Range<SimplexId> {
        self.by_dim.get(d).cloned().unwrap_or(0..0)
    }

    /// Codimension-one faces; face `i` omits vertex `i`.
    pub fn facets(&self, id: SimplexId) -> &[SimplexId] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofacets[id]
    }

    /// All simplices containing `id`, itself included, in id order.
    pub fn cofaces(&self, id: SimplexId) -> Vec<SimplexId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(self.cofacets[s].iter().copied());
            }
        }
        seen.into_iter().collect()
    }

    /// All faces of `id`, itself included, in id order.
    pub fn faces(&self, id: SimplexId) -> Vec<SimplexId> {
        let s = &self.simplices[id];
        let k = s.len();
        let mut out: Vec<SimplexId> = (1u64..(1u64 << k))
            .map(|mask| {
                let f: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                self.index[&f]
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_face(&self, a: SimplexId, b: SimplexId) -> bool {
        let (sa, sb) = (&self.simplices[a], &self.simplices[b]);
        sa.len() <= sb.len() && sa.iter().all(|v| sb.binary_search(v).is_ok())
    }

    /// Incidence `[τ : σ]` for a facet `σ` of `τ`: `(-1)^i` where `i` is the
    /// position in `τ` of the vertex not in `σ`.
    pub fn incidence(&self, tau: SimplexId, sigma: SimplexId) -> i64 {
        let i = self.facets[tau].iter().position(|&f| f == sigma).expect("facet");
        if i % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn level(&self, id: SimplexId) -> usize {
        self.levels[id]
    }

    pub fn is_regular(&self, id: SimplexId) -> bool {
        self.levels[id] == self.n
    }

    /// Codimension of the stratum containing the open simplex.
    pub fn codim(&self, id: SimplexId) -> usize {
        self.n - self.levels[id]
    }

    pub fn in_skeleton(&self, id: SimplexId, d: usize) -> bool {
        self.levels[id] <= d
    }

    /// Codimensions of the nonempty singular strata, ascending.
    pub fn singular_codims(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = (0..self.len()).filter(|&i| !self.is_regular(i)).map(|i| self.codim(i)).collect();
        s.into_iter().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(|r| r.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    pub fn format_simplex(&self, id: SimplexId) -> String {
        let names: Vec<&str> = self.simplices[id].iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Top-dimensional simplices.
    pub fn facets_top(&self) -> std::ops::Range<SimplexId> {
        self.simplices_of_dim(self.n)
    }

    /// Maximal simplices of `X_d`.
    pub fn skeleton_maximal(&self, d: usize) -> Vec<SimplexId> {
        (0..self.len())
            .filter(|&i| self.levels[i] <= d && self.cofacets[i].iter().all(|&c| self.levels[c] > d))
            .collect()
    }

    /// The simplicial link `{τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}` with the induced
    /// filtration, as a complex of dimension `n − dim σ − 1`.
    pub fn link_of(&self, sigma: SimplexId) -> Result<StratifiedComplex> {
        if sigma >= self.len() {
            return Err(Error::NotASimplex(format!("#{sigma}")));
        }
        let s = &self.simplices[sigma];
        let shift = s.len();
        let mut verts = BTreeSet::new();
        let mut maximal = Vec::new();
        for c in self.cofaces(sigma) {
            if c != sigma && self.cofacets[c].is_empty() {
                let rest: Vec<usize> = self.simplices[c].iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
                verts.extend(rest.iter().copied());
                maximal.push(rest);
            }
        }
        let verts: Vec<usize> = verts.into_iter().collect();
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names = verts.iter().map(|&v| self.vertices[v].clone()).collect();
        let maximal: Vec<Vec<usize>> = maximal.iter().map(|m| m.iter().map(|v| local[v]).collect()).collect();
        let join = |t: &[usize]| {
            let mut u: Vec<usize> = t.iter().map(|&i| verts[i]).chain(s.iter().copied()).collect();
            u.sort_unstable();
            self.levels[self.index[&u]] - shift
        };
        StratifiedComplex::from_levels(&format!("link({})", self.format_simplex(sigma)), names, &maximal, join)
    }

    /// `U_k`: simplices not contained in `X_{n−k}`, for `2 ≤ k ≤ n+1`.
    pub fn open_region(&self, k: usize) -> Result<Region> {
        if k < 2 || k > self.n + 1 {
            return Err(Error::CodimensionRange { k, n: self.n });
        }
        let mask = (0..self.len()).map(|i| k == self.n + 1 || self.levels[i] > self.n - k).collect();
        Ok(Region::from_mask_unchecked(mask))
    }

    pub fn full_region(&self) -> Region {
        Region::from_mask_unchecked(vec![true; self.len()])
    }

    /// Open star of a simplex: all of its cofaces.
    pub fn star_region(&self, sigma: SimplexId) -> Region {
        let mut mask = vec![false; self.len()];
        for c in self.cofaces(sigma) {
            mask[c] = true;
        }
        Region::from_mask_unchecked(mask)
    }

    /// Simplicial cochain complex in degrees `0..=n` over the whole space.
    pub fn cochain_complex(&self) -> crate::linalg::CochainComplex {
        use crate::linalg::{q, CochainComplex, RationalMatrix};
        let f = self.f_vector();
        let mut diffs = Vec::new();
        for d in 0..f.len().saturating_sub(1) {
            let lo = self.simplices_of_dim(d).start;
            let hi = self.simplices_of_dim(d + 1).start;
            let mut entries = Vec::new();
            for tau in self.simplices_of_dim(d + 1) {
                for &sigma in &self.facets[tau] {
                    entries.push((tau - hi, sigma - lo, q(self.incidence(tau, sigma))));
                }
            }
            diffs.push(RationalMatrix::from_triplets(f[d + 1], f[d], entries));
        }
        CochainComplex::new_unchecked(0, f, diffs).expect("shapes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_boundary() {
        let s2 = example("s2").unwrap();
        assert_eq!(s2.f_vector(), vec![4, 6, 4]);
        s2.validate().unwrap();
        assert_eq!(s2.cochain_complex().cohomology_dims().to_vec(3), vec![1, 0, 1]);
        let v = s2.id_of(&[0]).unwrap();
        let link = s2.link_of(v).unwrap();
        assert_eq!(link.f_vector(), vec![3, 3]);
        let top = s2.facets_top().start;
        assert!(s2.link_of(top).unwrap().is_empty());
    }

    #[test]
    fn incidence_signs() {
        let s2 = example("s2").unwrap();
        let t = s2.id_of(&[0, 1, 2]).unwrap();
        assert_eq!(s2.incidence(t, s2.id_of(&[1, 2]).unwrap()), 1);
        assert_eq!(s2.incidence(t, s2.id_of(&[0, 2]).unwrap()), -1);
        assert_eq!(s2.incidence(t, s2.id_of(&[0, 1]).unwrap()), 1);
    }
}
