//! Bounded complexes of cellular sheaves on open regions of the face poset.
//!
//! Stalks sit on simplices and restriction maps run from a simplex to its
//! cofaces. Every stalk is a cochain complex over the same degree window
//! `lo..lo+len`.

mod cellular;
mod cone;
mod injective;
mod local_system;
mod truncate;

use serde_json::json;

pub(crate) use cellular::tot_with_layout;
pub use cellular::{costalk_cohomology, hypercohomology_cellular, induced_ranks, star_tot, tot_complex, tot_map, TotLayout};
pub use cone::cone_of;
pub use injective::{pushforward, InjectiveModel};
pub use local_system::{cohomology_local_system, LocalSystem, Subsheaf};
pub use truncate::{truncate, truncate_modified, StratumChoice, Truncation};

use crate::complex::{Region, SimplexId, StratifiedComplex};
use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, Cohomology, GradedDims, RationalMatrix};

#[derive(Clone, Debug)]
pub struct SheafComplex {
    region: Region,
    lo: i32,
    len: usize,
    stalks: Vec<Option<CochainComplex>>,
    /// For each simplex, its cofacets inside the region with one map per degree.
    restrictions: Vec<Vec<(SimplexId, Vec<RationalMatrix>)>>,
}

impl SheafComplex {
    /// Assembles a sheaf complex. `stalks[σ]` must be present exactly on the
    /// region; `restrictions[σ]` lists the cofacets of `σ` in the region.
    pub fn new(
        space: &StratifiedComplex,
        region: Region,
        lo: i32,
        len: usize,
        stalks: Vec<Option<CochainComplex>>,
        restrictions: Vec<Vec<(SimplexId, Vec<RationalMatrix>)>>,
    ) -> Result<Self> {
        let f = SheafComplex { region, lo, len, stalks, restrictions };
        f.check_shapes(space)?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        region: Region,
        lo: i32,
        len: usize,
        stalks: Vec<Option<CochainComplex>>,
        restrictions: Vec<Vec<(SimplexId, Vec<RationalMatrix>)>>,
    ) -> Self {
        SheafComplex { region, lo, len, stalks, restrictions }
    }

    fn check_shapes(&self, space: &StratifiedComplex) -> Result<()> {
        if self.stalks.len() != space.len() || self.region.ambient_len() != space.len() {
            return Err(Error::RegionMismatch("sheaf and space sizes differ".into()));
        }
        for s in 0..space.len() {
            let inside = self.region.contains(s);
            match &self.stalks[s] {
                Some(c) if inside => {
                    if c.lo() != self.lo || c.hi() != self.lo + self.len as i32 {
                        return Err(Error::Shape(format!("stalk at {} has the wrong degree window", space.format_simplex(s))));
                    }
                }
                None if !inside => {}
                _ => return Err(Error::RegionMismatch(format!("stalk presence at {}", space.format_simplex(s)))),
            }
            if !inside {
                continue;
            }
            let expected: Vec<SimplexId> = space.cofacets(s).to_vec();
            let got: Vec<SimplexId> = self.restrictions[s].iter().map(|(t, _)| *t).collect();
            if expected != got {
                return Err(Error::RegionMismatch(format!("restrictions at {}", space.format_simplex(s))));
            }
            for (t, maps) in &self.restrictions[s] {
                if maps.len() != self.len {
                    return Err(Error::Shape("restriction degree count".into()));
                }
                for (i, m) in maps.iter().enumerate() {
                    let j = self.lo + i as i32;
                    if m.ncols() != self.stalk_dim(s, j) || m.nrows() != self.stalk_dim(*t, j) {
                        return Err(Error::Shape(format!(
                            "restriction {}→{} in degree {j}",
                            space.format_simplex(s),
                            space.format_simplex(*t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact check of the sheaf-complex invariants: `d∘d = 0`, restrictions
    /// are chain maps, and squares of the face poset commute.
    pub fn verify(&self, space: &StratifiedComplex) -> Result<()> {
        self.check_shapes(space)?;
        for s in self.region.members() {
            let st = self.stalk(s);
            for j in self.degrees() {
                if !st.d(j + 1).mul(&st.d(j)).is_zero() {
                    return Err(Error::NotAComplex(j));
                }
            }
            for (t, maps) in &self.restrictions[s] {
                let tt = self.stalk(*t);
                for j in self.degrees() {
                    let r = &maps[(j - self.lo) as usize];
                    let next = self.restriction(s, *t, j + 1);
                    if tt.d(j).mul(r) != next.mul(&st.d(j)) {
                        return Err(Error::NotConstructible(format!(
                            "restriction {}→{} is not a chain map in degree {j}",
                            space.format_simplex(s),
                            space.format_simplex(*t)
                        )));
                    }
                }
            }
        }
        // squares: σ < τ1, τ2 < ρ with dim ρ = dim σ + 2
        for s in self.region.members() {
            for c in space.cofaces(s) {
                if space.simplex_dim(c) != space.simplex_dim(s) + 2 {
                    continue;
                }
                let mids: Vec<SimplexId> = space.cofacets(s).iter().copied().filter(|&m| space.is_face(m, c)).collect();
                for j in self.degrees() {
                    let a = self.restriction(mids[0], c, j).mul(&self.restriction(s, mids[0], j));
                    let b = self.restriction(mids[1], c, j).mul(&self.restriction(s, mids[1], j));
                    if a != b {
                        return Err(Error::NotConstructible(format!(
                            "square {}<{} does not commute in degree {j}",
                            space.format_simplex(s),
                            space.format_simplex(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.len as i32
    }

    pub fn degree_count(&self) -> usize {
        self.len
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.lo..self.hi()
    }

    pub fn stalk(&self, s: SimplexId) -> &CochainComplex {
        self.stalks[s].as_ref().expect("simplex outside the region")
    }

    pub fn try_stalk(&self, s: SimplexId) -> Option<&CochainComplex> {
        self.stalks.get(s).and_then(|x| x.as_ref())
    }

    pub fn stalk_dim(&self, s: SimplexId, j: i32) -> usize {
        self.stalks[s].as_ref().map_or(0, |c| c.dim(j))
    }

    /// Restriction along a cofacet `s < t` in degree `j`.
    pub fn restriction(&self, s: SimplexId, t: SimplexId, j: i32) -> RationalMatrix {
        if j < self.lo || j >= self.hi() {
            return RationalMatrix::zeros(self.stalk_dim(t, j), self.stalk_dim(s, j));
        }
        let maps = &self.restrictions[s].iter().find(|(c, _)| *c == t).expect("cofacet").1;
        maps[(j - self.lo) as usize].clone()
    }

    pub fn restrictions_from(&self, s: SimplexId) -> &[(SimplexId, Vec<RationalMatrix>)] {
        &self.restrictions[s]
    }

    /// Composite restriction `s ≤ t` in degree `j`, adding one vertex at a time.
    pub fn restriction_composite(&self, space: &StratifiedComplex, s: SimplexId, t: SimplexId, j: i32) -> RationalMatrix {
        let mut cur = s;
        let mut m = RationalMatrix::identity(self.stalk_dim(s, j));
        while cur != t {
            let next = space.cofacets(cur).iter().copied().find(|&c| space.is_face(c, t)).expect("face relation");
            m = self.restriction(cur, next, j).mul(&m);
            cur = next;
        }
        m
    }

    pub fn stalk_cohomology(&self, s: SimplexId) -> GradedDims {
        self.stalk(s).cohomology_dims()
    }

    pub fn stalk_cohomology_basis(&self, s: SimplexId) -> Cohomology {
        self.stalk(s).cohomology()
    }

    /// Restriction `i^*` to an open subregion.
    pub fn restrict_to(&self, region: &Region) -> Result<SheafComplex> {
        if !region.is_subset(&self.region) {
            return Err(Error::RegionMismatch("restriction to a region outside the domain".into()));
        }
        let stalks = self.stalks.iter().enumerate().map(|(s, c)| if region.contains(s) { c.clone() } else { None }).collect();
        let restrictions =
            self.restrictions.iter().enumerate().map(|(s, r)| if region.contains(s) { r.clone() } else { Vec::new() }).collect();
        Ok(SheafComplex { region: region.clone(), lo: self.lo, len: self.len, stalks, restrictions })
    }

    /// Same complex over a wider degree window (extra degrees are zero).
    pub fn widen(&self, lo: i32, hi: i32) -> SheafComplex {
        assert!(lo <= self.lo && hi >= self.hi());
        let len = (hi - lo) as usize;
        let stalks = self.stalks.iter().map(|c| c.as_ref().map(|c| widen_complex(c, lo, len))).collect();
        let restrictions = self
            .restrictions
            .iter()
            .enumerate()
            .map(|(s, r)| {
                r.iter()
                    .map(|(t, _)| (*t, (lo..hi).map(|j| self.restriction(s, *t, j)).collect()))
                    .collect()
            })
            .collect();
        SheafComplex { region: self.region.clone(), lo, len, stalks, restrictions }
    }

    /// Drops zero degrees at both ends of the window.
    pub fn trim(&self) -> SheafComplex {
        let members = self.region.members();
        let nonzero = |j: i32| members.iter().any(|&s| self.stalk_dim(s, j) > 0);
        let Some(lo) = self.degrees().find(|&j| nonzero(j)) else {
            return self.narrow(0, 0);
        };
        let hi = self.degrees().rev().find(|&j| nonzero(j)).unwrap() + 1;
        self.narrow(lo, hi)
    }

    /// Drops the degrees above `p` (which must be zero).
    pub fn trim_above(&self, p: i32) -> SheafComplex {
        let hi = (p + 1).clamp(self.lo, self.hi());
        self.narrow(self.lo, hi)
    }

    fn narrow(&self, lo: i32, hi: i32) -> SheafComplex {
        let len = (hi - lo).max(0) as usize;
        let stalks = self.stalks.iter().map(|c| c.as_ref().map(|c| widen_complex(c, lo, len))).collect();
        let restrictions = self
            .restrictions
            .iter()
            .enumerate()
            .map(|(s, r)| r.iter().map(|(t, _)| (*t, (lo..hi).map(|j| self.restriction(s, *t, j)).collect())).collect())
            .collect();
        SheafComplex { region: self.region.clone(), lo, len, stalks, restrictions }
    }

    /// Stalk dimensions and matrices as JSON, for golden tests and debugging.
    pub fn debug_json(&self, space: &StratifiedComplex) -> serde_json::Value {
        let mat = |m: &RationalMatrix| -> Vec<Vec<String>> {
            m.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
        };
        let mut stalks = serde_json::Map::new();
        for s in self.region.members() {
            let st = self.stalk(s);
            let dims: Vec<usize> = self.degrees().map(|j| st.dim(j)).collect();
            let diffs: Vec<_> = self.degrees().map(|j| mat(&st.d(j))).collect();
            let res: serde_json::Map<String, serde_json::Value> = self.restrictions[s]
                .iter()
                .map(|(t, maps)| (space.format_simplex(*t), json!(maps.iter().map(mat).collect::<Vec<_>>())))
                .collect();
            stalks.insert(space.format_simplex(s), json!({"dims": dims, "d": diffs, "restrictions": res}));
        }
        json!({"lo": self.lo, "len": self.len, "stalks": stalks})
    }
}

pub(crate) fn widen_complex(c: &CochainComplex, lo: i32, len: usize) -> CochainComplex {
    let dims: Vec<usize> = (0..len).map(|i| c.dim(lo + i as i32)).collect();
    let diffs: Vec<RationalMatrix> = (0..len.saturating_sub(1)).map(|i| c.d(lo + i as i32)).collect();
    CochainComplex::new_unchecked(lo, dims, diffs).expect("shapes")
}

/// Constant sheaf `ℚ` in degree 0 with identity restrictions.
pub fn constant_sheaf(space: &StratifiedComplex, region: &Region) -> SheafComplex {
    let stalk = CochainComplex::new_unchecked(0, vec![1], vec![]).unwrap();
    let stalks = (0..space.len()).map(|s| region.contains(s).then(|| stalk.clone())).collect();
    let restrictions = (0..space.len())
        .map(|s| {
            if region.contains(s) {
                space.cofacets(s).iter().map(|&t| (t, vec![RationalMatrix::identity(1)])).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    SheafComplex { region: region.clone(), lo: 0, len: 1, stalks, restrictions }
}

/// The zero complex on a region.
pub fn zero_sheaf(space: &StratifiedComplex, region: &Region) -> SheafComplex {
    let stalks = (0..space.len()).map(|s| region.contains(s).then(CochainComplex::zero)).collect();
    let restrictions = (0..space.len())
        .map(|s| if region.contains(s) { space.cofacets(s).iter().map(|&t| (t, Vec::new())).collect() } else { Vec::new() })
        .collect();
    SheafComplex { region: region.clone(), lo: 0, len: 0, stalks, restrictions }
}

/// Extension by zero `j_!` of the constant sheaf on an open region to a
/// larger one: stalk `ℚ` on `inner`, zero elsewhere.
pub fn constant_extended_by_zero(space: &StratifiedComplex, inner: &Region, outer: &Region) -> SheafComplex {
    let one = CochainComplex::new_unchecked(0, vec![1], vec![]).unwrap();
    let zero = CochainComplex::new_unchecked(0, vec![0], vec![]).unwrap();
    let stalks = (0..space.len())
        .map(|s| outer.contains(s).then(|| if inner.contains(s) { one.clone() } else { zero.clone() }))
        .collect();
    let restrictions = (0..space.len())
        .map(|s| {
            if !outer.contains(s) {
                return Vec::new();
            }
            let ds = usize::from(inner.contains(s));
            space
                .cofacets(s)
                .iter()
                .map(|&t| {
                    let dt = usize::from(inner.contains(t));
                    let m = if ds == 1 && dt == 1 { RationalMatrix::identity(1) } else { RationalMatrix::zeros(dt, ds) };
                    (t, vec![m])
                })
                .collect()
        })
        .collect();
    SheafComplex { region: outer.clone(), lo: 0, len: 1, stalks, restrictions }
}

/// A morphism of sheaf complexes on the same region and degree window.
#[derive(Clone, Debug)]
pub struct SheafMorphism {
    /// `maps[σ][j - lo]` for σ in the region.
    maps: Vec<Option<Vec<RationalMatrix>>>,
    lo: i32,
}

impl SheafMorphism {
    pub fn new(maps: Vec<Option<Vec<RationalMatrix>>>, lo: i32) -> Self {
        SheafMorphism { maps, lo }
    }

    pub fn identity(f: &SheafComplex) -> Self {
        let maps = f
            .stalks
            .iter()
            .map(|c| c.as_ref().map(|c| f.degrees().map(|j| RationalMatrix::identity(c.dim(j))).collect()))
            .collect();
        SheafMorphism { maps, lo: f.lo }
    }

    pub fn zero(source: &SheafComplex, target: &SheafComplex) -> Self {
        let maps = (0..source.stalks.len())
            .map(|s| {
                source.region.contains(s).then(|| {
                    source.degrees().map(|j| RationalMatrix::zeros(target.stalk_dim(s, j), source.stalk_dim(s, j))).collect()
                })
            })
            .collect();
        SheafMorphism { maps, lo: source.lo }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn at(&self, s: SimplexId, j: i32) -> &RationalMatrix {
        &self.maps[s].as_ref().expect("simplex outside the region")[(j - self.lo) as usize]
    }

    /// Component in degree `j`, zero outside the stored window.
    pub fn component(&self, source: &SheafComplex, target: &SheafComplex, s: SimplexId, j: i32) -> RationalMatrix {
        let i = j - self.lo;
        match &self.maps[s] {
            Some(v) if i >= 0 && (i as usize) < v.len() => v[i as usize].clone(),
            _ => RationalMatrix::zeros(target.stalk_dim(s, j), source.stalk_dim(s, j)),
        }
    }

    pub fn compose(&self, after: &SheafMorphism, source: &SheafComplex, mid: &SheafComplex, target: &SheafComplex) -> SheafMorphism {
        let maps = (0..self.maps.len())
            .map(|s| {
                source.region.contains(s).then(|| {
                    source
                        .degrees()
                        .map(|j| after.component(mid, target, s, j).mul(&self.component(source, mid, s, j)))
                        .collect()
                })
            })
            .collect();
        SheafMorphism { maps, lo: source.lo }
    }

    /// Exact check that the maps commute with differentials and restrictions.
    pub fn verify(&self, space: &StratifiedComplex, source: &SheafComplex, target: &SheafComplex) -> Result<()> {
        if source.region != target.region {
            return Err(Error::RegionMismatch("morphism between different regions".into()));
        }
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        for s in source.region.members() {
            for j in lo..hi {
                let f = self.component(source, target, s, j);
                let f1 = self.component(source, target, s, j + 1);
                if target.stalk(s).d(j).mul(&f) != f1.mul(&source.stalk(s).d(j)) {
                    return Err(Error::NotConstructible(format!("not a chain map at {} in degree {j}", space.format_simplex(s))));
                }
                for &t in space.cofacets(s) {
                    let ft = self.component(source, target, t, j);
                    if target.restriction(s, t, j).mul(&f) != ft.mul(&source.restriction(s, t, j)) {
                        return Err(Error::NotConstructible(format!(
                            "does not commute with restriction {}→{}",
                            space.format_simplex(s),
                            space.format_simplex(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Induced map on stalk cohomology at `s` in degree `j`, in the bases of
    /// [`CochainComplex::cohomology_at`].
    pub fn on_stalk_cohomology(&self, source: &SheafComplex, target: &SheafComplex, s: SimplexId, j: i32) -> RationalMatrix {
        let a = source.stalk(s).cohomology_at(j);
        let b = target.stalk(s).cohomology_at(j);
        b.proj.mul(&self.component(source, target, s, j)).mul(&a.reps)
    }
}
