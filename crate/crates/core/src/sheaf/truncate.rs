//! Good truncation and its modification along a stratum.

use rayon::prelude::*;

use super::{SheafComplex, SheafMorphism, Subsheaf};
use crate::complex::{SimplexId, StratifiedComplex};
use crate::error::{Error, Result};
use crate::linalg::{kernel, CochainComplex, RationalMatrix, Subspace};

/// A truncated complex with its inclusion into the original.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub sheaf: SheafComplex,
    pub inclusion: SheafMorphism,
    /// The degree-`p` subspace of every stalk.
    pub top: Vec<Option<Subspace>>,
    pub degree: i32,
}

/// A subsheaf `E ⊆ H^p` chosen on one stratum component.
pub type StratumChoice = Subsheaf;

/// `τ_{≤p}`: degree `p` replaced by `ker d^p`, higher degrees zero.
pub fn truncate(space: &StratifiedComplex, f: &SheafComplex, p: i32) -> Truncation {
    truncate_modified(space, f, p, &[]).expect("plain truncation is always defined")
}

/// `τ_{≤p}(F, E)`: on the simplices of each chosen component degree `p` is
/// `π^{-1}(E) = im d^{p-1} + E`, elsewhere `ker d^p`.
pub fn truncate_modified(space: &StratifiedComplex, f: &SheafComplex, p: i32, choices: &[StratumChoice]) -> Result<Truncation> {
    let members = f.region().members();
    let mut chosen: Vec<Option<&StratumChoice>> = vec![None; space.len()];
    for c in choices {
        let ls = c.parent();
        if ls.degree() != p {
            return Err(Error::RegionMismatch(format!("choice on {} is in degree {}, not {p}", ls.component().id, ls.degree())));
        }
        for &s in &ls.component().simplices {
            if !f.region().contains(s) {
                return Err(Error::RegionMismatch(format!("{} outside the domain", space.format_simplex(s))));
            }
            chosen[s] = Some(c);
        }
    }
    let tops: Vec<(SimplexId, Option<Subspace>)> = members
        .par_iter()
        .map(|&s| {
            if p < f.lo() || p >= f.hi() {
                return Ok((s, None));
            }
            let st = f.stalk(s);
            let sub = match chosen[s] {
                None => Subspace::column_span(&kernel(&st.d(p))),
                Some(c) => {
                    let basis = c.parent().basis_at(s).ok_or_else(|| {
                        Error::RegionMismatch(format!("choice on {} was not built from this complex", c.parent().component().id))
                    })?;
                    let h = st.cohomology_at(p);
                    if h.reps != basis.reps {
                        return Err(Error::RegionMismatch(format!(
                            "choice on {} does not match the cohomology of this complex",
                            c.parent().component().id
                        )));
                    }
                    let w = c.at(s);
                    let lifted = h.reps.mul(w.basis());
                    Subspace::column_span(&RationalMatrix::hstack(&[&st.d(p - 1), &lifted]))
                }
            };
            Ok((s, Some(sub)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut top: Vec<Option<Subspace>> = vec![None; space.len()];
    for (s, sub) in tops {
        top[s] = sub;
    }
    let keep = |j: i32| j < p;
    let mut stalks = vec![None; space.len()];
    let mut restrictions = vec![Vec::new(); space.len()];
    let mut incl = vec![None; space.len()];
    for &s in &members {
        let st = f.stalk(s);
        let sub = top[s].as_ref();
        let dims: Vec<usize> = f
            .degrees()
            .map(|j| if keep(j) { st.dim(j) } else if j == p { sub.map_or(0, |x| x.dim()) } else { 0 })
            .collect();
        let diffs: Vec<RationalMatrix> = f
            .degrees()
            .take(f.degree_count().saturating_sub(1))
            .map(|j| {
                if j + 1 < p {
                    st.d(j)
                } else if j + 1 == p {
                    sub.unwrap().coords_matrix(&st.d(j))
                } else {
                    RationalMatrix::zeros(dims[(j + 1 - f.lo()) as usize], dims[(j - f.lo()) as usize])
                }
            })
            .collect();
        stalks[s] = Some(CochainComplex::new_unchecked(f.lo(), dims.clone(), diffs)?);
        incl[s] = Some(
            f.degrees()
                .map(|j| {
                    if keep(j) {
                        RationalMatrix::identity(st.dim(j))
                    } else if j == p {
                        sub.unwrap().basis().clone()
                    } else {
                        RationalMatrix::zeros(st.dim(j), 0)
                    }
                })
                .collect::<Vec<_>>(),
        );
        let mut res = Vec::new();
        for &t in space.cofacets(s) {
            let maps = f
                .degrees()
                .map(|j| {
                    let r = f.restriction(s, t, j);
                    if keep(j) {
                        Ok(r)
                    } else if j == p {
                        let (a, b) = (sub.unwrap(), top[t].as_ref().unwrap());
                        let image = r.mul(a.basis());
                        if !b.contains_columns(&image) {
                            return Err(Error::NotConstructible(format!(
                                "truncation is not a subcomplex along {}→{}",
                                space.format_simplex(s),
                                space.format_simplex(t)
                            )));
                        }
                        Ok(b.coords_matrix(&image))
                    } else {
                        Ok(RationalMatrix::zeros(0, 0))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            res.push((t, maps));
        }
        restrictions[s] = res;
    }
    let sheaf = SheafComplex::new_unchecked(f.region().clone(), f.lo(), f.degree_count(), stalks, restrictions);
    Ok(Truncation { sheaf, inclusion: SheafMorphism::new(incl, f.lo()), top, degree: p })
}

impl Truncation {
    /// The morphism `τ A → τ B` induced by `g : A → B`, when `g` maps the
    /// truncation of `A` into that of `B`.
    pub fn induced(
        &self,
        space: &StratifiedComplex,
        g: &SheafMorphism,
        a: &SheafComplex,
        b: &SheafComplex,
        target: &Truncation,
    ) -> Result<SheafMorphism> {
        let mut maps = vec![None; space.len()];
        for s in self.sheaf.region().members() {
            let comps = self
                .sheaf
                .degrees()
                .map(|j| {
                    let m = g.component(a, b, s, j).mul(&self.inclusion.component(&self.sheaf, a, s, j));
                    if j < self.degree {
                        Ok(m)
                    } else if j == self.degree {
                        let sub = target.top[s].as_ref().unwrap();
                        if !sub.contains_columns(&m) {
                            return Err(Error::NotConstructible(format!(
                                "morphism does not preserve the truncation at {}",
                                space.format_simplex(s)
                            )));
                        }
                        Ok(sub.coords_matrix(&m))
                    } else {
                        Ok(RationalMatrix::zeros(0, 0))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            maps[s] = Some(comps);
        }
        Ok(SheafMorphism::new(maps, self.sheaf.lo()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::example;
    use crate::linalg::GradedDims;
    use crate::sheaf::{cohomology_local_system, constant_sheaf, pushforward};

    #[test]
    fn truncations_at_suspension_pole() {
        let x = example("susp_t2").unwrap();
        let f = constant_sheaf(&x, &x.open_region(3).unwrap());
        let g = pushforward(&x, &f, &x.full_region()).unwrap();
        let pole = (0..x.len()).find(|&s| x.level(s) == 0).unwrap();
        let t = truncate(&x, &g, 1);
        t.sheaf.verify(&x).unwrap();
        t.inclusion.verify(&x, &t.sheaf, &g).unwrap();
        assert_eq!(t.sheaf.stalk_cohomology(pole), GradedDims::from_slice(0, &[1, 2]));
        assert!(truncate(&x, &g, -1).sheaf.stalk_cohomology(pole).is_zero());

        let comp = x.stratum_components(3).unwrap().remove(0);
        let ls = cohomology_local_system(&x, &g, 1, &comp).unwrap();
        assert_eq!(ls.dim(), 2);
        let line = Subsheaf::new(ls.clone(), &RationalMatrix::from_i64(&[&[1], &[0]])).unwrap();
        let m = truncate_modified(&x, &g, 1, &[line]).unwrap();
        m.sheaf.verify(&x).unwrap();
        assert_eq!(m.sheaf.stalk_cohomology(comp.base), GradedDims::from_slice(0, &[1, 1]));
        let full = truncate_modified(&x, &g, 1, &[Subsheaf::full(ls.clone())]).unwrap();
        for s in 0..x.len() {
            assert_eq!(full.sheaf.stalk(s), t.sheaf.stalk(s));
        }
        let zero = truncate_modified(&x, &g, 1, &[Subsheaf::zero(ls)]).unwrap();
        assert_eq!(zero.sheaf.stalk_cohomology(comp.base), GradedDims::from_slice(0, &[1]));
    }
}
