//! The Deligne construction `τ_{≤p(n)} R i_{n*} ⋯ τ_{≤p(2)} R i_{2*} ℚ_{U_2}`.

use rayon::prelude::*;
use serde::Serialize;

use super::perversity::upper_middle;
use super::Perversity;
use crate::complex::{StratifiedComplex, StratumComponent};
use crate::error::Result;
use crate::linalg::{GradedDims, RationalMatrix};
use crate::sheaf::{
    cohomology_local_system, constant_sheaf, truncate_modified, InjectiveModel, LocalSystem, SheafComplex, Subsheaf, Truncation,
};

/// One step `P_{k+1} = τ(R i_{k*} P_k)` across the codimension-`k` stratum.
#[derive(Clone, Debug)]
pub struct Stage {
    pub k: usize,
    /// Truncation degree.
    pub degree: i32,
    pub components: Vec<StratumComponent>,
    /// `P_k` on `U_k`.
    pub source: SheafComplex,
    pub model: InjectiveModel,
    /// `R i_{k*} P_k` on `U_{k+1}`.
    pub pushed: SheafComplex,
    /// `H^{n̄(k)}` of the pushforward along each component (odd `k` only).
    pub local_systems: Vec<Option<LocalSystem>>,
    /// Modified-truncation choice per component; `None` means plain truncation.
    pub choices: Vec<Option<Subsheaf>>,
    /// `P_{k+1}` on `U_{k+1}`.
    pub result: Truncation,
}

impl Stage {
    pub fn is_odd(&self) -> bool {
        self.k % 2 == 1
    }

    /// For each component, the map `H^p(U_k; P_k) → H^p` of the pushforward
    /// stalk at its base simplex, in cohomology bases.
    pub fn sections_to_stalks(&self, space: &StratifiedComplex, p: i32) -> Result<Vec<RationalMatrix>> {
        let region = self.model.region().clone();
        let global = self.model.sections(&region).cohomology_at(p);
        self.components
            .iter()
            .map(|c| {
                let r = self.model.section_restriction(space, &region, c.base)?;
                let i = p - self.model.lo();
                let stalk = self.pushed.stalk(c.base).cohomology_at(p);
                Ok(if i < 0 || i as usize >= r.len() {
                    RationalMatrix::zeros(stalk.dim(), global.dim())
                } else {
                    stalk.proj.mul(&r[i as usize]).mul(&global.reps)
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct DeligneBuild {
    pub space_name: String,
    pub space_len: usize,
    /// `ℚ_{U_2}`.
    pub initial: SheafComplex,
    /// Stages over the nonempty singular strata, by increasing codimension.
    pub stages: Vec<Stage>,
}

impl DeligneBuild {
    /// The complex on the whole space.
    pub fn sheaf(&self) -> &SheafComplex {
        self.stages.last().map_or(&self.initial, |s| &s.result.sheaf)
    }

    pub fn stage(&self, k: usize) -> Option<&Stage> {
        self.stages.iter().find(|s| s.k == k)
    }

    /// Hypercohomology via a minimal injective model of the final complex.
    pub fn hypercohomology(&self, space: &StratifiedComplex) -> Result<GradedDims> {
        Ok(InjectiveModel::build(space, self.sheaf())?.hypercohomology())
    }

    pub fn matches(&self, space: &StratifiedComplex) -> bool {
        self.space_name == space.name() && self.space_len == space.len()
    }
}

/// What to do at a stage: the truncation degree and a choice per component.
pub struct StageDecision {
    pub degree: i32,
    pub choices: Vec<Option<Subsheaf>>,
}

/// Runs the construction, asking `decide` for every nonempty stratum.
pub fn build_with<F>(space: &StratifiedComplex, mut decide: F) -> Result<DeligneBuild>
where
    F: FnMut(usize, &[StratumComponent], &[Option<LocalSystem>]) -> Result<StageDecision>,
{
    let initial = constant_sheaf(space, &space.open_region(2)?);
    let mut stages: Vec<Stage> = Vec::new();
    for k in space.singular_codims() {
        let source = stages.last().map_or(&initial, |s| &s.result.sheaf).clone();
        let components = space.stratum_components(k)?;
        let model = InjectiveModel::build(space, &source)?;
        let pushed = model.to_sheaf(space, &space.open_region(k + 1)?)?;
        let local_systems: Vec<Option<LocalSystem>> = if k % 2 == 1 {
            let p = upper_middle(k)?;
            components.par_iter().map(|c| cohomology_local_system(space, &pushed, p, c).map(Some)).collect::<Result<_>>()?
        } else {
            vec![None; components.len()]
        };
        let decision = decide(k, &components, &local_systems)?;
        let chosen: Vec<Subsheaf> = decision.choices.iter().flatten().cloned().collect();
        let mut result = truncate_modified(space, &pushed, decision.degree, &chosen)?;
        result.sheaf = result.sheaf.trim_above(decision.degree);
        stages.push(Stage { k, degree: decision.degree, components, source, model, pushed, local_systems, choices: decision.choices, result });
    }
    Ok(DeligneBuild { space_name: space.name().to_string(), space_len: space.len(), initial, stages })
}

/// `IC_p̄` by plain truncations.
pub fn build_ic(space: &StratifiedComplex, p: &Perversity) -> Result<DeligneBuild> {
    p.validate(space.dim())?;
    build_with(space, |k, comps, _| Ok(StageDecision { degree: p.value(k)?, choices: vec![None; comps.len()] }))
}

#[derive(Clone, Debug, Serialize)]
pub struct WittEntry {
    pub component: String,
    pub codim: usize,
    /// `dim H^{n̄(k)}` of the pushforward stalk at the base simplex.
    pub dim: usize,
    pub witt: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WittReport {
    pub space: String,
    pub components: Vec<WittEntry>,
    pub witt: bool,
}

/// Builds with zero choices and reports the middle-degree stalk at every
/// odd-codimension component.
pub fn witt_report(space: &StratifiedComplex) -> Result<WittReport> {
    let b = build_zero(space)?;
    Ok(witt_report_of(space, &b))
}

pub(crate) fn witt_report_of(space: &StratifiedComplex, b: &DeligneBuild) -> WittReport {
    let mut components = Vec::new();
    for st in b.stages.iter().filter(|s| s.is_odd()) {
        for (c, ls) in st.components.iter().zip(&st.local_systems) {
            let dim = ls.as_ref().map_or(0, |l| l.dim());
            components.push(WittEntry { component: c.id.clone(), codim: st.k, dim, witt: dim == 0 });
        }
    }
    let witt = components.iter().all(|c| c.witt);
    WittReport { space: space.name().to_string(), components, witt }
}

/// Zero choices on every non-Witt component, plain truncation elsewhere.
pub(crate) fn build_zero(space: &StratifiedComplex) -> Result<DeligneBuild> {
    build_with(space, |k, comps, ls| {
        let degree = upper_middle(k)?;
        let choices = comps
            .iter()
            .zip(ls)
            .map(|(_, l)| l.as_ref().filter(|l| l.dim() > 0).map(|l| Subsheaf::zero(l.clone())))
            .collect();
        Ok(StageDecision { degree, choices })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::example;

    #[test]
    fn ic_of_suspended_torus() {
        let x = example("susp_t2").unwrap();
        let m = build_ic(&x, &Perversity::Lower).unwrap();
        let n = build_ic(&x, &Perversity::Upper).unwrap();
        assert_eq!(m.hypercohomology(&x).unwrap().to_vec(4), vec![1, 0, 2, 1]);
        assert_eq!(n.hypercohomology(&x).unwrap().to_vec(4), vec![1, 2, 0, 1]);
        let w = witt_report(&x).unwrap();
        assert!(!w.witt);
        assert_eq!(w.components.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn manifold_is_its_constant_sheaf() {
        let s2 = example("s2").unwrap();
        let b = build_ic(&s2, &Perversity::Lower).unwrap();
        assert!(b.stages.is_empty());
        assert_eq!(b.hypercohomology(&s2).unwrap().to_vec(3), vec![1, 0, 1]);
        assert!(witt_report(&s2).unwrap().witt);
    }
}
