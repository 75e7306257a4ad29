//! The canonical maps `IC_m̄ → P(L) → IC_n̄`.

use serde::Serialize;

use crate::complex::StratifiedComplex;
use crate::deligne::{validate_mezzo, ChoiceSpec, DeligneBuild, MezzoSpec, Mezzoperversity};
use crate::error::{Error, Result};
use crate::linalg::{rank, GradedDims, RationalMatrix};
use super::sub_inclusion;
use crate::sheaf::{induced_ranks, tot_map, SheafComplex, SheafMorphism};

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalRow {
    pub degree: i32,
    pub dim_lower: usize,
    pub dim_refined: usize,
    pub dim_upper: usize,
    pub rank_alpha: usize,
    pub rank_beta: usize,
    pub rank_composite: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalReport {
    pub space: String,
    pub witt: bool,
    pub rows: Vec<CanonicalRow>,
    /// `β∘α` equals the inclusion `IC_m̄ → IC_n̄` at the chain level.
    pub composite_is_canonical: bool,
    /// `α` and `β` are isomorphisms on `H^0` of every regular stalk.
    pub identity_on_regular: bool,
    pub rank_inequality: bool,
    pub alpha_iso: bool,
    pub beta_iso: bool,
    pub pass: bool,
}

/// Extends `L` by `full` on every component.
pub fn full_mezzo(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<Mezzoperversity> {
    let mut spec = MezzoSpec::new();
    for e in l.entries() {
        spec.choices.insert(e.component.clone(), ChoiceSpec::Full);
    }
    validate_mezzo(space, &spec)
}

fn inclusion_between(a: &DeligneBuild, b: &DeligneBuild) -> Result<SheafMorphism> {
    let (sa, sb) = (a.stages.last().unwrap(), b.stages.last().unwrap());
    sub_inclusion(&sa.result, &sa.pushed, &sb.result, &sb.pushed)
}

pub fn canonical_maps(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<CanonicalReport> {
    let lower = validate_mezzo(space, &MezzoSpec::new())?;
    let upper = full_mezzo(space, l)?;
    let (bm, bl, bn) = (lower.build(), l.build(), upper.build());
    let witt = l.entries().is_empty();
    let full = space.full_region();
    let (sm, sl, sn) = (bm.sheaf(), bl.sheaf(), bn.sheaf());
    let (alpha, beta, gamma) = if witt || bl.stages.is_empty() {
        (SheafMorphism::identity(sl), SheafMorphism::identity(sl), SheafMorphism::identity(sl))
    } else {
        let last = bl.stages.last().unwrap().k;
        if l.entries().iter().any(|e| e.codim != last) {
            return Err(Error::ModelsNotShared("choices on a stratum that is not the deepest".into()));
        }
        let shared = |a: &SheafComplex, b: &SheafComplex| {
            a.degrees() == b.degrees() && (0..space.len()).all(|x| a.degrees().all(|j| a.stalk_dim(x, j) == b.stalk_dim(x, j)))
        };
        let pm = &bm.stages.last().unwrap().pushed;
        if !shared(pm, &bl.stages.last().unwrap().pushed) || !shared(pm, &bn.stages.last().unwrap().pushed) {
            return Err(Error::ModelsNotShared("pushforwards differ".into()));
        }
        (inclusion_between(bm, bl)?, inclusion_between(bl, bn)?, inclusion_between(bm, bn)?)
    };
    alpha.verify(space, sm, sl)?;
    beta.verify(space, sl, sn)?;
    let composite = alpha.compose(&beta, sm, sl, sn);
    let composite_is_canonical =
        full.members().into_iter().all(|x| sm.degrees().all(|j| composite.component(sm, sn, x, j) == gamma.component(sm, sn, x, j)));
    let identity_on_regular = (0..space.len()).filter(|&x| space.is_regular(x)).all(|x| {
        let a: RationalMatrix = alpha.on_stalk_cohomology(sm, sl, x, 0);
        let b = beta.on_stalk_cohomology(sl, sn, x, 0);
        a.nrows() == 1 && a.ncols() == 1 && rank(&a) == 1 && b.nrows() == 1 && b.ncols() == 1 && rank(&b) == 1
    });

    let lo = sm.lo().min(sl.lo()).min(sn.lo());
    let hi = sm.hi().max(sl.hi()).max(sn.hi());
    let (wm, wl, wn) = (sm.widen(lo, hi), sl.widen(lo, hi), sn.widen(lo, hi));
    let (ca, cb, ma) = tot_map(space, &alpha, &wm, &wl, &full)?;
    let (_, cc, mb) = tot_map(space, &beta, &wl, &wn, &full)?;
    let mg: Vec<RationalMatrix> = mb.iter().zip(&ma).map(|(b, a)| b.mul(a)).collect();
    let ra = induced_ranks(&ca, &cb, &ma);
    let rb = induced_ranks(&cb, &cc, &mb);
    let rg = induced_ranks(&ca, &cc, &mg);
    let (hm, hl, hn): (GradedDims, GradedDims, GradedDims) = (ca.cohomology_dims(), cb.cohomology_dims(), cc.cohomology_dims());
    let rows: Vec<CanonicalRow> = (0..=space.dim() as i32)
        .map(|j| CanonicalRow {
            degree: j,
            dim_lower: hm.get(j),
            dim_refined: hl.get(j),
            dim_upper: hn.get(j),
            rank_alpha: ra.get(j),
            rank_beta: rb.get(j),
            rank_composite: rg.get(j),
        })
        .collect();
    let rank_inequality = rows.iter().all(|r| r.rank_composite <= r.rank_alpha.min(r.rank_beta));
    let alpha_iso = rows.iter().all(|r| r.dim_lower == r.dim_refined && r.rank_alpha == r.dim_lower);
    let beta_iso = rows.iter().all(|r| r.dim_refined == r.dim_upper && r.rank_beta == r.dim_refined);
    let pass = composite_is_canonical && identity_on_regular && rank_inequality && (!witt || (alpha_iso && beta_iso));
    Ok(CanonicalReport {
        space: space.name().to_string(),
        witt,
        rows,
        composite_is_canonical,
        identity_on_regular,
        rank_inequality,
        alpha_iso,
        beta_iso,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::example;
    use crate::deligne::lspace_check;

    #[test]
    fn maps_on_suspended_torus() {
        let x = example("susp_t2").unwrap();
        let spec = lspace_check(&x, 8).unwrap().self_dual_spec().unwrap();
        let l = validate_mezzo(&x, &spec).unwrap();
        let r = canonical_maps(&x, &l).unwrap();
        assert!(r.pass, "{r:#?}");
        let dims: Vec<usize> = r.rows.iter().map(|r| r.dim_refined).collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
        let z = canonical_maps(&x, &validate_mezzo(&x, &MezzoSpec::new()).unwrap()).unwrap();
        assert!(z.alpha_iso && !z.beta_iso);
    }

    #[test]
    fn witt_maps_are_isomorphisms() {
        let x = example("susp_s2").unwrap();
        let r = canonical_maps(&x, &validate_mezzo(&x, &MezzoSpec::new()).unwrap()).unwrap();
        assert!(r.witt && r.alpha_iso && r.beta_iso && r.pass);
    }
}
