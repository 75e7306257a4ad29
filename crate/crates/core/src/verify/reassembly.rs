//! Rebuilding a complex from its restriction to `U_k`.

use serde::Serialize;

use super::attach::Attaching;
use crate::complex::StratifiedComplex;
use crate::deligne::upper_middle;
use crate::error::Result;
use crate::linalg::Subspace;
use crate::sheaf::{cohomology_local_system, truncate, truncate_modified, SheafComplex, Subsheaf};

#[derive(Clone, Debug, Serialize)]
pub struct ReassemblyStage {
    pub k: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReassemblyReport {
    pub space: String,
    pub stages: Vec<ReassemblyStage>,
    pub pass: bool,
}

/// For every `k`, truncates `R i_{k*} i_k^* S` (modified by the image of
/// `H^{n̄(k)}(S)` on odd strata) and compares stalk cohomology with `S`
/// on `U_{k+1}`.
pub fn reassembly_check(space: &StratifiedComplex, s: &SheafComplex) -> Result<ReassemblyReport> {
    let mut stages = Vec::new();
    for k in space.singular_codims() {
        let a = Attaching::new(space, s, k)?;
        let p = upper_middle(k)?;
        let rebuilt = if k % 2 == 1 {
            let mut choices = Vec::new();
            for c in space.stratum_components(k)? {
                let ls = cohomology_local_system(space, &a.pushed, p, &c)?;
                if ls.dim() == 0 {
                    continue;
                }
                let w = Subspace::column_span(&a.on_cohomology(c.base, p));
                choices.push(Subsheaf::new(ls, w.basis())?);
            }
            truncate_modified(space, &a.pushed, p, &choices)?
        } else {
            truncate(space, &a.pushed, p)
        };
        let region = space.open_region(k + 1)?;
        let mut st = ReassemblyStage { k, checked: 0, mismatches: Vec::new() };
        for x in region.members() {
            st.checked += 1;
            let (h0, h1) = (s.stalk_cohomology(x), rebuilt.sheaf.stalk_cohomology(x));
            if h0 != h1 {
                st.mismatches.push(format!("{}: {:?} vs {:?}", space.format_simplex(x), h0, h1));
            }
        }
        stages.push(st);
    }
    let pass = stages.iter().all(|s| s.mismatches.is_empty());
    Ok(ReassemblyReport { space: space.name().to_string(), stages, pass })
}
