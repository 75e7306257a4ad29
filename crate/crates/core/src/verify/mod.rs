//! Verification suites for built complexes.

mod attach;
mod canonical;
mod concentration;
mod duality;
mod poincare;
mod reassembly;
mod rp;

pub use attach::Attaching;
pub use canonical::{canonical_maps, full_mezzo, CanonicalReport, CanonicalRow};
pub use concentration::{concentration_check, ConcentrationPoint, ConcentrationReport};
pub use duality::{duality_report, duality_table, DualityReport, DualityRow};
pub use poincare::{local_poincare_check, PoincareReport, PoincareRow};
pub use reassembly::{reassembly_check, ReassemblyReport, ReassemblyStage};
pub use rp::{check_rp, AxiomResult, Failure, RPReport};

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::sheaf::{SheafComplex, SheafMorphism, Truncation};

/// For truncations `a ⊆ b` of the same complex (with respective ambient
/// complexes `qa`, `qb` of equal shape), the inclusion in coordinates.
pub(crate) fn sub_inclusion(a: &Truncation, qa: &SheafComplex, b: &Truncation, qb: &SheafComplex) -> Result<SheafMorphism> {
    let (fa, fb) = (&a.sheaf, &b.sheaf);
    let mut maps = Vec::with_capacity(fa.region().ambient_len());
    for x in 0..fa.region().ambient_len() {
        if !fa.region().contains(x) {
            maps.push(None);
            continue;
        }
        let mut per = Vec::new();
        for j in fa.degrees() {
            let ia = a.inclusion.component(fa, qa, x, j);
            let ib = b.inclusion.component(fb, qb, x, j);
            let m = solve(&ib, &ia).ok_or_else(|| Error::ModelsNotShared(format!("not a subcomplex at #{x} in degree {j}")))?;
            per.push(m);
        }
        maps.push(Some(per));
    }
    Ok(SheafMorphism::new(maps, fa.lo()))
}
