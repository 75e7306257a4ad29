//! Stalks at depth-one strata against the cohomology of their links.

use serde::Serialize;

use crate::complex::StratifiedComplex;
use crate::deligne::{is_depth_one, upper_middle, Mezzoperversity};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct PoincareRow {
    pub component: String,
    pub codim: usize,
    /// `H^j` of the link, `0 ≤ j ≤ dim`.
    pub link_betti: Vec<usize>,
    pub chosen_dim: Option<usize>,
    pub expected: Vec<usize>,
    pub stalk: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareReport {
    pub space: String,
    pub rows: Vec<PoincareRow>,
    /// Components whose base simplex meets a deeper stratum.
    pub skipped: Vec<String>,
    pub pass: bool,
}

/// The stalk at a depth-one stratum is the link cohomology below the middle
/// degree, the chosen subspace in the middle degree and zero above.
pub fn local_poincare_check(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<PoincareReport> {
    let s = l.build().sheaf();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for k in space.singular_codims() {
        for c in space.stratum_components(k)? {
            if !is_depth_one(space, &c) {
                skipped.push(c.id.clone());
                continue;
            }
            let z = space.link_of(c.base)?;
            let dz = z.dim();
            let betti = z.cochain_complex().cohomology_dims().to_vec(dz + 1);
            let chosen = l.entry(&c.id).map(|e| e.subspace.dim());
            let expected: Vec<usize> = (0..=dz)
                .map(|j| {
                    if 2 * j < dz {
                        betti[j]
                    } else if 2 * j == dz {
                        chosen.unwrap_or(0)
                    } else {
                        0
                    }
                })
                .collect();
            let h = s.stalk_cohomology(c.base);
            let stalk = h.to_vec(dz + 1);
            let inside = h.iter().all(|(j, _)| j >= 0 && j <= upper_middle(k).unwrap_or(0));
            rows.push(PoincareRow { component: c.id.clone(), codim: k, link_betti: betti, chosen_dim: chosen, pass: inside && stalk == expected, expected, stalk });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(PoincareReport { space: space.name().to_string(), rows, skipped, pass })
}
