//! Global duality `dim ℍ^j(P(L)) = dim ℍ^{n−j}(P(DL))`.

use serde::Serialize;

use crate::complex::StratifiedComplex;
use crate::deligne::{dual_mezzo, Mezzoperversity};
use crate::error::Result;
use crate::linalg::GradedDims;

#[derive(Clone, Debug, Serialize)]
pub struct DualityRow {
    pub degree: i32,
    pub dim: usize,
    /// `dim ℍ^{n−j}` of the dual complex.
    pub dual_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub space: String,
    pub n: usize,
    pub hypercohomology: Vec<usize>,
    pub dual_hypercohomology: Vec<usize>,
    pub rows: Vec<DualityRow>,
    pub pass: bool,
}

pub fn duality_report(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<DualityReport> {
    let dl = dual_mezzo(space, l)?;
    let h = l.build().hypercohomology(space)?;
    let hd = dl.build().hypercohomology(space)?;
    Ok(duality_table(space, &h, &hd))
}

pub fn duality_table(space: &StratifiedComplex, h: &GradedDims, hd: &GradedDims) -> DualityReport {
    let n = space.dim();
    let outside = h.iter().chain(hd.iter()).any(|(j, _)| j < 0 || j > n as i32);
    let rows: Vec<DualityRow> = (0..=n as i32)
        .map(|j| {
            let (a, b) = (h.get(j), hd.get(n as i32 - j));
            DualityRow { degree: j, dim: a, dual_dim: b, equal: a == b }
        })
        .collect();
    let pass = !outside && rows.iter().all(|r| r.equal);
    DualityReport { space: space.name().to_string(), n, hypercohomology: h.to_vec(n + 1), dual_hypercohomology: hd.to_vec(n + 1), rows, pass }
}
