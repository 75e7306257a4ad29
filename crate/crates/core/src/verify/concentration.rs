//! Cones of `E^m̄ i_k^* S → i_{k+1}^* S → E^n̄ i_k^* S`.

use serde::Serialize;

use super::sub_inclusion;
use crate::complex::{SimplexId, StratifiedComplex};
use crate::deligne::{lower_middle, upper_middle, Mezzoperversity};
use crate::error::{Error, Result};
use crate::linalg::{rank, GradedDims, RationalMatrix};
use crate::sheaf::{cone_of, truncate};

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationPoint {
    pub simplex: String,
    pub cone_a: GradedDims,
    pub cone_b: GradedDims,
    pub cone_ba: GradedDims,
    pub concentrated: bool,
    /// Rank of `H^{n̄(k)}(S_x) → H^{n̄(k)}(C(ba)_x)`.
    pub image_dim: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    pub space: String,
    pub codim: usize,
    pub degree: i32,
    pub points: Vec<ConcentrationPoint>,
    /// `C(a)` and `C(b)` are acyclic off the stratum.
    pub supported_on_stratum: bool,
    pub pass: bool,
}

/// `a : τ_{≤m̄} Q → S` and `b : S → τ_{≤n̄} Q` where `Q = R i_{k*} i_k^* S`
/// and `S = P(L)` on `U_{k+1}`, all as subcomplexes of `Q`.
pub fn concentration_check(space: &StratifiedComplex, l: &Mezzoperversity, k: usize, paranoid: bool) -> Result<ConcentrationReport> {
    if k % 2 == 0 {
        return Err(Error::Malformed(format!("codimension {k} is even")));
    }
    let b = l.build();
    let st = b.stage(k).ok_or_else(|| Error::Malformed(format!("no stratum of codimension {k}")))?;
    let p = upper_middle(k)?;
    let q = &st.pushed;
    let lower = truncate(space, q, lower_middle(k)?);
    let upper = truncate(space, q, p);
    let s = &st.result;
    let a_map = sub_inclusion(&lower, q, s, q)?;
    let b_map = sub_inclusion(s, q, &upper, q)?;
    let ba = a_map.compose(&b_map, &lower.sheaf, &s.sheaf, &upper.sheaf);
    let ca = cone_of(space, &a_map, &lower.sheaf, &s.sheaf)?;
    let cb = cone_of(space, &b_map, &s.sheaf, &upper.sheaf)?;
    let cba = cone_of(space, &ba, &lower.sheaf, &upper.sheaf)?;

    let on: Vec<SimplexId> = if paranoid {
        st.components.iter().flat_map(|c| c.simplices.iter().copied()).collect()
    } else {
        st.components.iter().map(|c| c.base).collect()
    };
    let mut points = Vec::new();
    for &x in &on {
        let h = cba.stalk_cohomology(x);
        let concentrated = h.iter().all(|(j, _)| j == p);
        let src = s.sheaf.stalk(x).cohomology_at(p);
        let tgt = cba.stalk(x).cohomology_at(p);
        let shift = lower.sheaf.stalk_dim(x, p + 1);
        let bx = b_map.component(&s.sheaf, &upper.sheaf, x, p);
        let into = RationalMatrix::vstack(&[&RationalMatrix::zeros(shift, bx.ncols()), &bx]);
        let image_dim = if src.dim() == 0 { 0 } else { rank(&tgt.proj.mul(&into).mul(&src.reps)) };
        points.push(ConcentrationPoint {
            simplex: space.format_simplex(x),
            cone_a: ca.stalk_cohomology(x),
            cone_b: cb.stalk_cohomology(x),
            cone_ba: h,
            concentrated,
            image_dim,
            source_dim: src.dim(),
            target_dim: tgt.dim(),
            injective: image_dim == src.dim(),
        });
    }
    let off: Vec<SimplexId> = if paranoid {
        space.open_region(k)?.members()
    } else {
        let mut v: Vec<SimplexId> = (0..space.len()).filter(|&x| space.is_regular(x)).take(1).collect();
        for j in space.singular_codims().into_iter().filter(|&j| j < k) {
            v.extend(space.stratum_components(j)?.iter().map(|c| c.base));
        }
        v
    };
    let supported_on_stratum = off.iter().all(|&x| ca.stalk_cohomology(x).is_zero() && cb.stalk_cohomology(x).is_zero());
    let pass = supported_on_stratum && points.iter().all(|p| p.concentrated && p.injective);
    Ok(ConcentrationReport { space: space.name().to_string(), codim: k, degree: p, points, supported_on_stratum, pass })
}
