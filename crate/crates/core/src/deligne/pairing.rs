//! Cup-product pairings on the middle cohomology of links.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::build::{DeligneBuild, Stage};
use crate::complex::{SimplexId, StratifiedComplex, StratumComponent};
use crate::error::{Error, Result};
use crate::linalg::{kernel, q, rank, solve, Rational, RationalMatrix};
use crate::sheaf::{tot_with_layout, SheafComplex};

#[derive(Clone, Debug, Serialize)]
pub struct LinkPairing {
    pub component: String,
    pub codim: usize,
    /// Middle degree `(k−1)/2` of the link.
    pub degree: i32,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: RationalMatrix,
    pub symmetric: bool,
}

fn ser_matrix<S: serde::Serializer>(m: &RationalMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    rows.serialize(s)
}

pub(crate) fn find_component<'a>(b: &'a DeligneBuild, id: &str) -> Result<(&'a Stage, usize)> {
    for st in &b.stages {
        if let Some(i) = st.components.iter().position(|c| c.id == id) {
            return Ok((st, i));
        }
    }
    Err(Error::UnknownComponent(id.to_string()))
}

/// Every proper coface of the base simplex is regular.
pub fn is_depth_one(space: &StratifiedComplex, comp: &StratumComponent) -> bool {
    space.cofaces(comp.base).into_iter().all(|s| s == comp.base || space.is_regular(s))
}

/// Signs `ε_ρ` on the top simplices making `Σ ε_ρ ρ` a cycle, positive on
/// the first top simplex of each connected piece.
pub fn coherent_orientation(z: &StratifiedComplex) -> Result<Vec<i64>> {
    let n = z.dim();
    let top = z.facets_top();
    if n == 0 {
        return Ok(vec![1; top.len()]);
    }
    for f in z.simplices_of_dim(n - 1) {
        if z.cofacets(f).len() != 2 {
            return Err(Error::LinkNotManifold(format!("{} has {} cofaces in {}", z.format_simplex(f), z.cofacets(f).len(), z.name())));
        }
    }
    let mut eps: Vec<i64> = vec![0; top.len()];
    for start in top.clone() {
        if eps[start - top.start] != 0 {
            continue;
        }
        eps[start - top.start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &f in z.facets(a) {
                let other = z.cofacets(f).iter().copied().find(|&b| b != a).unwrap();
                let want = -eps[a - top.start] * z.incidence(a, f) * z.incidence(other, f);
                let slot = &mut eps[other - top.start];
                if *slot == 0 {
                    *slot = want;
                    queue.push_back(other);
                } else if *slot != want {
                    return Err(Error::LinkNotOrientable(z.name().to_string()));
                }
            }
        }
    }
    Ok(eps)
}

/// `⟨α ∪ β, [Z]⟩` by the Alexander–Whitney formula; cochains indexed by the
/// `m`-simplices of `z`.
pub fn cup_pairing(z: &StratifiedComplex, eps: &[i64], m: usize, a: &RationalMatrix) -> RationalMatrix {
    let base = z.simplices_of_dim(m).start;
    let top = z.facets_top();
    let k = a.ncols();
    let cols = a.columns();
    let mut g = vec![vec![Rational::from_integer(0.into()); k]; k];
    for (i, rho) in top.clone().enumerate() {
        let vs = z.simplex(rho);
        let front = z.id_of(&vs[..=m]).unwrap() - base;
        let back = z.id_of(&vs[vs.len() - m - 1..]).unwrap() - base;
        let e = q(eps[i]);
        for (x, cx) in cols.iter().enumerate() {
            if cx[front] == q(0) {
                continue;
            }
            let ax = &cx[front] * &e;
            for (y, cy) in cols.iter().enumerate() {
                g[x][y] += &ax * &cy[back];
            }
        }
    }
    RationalMatrix::from_dense(&g)
}

/// The cup-product pairing on `H^m` of the link of a depth-one component,
/// in the basis of its local-system stalk.
pub fn link_pairing(space: &StratifiedComplex, b: &DeligneBuild, component: &str) -> Result<LinkPairing> {
    let (st, ci) = find_component(b, component)?;
    let comp = &st.components[ci];
    let m = (st.k as i32 - 1) / 2;
    let mk = |matrix: RationalMatrix| LinkPairing {
        component: component.to_string(),
        codim: st.k,
        degree: m,
        symmetric: m % 2 == 0,
        matrix,
    };
    if st.k % 2 == 0 {
        return Err(Error::Malformed(format!("{component} has even codimension")));
    }
    if !is_depth_one(space, comp) {
        return Err(Error::DeepStratum(component.to_string()));
    }
    let pushed = &st.pushed;
    let tau = comp.base;
    let basis = pushed.stalk(tau).cohomology_at(m);
    if basis.dim() == 0 {
        return Ok(mk(RationalMatrix::zeros(0, 0)));
    }
    let z = space.link_of(tau)?;
    let eps = coherent_orientation(&z)?;

    let names: HashMap<&str, usize> = space.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let zv: Vec<usize> = z.vertices().iter().map(|v| names[v.as_str()]).collect();
    let lift = |rho: SimplexId| {
        let mut u: Vec<usize> = z.simplex(rho).iter().map(|&i| zv[i]).chain(space.simplex(tau).iter().copied()).collect();
        u.sort_unstable();
        space.id_of(&u).unwrap()
    };
    let g: Vec<SimplexId> = (0..z.len()).map(lift).collect();

    let mut stalks = Vec::with_capacity(z.len());
    let mut restrictions = Vec::with_capacity(z.len());
    for rho in 0..z.len() {
        stalks.push(Some(pushed.stalk(g[rho]).clone()));
        restrictions.push(z.cofacets(rho).iter().map(|&r2| (r2, pushed.degrees().map(|j| pushed.restriction(g[rho], g[r2], j)).collect())).collect());
    }
    let fz = SheafComplex::new(&z, z.full_region(), pushed.lo(), pushed.degree_count(), stalks, restrictions)?;
    let (tot, layout) = tot_with_layout(&z, &fz, &z.full_region());

    let h0 = pushed.stalk(tau).cohomology_at(0);
    if h0.dim() != 1 {
        return Err(Error::LinkNotManifold(format!("{} is not connected", z.name())));
    }
    let c = h0.reps.column(0);
    let mu = m as usize;
    let zdeg = z.simplices_of_dim(mu);
    let rows = tot.dim(m);
    let mut iota = Vec::new();
    for rho in zdeg.clone() {
        let cr = pushed.restriction_composite(space, tau, g[rho], 0).mul_vec(&c);
        let off = layout.offset(rho, 0).unwrap();
        for (r, v) in cr.into_iter().enumerate() {
            if v != q(0) {
                iota.push((off + r, rho - zdeg.start, v));
            }
        }
    }
    let iota = RationalMatrix::from_triplets(rows, zdeg.len(), iota);
    let mut incl = Vec::new();
    for v in z.simplices_of_dim(0) {
        let Some(off) = layout.offset(v, m) else { continue };
        let r = pushed.restriction_composite(space, tau, g[v], m).mul(&basis.reps);
        for (i, j, x) in r.entries() {
            incl.push((off + i, j, x.clone()));
        }
    }
    let incl = RationalMatrix::from_triplets(rows, basis.dim(), incl);

    let cocycles = kernel(&z.cochain_complex().d(m));
    let a = RationalMatrix::hstack(&[&iota.mul(&cocycles), &tot.d(m - 1)]);
    let sol = solve(&a, &incl).ok_or_else(|| Error::NotConstructible(format!("link cochains of {component} do not reach the stalk")))?;
    let coeffs = sol.select_rows(&(0..cocycles.ncols()).collect::<Vec<_>>());
    let alpha = cocycles.mul(&coeffs);
    let gm = cup_pairing(&z, &eps, mu, &alpha);
    let r = rank(&gm);
    if r != gm.nrows() {
        return Err(Error::Degenerate { rank: r, dim: gm.nrows() });
    }
    Ok(mk(gm))
}
