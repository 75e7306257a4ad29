//! The axioms RP1–RP4 for refined middle perversity complexes.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::attach::Attaching;
use crate::complex::{SimplexId, StratifiedComplex};
use crate::deligne::{lower_middle, upper_middle};
use crate::error::{Error, Result};
use crate::linalg::{q, rank, Rational};
use crate::sheaf::{costalk_cohomology, SheafComplex};

const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub simplex: String,
    pub degree: i32,
    pub dim: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub pass: bool,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl AxiomResult {
    fn new(axiom: &str) -> Self {
        AxiomResult { axiom: axiom.to_string(), pass: true, checked: 0, failure_count: 0, failures: Vec::new() }
    }

    fn fail(&mut self, f: Failure) {
        self.pass = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(f);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RPReport {
    pub space: String,
    pub paranoid: bool,
    pub rp1: AxiomResult,
    pub rp2: AxiomResult,
    pub rp3: AxiomResult,
    pub rp4_attaching: AxiomResult,
    pub rp4_costalk: AxiomResult,
    /// The two forms of RP4 give the same verdict.
    pub rp4_forms_agree: bool,
    pub pass: bool,
}

impl RPReport {
    pub fn axioms(&self) -> [&AxiomResult; 5] {
        [&self.rp1, &self.rp2, &self.rp3, &self.rp4_attaching, &self.rp4_costalk]
    }
}

fn test_points(space: &StratifiedComplex, paranoid: bool) -> Result<BTreeMap<usize, Vec<SimplexId>>> {
    let mut out: BTreeMap<usize, Vec<SimplexId>> = BTreeMap::new();
    for k in space.singular_codims() {
        for c in space.stratum_components(k)? {
            if paranoid {
                out.entry(k).or_default().extend(c.simplices.iter().copied());
            } else {
                out.entry(k).or_default().push(c.base);
            }
        }
    }
    Ok(out)
}

/// Checks the axioms at one test point per stratum component, or at every
/// simplex when `paranoid`.
pub fn check_rp(space: &StratifiedComplex, s: &SheafComplex, paranoid: bool) -> Result<RPReport> {
    if s.region() != &space.full_region() {
        return Err(Error::RegionMismatch("axioms need a complex on the whole space".into()));
    }
    let n = space.dim();
    let fmt = |x| space.format_simplex(x);
    let points = test_points(space, paranoid)?;

    let mut rp1 = AxiomResult::new("RP1");
    let regular: Vec<SimplexId> = (0..space.len()).filter(|&x| space.is_regular(x)).collect();
    let mut generator = vec![None; space.len()];
    for &x in &regular {
        rp1.checked += 1;
        let h = s.stalk_cohomology(x);
        if h.get(0) != 1 || h.total() != 1 {
            rp1.fail(Failure { simplex: fmt(x), degree: 0, dim: h.get(0), detail: format!("stalk cohomology {:?}", h) });
        } else {
            generator[x] = Some(s.stalk(x).cohomology_at(0));
        }
    }
    // transport of H^0 along regular face relations, and its monodromy
    let mut frame: Vec<Option<Rational>> = vec![None; space.len()];
    for &start in &regular {
        if frame[start].is_some() || generator[start].is_none() {
            continue;
        }
        frame[start] = Some(q(1));
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let mut nbrs: Vec<(SimplexId, bool)> = space.cofacets(a).iter().map(|&b| (b, true)).collect();
            nbrs.extend(space.facets(a).iter().map(|&b| (b, false)));
            for (b, up) in nbrs {
                if !space.is_regular(b) || generator[b].is_none() {
                    continue;
                }
                let (lo, hi) = if up { (a, b) } else { (b, a) };
                let (gl, gh) = (generator[lo].as_ref().unwrap(), generator[hi].as_ref().unwrap());
                let t = gh.proj.mul(&s.restriction(lo, hi, 0)).mul(&gl.reps).get(0, 0);
                if t == q(0) {
                    if up {
                        rp1.fail(Failure { simplex: fmt(a), degree: 0, dim: 0, detail: format!("restriction to {} is zero on H^0", fmt(b)) });
                    }
                    continue;
                }
                let fa = frame[a].clone().unwrap();
                let want = if up { &fa * &t } else { &fa / &t };
                match &frame[b] {
                    None => {
                        frame[b] = Some(want);
                        queue.push_back(b);
                    }
                    Some(f) if *f != want => {
                        rp1.fail(Failure { simplex: fmt(b), degree: 0, dim: 1, detail: "nontrivial monodromy of H^0".into() });
                    }
                    _ => {}
                }
            }
        }
    }

    let mut rp2 = AxiomResult::new("RP2");
    let mut rp3 = AxiomResult::new("RP3");
    let all: Vec<SimplexId> = if paranoid { (0..space.len()).collect() } else { points.values().flatten().copied().collect() };
    for &x in &all {
        let h = s.stalk_cohomology(x);
        rp2.checked += 1;
        for (j, d) in h.iter() {
            if j < 0 {
                rp2.fail(Failure { simplex: fmt(x), degree: j, dim: d, detail: "cohomology in negative degree".into() });
            }
        }
        if !space.is_regular(x) {
            let k = space.codim(x);
            let bound = upper_middle(k)?;
            rp3.checked += 1;
            for (j, d) in h.iter() {
                if j > bound {
                    rp3.fail(Failure { simplex: fmt(x), degree: j, dim: d, detail: format!("cohomology above n̄({k}) = {bound}") });
                }
            }
        }
    }

    let mut att = AxiomResult::new("RP4-attaching");
    let mut cos = AxiomResult::new("RP4-costalk");
    for (&k, xs) in &points {
        let a = Attaching::new(space, s, k)?;
        let m = lower_middle(k)?;
        let lo = s.lo().min(0);
        for &x in xs {
            att.checked += 1;
            for j in lo..=m {
                let src = s.stalk(x).cohomology_at(j).dim();
                let tgt = a.pushed.stalk(x).cohomology_at(j).dim();
                let r = rank(&a.on_cohomology(x, j));
                if src != tgt || r != src {
                    att.fail(Failure {
                        simplex: fmt(x),
                        degree: j,
                        dim: tgt,
                        detail: format!("attaching map H^{j}: {src} → {tgt} has rank {r}"),
                    });
                }
            }
            cos.checked += 1;
            let bound = m + (n - k) as i32 + 1;
            for (l, d) in costalk_cohomology(space, s, x)?.iter() {
                if l <= bound {
                    cos.fail(Failure { simplex: fmt(x), degree: l, dim: d, detail: format!("costalk in degree {l} ≤ {bound}") });
                }
            }
        }
    }

    let agree = att.pass == cos.pass;
    let pass = rp1.pass && rp2.pass && rp3.pass && att.pass && cos.pass;
    Ok(RPReport {
        space: space.name().to_string(),
        paranoid,
        rp1,
        rp2,
        rp3,
        rp4_attaching: att,
        rp4_costalk: cos,
        rp4_forms_agree: agree,
        pass,
    })
}
