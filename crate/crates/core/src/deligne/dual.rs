//! Dual mezzoperversities and L-space detection.

use serde::Serialize;

use super::build::build_zero;
use super::mezzo::{validate_mezzo, ChoiceSpec, MezzoSpec, Mezzoperversity};
use super::pairing::{find_component, is_depth_one, link_pairing, LinkPairing};
use crate::complex::StratifiedComplex;
use crate::error::{Error, Result};
use crate::linalg::{lagrangian_search, signature, LagrangianOutcome, Rational, Subspace};

/// `DW = {v : ⟨w, v⟩ = 0 for all w ∈ W}` on every component.
pub fn dual_mezzo(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<Mezzoperversity> {
    let b = l.build();
    let mut spec = MezzoSpec::new();
    for e in l.entries() {
        let (st, ci) = find_component(b, &e.component)?;
        if !is_depth_one(space, &st.components[ci]) {
            return Err(Error::DeepStratum(e.component.clone()));
        }
        let g = link_pairing(space, b, &e.component)?;
        let dw = e.subspace.annihilator(&g.matrix);
        spec.choices.insert(e.component.clone(), ChoiceSpec::from_subspace(&dw));
    }
    validate_mezzo(space, &spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    /// Signature zero but no rational witness found within the bound.
    RealOnly,
    /// The component is not depth one.
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct LSpaceComponent {
    pub component: String,
    pub codim: usize,
    pub stalk_dim: usize,
    pub symmetric: Option<bool>,
    pub signature: Option<(usize, usize)>,
    pub verdict: Verdict,
    /// Basis rows of a rational Lagrangian.
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(skip)]
    pub pairing: Option<LinkPairing>,
    #[serde(skip)]
    pub lagrangian: Option<Subspace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LSpaceReport {
    pub space: String,
    pub components: Vec<LSpaceComponent>,
    pub verdict: Verdict,
}

impl LSpaceReport {
    pub fn is_lspace(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    /// The mezzoperversity choosing the witness on every component.
    pub fn self_dual_spec(&self) -> Option<MezzoSpec> {
        if !self.is_lspace() {
            return None;
        }
        let mut spec = MezzoSpec::new();
        for c in &self.components {
            spec.choices.insert(c.component.clone(), ChoiceSpec::from_subspace(c.lagrangian.as_ref()?));
        }
        Some(spec)
    }
}

fn rows(m: &Subspace) -> Vec<Vec<String>> {
    m.basis_columns().iter().map(|c| c.iter().map(Rational::to_string).collect()).collect()
}

/// Lagrangian existence on the link pairing of every non-Witt component.
pub fn lspace_check(space: &StratifiedComplex, height_bound: u32) -> Result<LSpaceReport> {
    let b = build_zero(space)?;
    let mut components = Vec::new();
    for st in b.stages.iter().filter(|s| s.is_odd()) {
        for (c, ls) in st.components.iter().zip(&st.local_systems) {
            let dim = ls.as_ref().map_or(0, |l| l.dim());
            if dim == 0 {
                continue;
            }
            let mut entry = LSpaceComponent {
                component: c.id.clone(),
                codim: st.k,
                stalk_dim: dim,
                symmetric: None,
                signature: None,
                verdict: Verdict::Unsupported,
                witness: None,
                pairing: None,
                lagrangian: None,
            };
            if is_depth_one(space, c) {
                let g = link_pairing(space, &b, &c.id)?;
                entry.symmetric = Some(g.symmetric);
                if g.symmetric {
                    entry.signature = Some(signature(&g.matrix)?);
                }
                entry.verdict = match lagrangian_search(&g.matrix, height_bound)? {
                    LagrangianOutcome::Found(w) => {
                        let w = Subspace::column_span(&w);
                        entry.witness = Some(rows(&w));
                        entry.lagrangian = Some(w);
                        Verdict::Yes
                    }
                    LagrangianOutcome::NoneExists { .. } => Verdict::No,
                    LagrangianOutcome::RealOnly => Verdict::RealOnly,
                };
                entry.pairing = Some(g);
            }
            components.push(entry);
        }
    }
    let verdict = if components.iter().any(|c| c.verdict == Verdict::No) {
        Verdict::No
    } else if let Some(c) = components.iter().find(|c| c.verdict != Verdict::Yes) {
        c.verdict.clone()
    } else {
        Verdict::Yes
    };
    Ok(LSpaceReport { space: space.name().to_string(), components, verdict })
}
