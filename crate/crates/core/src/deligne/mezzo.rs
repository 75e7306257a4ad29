//! User-supplied mezzoperversities and the refined Deligne sheaf.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::build::{build_with, DeligneBuild, StageDecision};
use super::perversity::upper_middle;
use crate::complex::StratifiedComplex;
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, Subspace};
use crate::sheaf::Subsheaf;

/// A raw choice for one component.
#[derive(Clone, Debug, PartialEq)]
pub enum ChoiceSpec {
    Zero,
    Full,
    /// Basis row vectors in the stalk basis at the base simplex.
    Rows(Vec<Vec<Rational>>),
}

impl ChoiceSpec {
    pub fn from_subspace(w: &Subspace) -> ChoiceSpec {
        if w.dim() == 0 {
            ChoiceSpec::Zero
        } else if w.dim() == w.ambient() {
            ChoiceSpec::Full
        } else {
            ChoiceSpec::Rows(w.basis_columns())
        }
    }

    fn to_json(&self) -> Value {
        match self {
            ChoiceSpec::Zero => json!("zero"),
            ChoiceSpec::Full => json!("full"),
            ChoiceSpec::Rows(rows) => Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(rational_json).collect())).collect()),
        }
    }
}

fn rational_json(x: &Rational) -> Value {
    if x.is_integer() {
        if let Ok(v) = x.to_integer().to_string().parse::<i64>() {
            return json!(v);
        }
    }
    json!(x.to_string())
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| Error::Malformed(format!("{n} is not an integer; write fractions as \"a/b\""))),
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| Error::Malformed(format!("bad rational {s:?}"))),
        _ => Err(Error::Malformed(format!("expected a rational, got {v}"))),
    }
}

/// `{ "choices": { "<component-id>": "zero" | "full" | [[rational...]...] } }`
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MezzoSpec {
    pub choices: BTreeMap<String, ChoiceSpec>,
}

impl MezzoSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, component: &str, choice: ChoiceSpec) -> Self {
        self.choices.insert(component.to_string(), choice);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let obj = v.as_object().ok_or_else(|| Error::Malformed("mezzoperversity must be an object".into()))?;
        if let Some(k) = obj.keys().find(|k| *k != "choices") {
            return Err(Error::Malformed(format!("unknown field {k:?}")));
        }
        let mut choices = BTreeMap::new();
        let Some(c) = obj.get("choices") else { return Ok(MezzoSpec { choices }) };
        let c = c.as_object().ok_or_else(|| Error::Malformed("\"choices\" must be an object".into()))?;
        for (id, entry) in c {
            let choice = match entry {
                Value::String(s) if s == "zero" => ChoiceSpec::Zero,
                Value::String(s) if s == "full" => ChoiceSpec::Full,
                Value::Array(rows) => ChoiceSpec::Rows(
                    rows.iter()
                        .map(|r| {
                            r.as_array()
                                .ok_or_else(|| Error::Malformed(format!("row of {id} is not an array")))?
                                .iter()
                                .map(parse_rational)
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<_>>()?,
                ),
                other => return Err(Error::Malformed(format!("bad choice for {id}: {other}"))),
            };
            choices.insert(id.clone(), choice);
        }
        Ok(MezzoSpec { choices })
    }

    pub fn to_json(&self) -> Value {
        let c: serde_json::Map<String, Value> = self.choices.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        json!({ "choices": c })
    }
}

/// The validated choice on one non-Witt component.
#[derive(Clone, Debug, Serialize)]
pub struct MezzoEntry {
    pub component: String,
    pub codim: usize,
    pub degree: i32,
    pub stalk_dim: usize,
    #[serde(serialize_with = "ser_subspace")]
    pub subspace: Subspace,
}

fn ser_subspace<S: serde::Serializer>(w: &Subspace, s: S) -> std::result::Result<S::Ok, S::Error> {
    ChoiceSpec::from_subspace(w).to_json().serialize(s)
}

/// A validated mezzoperversity together with the sheaf it determines.
#[derive(Clone, Debug)]
pub struct Mezzoperversity {
    entries: Vec<MezzoEntry>,
    build: Arc<DeligneBuild>,
}

impl Mezzoperversity {
    pub fn entries(&self) -> &[MezzoEntry] {
        &self.entries
    }

    pub fn entry(&self, component: &str) -> Option<&MezzoEntry> {
        self.entries.iter().find(|e| e.component == component)
    }

    pub fn build(&self) -> &Arc<DeligneBuild> {
        &self.build
    }

    pub fn to_spec(&self) -> MezzoSpec {
        MezzoSpec { choices: self.entries.iter().map(|e| (e.component.clone(), ChoiceSpec::from_subspace(&e.subspace))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.subspace.dim() == 0)
    }

    pub fn is_full(&self) -> bool {
        self.entries.iter().all(|e| e.subspace.dim() == e.stalk_dim)
    }
}

/// Checks `spec` against the space, building the refined sheaf stage by
/// stage since deeper stalks depend on earlier choices.
pub fn validate_mezzo(space: &StratifiedComplex, spec: &MezzoSpec) -> Result<Mezzoperversity> {
    let mut used = BTreeSet::new();
    let mut entries = Vec::new();
    let build = build_with(space, |k, comps, systems| {
        let degree = upper_middle(k)?;
        let mut choices = Vec::with_capacity(comps.len());
        for (c, ls) in comps.iter().zip(systems) {
            let given = spec.choices.get(&c.id);
            if given.is_some() {
                used.insert(c.id.clone());
            }
            let Some(ls) = ls else {
                if given.is_some() {
                    return Err(Error::Malformed(format!("{} has even codimension and takes no choice", c.id)));
                }
                choices.push(None);
                continue;
            };
            if ls.dim() == 0 {
                if given.is_some() {
                    return Err(Error::EntryOnWittComponent(c.id.clone()));
                }
                choices.push(None);
                continue;
            }
            let sub = match given.unwrap_or(&ChoiceSpec::Zero) {
                ChoiceSpec::Zero => Subsheaf::zero(ls.clone()),
                ChoiceSpec::Full => Subsheaf::full(ls.clone()),
                ChoiceSpec::Rows(rows) => {
                    if let Some(r) = rows.iter().find(|r| r.len() != ls.dim()) {
                        return Err(Error::WrongStalkDimension { component: c.id.clone(), expected: ls.dim(), got: r.len() });
                    }
                    let basis = RationalMatrix::from_columns(ls.dim(), rows);
                    Subsheaf::new(ls.clone(), &basis)?
                }
            };
            entries.push(MezzoEntry {
                component: c.id.clone(),
                codim: k,
                degree,
                stalk_dim: ls.dim(),
                subspace: sub.subspace().clone(),
            });
            choices.push(Some(sub));
        }
        Ok(StageDecision { degree, choices })
    })?;
    if let Some(k) = spec.choices.keys().find(|k| !used.contains(*k)) {
        return Err(Error::UnknownComponent(k.clone()));
    }
    Ok(Mezzoperversity { entries, build: Arc::new(build) })
}

/// `P(L)`, built during validation.
pub fn build_refined(space: &StratifiedComplex, l: &Mezzoperversity) -> Result<Arc<DeligneBuild>> {
    if !l.build.matches(space) {
        return Err(Error::RegionMismatch(format!("mezzoperversity was validated on {}", l.build.space_name)));
    }
    Ok(l.build.clone())
}

/// Recovers the choice on every non-Witt component from the final complex:
/// the image of `H^{n̄(k)}` of the final stalk at the base simplex in the
/// stalk of `R i_{k*} P_k`, carried back through the later stages.
pub fn extract_mezzo(b: &DeligneBuild) -> Result<BTreeMap<String, Subspace>> {
    let final_sheaf = b.sheaf();
    let mut out = BTreeMap::new();
    for (si, st) in b.stages.iter().enumerate() {
        for (c, ls) in st.components.iter().zip(&st.local_systems) {
            let Some(ls) = ls.as_ref().filter(|l| l.dim() > 0) else { continue };
            let tau = c.base;
            let p = st.degree;
            let top = final_sheaf.stalk(tau).cohomology_at(p);
            let mut m = RationalMatrix::identity(top.dim());
            for later in b.stages[si + 1..].iter().rev() {
                let incl = later.result.inclusion.on_stalk_cohomology(&later.result.sheaf, &later.pushed, tau, p);
                let src = later.source.widen(later.model.lo(), later.model.hi());
                let phi = later.model.quasi_isomorphism(&later.source).on_stalk_cohomology(&src, &later.pushed, tau, p);
                let back = crate::linalg::solve(&phi, &incl.mul(&m))
                    .ok_or_else(|| Error::NotConstructible(format!("{} does not lift through stage {}", c.id, later.k)))?;
                m = back;
            }
            let incl = st.result.inclusion.on_stalk_cohomology(&st.result.sheaf, &st.pushed, tau, p);
            let w = Subspace::column_span(&incl.mul(&m));
            debug_assert_eq!(w.ambient(), ls.dim());
            out.insert(c.id.clone(), w);
        }
    }
    Ok(out)
}
