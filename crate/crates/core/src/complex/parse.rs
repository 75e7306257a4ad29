use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::StratifiedComplex;
use crate::error::{Error, Result};

/// JSON input format. Filtration key `d` lists the maximal simplices of
/// `X_d`; omitted keys inherit from the next lower key.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub name: String,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default)]
    pub filtration: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_space(text: &str) -> Result<StratifiedComplex> {
    let doc: SpaceDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    doc.build()
}

impl SpaceDocument {
    pub fn build(&self) -> Result<StratifiedComplex> {
        let mut pos: HashMap<&str, usize> = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if pos.insert(v.as_str(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate vertex `{v}`")));
            }
        }
        let resolve = |s: &Vec<String>| -> Result<Vec<usize>> {
            let mut out = Vec::with_capacity(s.len());
            for v in s {
                out.push(*pos.get(v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))?);
            }
            if out.is_empty() {
                return Err(Error::Malformed("empty simplex".into()));
            }
            Ok(out)
        };
        let maximal = self.maximal_simplices.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        if maximal.is_empty() {
            return Err(Error::Malformed("no simplices".into()));
        }
        let n = maximal.iter().map(|s| s.len() - 1).max().unwrap();
        let mut keyed: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for (k, list) in &self.filtration {
            let d: usize = k.parse().map_err(|_| Error::Malformed(format!("filtration key `{k}` is not a dimension")))?;
            if d >= n {
                return Err(Error::Malformed(format!("filtration key {d} must be below the dimension {n}")));
            }
            keyed.insert(d, list.iter().map(resolve).collect::<Result<Vec<_>>>()?);
        }
        // X_d as sets of sorted simplices (closure of the listed maxima)
        let mut skeleta: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for d in 0..n.saturating_sub(1) {
            let listed = keyed.range(..=d).next_back().map(|(_, l)| l.clone()).unwrap_or_default();
            let mut set = std::collections::BTreeSet::new();
            for m in listed {
                let mut s = m.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() - 1 > d {
                    let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
                    return Err(Error::FiltrationDimension { key: d, dim: s.len() - 1, simplex: format!("{{{}}}", names.join(",")) });
                }
                let k = s.len();
                for mask in 1u64..(1u64 << k) {
                    set.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Vec<_>>());
                }
            }
            skeleta.push(set);
        }
        for d in 1..skeleta.len() {
            if !skeleta[d - 1].is_subset(&skeleta[d]) {
                return Err(Error::NotNested { lower: d - 1, upper: d });
            }
        }
        if n >= 2 {
            if let Some(top) = keyed.get(&(n - 1)) {
                let mut set = std::collections::BTreeSet::new();
                for m in top {
                    let mut s = m.clone();
                    s.sort_unstable();
                    let k = s.len();
                    for mask in 1u64..(1u64 << k) {
                        set.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Vec<_>>());
                    }
                }
                if set != skeleta[n - 2] {
                    return Err(Error::CodimensionOneStratum);
                }
            }
        } else if !keyed.is_empty() {
            return Err(Error::CodimensionOneStratum);
        }
        let space = StratifiedComplex::from_levels(&self.name, self.vertices.clone(), &maximal, |s| {
            skeleta.iter().position(|x| x.contains(s)).unwrap_or(n)
        })?;
        for (d, set) in skeleta.iter().enumerate() {
            if let Some(s) = set.iter().find(|s| space.id_of(s).is_none()) {
                let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
                return Err(Error::NotASimplex(format!("{{{}}} (listed in X_{d})", names.join(","))));
            }
        }
        space.validate()?;
        Ok(space)
    }
}

impl StratifiedComplex {
    /// The input document describing this space.
    pub fn to_document(&self) -> SpaceDocument {
        let names = |id| self.simplex(id).iter().map(|&v| self.vertices()[v].clone()).collect::<Vec<_>>();
        let maximal = self.facets_top().map(names).collect();
        let mut filtration = BTreeMap::new();
        let mut prev: Option<Vec<usize>> = None;
        for d in 0..self.dim().saturating_sub(1) {
            let m = self.skeleton_maximal(d);
            if prev.as_ref() != Some(&m) && !(prev.is_none() && m.is_empty()) {
                filtration.insert(d.to_string(), m.iter().map(|&i| names(i)).collect());
            }
            prev = Some(m);
        }
        SpaceDocument { name: self.name().to_string(), vertices: self.vertices().to_vec(), maximal_simplices: maximal, filtration }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }
}
