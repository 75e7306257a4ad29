use std::collections::VecDeque;

use serde::Serialize;

use super::{SimplexId, StratifiedComplex};
use crate::error::{Error, Result};

/// A connected component of the open stratum of codimension `codim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumComponent {
    pub id: String,
    pub codim: usize,
    /// Simplices of the component, ascending.
    pub simplices: Vec<SimplexId>,
    /// Face relations `(σ, τ)` with `σ` a facet of `τ`, both in the component.
    pub edges: Vec<(SimplexId, SimplexId)>,
    /// Lexicographically least top-dimensional simplex.
    pub base: SimplexId,
}

impl StratumComponent {
    /// Spanning-tree edges from the base simplex (breadth first, least
    /// neighbour first) and the remaining edges, which close the generating
    /// loops.
    pub fn spanning_tree(&self) -> (Vec<(SimplexId, SimplexId)>, Vec<(SimplexId, SimplexId)>) {
        let pos = |s: SimplexId| self.simplices.binary_search(&s).unwrap();
        let mut adj = vec![Vec::new(); self.simplices.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[pos(a)].push((b, e));
            adj[pos(b)].push((a, e));
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let mut seen = vec![false; self.simplices.len()];
        let mut used = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([self.base]);
        seen[pos(self.base)] = true;
        while let Some(s) = queue.pop_front() {
            for &(t, e) in &adj[pos(s)] {
                if !seen[pos(t)] {
                    seen[pos(t)] = true;
                    used[e] = true;
                    queue.push_back(t);
                }
            }
        }
        let (tree, rest): (Vec<_>, Vec<_>) = self.edges.iter().enumerate().partition(|(e, _)| used[*e]);
        (tree.into_iter().map(|(_, &e)| e).collect(), rest.into_iter().map(|(_, &e)| e).collect())
    }
}

impl StratifiedComplex {
    /// Connected components of the open stratum of codimension `k`.
    pub fn stratum_components(&self, k: usize) -> Result<Vec<StratumComponent>> {
        if k < 2 || k > self.dim() {
            return Err(Error::CodimensionRange { k, n: self.dim() });
        }
        let level = self.dim() - k;
        let members: Vec<SimplexId> = (0..self.len()).filter(|&i| self.level(i) == level).collect();
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for &start in &members {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut simplices = Vec::new();
            let mut stack = vec![start];
            comp[start] = c;
            while let Some(s) = stack.pop() {
                simplices.push(s);
                for &t in self.facets(s).iter().chain(self.cofacets(s)) {
                    if self.level(t) == level && comp[t] == usize::MAX {
                        comp[t] = c;
                        stack.push(t);
                    }
                }
            }
            simplices.sort_unstable();
            let mut edges = Vec::new();
            for &s in &simplices {
                for &t in self.cofacets(s) {
                    if comp[t] == c {
                        edges.push((s, t));
                    }
                }
            }
            let top = simplices.iter().map(|&s| self.simplex_dim(s)).max().unwrap();
            let base = simplices.iter().copied().filter(|&s| self.simplex_dim(s) == top).min().unwrap();
            out.push(StratumComponent { id: format!("k{k}-c{c}"), codim: k, simplices, edges, base });
        }
        Ok(out)
    }

    /// Components of every nonempty singular stratum, by ascending codimension.
    pub fn all_stratum_components(&self) -> Vec<StratumComponent> {
        self.singular_codims().into_iter().flat_map(|k| self.stratum_components(k).unwrap()).collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::complex::example;

    #[test]
    fn suspension_poles() {
        let x = example("susp_t2").unwrap();
        let c = x.stratum_components(3).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.simplices.len() == 1 && c.edges.is_empty()));
        assert_eq!(c[0].id, "k3-c0");
        assert!(x.stratum_components(2).unwrap().is_empty());
        let s2 = example("s2").unwrap();
        assert!(s2.singular_codims().is_empty());
    }
}
