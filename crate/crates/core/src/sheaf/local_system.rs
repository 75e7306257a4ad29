//! Locally constant cohomology sheaves along stratum components.

use std::collections::{BTreeMap, VecDeque};

use super::SheafComplex;
use crate::complex::{SimplexId, StratifiedComplex, StratumComponent};
use crate::error::{Error, Result};
use crate::linalg::{inverse, rank, DegreeCohomology, RationalMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct LocalSystem {
    component: StratumComponent,
    degree: i32,
    dim: usize,
    /// Cohomology bases of the stalks, when built from a sheaf complex.
    bases: BTreeMap<SimplexId, DegreeCohomology>,
    /// Transport along each edge `(σ, τ)`, from `σ` to `τ`.
    transports: Vec<RationalMatrix>,
    /// Transport from the base simplex along the spanning tree.
    frames: BTreeMap<SimplexId, RationalMatrix>,
    /// Transport around the loop closed by each non-tree edge.
    monodromy: Vec<RationalMatrix>,
}

impl LocalSystem {
    /// A local system given by invertible transports on the edges of a
    /// component.
    pub fn from_transports(component: StratumComponent, degree: i32, dim: usize, transports: Vec<RationalMatrix>) -> Result<Self> {
        if transports.len() != component.edges.len() {
            return Err(Error::Shape("one transport per adjacency edge".into()));
        }
        for t in &transports {
            if t.nrows() != dim || t.ncols() != dim || rank(t) != dim {
                return Err(Error::NotConstructible(format!("transport on {} is not invertible", component.id)));
            }
        }
        let (tree, rest) = component.spanning_tree();
        let edge_index = |e: &(SimplexId, SimplexId)| component.edges.iter().position(|x| x == e).unwrap();
        let mut frames = BTreeMap::new();
        frames.insert(component.base, RationalMatrix::identity(dim));
        let mut queue = VecDeque::from([component.base]);
        while let Some(s) = queue.pop_front() {
            for e in &tree {
                let m = &transports[edge_index(e)];
                let (a, b) = *e;
                if a == s && !frames.contains_key(&b) {
                    frames.insert(b, m.mul(&frames[&a]));
                    queue.push_back(b);
                } else if b == s && !frames.contains_key(&a) {
                    frames.insert(a, inverse(m).unwrap().mul(&frames[&b]));
                    queue.push_back(a);
                }
            }
        }
        let monodromy = rest
            .iter()
            .map(|e| {
                let m = &transports[edge_index(e)];
                inverse(&frames[&e.1]).unwrap().mul(m).mul(&frames[&e.0])
            })
            .collect();
        Ok(LocalSystem { component, degree, dim, bases: BTreeMap::new(), transports, frames, monodromy })
    }

    pub fn component(&self) -> &StratumComponent {
        &self.component
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Dimension of the stalk at the base simplex.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transports(&self) -> &[RationalMatrix] {
        &self.transports
    }

    pub fn monodromy(&self) -> &[RationalMatrix] {
        &self.monodromy
    }

    /// Transport from the base simplex to `s`.
    pub fn frame(&self, s: SimplexId) -> &RationalMatrix {
        &self.frames[&s]
    }

    pub fn basis_at(&self, s: SimplexId) -> Option<&DegreeCohomology> {
        self.bases.get(&s)
    }

    /// Whether a subspace of the base stalk is preserved by every monodromy matrix.
    pub fn is_invariant(&self, w: &Subspace) -> bool {
        self.monodromy.iter().all(|m| w.image(m) == *w)
    }
}

/// `H^p` of the stalks of `f` along a stratum component, with transports
/// induced by the restriction maps.
pub fn cohomology_local_system(space: &StratifiedComplex, f: &SheafComplex, p: i32, comp: &StratumComponent) -> Result<LocalSystem> {
    let mut bases = BTreeMap::new();
    for &s in &comp.simplices {
        if !f.region().contains(s) {
            return Err(Error::RegionMismatch(format!("{} outside the domain", space.format_simplex(s))));
        }
        bases.insert(s, f.stalk(s).cohomology_at(p));
    }
    let dim = bases[&comp.base].dim();
    let mut transports = Vec::with_capacity(comp.edges.len());
    for &(a, b) in &comp.edges {
        let m = bases[&b].proj.mul(&f.restriction(a, b, p)).mul(&bases[&a].reps);
        if m.nrows() != dim || m.ncols() != dim || rank(&m) != dim {
            return Err(Error::NotConstructible(format!(
                "H^{p} restriction {}→{} is not an isomorphism",
                space.format_simplex(a),
                space.format_simplex(b)
            )));
        }
        transports.push(m);
    }
    let mut ls = LocalSystem::from_transports(comp.clone(), p, dim, transports)?;
    ls.bases = bases;
    Ok(ls)
}

/// A monodromy-invariant subspace of a local system, given at the base simplex.
#[derive(Clone, Debug)]
pub struct Subsheaf {
    parent: LocalSystem,
    subspace: Subspace,
}

impl Subsheaf {
    /// `basis` columns span the subspace in the base stalk basis.
    pub fn new(parent: LocalSystem, basis: &RationalMatrix) -> Result<Self> {
        let id = parent.component.id.clone();
        if basis.nrows() != parent.dim {
            return Err(Error::WrongStalkDimension { component: id, expected: parent.dim, got: basis.nrows() });
        }
        if rank(basis) != basis.ncols() {
            return Err(Error::NotInjective(id));
        }
        let subspace = Subspace::column_span(basis);
        if !parent.is_invariant(&subspace) {
            return Err(Error::NotInvariant(id));
        }
        Ok(Subsheaf { parent, subspace })
    }

    pub fn zero(parent: LocalSystem) -> Self {
        let subspace = Subspace::zero(parent.dim);
        Subsheaf { parent, subspace }
    }

    pub fn full(parent: LocalSystem) -> Self {
        let subspace = Subspace::full(parent.dim);
        Subsheaf { parent, subspace }
    }

    pub fn parent(&self) -> &LocalSystem {
        &self.parent
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// The subspace transported to `s`.
    pub fn at(&self, s: SimplexId) -> Subspace {
        self.subspace.image(self.parent.frame(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    /// A circle of three vertices and three edges as a stratum component.
    fn circle_component() -> StratumComponent {
        // simplices 0,1,2 vertices; 3 = {0,1}, 4 = {0,2}, 5 = {1,2}
        StratumComponent {
            id: "k3-c0".into(),
            codim: 3,
            simplices: vec![0, 1, 2, 3, 4, 5],
            edges: vec![(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)],
            base: 3,
        }
    }

    #[test]
    fn orientation_reversing_monodromy() {
        let flip = RationalMatrix::from_i64(&[&[-1]]);
        let id = RationalMatrix::identity(1);
        let transports = vec![id.clone(), id.clone(), id.clone(), id.clone(), id.clone(), flip];
        let ls = LocalSystem::from_transports(circle_component(), 1, 1, transports).unwrap();
        assert_eq!(ls.monodromy().len(), 1);
        assert_eq!(ls.monodromy()[0], RationalMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn non_invariant_line_is_rejected() {
        let twist = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let id = RationalMatrix::identity(2);
        let transports = vec![id.clone(), id.clone(), id.clone(), id.clone(), id, twist];
        let ls = LocalSystem::from_transports(circle_component(), 1, 2, transports).unwrap();
        let diag = RationalMatrix::from_i64(&[&[1], &[1]]);
        assert!(matches!(Subsheaf::new(ls.clone(), &diag), Err(Error::NotInvariant(_))));
        let axis = RationalMatrix::from_dense(&[vec![q(0)], vec![q(3)]]);
        let w = Subsheaf::new(ls, &axis).unwrap();
        assert_eq!(w.subspace().dim(), 1);
    }
}
