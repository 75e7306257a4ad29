//! The attaching map `S → R i_{k*} i_k^* S` over `U_{k+1}`.

use crate::complex::{SimplexId, StratifiedComplex};
use crate::error::Result;
use crate::linalg::RationalMatrix;
use crate::sheaf::{InjectiveModel, SheafComplex, SheafMorphism};

pub struct Attaching<'a> {
    space: &'a StratifiedComplex,
    sheaf: &'a SheafComplex,
    /// `i_k^* S`, widened to the model window.
    source: SheafComplex,
    pub model: InjectiveModel,
    /// `R i_{k*} i_k^* S` on `U_{k+1}`.
    pub pushed: SheafComplex,
    qi: SheafMorphism,
}

impl<'a> Attaching<'a> {
    pub fn new(space: &'a StratifiedComplex, sheaf: &'a SheafComplex, k: usize) -> Result<Self> {
        let restricted = sheaf.restrict_to(&space.open_region(k)?)?;
        let model = InjectiveModel::build(space, &restricted)?;
        let pushed = model.to_sheaf(space, &space.open_region(k + 1)?)?;
        let qi = model.quasi_isomorphism(&restricted);
        let source = restricted.widen(model.lo(), model.hi());
        Ok(Attaching { space, sheaf, source, model, pushed, qi })
    }

    /// The chain map `S(x)^j → (R i_* i^* S)(x)^j`: on the summand `V_σ`
    /// it is the `V_σ` part of the quasi-isomorphism after restricting to `σ`.
    pub fn unit_at(&self, x: SimplexId, j: i32) -> RationalMatrix {
        let region = self.model.region();
        let mut blocks = Vec::new();
        for s in self.space.cofaces(x) {
            if !region.contains(s) {
                continue;
            }
            let v = self.model.label(s).get(j);
            let phi = self.qi.component(&self.source, &self.pushed, s, j);
            let head = phi.select_rows(&(0..v).collect::<Vec<_>>());
            blocks.push(head.mul(&self.sheaf.restriction_composite(self.space, x, s, j)));
        }
        if blocks.is_empty() {
            return RationalMatrix::zeros(0, self.sheaf.stalk_dim(x, j));
        }
        RationalMatrix::vstack(&blocks.iter().collect::<Vec<_>>())
    }

    /// The unit on `H^j` at `x`, in cohomology bases.
    pub fn on_cohomology(&self, x: SimplexId, j: i32) -> RationalMatrix {
        let a = self.sheaf.stalk(x).cohomology_at(j);
        let b = self.pushed.stalk(x).cohomology_at(j);
        b.proj.mul(&self.unit_at(x, j)).mul(&a.reps)
    }
}
