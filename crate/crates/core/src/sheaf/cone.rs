use super::{SheafComplex, SheafMorphism};
use crate::complex::StratifiedComplex;
use crate::error::{Error, Result};
use crate::linalg::{q, CochainComplex, RationalMatrix};

/// Mapping cone: `C^j = A^{j+1} ⊕ B^j`, `d(a, b) = (−da, f a + db)`.
pub fn cone_of(space: &StratifiedComplex, f: &SheafMorphism, a: &SheafComplex, b: &SheafComplex) -> Result<SheafComplex> {
    if a.region() != b.region() {
        return Err(Error::RegionMismatch("cone of a morphism between different regions".into()));
    }
    let lo = (a.lo() - 1).min(b.lo());
    let hi = (a.hi() - 1).max(b.hi()).max(lo);
    let len = (hi - lo) as usize;
    let minus = q(-1);
    let mut stalks = vec![None; space.len()];
    let mut restrictions = vec![Vec::new(); space.len()];
    for s in a.region().members() {
        let (sa, sb) = (a.stalk(s), b.stalk(s));
        let dims: Vec<usize> = (lo..hi).map(|j| sa.dim(j + 1) + sb.dim(j)).collect();
        let diffs = (lo..hi - 1)
            .map(|j| {
                let top = RationalMatrix::hstack(&[&sa.d(j + 1).scale(&minus), &RationalMatrix::zeros(sa.dim(j + 2), sb.dim(j))]);
                let bottom = RationalMatrix::hstack(&[&f.component(a, b, s, j + 1), &sb.d(j)]);
                RationalMatrix::vstack(&[&top, &bottom])
            })
            .collect();
        stalks[s] = Some(CochainComplex::new_unchecked(lo, dims, diffs)?);
        restrictions[s] = space
            .cofacets(s)
            .iter()
            .map(|&t| {
                let maps = (lo..hi)
                    .map(|j| {
                        let ra = a.restriction(s, t, j + 1);
                        let rb = b.restriction(s, t, j);
                        let top = RationalMatrix::hstack(&[&ra, &RationalMatrix::zeros(ra.nrows(), rb.ncols())]);
                        let bottom = RationalMatrix::hstack(&[&RationalMatrix::zeros(rb.nrows(), ra.ncols()), &rb]);
                        RationalMatrix::vstack(&[&top, &bottom])
                    })
                    .collect();
                (t, maps)
            })
            .collect();
    }
    Ok(SheafComplex::new_unchecked(a.region().clone(), lo, len, stalks, restrictions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::example;
    use crate::sheaf::constant_sheaf;

    #[test]
    fn cone_of_identity_and_zero() {
        let x = example("susp_t2").unwrap();
        let f = constant_sheaf(&x, &x.full_region());
        let c = cone_of(&x, &SheafMorphism::identity(&f), &f, &f).unwrap();
        c.verify(&x).unwrap();
        for s in 0..x.len() {
            assert!(c.stalk_cohomology(s).is_zero());
        }
        let z = cone_of(&x, &SheafMorphism::zero(&f, &f), &f, &f).unwrap();
        z.verify(&x).unwrap();
        for s in 0..x.len() {
            let h = z.stalk_cohomology(s);
            assert_eq!((h.get(-1), h.get(0)), (1, 1));
        }
    }
}
