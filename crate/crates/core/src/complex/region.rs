use super::{SimplexId, StratifiedComplex};
use crate::error::{Error, Result};

/// An open subset of the face poset: an up-closed set of simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    mask: Vec<bool>,
}

impl Region {
    pub(crate) fn from_mask_unchecked(mask: Vec<bool>) -> Self {
        Region { mask }
    }

    pub fn from_mask(space: &StratifiedComplex, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != space.len() {
            return Err(Error::RegionMismatch(format!("mask of length {} for {} simplices", mask.len(), space.len())));
        }
        let r = Region { mask };
        if !r.is_up_closed(space) {
            return Err(Error::RegionMismatch("member set is not up-closed".into()));
        }
        Ok(r)
    }

    pub fn is_up_closed(&self, space: &StratifiedComplex) -> bool {
        (0..self.mask.len()).all(|i| !self.mask[i] || space.cofacets(i).iter().all(|&c| self.mask[c]))
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.mask.get(id).copied().unwrap_or(false)
    }

    pub fn members(&self) -> Vec<SimplexId> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    /// Number of simplices of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.mask.len() == other.mask.len() && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region { mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect() }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}
