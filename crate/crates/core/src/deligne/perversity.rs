use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `m̄(k) = ⌊(k−2)/2⌋`.
pub fn lower_middle(k: usize) -> Result<i32> {
    if k < 2 {
        return Err(Error::PerversityRange(k));
    }
    Ok(((k - 2) / 2) as i32)
}

/// `n̄(k) = ⌊(k−1)/2⌋`.
pub fn upper_middle(k: usize) -> Result<i32> {
    if k < 2 {
        return Err(Error::PerversityRange(k));
    }
    Ok(((k - 1) / 2) as i32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Perversity {
    Lower,
    Upper,
    /// Values `p̄(k)` for `2 ≤ k ≤ n`.
    Custom(BTreeMap<usize, i32>),
}

impl Perversity {
    pub fn value(&self, k: usize) -> Result<i32> {
        match self {
            Perversity::Lower => lower_middle(k),
            Perversity::Upper => upper_middle(k),
            Perversity::Custom(v) => v.get(&k).copied().ok_or_else(|| Error::InvalidPerversity(format!("no value for k = {k}"))),
        }
    }

    /// Goresky–MacPherson conditions `p̄(2) = 0`, `p̄(k) ≤ p̄(k+1) ≤ p̄(k) + 1` on `2..=n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Ok(());
        }
        if self.value(2)? != 0 {
            return Err(Error::InvalidPerversity("p(2) must be 0".into()));
        }
        for k in 2..n {
            let (a, b) = (self.value(k)?, self.value(k + 1)?);
            if b < a || b > a + 1 {
                return Err(Error::InvalidPerversity(format!("p({k}) = {a}, p({}) = {b} violates the growth condition", k + 1)));
            }
        }
        Ok(())
    }

    /// Parses `{"2": 0, "3": 1, …}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, i32> = serde_json::from_str(text).map_err(|e| Error::InvalidPerversity(e.to_string()))?;
        let mut v = BTreeMap::new();
        for (k, p) in raw {
            let k: usize = k.parse().map_err(|_| Error::InvalidPerversity(format!("bad codimension `{k}`")))?;
            v.insert(k, p);
        }
        Ok(Perversity::Custom(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_perversities() {
        assert_eq!((lower_middle(2).unwrap(), upper_middle(2).unwrap()), (0, 0));
        assert_eq!((lower_middle(3).unwrap(), upper_middle(3).unwrap()), (0, 1));
        assert_eq!((lower_middle(5).unwrap(), upper_middle(5).unwrap()), (1, 2));
        for k in 2..40 {
            let (m, n) = (lower_middle(k).unwrap(), upper_middle(k).unwrap());
            assert_eq!(m + n, k as i32 - 2);
            if k % 2 == 0 {
                assert_eq!(m, n);
            } else {
                assert_eq!(n, m + 1);
                assert_eq!(n, (k as i32 - 1) / 2);
            }
        }
        assert!(lower_middle(1).is_err());
        Perversity::Lower.validate(9).unwrap();
        Perversity::Upper.validate(9).unwrap();
        assert!(Perversity::from_json(r#"{"2":0,"3":2}"#).unwrap().validate(3).is_err());
    }
}
