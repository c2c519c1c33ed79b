use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` in
/// invariant-factor form: every `tᵢ > 1` and `tᵢ | tᵢ₊₁`.
///
/// The form is canonical, so `==` is group isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FgAbelianGroup {
    rank: usize,
    #[serde(with = "crate::num_serde::vec")]
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    /// Rejects torsion lists that are not a divisibility chain of entries > 1.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Option<Self> {
        let valid = torsion.iter().all(|t| t > &BigInt::one())
            && torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        valid.then_some(FgAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// From the nonzero diagonal of a Smith form: signs dropped, unit factors dropped.
    pub fn from_invariant_factors(rank: usize, factors: Vec<BigInt>) -> Self {
        let torsion: Vec<BigInt> = factors
            .into_iter()
            .map(|f| f.abs())
            .filter(|f| f > &BigInt::one())
            .collect();
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        FgAbelianGroup { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// `0`, `Z`, `Z^r`, and torsion summands as `+ Z/d`.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbelianGroup::free(2).to_string(), "Z^2");
        let g = FgAbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(4)]).unwrap();
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
        let g = FgAbelianGroup::new(0, vec![BigInt::from(3)]).unwrap();
        assert_eq!(g.to_string(), "Z/3");
    }

    #[test]
    fn rejects_non_chain() {
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_none());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_none());
    }

    #[test]
    fn drops_units_and_signs() {
        let g = FgAbelianGroup::from_invariant_factors(
            1,
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-6)],
        );
        assert_eq!(g, FgAbelianGroup::new(1, vec![BigInt::from(6)]).unwrap());
    }

    #[test]
    fn json_shape() {
        let g = FgAbelianGroup::new(1, vec![BigInt::from(3)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":1,"torsion":[3]}"#);
        let back: FgAbelianGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
