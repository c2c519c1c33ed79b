//! Points at infinity of the column compactification, and unitality.
//!
//! Past every pattern prefix, column `j` depends only on `j` modulo the common
//! pattern period, so the accumulation columns are exactly the distinct
//! residue columns.

use serde::{Deserialize, Serialize};

use crate::epseq::EpSeq;
use crate::error::{Error, Result};
use crate::presentation::{InfinitePresentation, MatrixPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDescription {
    /// Nonzero accumulation columns, in order of first residue.
    pub accumulation_columns: Vec<EpSeq>,
    /// The zero column is an accumulation point.
    pub zero_at_infinity: bool,
    pub unital: bool,
}

/// Distinct residue columns, zero column included if present.
fn residue_columns(p: &InfinitePresentation) -> Vec<EpSeq> {
    let al = p.pattern_alignment();
    let mut out: Vec<EpSeq> = Vec::new();
    for r in 0..al.period {
        let c = p.column(al.prefix + r);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Nonzero columns `c` such that `c_j = c` for infinitely many `j`.
pub fn accumulation_columns(p: &InfinitePresentation) -> Vec<EpSeq> {
    residue_columns(p)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect()
}

/// Product criterion: `∏_k (1 - r_k)` is finitely supported.
pub fn is_unital(p: &InfinitePresentation) -> Result<bool> {
    let mut prod = EpSeq::one();
    for r in p.patterns() {
        prod = prod.multiply_with_limit(&r.complement(), p.period_limit())?;
    }
    Ok(prod.is_finitely_supported())
}

/// Spectrum data, with unitality checked by both criteria.
pub fn gamma_description(p: &InfinitePresentation) -> Result<SpectrumDescription> {
    let columns = residue_columns(p);
    let zero_at_infinity = columns.iter().any(EpSeq::is_zero);
    let unital = is_unital(p)?;
    if unital == zero_at_infinity {
        return Err(Error::Internal(format!(
            "unitality criteria disagree: product criterion says {unital}, \
             zero column at infinity is {zero_at_infinity}"
        )));
    }
    Ok(SpectrumDescription {
        accumulation_columns: columns.into_iter().filter(|c| !c.is_zero()).collect(),
        zero_at_infinity,
        unital,
    })
}

/// A finite index set is already compact: no points at infinity, always unital.
pub fn describe(p: &MatrixPresentation) -> Result<SpectrumDescription> {
    match p {
        MatrixPresentation::Finite(_) => Ok(SpectrumDescription {
            accumulation_columns: Vec::new(),
            zero_at_infinity: false,
            unital: true,
        }),
        MatrixPresentation::Infinite(p) => gamma_description(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq::from_ints(prefix, period).unwrap()
    }

    #[test]
    fn all_ones() {
        let p = InfinitePresentation::new(vec![EpSeq::one()], EpSeq::zero()).unwrap();
        let d = gamma_description(&p).unwrap();
        assert_eq!(d.accumulation_columns, vec![EpSeq::one()]);
        assert!(!d.zero_at_infinity);
        assert!(d.unital);
    }

    #[test]
    fn checkerboard() {
        let p = InfinitePresentation::new(
            vec![seq(&[], &[0, 1]), seq(&[], &[1, 0])],
            seq(&[], &[0, 1]),
        )
        .unwrap();
        let d = gamma_description(&p).unwrap();
        assert_eq!(
            d.accumulation_columns,
            vec![
                EpSeq::residue_indicator(1, 2),
                EpSeq::residue_indicator(0, 2)
            ]
        );
        assert!(d.unital);
    }

    #[test]
    fn row_finite_has_only_zero_column() {
        let p = InfinitePresentation::new(vec![seq(&[1, 1], &[0])], EpSeq::zero()).unwrap();
        let d = gamma_description(&p).unwrap();
        assert!(d.accumulation_columns.is_empty());
        assert!(d.zero_at_infinity);
        assert!(!d.unital);
        assert!(!is_unital(&p).unwrap());
    }

    #[test]
    fn partially_covered_tail_is_not_unital() {
        // rows cover only residues 0 mod 3 in the tail
        let p = InfinitePresentation::new(
            vec![EpSeq::residue_indicator(0, 3), seq(&[0, 1], &[0])],
            seq(&[1], &[0]),
        )
        .unwrap();
        let d = gamma_description(&p).unwrap();
        assert!(!d.unital);
        assert_eq!(d.accumulation_columns.len(), 1);
    }
}
