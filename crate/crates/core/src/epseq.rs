//! Eventually periodic integer sequences on ℕ.
//!
//! An [`EpSeq`] is a finite prefix followed by a repeating period. Values are
//! kept in a canonical form (minimal period, then minimal prefix), so derived
//! equality is equality of sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeqError;

/// Bound on the common period of any aligned operation.
pub const DEFAULT_PERIOD_LIMIT: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSeq", into = "RawSeq")]
pub struct EpSeq {
    prefix: Vec<BigInt>,
    period: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeq {
    #[serde(with = "crate::num_serde::vec")]
    prefix: Vec<BigInt>,
    #[serde(with = "crate::num_serde::vec")]
    period: Vec<BigInt>,
}

impl TryFrom<RawSeq> for EpSeq {
    type Error = SeqError;

    fn try_from(raw: RawSeq) -> Result<Self, SeqError> {
        EpSeq::new(raw.prefix, raw.period)
    }
}

impl From<EpSeq> for RawSeq {
    fn from(s: EpSeq) -> Self {
        RawSeq {
            prefix: s.prefix,
            period: s.period,
        }
    }
}

/// Common prefix length and period for a family of sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alignment {
    pub prefix: usize,
    pub period: usize,
}

impl Alignment {
    /// Number of indices that determine every aligned sequence.
    pub fn horizon(&self) -> usize {
        self.prefix + self.period
    }
}

/// Smallest alignment covering every sequence, or an error if the lcm of the
/// periods exceeds `limit`.
pub fn alignment<'a, I>(seqs: I, limit: usize) -> Result<Alignment, SeqError>
where
    I: IntoIterator<Item = &'a EpSeq>,
{
    let mut prefix = 0;
    let mut period = 1usize;
    for s in seqs {
        prefix = prefix.max(s.prefix.len());
        period = checked_lcm(period, s.period.len(), limit)?;
    }
    Ok(Alignment { prefix, period })
}

pub(crate) fn checked_lcm(a: usize, b: usize, limit: usize) -> Result<usize, SeqError> {
    let l = (a as u128 / a.gcd(&b) as u128) * b as u128;
    if l > limit as u128 {
        return Err(SeqError::PeriodLimit { needed: l, limit });
    }
    Ok(l as usize)
}

/// Finite-support information for a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportData {
    pub finitely_supported: bool,
    pub total_sum: Option<BigInt>,
    pub support: Option<Vec<usize>>,
}

impl EpSeq {
    /// Canonical sequence with the given prefix and period.
    pub fn new(prefix: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        Ok(canonicalize(prefix, period))
    }

    pub fn from_ints(prefix: &[i64], period: &[i64]) -> Result<Self, SeqError> {
        Self::new(
            prefix.iter().map(|&x| BigInt::from(x)).collect(),
            period.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        EpSeq {
            prefix: Vec::new(),
            period: vec![c.into()],
        }
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// Indicator of the single index `i`.
    pub fn delta(i: usize) -> Self {
        Self::finite(
            vec![BigInt::zero(); i]
                .into_iter()
                .chain([BigInt::one()])
                .collect(),
        )
    }

    /// Finitely supported sequence with the given leading values, zero afterwards.
    pub fn finite(values: Vec<BigInt>) -> Self {
        canonicalize(values, vec![BigInt::zero()])
    }

    /// Indicator of `{i : i ≡ residue mod modulus}`.
    pub fn residue_indicator(residue: usize, modulus: usize) -> Self {
        assert!(modulus > 0 && residue < modulus);
        let period = (0..modulus)
            .map(|i| BigInt::from(u8::from(i == residue)))
            .collect();
        canonicalize(Vec::new(), period)
    }

    pub fn prefix(&self) -> &[BigInt] {
        &self.prefix
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn eval(&self, i: usize) -> &BigInt {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.period.len() == 1 && self.period[0].is_zero()
    }

    /// Every value is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.prefix
            .iter()
            .chain(&self.period)
            .all(|x| x.is_zero() || x.is_one())
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.period.len() == 1 && self.period[0].is_zero()
    }

    /// Values over `prefix + period` indices of the given alignment.
    ///
    /// Panics if the alignment does not cover this sequence.
    pub fn aligned(&self, al: Alignment) -> Vec<BigInt> {
        assert!(al.prefix >= self.prefix.len() && al.period.is_multiple_of(self.period.len()));
        (0..al.horizon()).map(|i| self.eval(i).clone()).collect()
    }

    /// Inverse of [`EpSeq::aligned`].
    pub fn from_aligned(mut values: Vec<BigInt>, prefix_len: usize) -> Result<Self, SeqError> {
        let period = values.split_off(prefix_len.min(values.len()));
        Self::new(values, period)
    }

    /// Builds the sequence by evaluating `f` over one aligned horizon.
    pub fn from_fn(al: Alignment, f: impl FnMut(usize) -> BigInt) -> Result<Self, SeqError> {
        Self::from_aligned((0..al.horizon()).map(f).collect(), al.prefix)
    }

    fn zip_with(
        &self,
        other: &EpSeq,
        limit: usize,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<EpSeq, SeqError> {
        let al = alignment([self, other], limit)?;
        Self::from_fn(al, |i| op(self.eval(i), other.eval(i)))
    }

    pub fn add(&self, other: &EpSeq) -> Result<EpSeq, SeqError> {
        self.add_with_limit(other, DEFAULT_PERIOD_LIMIT)
    }

    pub fn add_with_limit(&self, other: &EpSeq, limit: usize) -> Result<EpSeq, SeqError> {
        self.zip_with(other, limit, |a, b| a + b)
    }

    pub fn sub(&self, other: &EpSeq) -> Result<EpSeq, SeqError> {
        self.sub_with_limit(other, DEFAULT_PERIOD_LIMIT)
    }

    pub fn sub_with_limit(&self, other: &EpSeq, limit: usize) -> Result<EpSeq, SeqError> {
        self.zip_with(other, limit, |a, b| a - b)
    }

    pub fn multiply(&self, other: &EpSeq) -> Result<EpSeq, SeqError> {
        self.multiply_with_limit(other, DEFAULT_PERIOD_LIMIT)
    }

    pub fn multiply_with_limit(&self, other: &EpSeq, limit: usize) -> Result<EpSeq, SeqError> {
        self.zip_with(other, limit, |a, b| a * b)
    }

    pub fn scale(&self, k: &BigInt) -> EpSeq {
        canonicalize(
            self.prefix.iter().map(|x| x * k).collect(),
            self.period.iter().map(|x| x * k).collect(),
        )
    }

    /// `1 - self`.
    pub fn complement(&self) -> EpSeq {
        canonicalize(
            self.prefix.iter().map(|x| BigInt::one() - x).collect(),
            self.period.iter().map(|x| BigInt::one() - x).collect(),
        )
    }

    /// `Σ coeffs[k] · seqs[k]`, aligned once.
    pub fn combination(
        coeffs: &[BigInt],
        seqs: &[&EpSeq],
        limit: usize,
    ) -> Result<EpSeq, SeqError> {
        assert_eq!(coeffs.len(), seqs.len());
        let al = alignment(seqs.iter().copied(), limit)?;
        Self::from_fn(al, |i| {
            coeffs
                .iter()
                .zip(seqs)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, s)| c * s.eval(i))
                .sum()
        })
    }

    pub fn finite_support_data(&self) -> SupportData {
        if !self.is_finitely_supported() {
            return SupportData {
                finitely_supported: false,
                total_sum: None,
                support: None,
            };
        }
        SupportData {
            finitely_supported: true,
            total_sum: Some(self.prefix.iter().sum()),
            support: Some(
                self.prefix
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, _)| i)
                    .collect(),
            ),
        }
    }

    pub fn total_sum(&self) -> Result<BigInt, SeqError> {
        self.finite_support_data()
            .total_sum
            .ok_or(SeqError::NotFinitelySupported)
    }

    pub fn support(&self) -> Result<Vec<usize>, SeqError> {
        self.finite_support_data()
            .support
            .ok_or(SeqError::NotFinitelySupported)
    }

    /// `Σ_{i : mask(i) = 1} self(i)` for finitely supported `self` and 0-1 `mask`.
    pub fn masked_sum(&self, mask: &EpSeq) -> Result<BigInt, SeqError> {
        if !self.is_finitely_supported() {
            return Err(SeqError::NotFinitelySupported);
        }
        if !mask.is_binary() {
            return Err(SeqError::MaskNotBinary);
        }
        Ok(self
            .prefix
            .iter()
            .enumerate()
            .filter(|(i, _)| mask.eval(*i).is_one())
            .map(|(_, x)| x)
            .sum())
    }
}

/// Minimal period first, then roll the prefix back into the period while its
/// last entry matches the period's last entry.
fn canonicalize(mut prefix: Vec<BigInt>, mut period: Vec<BigInt>) -> EpSeq {
    let p = period.len();
    if let Some(d) =
        (1..p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| period[i] == period[i - d]))
    {
        period.truncate(d);
    }
    while let (Some(last), Some(tail)) = (prefix.last(), period.last()) {
        if last != tail {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    EpSeq { prefix, period }
}

fn render(values: &[BigInt]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `prefix|period`, e.g. `[1,0]|[0]`.
impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", render(&self.prefix), render(&self.period))
    }
}

impl fmt::Debug for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpSeq({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed sequence literal: {0}")]
pub struct ParseSeqError(String);

impl FromStr for EpSeq {
    type Err = ParseSeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSeqError(s.to_string());
        let (a, b) = s.split_once('|').ok_or_else(err)?;
        let list = |t: &str| -> Result<Vec<BigInt>, ParseSeqError> {
            let inner = t
                .trim()
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(err)?;
            if inner.trim().is_empty() {
                return Ok(Vec::new());
            }
            inner
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| err()))
                .collect()
        };
        EpSeq::new(list(a)?, list(b)?).map_err(|_| err())
    }
}
