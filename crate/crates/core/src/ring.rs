//! Additive presentation of the ring generated by the rows and deltas.
//!
//! Every ring element is `Σ cᵢ δᵢ + Σ a_S q_S` where `q_S` is the product of
//! the row patterns indexed by `S`. The only relations are the tail relations:
//! integer vectors `a` for which `Σ a_S q_S` is finitely supported, in which
//! case that combination equals a finite sum of deltas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::epseq::{alignment, Alignment, EpSeq};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, IntMatrix};
use crate::presentation::{InfinitePresentation, MAX_PATTERNS};

/// Coordinate label of a K₀ generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorLabel {
    /// `q_S`, the product of the patterns whose bits are set in the mask.
    Product(u32),
    /// The constant function 1 (unital ring only).
    Unit,
    /// `δᵢ` (finite matrices).
    Delta(usize),
}

impl GeneratorLabel {
    pub fn classes(&self) -> Vec<usize> {
        match *self {
            GeneratorLabel::Product(mask) => (0..32).filter(|k| mask >> k & 1 == 1).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::Product(_) => {
                let ks: Vec<String> = self.classes().iter().map(ToString::to_string).collect();
                write!(f, "q{{{}}}", ks.join(","))
            }
            GeneratorLabel::Unit => write!(f, "1"),
            GeneratorLabel::Delta(i) => write!(f, "d{i}"),
        }
    }
}

impl FromStr for GeneratorLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "1" {
            return Ok(GeneratorLabel::Unit);
        }
        if let Some(i) = s.strip_prefix('d') {
            return i
                .parse()
                .map(GeneratorLabel::Delta)
                .map_err(|e| e.to_string());
        }
        let inner = s
            .strip_prefix("q{")
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| format!("bad generator label {s:?}"))?;
        let mut mask = 0u32;
        for k in inner.split(',') {
            let k: u32 = k
                .parse()
                .map_err(|_| format!("bad generator label {s:?}"))?;
            if k >= 32 {
                return Err(format!("bad generator label {s:?}"));
            }
            mask |= 1 << k;
        }
        Ok(GeneratorLabel::Product(mask))
    }
}

impl Serialize for GeneratorLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// All products `q_S` over nonempty `S`, in ascending bitmask order, with the
/// unit appended in unital mode.
#[derive(Debug, Clone)]
pub struct ProductGenerators {
    labels: Vec<GeneratorLabel>,
    seqs: Vec<EpSeq>,
    alignment: Alignment,
    classes: usize,
}

impl ProductGenerators {
    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn seqs(&self) -> &[EpSeq] {
        &self.seqs
    }

    pub fn alignment(&self) -> Alignment {
        self.alignment
    }

    pub fn is_unital(&self) -> bool {
        self.labels.last() == Some(&GeneratorLabel::Unit)
    }

    /// Coordinate of `q_{k}`.
    pub fn singleton_index(&self, k: usize) -> usize {
        assert!(k < self.classes);
        (1usize << k) - 1
    }

    pub fn index_of_mask(&self, mask: u32) -> usize {
        assert!(mask != 0 && (mask as usize) < (1 << self.classes));
        mask as usize - 1
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.is_unital().then(|| self.seqs.len() - 1)
    }
}

pub fn product_generators(p: &InfinitePresentation, unital: bool) -> Result<ProductGenerators> {
    let m = p.num_classes();
    if m > MAX_PATTERNS {
        return Err(Error::Guard(format!(
            "{m} row patterns exceed the limit of {MAX_PATTERNS}"
        )));
    }
    let limit = p.period_limit();
    let count = (1usize << m) - 1;
    let mut seqs: Vec<EpSeq> = Vec::with_capacity(count + usize::from(unital));
    let mut labels = Vec::with_capacity(count + usize::from(unital));
    for mask in 1..=count {
        let k = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let q = if rest == 0 {
            p.patterns()[k].clone()
        } else {
            seqs[rest - 1].multiply_with_limit(&p.patterns()[k], limit)?
        };
        seqs.push(q);
        labels.push(GeneratorLabel::Product(mask as u32));
    }
    if unital {
        seqs.push(EpSeq::one());
        labels.push(GeneratorLabel::Unit);
    }
    let alignment = alignment(&seqs, limit)?;
    Ok(ProductGenerators {
        labels,
        seqs,
        alignment,
        classes: m,
    })
}

/// Saturated lattice of integer vectors `a` with `Σ a_S q_S` finitely supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailLattice {
    /// One relation per column, indexed like the generators.
    pub basis: IntMatrix,
}

impl TailLattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }
}

pub fn tail_lattice(g: &ProductGenerators) -> TailLattice {
    TailLattice {
        basis: tail_relations(&g.seqs, g.alignment),
    }
}

/// Kernel of the period-tail matrix of `seqs` (one column per sequence).
pub fn tail_relations(seqs: &[EpSeq], al: Alignment) -> IntMatrix {
    let mut tails = IntMatrix::zeros(al.period, seqs.len());
    for (c, s) in seqs.iter().enumerate() {
        for t in 0..al.period {
            tails[(t, c)] = s.eval(al.prefix + t).clone();
        }
    }
    kernel_basis(&tails)
}

/// Finite remainder `h_a = Σ a_S q_S` of a tail relation and its class sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub h: EpSeq,
    pub class_sums: Vec<BigInt>,
}

pub fn correction_and_class_sums(
    g: &ProductGenerators,
    a: &[BigInt],
    indicators: &[EpSeq],
    limit: usize,
) -> Result<Correction> {
    if a.len() != g.len() {
        return Err(Error::Internal(format!(
            "relation has {} coordinates for {} generators",
            a.len(),
            g.len()
        )));
    }
    let refs: Vec<&EpSeq> = g.seqs.iter().collect();
    let h = EpSeq::combination(a, &refs, limit)?;
    if !h.is_finitely_supported() {
        return Err(Error::Internal(format!(
            "tail relation combination {h} is not finitely supported"
        )));
    }
    let class_sums = indicators
        .iter()
        .map(|chi| h.masked_sum(chi))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Correction { h, class_sums })
}
