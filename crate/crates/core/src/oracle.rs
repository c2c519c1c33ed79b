//! Brute-force cross-checks of the K-theory engine.
//!
//! The oracle only evaluates matrix entries and uses the sequence layer; it
//! never touches the product-generator reduction. Kernels are computed on
//! finite support slabs `[0, N)` and image membership is solved directly as a
//! finite linear system, which eventual periodicity makes exact.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::epseq::{alignment, EpSeq};
use crate::error::{Error, Result, ValidationError};
use crate::ktheory::{k0_presentation, k1_infinite, k_groups_finite};
use crate::linalg::{kernel_basis, lattice_contains, same_lattice, solve_linear, IntMatrix};
use crate::par;
use crate::presentation::{FiniteMatrix, InfinitePresentation, MatrixPresentation};
use crate::ring::product_generators;

/// Basis (as columns of length `min(N, size)`) of the kernel of `I - Aᵀ`
/// restricted to functions supported in `[0, N)`.
pub fn slab_kernel(p: &MatrixPresentation, n: usize) -> Result<IntMatrix> {
    Ok(kernel_basis(&slab_matrix(p, n)))
}

fn slab_matrix(p: &MatrixPresentation, n: usize) -> IntMatrix {
    match p {
        MatrixPresentation::Finite(f) => {
            let width = n.min(f.size());
            finite_slab(f.size(), width, |i, j| f.entry(i, j))
        }
        MatrixPresentation::Infinite(p) => {
            // past max(N, prefixes) every coordinate constraint repeats with the period
            let al = p.pattern_alignment();
            let height = n.max(al.prefix) + al.period;
            finite_slab(height, n, |i, j| p.entry(i, j))
        }
    }
}

/// `height × width` matrix with entry `(j, i) = [i = j] - A(i, j)`.
fn finite_slab(height: usize, width: usize, entry: impl Fn(usize, usize) -> bool) -> IntMatrix {
    let mut m = IntMatrix::zeros(height, width);
    for i in 0..width {
        for j in 0..height {
            let mut v = i64::from(i == j);
            if entry(i, j) {
                v -= 1;
            }
            if v != 0 {
                m[(j, i)] = BigInt::from(v);
            }
        }
    }
    m
}

/// Coefficients `c` with `Σ_{i<M} cᵢ (δᵢ - ρᵢ) = target`, re-verified in
/// sequence arithmetic. `None` means no witness supported below `M`.
pub fn image_membership(
    p: &InfinitePresentation,
    target: &EpSeq,
    m: usize,
) -> Result<Option<Vec<BigInt>>> {
    let al = alignment(p.patterns().iter().chain([target]), p.period_limit())?;
    let height = m.max(al.prefix) + al.period;
    let matrix = finite_slab(height, m, |i, j| p.entry(i, j));
    let rhs: Vec<BigInt> = (0..height).map(|j| target.eval(j).clone()).collect();
    let Some(c) = solve_linear(&matrix, &rhs)? else {
        return Ok(None);
    };
    let image = image_of(p, &c)?;
    if image != *target {
        return Err(Error::Internal(format!(
            "image witness reproduces {image}, expected {target}"
        )));
    }
    Ok(Some(c))
}

/// `Σᵢ cᵢ (δᵢ - ρᵢ)` as a sequence.
pub fn image_of(p: &InfinitePresentation, c: &[BigInt]) -> Result<EpSeq> {
    let limit = p.period_limit();
    let mut acc = EpSeq::finite(c.to_vec());
    for (i, ci) in c.iter().enumerate() {
        if !ci.is_zero() {
            acc = acc.sub_with_limit(&p.row(i).scale(ci), limit)?;
        }
    }
    Ok(acc)
}

/// Confirms each K₀ relation (plain and unital) is an image, using the
/// finite remainder `h_a` as the witness.
pub fn verify_k0_relations(p: &MatrixPresentation) -> Result<bool> {
    match p {
        MatrixPresentation::Finite(f) => Ok(verify_finite_relations(f)),
        MatrixPresentation::Infinite(p) => {
            for unital in [false, true] {
                if !verify_infinite_relations(p, unital)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn verify_finite_relations(f: &FiniteMatrix) -> bool {
    let Ok(r) = k_groups_finite(f) else {
        return false;
    };
    let n = f.size();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = i64::from(i == j) - i64::from(f.entry(i, j));
            r.k0_relations[(j, i)] == BigInt::from(expected)
        })
    })
}

fn verify_infinite_relations(p: &InfinitePresentation, unital: bool) -> Result<bool> {
    let k0 = k0_presentation(p, unital)?;
    let gens = product_generators(p, unital)?;
    let refs: Vec<&EpSeq> = gens.seqs().iter().collect();
    for (v, corr) in k0.relations.columns().iter().zip(&k0.corrections) {
        let element = EpSeq::combination(v, &refs, p.period_limit())?;
        let witness: Vec<BigInt> = corr.h.prefix().to_vec();
        if image_of(p, &witness)? != element {
            return Ok(false);
        }
        if image_membership(p, &element, witness.len())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Slab sizes `prefix + {1,2,3}·period` over the full alignment.
pub fn default_slabs(p: &MatrixPresentation) -> Vec<usize> {
    match p {
        MatrixPresentation::Finite(f) => vec![f.size()],
        MatrixPresentation::Infinite(p) => {
            let al = p.full_alignment();
            (1..=3).map(|k| al.prefix + k * al.period).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabRank {
    pub n: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K1Comparison {
    pub slabs: Vec<SlabRank>,
    pub monotone: bool,
    pub nested: bool,
    pub stable: bool,
    pub matches_engine: bool,
}

impl K1Comparison {
    pub fn agrees(&self) -> bool {
        self.monotone && self.nested && self.stable && self.matches_engine
    }
}

pub fn compare_k1(p: &MatrixPresentation, slabs: Option<&[usize]>) -> Result<bool> {
    Ok(compare_k1_report(p, slabs)?.agrees())
}

/// Slab kernels for each size, checked against each other and against the
/// engine's K₁ witnesses.
pub fn compare_k1_report(p: &MatrixPresentation, slabs: Option<&[usize]>) -> Result<K1Comparison> {
    let sizes = match slabs {
        Some(s) => s.to_vec(),
        None => default_slabs(p),
    };
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return Err(ValidationError::Shape {
            location: "slabs".into(),
            message: "slab sizes must be positive and strictly increasing".into(),
        }
        .into());
    }
    let kernels = par::map(&sizes, |&n| slab_kernel(p, n))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let ranks: Vec<SlabRank> = sizes
        .iter()
        .zip(&kernels)
        .map(|(&n, k)| SlabRank { n, rank: k.cols() })
        .collect();
    let monotone = ranks.windows(2).all(|w| w[0].rank <= w[1].rank);
    let mut nested = true;
    for w in kernels.windows(2) {
        for col in w[0].columns() {
            nested &= lattice_contains(&w[1], &pad(&col, w[1].rows()))?;
        }
    }
    let stable = ranks.len() < 2 || ranks[ranks.len() - 2].rank == ranks[ranks.len() - 1].rank;

    let last = kernels.last().expect("nonempty");
    let witnesses = match p {
        MatrixPresentation::Finite(f) => k_groups_finite(f)?.k1_witnesses,
        MatrixPresentation::Infinite(p) => k1_infinite(p)?.witnesses,
    };
    let width = last.rows();
    let mut columns = Vec::with_capacity(witnesses.len());
    let mut fits = true;
    for w in &witnesses {
        let support = w.support()?;
        if support.last().is_some_and(|&i| i >= width) {
            fits = false;
            break;
        }
        columns.push(pad(w.prefix(), width));
    }
    let matches_engine = fits && same_lattice(last, &IntMatrix::from_columns(width, &columns)?)?;

    Ok(K1Comparison {
        slabs: ranks,
        monotone,
        nested,
        stable,
        matches_engine,
    })
}

fn pad(v: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = v.to_vec();
    out.resize(len, BigInt::zero());
    out
}
