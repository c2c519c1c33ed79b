//! K₀ and K₁ of `O_A` and of its unitization.
//!
//! K₁ is the kernel and K₀ the cokernel of `δᵢ ↦ δᵢ - ρᵢ` from the finitely
//! supported functions into the ring generated by rows and deltas (the unital
//! ring adds the constant 1). For infinite presentations both are reduced to
//! finite integer matrices:
//!
//! * K₀: the image relations `δᵢ ≡ q_{classmap(i)}` eliminate every delta, and
//!   each tail relation `Σ a_S q_S = Σᵢ h_a(i) δᵢ` becomes the vector
//!   `a - Σ_k σ_k(h_a) e_{k}` on the product generators.
//! * K₁: `f` is in the kernel iff `f = Σ_k σ_k(f) r_k`, so kernel elements are
//!   the combinations `Σ s_k r_k` with finite support whose coefficients are
//!   fixed by `s ↦ σ(Σ s_k r_k)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::epseq::EpSeq;
use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, kernel_basis, unit_vector, FgAbelianGroup, IntMatrix};
use crate::presentation::{FiniteMatrix, InfinitePresentation, MatrixPresentation};
use crate::ring::{
    correction_and_class_sums, product_generators, tail_lattice, tail_relations, Correction,
    GeneratorLabel, TailLattice,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryResult {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    pub k0_unital: FgAbelianGroup,
    pub k1_unital: FgAbelianGroup,
    /// Coordinates of the K₀ presentation.
    pub k0_generator_labels: Vec<GeneratorLabel>,
    /// One K₀ relation per column, in the coordinates above.
    pub k0_relations: IntMatrix,
    /// Finitely supported sequences spanning the kernel.
    pub k1_witnesses: Vec<EpSeq>,
}

/// K₀ as `ℤ^generators / span(relations)`, with the data that produced it.
#[derive(Debug, Clone)]
pub struct K0Presentation {
    pub labels: Vec<GeneratorLabel>,
    pub relations: IntMatrix,
    pub group: FgAbelianGroup,
    pub tail: TailLattice,
    pub corrections: Vec<Correction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Data {
    pub group: FgAbelianGroup,
    pub witnesses: Vec<EpSeq>,
}

pub fn k_groups(p: &MatrixPresentation) -> Result<KTheoryResult> {
    match p {
        MatrixPresentation::Finite(m) => k_groups_finite(m),
        MatrixPresentation::Infinite(p) => k_groups_infinite(p),
    }
}

/// Finite matrices: kernel and cokernel of `I - Aᵀ` on `ℤⁿ`. Here `1 = Σ δᵢ`
/// already lies in the ring, so the unital groups coincide with the others.
pub fn k_groups_finite(m: &FiniteMatrix) -> Result<KTheoryResult> {
    if m.has_zero_row() {
        return Err(crate::error::ValidationError::ZeroRow {
            location: "matrix".to_string(),
        }
        .into());
    }
    let map = m.identity_minus_transpose();
    let kernel = kernel_basis(&map);
    let k1 = FgAbelianGroup::free(kernel.cols());
    let k0 = cokernel_invariants(&map);
    Ok(KTheoryResult {
        k0_unital: k0.clone(),
        k1_unital: k1.clone(),
        k0,
        k1,
        k0_generator_labels: (0..m.size()).map(GeneratorLabel::Delta).collect(),
        k0_relations: map,
        k1_witnesses: kernel.columns().into_iter().map(EpSeq::finite).collect(),
    })
}

pub fn k_groups_infinite(p: &InfinitePresentation) -> Result<KTheoryResult> {
    let k0 = k0_infinite(p)?;
    let (k0_unital, k1_unital) = k_groups_unital(p)?;
    let k1 = k1_infinite(p)?;
    if k1.group != k1_unital {
        return Err(Error::Internal("K1 of the unitization differs".into()));
    }
    Ok(KTheoryResult {
        k0: k0.group,
        k1: k1.group,
        k0_unital,
        k1_unital,
        k0_generator_labels: k0.labels,
        k0_relations: k0.relations,
        k1_witnesses: k1.witnesses,
    })
}

pub fn k0_infinite(p: &InfinitePresentation) -> Result<K0Presentation> {
    k0_presentation(p, false)
}

/// K₀ of the ring (`unital = false`) or of the unital ring (`unital = true`).
pub fn k0_presentation(p: &InfinitePresentation, unital: bool) -> Result<K0Presentation> {
    let gens = product_generators(p, unital)?;
    let tail = tail_lattice(&gens);
    let indicators = p.class_indicators();
    let n = gens.len();

    let mut columns = Vec::with_capacity(tail.rank());
    let mut corrections = Vec::with_capacity(tail.rank());
    for a in tail.vectors() {
        let corr = correction_and_class_sums(&gens, &a, &indicators, p.period_limit())?;
        let mut v = a;
        for (k, s) in corr.class_sums.iter().enumerate() {
            v[gens.singleton_index(k)] -= s;
        }
        columns.push(v);
        corrections.push(corr);
    }
    let relations = IntMatrix::from_columns(n, &columns)?;
    let group = cokernel_invariants(&relations);
    Ok(K0Presentation {
        labels: gens.labels().to_vec(),
        relations,
        group,
        tail,
        corrections,
    })
}

pub fn k1_infinite(p: &InfinitePresentation) -> Result<K1Data> {
    let m = p.num_classes();
    let limit = p.period_limit();
    let indicators = p.class_indicators();
    let patterns: Vec<&EpSeq> = p.patterns().iter().collect();

    // s ranges over the tail lattice of the patterns themselves
    let basis = tail_relations(p.patterns(), p.pattern_alignment());
    let mut combos = Vec::with_capacity(basis.cols());
    let mut shifted = Vec::with_capacity(basis.cols());
    for b in basis.columns() {
        let f = EpSeq::combination(&b, &patterns, limit)?;
        let sigma = class_sums(&f, &indicators)?;
        shifted.push(
            sigma
                .iter()
                .zip(&b)
                .map(|(x, y)| x - y)
                .collect::<Vec<BigInt>>(),
        );
        combos.push(f);
    }
    let fixed = kernel_basis(&IntMatrix::from_columns(m, &shifted)?);

    let combo_refs: Vec<&EpSeq> = combos.iter().collect();
    let mut witnesses = Vec::with_capacity(fixed.cols());
    for t in fixed.columns() {
        let f = EpSeq::combination(&t, &combo_refs, limit)?;
        let sigma = class_sums(&f, &indicators)?;
        let image = EpSeq::combination(&sigma, &patterns, limit)?;
        if f.sub_with_limit(&image, limit)?.is_zero() && !f.is_zero() {
            witnesses.push(f);
        } else {
            return Err(Error::Internal(format!(
                "K1 witness {f} is not fixed by the row map"
            )));
        }
    }
    Ok(K1Data {
        group: FgAbelianGroup::free(witnesses.len()),
        witnesses,
    })
}

/// `(K₀, K₁)` of the unitization.
pub fn k_groups_unital(p: &InfinitePresentation) -> Result<(FgAbelianGroup, FgAbelianGroup)> {
    let k0 = k0_presentation(p, true)?;
    let k1 = k1_infinite(p)?;
    Ok((k0.group, k1.group))
}

/// `σ_k(f) = Σ_{classmap(i) = k} f(i)` for finitely supported `f`.
pub fn class_sums(f: &EpSeq, indicators: &[EpSeq]) -> Result<Vec<BigInt>> {
    indicators
        .iter()
        .map(|chi| f.masked_sum(chi).map_err(Error::from))
        .collect()
}

/// `Σ_S a_S q_S - Σ_k σ_k(h_a) q_{k}` for one K₀ relation, as a sequence.
pub fn relation_element(
    p: &InfinitePresentation,
    unital: bool,
    relation: &[BigInt],
) -> Result<EpSeq> {
    let gens = product_generators(p, unital)?;
    let refs: Vec<&EpSeq> = gens.seqs().iter().collect();
    Ok(EpSeq::combination(relation, &refs, p.period_limit())?)
}

/// Whether class `coords` (in generator coordinates) is zero in K₀.
pub fn is_zero_in_k0(k0: &K0Presentation, coords: &[BigInt]) -> Result<bool> {
    Ok(crate::linalg::solve_linear(&k0.relations, coords)?.is_some())
}

/// Coordinates of a single generator.
pub fn generator_class(k0: &K0Presentation, label: GeneratorLabel) -> Option<Vec<BigInt>> {
    let idx = k0.labels.iter().position(|l| *l == label)?;
    Some(unit_vector(k0.labels.len(), idx))
}

impl K0Presentation {
    /// Number of generators.
    pub fn width(&self) -> usize {
        self.labels.len()
    }

    /// All-zero class vector.
    pub fn zero_class(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.width()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq::from_ints(prefix, period).unwrap()
    }

    fn all_ones() -> InfinitePresentation {
        InfinitePresentation::new(vec![EpSeq::one()], EpSeq::zero()).unwrap()
    }

    fn checkerboard() -> InfinitePresentation {
        InfinitePresentation::new(
            vec![seq(&[], &[0, 1]), seq(&[], &[1, 0])],
            seq(&[], &[0, 1]),
        )
        .unwrap()
    }

    fn complement_checkerboard() -> InfinitePresentation {
        InfinitePresentation::new(
            vec![seq(&[], &[1, 0]), seq(&[], &[0, 1])],
            seq(&[], &[0, 1]),
        )
        .unwrap()
    }

    fn pair() -> InfinitePresentation {
        InfinitePresentation::new(vec![seq(&[1, 1], &[0])], EpSeq::zero()).unwrap()
    }

    #[test]
    fn all_ones_is_o_infinity() {
        let r = k_groups_infinite(&all_ones()).unwrap();
        assert_eq!(r.k0, FgAbelianGroup::free(1));
        assert!(r.k1.is_trivial());
        assert_eq!(r.k0_unital, FgAbelianGroup::free(1));
        assert!(r.k1_unital.is_trivial());
    }

    #[test]
    fn checkerboards() {
        for p in [checkerboard(), complement_checkerboard()] {
            let r = k_groups_infinite(&p).unwrap();
            assert_eq!(r.k0, FgAbelianGroup::free(2));
            assert!(r.k1.is_trivial());
            assert_eq!(r.k0_unital, FgAbelianGroup::free(2));
        }
    }

    #[test]
    fn row_finite_pair() {
        let p = pair();
        let k0 = k0_infinite(&p).unwrap();
        assert!(k0.group.is_trivial());
        let (k0u, k1u) = k_groups_unital(&p).unwrap();
        assert_eq!(k0u, FgAbelianGroup::free(1));
        assert!(k1u.is_trivial());
        assert!(k1_infinite(&p).unwrap().group.is_trivial());
    }

    #[test]
    fn finite_all_ones() {
        let j = |n: usize| FiniteMatrix::from_ints(&vec![vec![1u8; n]; n]).unwrap();
        let r = k_groups_finite(&j(2)).unwrap();
        assert!(r.k0.is_trivial() && r.k1.is_trivial());
        let r = k_groups_finite(&j(4)).unwrap();
        assert_eq!(r.k0, FgAbelianGroup::new(0, vec![BigInt::from(3)]).unwrap());
        assert!(r.k1.is_trivial());
        assert_eq!(r.k0_unital, r.k0);
    }

    #[test]
    fn finite_kernel_witnesses() {
        // permutation matrix of a 2-cycle: I - Aᵀ = [[1,-1],[-1,1]]
        let a = FiniteMatrix::from_ints(&[vec![0, 1], vec![1, 0]]).unwrap();
        let r = k_groups_finite(&a).unwrap();
        assert_eq!(r.k1, FgAbelianGroup::free(1));
        assert_eq!(r.k0, FgAbelianGroup::free(1));
        assert_eq!(r.k1_witnesses, vec![seq(&[1, 1], &[0])]);
    }

    #[test]
    fn nontrivial_k1_from_infinite_presentation() {
        // rows 0 and 1 are δ₁ and δ₀ (a 2-cycle), every other row is 1
        let p = InfinitePresentation::new(
            vec![seq(&[0, 1], &[0]), seq(&[1], &[0]), EpSeq::one()],
            seq(&[0, 1], &[2]),
        )
        .unwrap();
        let r = k_groups_infinite(&p).unwrap();
        assert_eq!(r.k1, FgAbelianGroup::free(1));
        assert_eq!(r.k1_witnesses.len(), 1);
        let w = &r.k1_witnesses[0];
        assert!(w == &seq(&[1, 1], &[0]) || w == &seq(&[-1, -1], &[0]));
    }

    #[test]
    fn relation_elements_are_images() {
        let p = pair();
        let k0 = k0_infinite(&p).unwrap();
        let v = k0.relations.column(0);
        let lhs = relation_element(&p, false, &v).unwrap();
        // h = δ₀ + δ₁, so the image is (δ₀ - ρ₀) + (δ₁ - ρ₁) = δ₀ + δ₁ - 2r
        let expected = seq(&[1, 1], &[0]).sub(&seq(&[2, 2], &[0])).unwrap();
        assert_eq!(lhs, expected);
        assert!(is_zero_in_k0(
            &k0,
            &generator_class(&k0, GeneratorLabel::Product(1)).unwrap()
        )
        .unwrap());
        assert!(is_zero_in_k0(&k0, &k0.zero_class()).unwrap());
    }
}
