//! Whole-presentation analysis, and batch runners over many inputs.
//!
//! Each item is independent, so the batch functions fan out with
//! [`crate::par::map`]; the `_sequential` variants exist for comparison and
//! for callers that must stay on one thread.

use serde::{Deserialize, Serialize};

use crate::epseq::EpSeq;
use crate::error::Result;
use crate::ktheory::{k_groups_infinite, KTheoryResult};
use crate::linalg::{snf, IntMatrix, SmithCertificate};
use crate::oracle::{compare_k1, verify_k0_relations};
use crate::par;
use crate::presentation::{Classification, InfinitePresentation, MatrixPresentation};
use crate::relations::enumerate_relation_instances;
use crate::spectrum::{accumulation_columns, gamma_description, is_unital, SpectrumDescription};

/// Everything computed and cross-checked for one presentation.
#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub k_theory: KTheoryResult,
    pub spectrum: SpectrumDescription,
    pub classification: Classification,
    pub checks: Checks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// Slab oracle agrees with the engine's K₁.
    pub k1_oracle: bool,
    /// Every K₀ relation was confirmed as an image.
    pub k0_relations: bool,
    /// Product criterion for unitality.
    pub unital_by_product: bool,
    /// Zero column is an accumulation point.
    pub zero_column_at_infinity: bool,
    /// `K₀(Õ_A)` relates to `K₀(O_A)` as unitality predicts.
    pub unitization_split: bool,
    pub relation_instances: usize,
    pub relations_hold: bool,
    /// `(∅, all classes)` is applicable exactly when unital.
    pub unit_relation_matches: bool,
    /// Pattern products are `0` or the pattern itself.
    pub equal_or_orthogonal: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.k1_oracle
            && self.k0_relations
            && self.unital_by_product != self.zero_column_at_infinity
            && self.unitization_split
            && self.relations_hold
            && self.unit_relation_matches
    }
}

pub fn analyze(p: &InfinitePresentation) -> Result<PresentationReport> {
    let k_theory = k_groups_infinite(p)?;
    let spectrum = gamma_description(p)?;
    let classification = p.classify()?;
    let wrapped = MatrixPresentation::Infinite(p.clone());

    let unital_by_product = is_unital(p)?;
    let zero_column_at_infinity = p_has_zero_residue_column(p);
    let unitization_split = if unital_by_product {
        k_theory.k0_unital == k_theory.k0
    } else {
        k_theory.k0_unital.rank() == k_theory.k0.rank() + 1
            && k_theory.k0_unital.torsion() == k_theory.k0.torsion()
    };

    let m = p.num_classes();
    let instances = enumerate_relation_instances(p, 2 * m)?;
    let relations_hold = instances.iter().all(|r| r.check.holds);
    let everything: Vec<usize> = (0..m).map(|k| p.representative(k)).collect();
    let unit_applicable = instances
        .iter()
        .any(|r| r.x.is_empty() && r.y == everything);

    let limit = p.period_limit();
    let mut equal_or_orthogonal = true;
    for a in p.patterns() {
        for b in p.patterns() {
            let prod = a.multiply_with_limit(b, limit)?;
            equal_or_orthogonal &= prod.is_zero() || prod == *a;
        }
    }

    let checks = Checks {
        k1_oracle: compare_k1(&wrapped, None)?,
        k0_relations: verify_k0_relations(&wrapped)?,
        unital_by_product,
        zero_column_at_infinity,
        unitization_split,
        relation_instances: instances.len(),
        relations_hold,
        unit_relation_matches: unit_applicable == unital_by_product,
        equal_or_orthogonal,
    };
    Ok(PresentationReport {
        k_theory,
        spectrum,
        classification,
        checks,
    })
}

// Independent of gamma_description: scans residue columns directly.
fn p_has_zero_residue_column(p: &InfinitePresentation) -> bool {
    let al = p.pattern_alignment();
    let nonzero = accumulation_columns(p);
    let distinct: Vec<EpSeq> =
        (0..al.period)
            .map(|r| p.column(al.prefix + r))
            .fold(Vec::new(), |mut acc, c| {
                if !acc.contains(&c) {
                    acc.push(c);
                }
                acc
            });
    distinct.len() > nonzero.len()
}

pub fn analyze_corpus(corpus: &[InfinitePresentation]) -> Vec<Result<PresentationReport>> {
    par::map(corpus, analyze)
}

pub fn analyze_corpus_sequential(
    corpus: &[InfinitePresentation],
) -> Vec<Result<PresentationReport>> {
    par::map_sequential(corpus, analyze)
}

pub fn snf_batch(matrices: &[IntMatrix]) -> Vec<SmithCertificate> {
    par::map(matrices, snf)
}

pub fn snf_batch_sequential(matrices: &[IntMatrix]) -> Vec<SmithCertificate> {
    par::map_sequential(matrices, snf)
}
