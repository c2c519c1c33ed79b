use ck_invariants::corpus::{random_edge_presentation, random_presentation, CorpusParams};
use ck_invariants::epseq::EpSeq;
use ck_invariants::ktheory::{
    class_sums, k0_presentation, k_groups, k_groups_finite, relation_element,
};
use ck_invariants::linalg::{kernel_basis, lattice_contains, same_lattice};
use ck_invariants::oracle::{image_membership, image_of, slab_kernel};
use ck_invariants::presentation::{FiniteMatrix, InfinitePresentation, MatrixPresentation};
use ck_invariants::relations::{ck_coefficient, enumerate_relation_instances, verify_relation_iv};
use ck_invariants::ring::product_generators;
use ck_invariants::spectrum::{gamma_description, is_unital};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn any_presentation() -> impl Strategy<Value = InfinitePresentation> {
    (any::<u64>(), 0u8..3).prop_map(|(seed, kind)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match kind {
            0 => random_edge_presentation(&mut rng, CorpusParams::default()),
            1 => row_finite(&mut rng),
            _ => random_presentation(&mut rng, CorpusParams::default()),
        }
    })
}

fn row_finite(rng: &mut ChaCha8Rng) -> InfinitePresentation {
    loop {
        let m = rng.gen_range(1..=3);
        let patterns = (0..m)
            .map(|_| {
                let prefix: Vec<i64> = (0..rng.gen_range(1..=4))
                    .map(|_| rng.gen_range(0..2))
                    .collect();
                EpSeq::from_ints(&prefix, &[0]).unwrap()
            })
            .collect();
        let classmap: Vec<i64> = (0..rng.gen_range(1..=4))
            .map(|_| rng.gen_range(0..m as i64))
            .collect();
        if let Ok(p) =
            InfinitePresentation::new(patterns, EpSeq::from_ints(&[], &classmap).unwrap())
        {
            return p;
        }
    }
}

fn is_row_finite(p: &InfinitePresentation) -> bool {
    p.patterns().iter().all(EpSeq::is_finitely_supported)
}

/// Residue columns computed entry by entry.
fn residue_columns(p: &InfinitePresentation) -> Vec<EpSeq> {
    let al = p.pattern_alignment();
    (0..al.period).map(|r| p.column(al.prefix + r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn k1_is_free_and_unitization_invariant(p in any_presentation()) {
        let k = k_groups(&MatrixPresentation::Infinite(p)).unwrap();
        prop_assert!(k.k1.torsion().is_empty());
        prop_assert_eq!(k.k1, k.k1_unital);
    }

    #[test]
    fn unitization_splits(p in any_presentation()) {
        let unital = is_unital(&p).unwrap();
        let k = k_groups(&MatrixPresentation::Infinite(p)).unwrap();
        if unital {
            prop_assert_eq!(k.k0_unital, k.k0);
        } else {
            prop_assert_eq!(k.k0_unital.rank(), k.k0.rank() + 1);
            prop_assert_eq!(k.k0_unital.torsion(), k.k0.torsion());
        }
    }

    #[test]
    fn k1_witnesses_are_fixed(p in any_presentation()) {
        let k = k_groups(&MatrixPresentation::Infinite(p.clone())).unwrap();
        prop_assert_eq!(k.k1_witnesses.len(), k.k1.rank());
        let indicators = p.class_indicators();
        for f in &k.k1_witnesses {
            prop_assert!(f.is_finitely_supported() && !f.is_zero());
            let sigma = class_sums(f, &indicators).unwrap();
            let refs: Vec<&EpSeq> = p.patterns().iter().collect();
            prop_assert_eq!(&EpSeq::combination(&sigma, &refs, p.period_limit()).unwrap(), f);
            // f is annihilated by δᵢ ↦ δᵢ - ρᵢ
            let coeffs: Vec<BigInt> = f.prefix().to_vec();
            prop_assert!(image_of(&p, &coeffs).unwrap().is_zero());
        }
    }

    #[test]
    fn relation_vectors_are_explicit_images(p in any_presentation(), unital in any::<bool>()) {
        let k0 = k0_presentation(&p, unital).unwrap();
        for (v, corr) in k0.relations.columns().iter().zip(&k0.corrections) {
            let element = relation_element(&p, unital, v).unwrap();
            // Σ h(i) (δᵢ - ρᵢ), accumulated term by term
            let mut image = EpSeq::zero();
            for (i, hi) in corr.h.prefix().iter().enumerate() {
                if hi.is_zero() {
                    continue;
                }
                let term = EpSeq::delta(i).sub(p.row(i)).unwrap().scale(hi);
                image = image.add(&term).unwrap();
            }
            prop_assert_eq!(element, image);
        }
    }

    #[test]
    fn row_finite_tail_lattice_is_full(p in any_presentation()) {
        if !is_row_finite(&p) {
            return Ok(());
        }
        let k0 = k0_presentation(&p, false).unwrap();
        let g = product_generators(&p, false).unwrap();
        prop_assert_eq!(k0.tail.rank(), g.len());
        // relations are e_S - Σ_k σ_k(q_S) e_{k}
        let indicators = p.class_indicators();
        let mut expected = Vec::new();
        for (s, q) in g.seqs().iter().enumerate() {
            let mut v = vec![BigInt::zero(); g.len()];
            v[s] += 1;
            for (k, sigma) in class_sums(q, &indicators).unwrap().into_iter().enumerate() {
                v[g.singleton_index(k)] -= sigma;
            }
            expected.push(v);
        }
        let expected = ck_invariants::linalg::IntMatrix::from_columns(g.len(), &expected).unwrap();
        prop_assert!(same_lattice(&k0.relations, &expected).unwrap());
        let d = gamma_description(&p).unwrap();
        prop_assert!(d.accumulation_columns.is_empty() && d.zero_at_infinity && !d.unital);
    }

    #[test]
    fn unitality_criteria_agree(p in any_presentation()) {
        let zero_residue = residue_columns(&p).iter().any(EpSeq::is_zero);
        prop_assert_eq!(is_unital(&p).unwrap(), !zero_residue);
    }

    #[test]
    fn accumulation_columns_recur(p in any_presentation()) {
        let d = gamma_description(&p).unwrap();
        let al = p.pattern_alignment();
        let last = al.prefix + 2 * al.period;
        for c in &d.accumulation_columns {
            prop_assert!(!c.is_zero());
            let hits = (0..=last).filter(|&j| &p.column(j) == c).count();
            prop_assert!(hits >= 2);
        }
        if p.classify().unwrap().is_edge_matrix {
            let mut distinct: Vec<EpSeq> = Vec::new();
            for c in residue_columns(&p) {
                if !c.is_zero() && !distinct.contains(&c) {
                    distinct.push(c);
                }
            }
            prop_assert_eq!(&d.accumulation_columns, &distinct);
        }
    }

    #[test]
    fn relations_hold_and_detect_unitality(p in any_presentation()) {
        let m = p.num_classes();
        let instances = enumerate_relation_instances(&p, 2 * m).unwrap();
        prop_assert!(instances.iter().all(|r| r.check.holds));
        let everything: Vec<usize> = (0..m).map(|k| p.representative(k)).collect();
        let unit = verify_relation_iv(&p, &[], &everything).unwrap();
        prop_assert_eq!(unit.applicable, is_unital(&p).unwrap());
    }

    #[test]
    fn coefficients_depend_only_on_classes(p in any_presentation(), picks in prop::collection::vec((0usize..3, any::<bool>(), 0usize..20), 1..4)) {
        let m = p.num_classes();
        // every row index below the horizon, grouped by class
        let horizon = p.full_alignment().horizon() + 4;
        let members: Vec<Vec<usize>> = (0..m)
            .map(|k| (0..horizon).filter(|&i| p.class_of(i) == k).collect())
            .collect();
        let (mut xs, mut ys, mut xr, mut yr) = (vec![], vec![], vec![], vec![]);
        for (k, in_x, offset) in picks {
            let k = k % m;
            let row = members[k][offset % members[k].len()];
            if in_x {
                xs.push(row);
                xr.push(p.representative(k));
            } else {
                ys.push(row);
                yr.push(p.representative(k));
            }
        }
        prop_assert_eq!(
            ck_coefficient(&p, &xs, &ys).unwrap(),
            ck_coefficient(&p, &xr, &yr).unwrap()
        );
    }

    #[test]
    fn slab_kernels_are_nested(p in any_presentation()) {
        let wrapped = MatrixPresentation::Infinite(p);
        let sizes = [2usize, 5, 9];
        let kernels: Vec<_> = sizes.iter().map(|&n| slab_kernel(&wrapped, n).unwrap()).collect();
        for w in 0..sizes.len() - 1 {
            let (small, large) = (&kernels[w], &kernels[w + 1]);
            for col in small.columns() {
                let mut padded = col.clone();
                padded.resize(large.rows().max(sizes[w + 1]), BigInt::zero());
                padded.truncate(sizes[w + 1]);
                prop_assert!(lattice_contains(large, &padded).unwrap());
            }
        }
    }

    #[test]
    fn image_witnesses_reverify(p in any_presentation(), c in prop::collection::vec(-3i64..=3, 1..7)) {
        let c: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        let target = image_of(&p, &c).unwrap();
        let w = image_membership(&p, &target, c.len()).unwrap().expect("target is an image");
        prop_assert_eq!(image_of(&p, &w).unwrap(), target);
    }

    #[test]
    fn finite_slabs_match_engine(rows in prop::collection::vec(prop::collection::vec(0u8..2, 5), 5)) {
        let Ok(m) = FiniteMatrix::from_ints(&rows) else {
            return Ok(());
        };
        let k = k_groups_finite(&m).unwrap();
        let slab = slab_kernel(&MatrixPresentation::Finite(m.clone()), m.size()).unwrap();
        let kernel = kernel_basis(&m.identity_minus_transpose());
        prop_assert!(same_lattice(&slab, &kernel).unwrap());
        prop_assert_eq!(slab.cols(), k.k1.rank());
    }
}
