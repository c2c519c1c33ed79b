//! Seeded random presentations for property checks and benchmarks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::epseq::EpSeq;
use crate::presentation::InfinitePresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_patterns: usize,
    pub max_prefix: usize,
    pub max_period: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_patterns: 3,
            max_prefix: 4,
            max_period: 6,
        }
    }
}

/// `count` valid presentations; every third one is an edge matrix
/// (pairwise orthogonal patterns).
pub fn generate(seed: u64, count: usize, params: CorpusParams) -> Vec<InfinitePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 3 == 2 {
                random_edge_presentation(&mut rng, params)
            } else {
                random_presentation(&mut rng, params)
            }
        })
        .collect()
}

fn bits<R: Rng>(rng: &mut R, len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|_| BigInt::from(rng.gen_range(0..2u8)))
        .collect()
}

fn random_classmap<R: Rng>(rng: &mut R, m: usize, params: CorpusParams) -> EpSeq {
    loop {
        let prefix: Vec<BigInt> = (0..rng.gen_range(0..=params.max_prefix))
            .map(|_| BigInt::from(rng.gen_range(0..m)))
            .collect();
        let period: Vec<BigInt> = (0..rng.gen_range(1..=params.max_period))
            .map(|_| BigInt::from(rng.gen_range(0..m)))
            .collect();
        let all_used = (0..m).all(|k| {
            let k = BigInt::from(k);
            prefix.contains(&k) || period.contains(&k)
        });
        if all_used {
            return EpSeq::new(prefix, period).expect("nonempty period");
        }
    }
}

/// Random 0-1 patterns, a quarter of them finitely supported.
pub fn random_presentation<R: Rng>(rng: &mut R, params: CorpusParams) -> InfinitePresentation {
    loop {
        let m = rng.gen_range(1..=params.max_patterns);
        let patterns: Vec<EpSeq> = (0..m)
            .map(|_| {
                let prefix_len = rng.gen_range(0..=params.max_prefix);
                let prefix = bits(rng, prefix_len);
                let period = if rng.gen_ratio(1, 4) {
                    vec![BigInt::from(0)]
                } else {
                    let period_len = rng.gen_range(1..=params.max_period);
                    bits(rng, period_len)
                };
                EpSeq::new(prefix, period).expect("nonempty period")
            })
            .collect();
        let classmap = random_classmap(rng, m, params);
        if let Ok(p) = InfinitePresentation::new(patterns, classmap) {
            return p;
        }
    }
}

/// Patterns are indicators of disjoint sets of positions, so distinct rows
/// are orthogonal.
pub fn random_edge_presentation<R: Rng>(rng: &mut R, params: CorpusParams) -> InfinitePresentation {
    loop {
        let m = rng.gen_range(1..=params.max_patterns);
        let prefix_len = rng.gen_range(0..=params.max_prefix);
        let period_len = rng.gen_range(1..=params.max_period);
        // owner m means "no pattern"
        let owners: Vec<usize> = (0..prefix_len + period_len)
            .map(|_| rng.gen_range(0..=m))
            .collect();
        let patterns: Vec<EpSeq> = (0..m)
            .map(|k| {
                let mut values: Vec<BigInt> = owners
                    .iter()
                    .map(|&o| BigInt::from(u8::from(o == k)))
                    .collect();
                let period = values.split_off(prefix_len);
                EpSeq::new(values, period).expect("nonempty period")
            })
            .collect();
        let classmap = random_classmap(rng, m, params);
        if let Ok(p) = InfinitePresentation::new(patterns, classmap) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_within_bounds() {
        let params = CorpusParams::default();
        let a = generate(7, 30, params);
        let b = generate(7, 30, params);
        assert_eq!(a, b);
        for p in &a {
            assert!(p.num_classes() <= 3);
            for r in p.patterns() {
                assert!(r.prefix().len() <= 4 && r.period().len() <= 6);
            }
        }
    }

    #[test]
    fn every_third_is_edge() {
        for (i, p) in generate(11, 30, CorpusParams::default()).iter().enumerate() {
            if i % 3 == 2 {
                assert!(p.classify().unwrap().is_edge_matrix);
            }
        }
    }
}
