use ck_invariants::epseq::EpSeq;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

/// Raw (not necessarily canonical) prefix and period.
fn raw(values: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        prop::collection::vec(values.clone(), 0..5),
        prop::collection::vec(values, 1..5),
    )
}

fn raw_eval(prefix: &[i64], period: &[i64], i: usize) -> i64 {
    if i < prefix.len() {
        prefix[i]
    } else {
        period[(i - prefix.len()) % period.len()]
    }
}

fn seq((prefix, period): &(Vec<i64>, Vec<i64>)) -> EpSeq {
    EpSeq::from_ints(prefix, period).unwrap()
}

fn int_seq() -> impl Strategy<Value = EpSeq> {
    raw(-3..=3).prop_map(|r| seq(&r))
}

/// Indices on which agreement decides equality of `a` and `b`.
fn decisive_horizon(a: &EpSeq, b: &EpSeq) -> usize {
    let n = a.prefix().len().max(b.prefix().len());
    n + a.period().len().lcm(&b.period().len()) + 1
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent_and_preserves_values(r in raw(-3..=3)) {
        let s = seq(&r);
        let again = EpSeq::new(s.prefix().to_vec(), s.period().to_vec()).unwrap();
        prop_assert_eq!(&again, &s);
        let (prefix, period) = &r;
        for i in 0..prefix.len() + 2 * period.len() {
            prop_assert_eq!(s.eval(i), &BigInt::from(raw_eval(prefix, period, i)));
        }
    }

    #[test]
    fn canonical_form_is_unique(r in raw(-2..=2), extra in 0usize..4, copies in 1usize..4) {
        // unroll the sequence: longer prefix, repeated period
        let (prefix, period) = &r;
        let longer: Vec<i64> = (0..prefix.len() + extra).map(|i| raw_eval(prefix, period, i)).collect();
        let start = longer.len();
        let repeated: Vec<i64> = (0..period.len() * copies)
            .map(|k| raw_eval(prefix, period, start + k))
            .collect();
        prop_assert_eq!(seq(&(longer, repeated)), seq(&r));
    }

    #[test]
    fn addition_laws(a in int_seq(), b in int_seq(), c in int_seq()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&EpSeq::zero()).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn multiplication_laws(a in int_seq(), b in int_seq(), c in int_seq()) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.multiply(&b.add(&c).unwrap()).unwrap(),
            a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&EpSeq::one()).unwrap(), a.clone());
    }

    #[test]
    fn pointwise_semantics(a in int_seq(), b in int_seq()) {
        let sum = a.add(&b).unwrap();
        let prod = a.multiply(&b).unwrap();
        for i in 0..decisive_horizon(&a, &b) + 3 {
            prop_assert_eq!(sum.eval(i), &(a.eval(i) + b.eval(i)));
            prop_assert_eq!(prod.eval(i), &(a.eval(i) * b.eval(i)));
        }
    }

    #[test]
    fn equality_matches_evaluation(a in int_seq(), b in int_seq(), flip in any::<bool>()) {
        let b = if flip { b } else { a.clone() };
        let agree = (0..decisive_horizon(&a, &b)).all(|i| a.eval(i) == b.eval(i));
        prop_assert_eq!(agree, a == b);
    }

    #[test]
    fn binary_sequences_are_idempotent(r in raw(0..=1)) {
        let a = seq(&r);
        prop_assert!(a.is_binary());
        prop_assert_eq!(a.multiply(&a).unwrap(), a.clone());
        let c = a.complement();
        prop_assert!(c.is_binary());
        prop_assert!(a.multiply(&c).unwrap().is_zero());
    }

    #[test]
    fn text_form_round_trips(a in int_seq()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<EpSeq>().unwrap(), a);
    }

    #[test]
    fn finite_support_queries(values in prop::collection::vec(-3i64..=3, 0..8)) {
        let big: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let f = EpSeq::finite(big);
        prop_assert!(f.is_finitely_supported());
        let expected: Vec<usize> = (0..values.len()).filter(|&i| values[i] != 0).collect();
        prop_assert_eq!(f.support().unwrap(), expected);
        prop_assert_eq!(f.total_sum().unwrap(), BigInt::from(values.iter().sum::<i64>()));
    }
}

#[test]
fn display_form() {
    let s = EpSeq::from_ints(&[1, 0], &[0]).unwrap();
    assert_eq!(s.to_string(), "[1]|[0]");
    assert_eq!(
        EpSeq::from_ints(&[1, 0, 1], &[0, 1]).unwrap().to_string(),
        "[]|[1,0]"
    );
    assert_eq!(
        EpSeq::from_ints(&[1, 1], &[0, 1]).unwrap().to_string(),
        "[1]|[1,0]"
    );
    assert_eq!(
        EpSeq::from_ints(&[], &[1, 1]).unwrap().to_string(),
        "[]|[1]"
    );
}

#[test]
fn infinite_support_is_not_summable() {
    assert!(EpSeq::one().total_sum().is_err());
    assert!(!EpSeq::residue_indicator(0, 3).is_finitely_supported());
}
