use freeprod::ncpart::{catalan, enumerate, has_crossing_bruteforce, is_noncrossing_labels, NCPartition};
use proptest::prelude::*;

/// Restricted-growth labels of a random set partition of `{1..n}`.
fn labels() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 1..10).prop_map(|raw| {
        let mut map = Vec::new();
        raw.iter()
            .map(|&r| match map.iter().position(|&m| m == r) {
                Some(i) => i,
                None => {
                    map.push(r);
                    map.len() - 1
                }
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn linear_test_matches_bruteforce(l in labels()) {
        prop_assert_eq!(is_noncrossing_labels(&l), !has_crossing_bruteforce(&l));
        prop_assert_eq!(NCPartition::from_labels(&l).is_ok(), !has_crossing_bruteforce(&l));
    }

    #[test]
    fn kreweras_properties(l in labels()) {
        prop_assume!(!has_crossing_bruteforce(&l));
        let p = NCPartition::from_labels(&l).unwrap();
        let k = p.kreweras();
        prop_assert_eq!(p.num_blocks() + k.num_blocks(), p.n() + 1);
        prop_assert!(p.interleaves_noncrossing(&k));
        prop_assert_eq!(p.to_string().parse::<NCPartition>().unwrap(), p);
    }
}

#[test]
fn catalan_counts() {
    for n in 1..=10 {
        assert_eq!(enumerate(n).unwrap().len() as u64, catalan(n));
    }
    assert!(enumerate(0).is_err());
}

#[test]
fn kreweras_extremes() {
    for n in 1..=8 {
        assert_eq!(NCPartition::zero(n).kreweras(), NCPartition::one(n));
        assert_eq!(NCPartition::one(n).kreweras(), NCPartition::zero(n));
    }
}
