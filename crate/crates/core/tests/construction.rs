use pcore::abacus::BeadMultiplicities;
use pcore::modarith::is_prime;
use pcore::residue_walk::{construct, validate_walk, walk_vertices};
use proptest::prelude::*;

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..20_000).prop_filter("odd prime", |&n| is_prime(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_is_a_valid_walk(p in odd_prime()) {
        let construction = construct(p).unwrap();
        let profile = &construction.profile;
        prop_assert!(validate_walk(profile).passed);
        prop_assert_eq!(profile.c, construction.pairs.iter().map(|pair| pair.sum()).sum::<u64>());
        let size = BeadMultiplicities::new(p, profile.b.clone()).unwrap().size().unwrap();
        prop_assert_eq!(&size, &profile.size);
    }

    #[test]
    fn walk_never_revisits_zero(p in (3u64..400).prop_filter("odd prime", |&n| is_prime(n))) {
        let profile = construct(p).unwrap().profile;
        let vertices = walk_vertices(&profile);
        prop_assert!(vertices[1..].iter().all(|&v| v != 0));
        prop_assert_eq!(*vertices.last().unwrap(), 1);
        prop_assert_eq!(vertices.len() as u64, profile.walk_length() + 1);
    }
}
