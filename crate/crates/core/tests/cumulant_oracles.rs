mod common;

use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rptkit_core::cumulant::between_group_cumulant_audit;
use rptkit_core::{
    compare_cumulant_methods, cumulants_from_moments_partition, cumulants_from_moments_series,
    moments_from_cumulants, CumulantTable, MomentTable, MultiIndex, Rational,
};

#[test]
fn seeded_round_trip_and_method_agreement() {
    let mut rng = common::rng(0x5eed);
    for _ in 0..40 {
        let dim = rng.gen_range(1..=3);
        let order = rng.gen_range(1..=6);
        let mu = common::random_moment_table(&mut rng, dim, order);
        let kappa = cumulants_from_moments_series(&mu).unwrap();
        assert_eq!(moments_from_cumulants(&kappa).unwrap(), mu);
        assert_eq!(cumulants_from_moments_partition(&mu).unwrap(), kappa);
        assert_eq!(compare_cumulant_methods(&mu).unwrap(), None);
    }
}

#[test]
fn partition_formula_matches_set_partition_oracle() {
    let mut rng = common::rng(17);
    for _ in 0..12 {
        let dim = rng.gen_range(1..=3);
        let mu = common::random_moment_table(&mut rng, dim, 5);
        let kappa = cumulants_from_moments_partition(&mu).unwrap();
        for k in MultiIndex::all_up_to(dim, 5).into_iter().filter(|k| !k.is_zero()) {
            assert_eq!(kappa.get(&k), common::cumulant_by_set_partitions(&mu, &k), "index {k}");
        }
    }
}

#[test]
fn independent_pairs_have_no_mixed_cumulants() {
    let mut rng = common::rng(99);
    for _ in 0..20 {
        let da = rng.gen_range(1..=2);
        let db = rng.gen_range(1..=2);
        let a = common::random_moment_table(&mut rng, da, 6);
        let b = common::random_moment_table(&mut rng, db, 6);
        let report = between_group_cumulant_audit(&a, &b, 6).unwrap();
        assert!(report.is_independent(), "{:?}", report.nonzero_mixed);
        assert_eq!(report.checked_order, 6);
    }
}

#[test]
fn zero_mixed_cumulants_force_factorized_moments() {
    let mut rng = common::rng(3);
    for _ in 0..10 {
        let order = 5;
        // cumulants living on the axes of a 2-type table only
        let values: Vec<_> = MultiIndex::all_up_to(2, order)
            .into_iter()
            .filter(|k| !k.is_zero() && k.exponents().iter().filter(|&&e| e > 0).count() == 1)
            .map(|k| (k, common::small_rational(&mut rng)))
            .collect();
        let kappa = CumulantTable::new(2, order, values).unwrap();
        let mu = moments_from_cumulants(&kappa).unwrap();
        for k in MultiIndex::all_up_to(2, order) {
            let e = k.exponents();
            let left = mu.get(&MultiIndex::new(vec![e[0], 0]));
            let right = mu.get(&MultiIndex::new(vec![0, e[1]]));
            assert_eq!(mu.get(&k), left * right, "index {k}");
        }
    }
}

#[test]
fn correlated_pair_is_flagged() {
    // X = Y standard normal
    let values = [
        (vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 2], 1),
        (vec![4, 0], 3), (vec![3, 1], 3), (vec![2, 2], 3), (vec![1, 3], 3), (vec![0, 4], 3),
    ];
    let mu = MomentTable::normalized(
        2,
        4,
        values.iter().map(|(k, v)| (MultiIndex::new(k.clone()), Rational::from_integer((*v).into()))),
    )
    .unwrap();
    let report = rptkit_core::cumulant::mixed_cumulant_audit(&mu, 1).unwrap();
    assert!(!report.is_independent());
    assert!(report.nonzero_mixed.iter().all(|m| !m.value.is_zero()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_types_commutes_with_conversion(seed in any::<u64>(), perm_id in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let perm = perms[perm_id];
        let mu = common::random_moment_table(&mut common::rng(seed), 3, 4);
        let kappa = cumulants_from_moments_series(&mu).unwrap();
        let relabeled = cumulants_from_moments_series(&mu.permute_types(&perm).unwrap()).unwrap();
        prop_assert_eq!(relabeled, kappa.permute_types(&perm).unwrap());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mu = common::random_moment_table(&mut common::rng(seed), 2, 4);
        let text = serde_json::to_string(&mu).unwrap();
        let back: MomentTable = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, mu);
    }
}
