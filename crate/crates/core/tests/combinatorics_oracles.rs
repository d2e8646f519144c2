mod common;

use num_bigint::BigUint;
use rptkit_core::combinatorics::{binomial, double_factorial, multinomial};
use rptkit_core::diagram::count_pairings;
use rptkit_core::{bell, bell_numbers, dobinski_partial, set_partitions};

#[test]
fn triangle_matches_set_partition_counts() {
    for n in 0..=12u32 {
        let count = set_partitions(n).unwrap().count();
        assert_eq!(BigUint::from(count), bell(n), "n = {n}");
    }
}

#[test]
fn triangle_matches_binomial_sum() {
    assert_eq!(bell_numbers(40), common::bell_binomial_sum(40));
}

#[test]
fn set_partitions_match_recursive_oracle() {
    for n in 0..=7u32 {
        let mut ours: Vec<Vec<Vec<u32>>> = set_partitions(n).unwrap().map(|p| p.blocks().to_vec()).collect();
        let mut oracle: Vec<Vec<Vec<u32>>> = common::partitions_of(n as usize)
            .into_iter()
            .map(|p| p.into_iter().map(|b| b.into_iter().map(|x| x as u32 + 1).collect()).collect())
            .collect();
        for p in ours.iter_mut().chain(oracle.iter_mut()) {
            for b in p.iter_mut() {
                b.sort_unstable();
            }
            p.sort();
        }
        ours.sort();
        oracle.sort();
        assert_eq!(ours, oracle, "n = {n}");
    }
}

#[test]
fn dobinski_brackets_bell() {
    for n in 0..=12u32 {
        let est = dobinski_partial(n, (2 * n).max(1) + 10, 128).unwrap();
        assert!(est.brackets(&bell(n)), "n = {n}: {est:?}");
        assert!(est.lower <= est.upper);
        let approx = bell(n).to_string().parse::<f64>().unwrap();
        assert!((est.approximation - approx).abs() <= est.error_bound.max(1e-9 * approx));
    }
}

#[test]
fn dobinski_bracket_tightens_with_terms() {
    let loose = dobinski_partial(6, 12, 128).unwrap();
    let tight = dobinski_partial(6, 40, 128).unwrap();
    assert!(&tight.upper - &tight.lower <= &loose.upper - &loose.lower);
}

#[test]
fn pairings_against_brute_force_and_double_factorial() {
    for k in 0..=8u32 {
        let n = 2 * k;
        let df = double_factorial(n as i64 - 1).unwrap();
        let closed = rptkit_core::rational::factorial(n) / (BigUint::from(2u32).pow(k) * rptkit_core::rational::factorial(k));
        assert_eq!(count_pairings(n), df);
        assert_eq!(count_pairings(n), closed);
        if k <= 5 {
            assert_eq!(count_pairings(n), BigUint::from(common::brute_force_matchings(n as usize)));
        }
    }
    for n in [1u32, 3, 7] {
        assert_eq!(common::brute_force_matchings(n as usize), 0);
        assert_eq!(count_pairings(n), BigUint::from(0u32));
    }
}

#[test]
fn multinomial_against_binomial_products() {
    for a in 0..5u32 {
        for b in 0..5u32 {
            for c in 0..5u32 {
                let expect = binomial(a + b + c, a) * binomial(b + c, b);
                assert_eq!(multinomial(&[a, b, c]), expect);
            }
        }
    }
}
