//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rptkit_core::{MomentTable, MultiIndex, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-20..=20);
    let den: i64 = rng.gen_range(1..=9);
    Rational::new(num.into(), den.into())
}

/// Normalized table with every entry of order `1..=max_order` random.
pub fn random_moment_table(rng: &mut impl Rng, num_types: usize, max_order: u32) -> MomentTable {
    let values: Vec<_> = MultiIndex::all_up_to(num_types, max_order)
        .into_iter()
        .filter(|k| !k.is_zero())
        .map(|k| (k, small_rational(rng)))
        .collect();
    MomentTable::normalized(num_types, max_order, values).unwrap()
}

/// All set partitions of `0..n` as block lists, by plain recursion:
/// element `k` joins an existing block or opens a new one.
pub fn partitions_of(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(k: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(k);
            go(k + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![k]);
        go(k + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Joint cumulant from the classic set-partition formula over the multiset
/// of variables: `kappa = sum_pi (|pi|-1)! (-1)^(|pi|-1) prod_B mu(B)`.
pub fn cumulant_by_set_partitions(moments: &MomentTable, index: &MultiIndex) -> Rational {
    let labels: Vec<usize> = index
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(t, &e)| std::iter::repeat_n(t, e as usize))
        .collect();
    let d = index.len();
    let mut total = Rational::zero();
    for pi in partitions_of(labels.len()) {
        let k = pi.len();
        let mut term = Rational::from_integer(factorial_int(k - 1));
        if k % 2 == 0 {
            term = -term;
        }
        for block in &pi {
            let mut exps = vec![0u32; d];
            for &i in block {
                exps[labels[i]] += 1;
            }
            term *= moments.get(&MultiIndex::new(exps));
        }
        total += term;
    }
    total
}

pub fn factorial_int(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Bell numbers from `B_(n+1) = sum_k C(n, k) B_k`.
pub fn bell_binomial_sum(max: usize) -> Vec<BigUint> {
    let mut bells = vec![BigUint::one()];
    for n in 0..max {
        let mut c = BigUint::one();
        let mut next = BigUint::zero();
        for (k, b) in bells.iter().enumerate() {
            next += &c * b;
            c = c * BigUint::from(n - k) / BigUint::from(k + 1);
        }
        bells.push(next);
    }
    bells
}

/// Perfect matchings of `0..n` counted by fixing the first element's partner.
pub fn brute_force_matchings(n: usize) -> u64 {
    fn go(free: &mut Vec<bool>) -> u64 {
        let Some(first) = free.iter().position(|&f| f) else { return 1 };
        free[first] = false;
        let mut count = 0;
        for j in first + 1..free.len() {
            if free[j] {
                free[j] = false;
                count += go(free);
                free[j] = true;
            }
        }
        free[first] = true;
        count
    }
    go(&mut vec![true; n])
}

/// Union-find connectivity on `num_vertices` vertices ignoring edge `skip`.
pub fn connected_without(num_vertices: usize, edges: &[(usize, usize)], skip: Option<usize>) -> bool {
    let mut parent: Vec<usize> = (0..num_vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..num_vertices).all(|x| find(&mut parent, x) == root)
}
