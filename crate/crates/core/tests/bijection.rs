use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use perm321::catalan::{catalan, catalan_table, noonan_closed};
use perm321::oracle::{all_permutations, Oracle};
use perm321::{
    brute_count_exactly_k, brute_noonan_set, compose, decompose, enumerate_noonan,
    enumerate_sigma1, enumerate_sigma2, Decomposition, Generator, Permutation,
};
use proptest::prelude::*;

fn oracle_set(n: usize) -> Vec<Permutation> {
    brute_noonan_set(n).unwrap().collect()
}

fn all_decompositions(n: usize) -> Vec<Decomposition> {
    let mut out = Vec::new();
    for b in 2..n {
        let sigma2s: Vec<_> = enumerate_sigma2(b, n).unwrap().collect();
        for s1 in enumerate_sigma1(b).unwrap() {
            for s2 in &sigma2s {
                out.push(Decomposition::new(b as u32, s1.clone(), s2.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn compose_inverts_decompose_on_oracle_set() {
    for n in 3..=8 {
        for perm in oracle_set(n) {
            let d = decompose(&perm).unwrap();
            assert_eq!(d.n(), n);
            assert_eq!(compose(&d).unwrap(), perm);
        }
    }
}

#[test]
fn decompose_inverts_compose_on_all_pairs() {
    for n in 3..=8 {
        for d in all_decompositions(n) {
            let perm = compose(&d).unwrap();
            assert_eq!(decompose(&perm).unwrap(), d);
        }
    }
}

#[test]
fn image_counts_per_b_are_products() {
    let c = catalan_table(10);
    for n in 3..=8 {
        let mut by_b: BTreeMap<u32, u64> = BTreeMap::new();
        for perm in oracle_set(n) {
            *by_b.entry(decompose(&perm).unwrap().b()).or_default() += 1;
        }
        for b in 2..n {
            let expected = (&c[b] - &c[b - 1]) * (&c[n - b + 1] - &c[n - b]);
            let got = BigInt::from(by_b.get(&(b as u32)).copied().unwrap_or(0));
            assert_eq!(got, expected, "n = {n}, b = {b}");
        }
        assert!(by_b.keys().all(|&b| (2..n as u32).contains(&b)));
    }
}

#[test]
fn entries_around_the_middle_value() {
    // left of b only c exceeds b; right of b only a is below b
    for n in 3..=8 {
        for perm in oracle_set(n) {
            let occ = perm321::find_unique_321(&perm).unwrap();
            let (i, j, k) = occ.positions;
            let v = perm.values();
            for (pos, &x) in v.iter().enumerate().map(|(p, x)| (p + 1, x)) {
                if pos < j && pos != i {
                    assert!(x < occ.b, "{perm}");
                }
                if pos > j && pos != k {
                    assert!(x > occ.b, "{perm}");
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_oracle_as_sets() {
    for n in 0..=8 {
        let via_bijection: BTreeSet<Permutation> =
            enumerate_noonan(n).unwrap().map(Result::unwrap).collect();
        let via_oracle: BTreeSet<Permutation> = oracle_set(n).into_iter().collect();
        assert_eq!(via_bijection, via_oracle, "n = {n}");
        if n >= 1 {
            assert_eq!(
                BigInt::from(via_bijection.len()),
                noonan_closed(n as u64).unwrap()
            );
        }
    }
}

#[test]
fn enumeration_order_is_b_then_sigma1_then_sigma2() {
    let n = 7;
    let listed: Vec<Decomposition> = enumerate_noonan(n)
        .unwrap()
        .map(|p| decompose(&p.unwrap()).unwrap())
        .collect();
    let keys: Vec<_> = listed
        .iter()
        .map(|d| (d.b(), d.sigma1().clone(), d.sigma2().clone()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn bijective_count_matches_closed_form() {
    for n in 1..=11 {
        assert_eq!(
            Generator::default().count_noonan(n).unwrap(),
            noonan_closed(n as u64).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn oracle_reproduces_catalan_and_noonan() {
    let pattern = Permutation::reverse_identity(3);
    for n in 0..=9 {
        assert_eq!(
            brute_count_exactly_k(n, &pattern, 0).unwrap(),
            catalan(n as u64),
            "n = {n}"
        );
        if n >= 1 {
            assert_eq!(
                brute_count_exactly_k(n, &pattern, 1).unwrap(),
                noonan_closed(n as u64).unwrap(),
                "n = {n}"
            );
        }
    }
}

#[test]
fn oracle_classes_partition_all_permutations() {
    let pattern = Permutation::reverse_identity(3);
    let mut factorial = BigInt::from(1);
    for n in 0..=7usize {
        if n > 0 {
            factorial *= n;
        }
        let max_k = (n * n.saturating_sub(1) * n.saturating_sub(2) / 6) as u64;
        let total: BigInt = (0..=max_k)
            .map(|k| brute_count_exactly_k(n, &pattern, k).unwrap())
            .sum();
        assert_eq!(total, factorial, "n = {n}");
    }
}

#[test]
fn oracle_is_independent_of_thread_count() {
    let pattern = Permutation::reverse_identity(3);
    let reference = Oracle::default()
        .sequential()
        .count_exactly_k(8, &pattern, 1)
        .unwrap();
    for threads in [1, 2, 3, 8] {
        let got = perm321::with_threads(Some(threads), || {
            Oracle::default().count_exactly_k(8, &pattern, 1).unwrap()
        });
        assert_eq!(got, reference);
    }
    assert_eq!(
        Oracle::default().noonan_set(7).unwrap(),
        Oracle::default().sequential().noonan_set(7).unwrap()
    );
}

#[test]
fn oracle_set_is_lexicographic() {
    let set = oracle_set(7);
    assert!(set.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(all_permutations(7).count(), 5040);
}

fn decomposition_strategy() -> impl Strategy<Value = Decomposition> {
    (3usize..=9)
        .prop_flat_map(|n| (Just(n), 2..n))
        .prop_flat_map(|(n, b)| {
            let s1: Vec<_> = enumerate_sigma1(b).unwrap().collect();
            let s2: Vec<_> = enumerate_sigma2(b, n).unwrap().collect();
            (
                Just(b),
                proptest::sample::select(s1),
                proptest::sample::select(s2),
            )
        })
        .prop_map(|(b, s1, s2)| Decomposition::new(b as u32, s1, s2).unwrap())
}

proptest! {
    #[test]
    fn decomposition_text_round_trips(d in decomposition_strategy()) {
        let parsed: Decomposition = d.to_string().parse().unwrap();
        prop_assert_eq!(parsed, d);
    }

    #[test]
    fn composed_permutations_have_one_occurrence(d in decomposition_strategy()) {
        let perm = compose(&d).unwrap();
        prop_assert_eq!(perm321::count_321(&perm), BigInt::from(1));
        prop_assert_eq!(perm.len(), d.n());
    }
}
