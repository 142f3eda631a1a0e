//! Property-based invariants for the arithmetic, verifier, and
//! constructions.

use proptest::prelude::*;

use covset::arith::{factorize, gcd, mod_inv, mod_pow, multiplicative_order};
use covset::construct::construct_general;
use covset::cover::{product_set, verify};
use covset::{CoveringSet, ErrorSpec, Method};

fn spec_strategy(max_q: u64) -> impl Strategy<Value = ErrorSpec> {
    (2..=max_q)
        .prop_flat_map(|q| (Just(q), 0..q, 0..q))
        .prop_filter_map("lambda + mu >= 1", |(q, lambda, mu)| {
            ErrorSpec::new(q, lambda, mu).ok()
        })
}

fn spec_and_set(max_q: u64) -> impl Strategy<Value = (ErrorSpec, CoveringSet)> {
    spec_strategy(max_q).prop_flat_map(|spec| {
        let q = spec.q();
        (
            Just(spec),
            proptest::collection::vec(0..q, 0..=(q as usize).min(24)),
        )
            .prop_map(|(spec, elements)| {
                let set = CoveringSet::new(spec.q(), elements, Method::Explicit).unwrap();
                (spec, set)
            })
    })
}

proptest! {
    #[test]
    fn factorize_recomposes(n in 1u64..5_000_000) {
        let f = factorize(n).unwrap();
        let product: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(product, n);
        // strictly descending prime powers
        let powers: Vec<u64> = f.factors().iter().map(|&(p, e)| p.pow(e)).collect();
        prop_assert!(powers.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn mod_inv_inverts(
        (a, m) in (1u64..100_000, 2u64..100_000)
            .prop_filter("coprime", |&(a, m)| gcd(a, m) == 1)
    ) {
        let x = mod_inv(a, m).unwrap();
        prop_assert!(x >= 1 && x < m);
        prop_assert_eq!(a % m * x % m, 1 % m);
    }

    #[test]
    fn order_divides_prime_group_order(seed in 0u64..10_000) {
        // map the seed into an odd prime and a unit
        let p = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][(seed % 10) as usize];
        let a = 1 + seed % (p - 1);
        let t = multiplicative_order(a, p).unwrap();
        prop_assert_eq!((p - 1) % t, 0);
        prop_assert_eq!(mod_pow(a, t, p), 1);
        for d in 1..t {
            if t.is_multiple_of(d) {
                prop_assert_ne!(mod_pow(a, d, p), 1);
            }
        }
    }

    #[test]
    fn negation_duality((spec, set) in spec_and_set(48)) {
        let direct = verify(&spec, &set).unwrap();
        let negated = verify(&spec.swapped(), &set.negate()).unwrap();
        prop_assert_eq!(direct.is_covering, negated.is_covering);
        prop_assert_eq!(direct.is_packing, negated.is_packing);
        prop_assert_eq!(direct.product_count, negated.product_count);
    }

    #[test]
    fn unit_scaling_preserves_verdicts(
        (spec, set, u) in spec_and_set(48)
            .prop_flat_map(|(spec, set)| {
                let q = spec.q();
                (Just(spec), Just(set), 1..q.max(2))
            })
            .prop_filter("u must be a unit", |&(spec, _, u)| gcd(u, spec.q()) == 1)
    ) {
        let q = spec.q();
        let scaled: Vec<u64> = set.elements().iter().map(|&s| u * s % q).collect();
        let scaled = CoveringSet::new(q, scaled, Method::Explicit).unwrap();
        let a = verify(&spec, &set).unwrap();
        let b = verify(&spec, &scaled).unwrap();
        prop_assert_eq!(a.is_covering, b.is_covering);
        prop_assert_eq!(a.is_packing, b.is_packing);
        prop_assert_eq!(a.product_count, b.product_count);
    }

    #[test]
    fn adding_an_element_is_monotone(
        (spec, set, extra) in spec_and_set(48).prop_flat_map(|(spec, set)| {
            let q = spec.q();
            (Just(spec), Just(set), 0..q)
        })
    ) {
        let mut grown = set.elements().to_vec();
        grown.push(extra);
        let grown = CoveringSet::new(spec.q(), grown, Method::Explicit).unwrap();
        let before = verify(&spec, &set).unwrap();
        let after = verify(&spec, &grown).unwrap();
        prop_assert!(after.covered_count >= before.covered_count);
    }

    #[test]
    fn product_count_trivial_bound((spec, set) in spec_and_set(48)) {
        let report = verify(&spec, &set).unwrap();
        let cap = (spec.magnitude_count() * set.len() as u64).min(spec.q());
        prop_assert!(report.product_count <= cap);
        prop_assert_eq!(report.covered_count + report.missing.len() as u64, spec.q());
        prop_assert_eq!(report.is_covering, report.missing.is_empty());
    }

    #[test]
    fn packing_means_distinct_products((spec, set) in spec_and_set(32)) {
        // recount through an independent path
        let report = verify(&spec, &set).unwrap();
        let mut all: Vec<u64> = Vec::new();
        for &s in set.elements() {
            for m in -(spec.mu() as i64)..=(spec.lambda() as i64) {
                if m != 0 {
                    all.push(m.rem_euclid(spec.q() as i64) as u64 * s % spec.q());
                }
            }
        }
        let total = all.len() as u64;
        all.sort_unstable();
        all.dedup();
        prop_assert_eq!(report.product_count, all.len() as u64);
        prop_assert_eq!(report.is_packing, all.len() as u64 == total);
        prop_assert_eq!(product_set(&spec, &set).unwrap(), all);
    }

    #[test]
    fn construction_covers_and_meets_lower_bound(spec in spec_strategy(400)) {
        let set = construct_general(&spec);
        let report = verify(&spec, &set).unwrap();
        prop_assert!(report.is_covering);
        if spec.magnitude_count() < spec.q() {
            prop_assert!(set.len() as u64 >= spec.q().div_ceil(spec.magnitude_count()));
        }
    }

    #[test]
    fn negation_branch_matches_swapped_construction(
        // the trivial-pair branch fires before the negation reduction, so
        // restrict to mu-dominant specs below it
        spec in spec_strategy(300).prop_filter("mu-dominant, nontrivial", |sp| {
            sp.mu() > sp.lambda() && sp.magnitude_count() < sp.q() - 1
        })
    ) {
        let direct = construct_general(&spec);
        let negated = construct_general(&spec.swapped()).negate();
        prop_assert_eq!(direct.elements(), negated.elements());
    }
}
