//! Property tests: conjugation invariances, oracle equivalence on random
//! instances, projection round trips, and format round trips.

use num_rational::BigRational;
use proptest::prelude::*;

use permanental::crp::{ewens_pmf, rising_factorial, EwensParams};
use permanental::graphs::{DirectedGraph, Permutation};
use permanental::permanent::{alpha_permanent_graph_bruteforce, cycle_polynomial};
use permanental::projection::{
    delete_and_repair, permutation_dr_preimages, preimages_dr, preimages_ss, subselect,
};
use permanental::rational::{format_rational, parse_rational};

fn graph_strategy(n: usize) -> impl Strategy<Value = DirectedGraph> {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    proptest::collection::vec(any::<u64>().prop_map(move |r| r & mask), n)
        .prop_map(move |rows| DirectedGraph::new(n, rows).unwrap())
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            image.swap(i, j);
        }
        Permutation::from_image(image).unwrap()
    })
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cycle_polynomial_is_conjugation_invariant(
        g in graph_strategy(6),
        tau in permutation_strategy(6),
    ) {
        prop_assert_eq!(
            cycle_polynomial(&g.conjugate(&tau).unwrap()).unwrap(),
            cycle_polynomial(&g).unwrap()
        );
    }

    #[test]
    fn containment_commutes_with_conjugation(
        g in graph_strategy(5),
        sigma in permutation_strategy(5),
        tau in permutation_strategy(5),
    ) {
        prop_assert_eq!(
            g.conjugate(&tau).unwrap()
                .contains_permutation(&sigma.conjugate_by(&tau).unwrap()).unwrap(),
            g.contains_permutation(&sigma).unwrap()
        );
    }

    #[test]
    fn dp_equals_oracle_on_random_graphs(
        g in graph_strategy(5),
        alpha in small_rational(),
    ) {
        prop_assert_eq!(
            cycle_polynomial(&g).unwrap().evaluate(&alpha),
            alpha_permanent_graph_bruteforce(&g, &alpha).unwrap()
        );
    }

    #[test]
    fn ss_fibres_round_trip(g in graph_strategy(3)) {
        let fibre = preimages_ss(&g).unwrap();
        prop_assert_eq!(fibre.len(), 1 << 7);
        for member in fibre.iter() {
            prop_assert_eq!(subselect(member).unwrap(), g.clone());
        }
    }

    #[test]
    fn dr_fibres_round_trip_without_duplicates(g in graph_strategy(3)) {
        let fibre = preimages_dr(&g).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for member in fibre.iter() {
            prop_assert_eq!(delete_and_repair(member).unwrap(), g.clone());
            prop_assert!(seen.insert(member.rows().to_vec()), "duplicate member");
        }
    }

    #[test]
    fn permutation_preimages_splice_correctly(sigma in permutation_strategy(7)) {
        let preimages = permutation_dr_preimages(&sigma);
        prop_assert_eq!(preimages.len(), 8);
        let gained = preimages
            .iter()
            .filter(|p| p.cycle_count() == sigma.cycle_count() + 1)
            .count();
        prop_assert_eq!(gained, 1);
        for p in &preimages {
            prop_assert_eq!(p.cycle_count() >= sigma.cycle_count(), true);
            prop_assert_eq!(
                delete_and_repair(&p.to_graph()).unwrap(),
                sigma.to_graph()
            );
        }
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(6)) {
        let text = g.to_string();
        prop_assert_eq!(DirectedGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn rational_text_round_trips(p in -999i64..=999, q in 1i64..=999) {
        let r = BigRational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn ewens_mass_sums_to_one(alpha in small_rational()) {
        let params = EwensParams::new(4, alpha.clone()).unwrap();
        let total: BigRational = Permutation::enumerate(4)
            .unwrap()
            .map(|s| ewens_pmf(&s, &params).unwrap())
            .sum();
        prop_assert_eq!(total, BigRational::from_integer(1.into()));
    }

    #[test]
    fn rising_factorial_recursion(alpha in small_rational(), n in 1usize..8) {
        // rising(alpha, n) = (alpha + n - 1) * rising(alpha, n - 1)
        let lhs = rising_factorial(&alpha, n);
        let step = &alpha + BigRational::from_integer(((n - 1) as i64).into());
        prop_assert_eq!(lhs, step * rising_factorial(&alpha, n - 1));
    }

    #[test]
    fn edge_count_is_conjugation_invariant(
        g in graph_strategy(7),
        tau in permutation_strategy(7),
    ) {
        prop_assert_eq!(g.conjugate(&tau).unwrap().edge_count(), g.edge_count());
    }
}
