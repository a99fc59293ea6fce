//! Cross-module invariants: duality, sandwiches, monotonicity, closed forms
//! against enumeration, and the oracle-level reduction chain.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

use hm_core::comb::{binomial_i, subsets};
use hm_core::ratio::{ceil_u64, rat, rat_u, Rat};
use hm_core::reduction::{bottom_d_rescale, tight_expansion, RescaleOutcome};
use hm_core::solver::{certify, nu_frac, nu_integral, trivial_upper_bound};
use hm_core::threshold::{brute_force_threshold, f_formula, Mode, ThresholdQuery};
use hm_core::{random_graph, Hypergraph, Limits, VertexSet};

fn probabilities() -> Vec<Rat> {
    vec![rat(1, 4), rat(1, 2), rat(3, 4)]
}

/// Seeded random instance with k in `k_range` and n up to k + extra.
fn instance(
    k_range: std::ops::RangeInclusive<u32>,
    max_extra: u32,
) -> impl Strategy<Value = Hypergraph> {
    (k_range, 0..=max_extra, any::<u64>(), 0usize..3).prop_map(|(k, extra, seed, pi)| {
        random_graph(k + extra, k, &probabilities()[pi], seed).expect("valid parameters")
    })
}

fn query(n: u32, k: u32, d: u32, s: i64, mode: Mode) -> ThresholdQuery {
    ThresholdQuery { n, k, d, s: rat(s, 1), mode }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn duality_sandwich_and_certificates(h in instance(2..=4, 4)) {
        let limits = Limits::default();
        let out = nu_frac(&h);
        prop_assert_eq!(out.primal.size(), out.value.clone());
        prop_assert_eq!(out.dual.size(), out.value.clone());
        let verdict = certify(&h, &out.primal, &out.dual).unwrap();
        prop_assert!(verdict.optimal);
        let (nu, matching) = nu_integral(&h, &limits).unwrap();
        prop_assert!(rat_u(nu) <= out.value);
        prop_assert!(out.value <= trivial_upper_bound(&h));
        // the witness really is a matching of the reported size
        prop_assert_eq!(matching.len() as u64, nu);
        let verdict = certify(
            &h,
            &hm_core::EdgeWeighting::unit(matching),
            &hm_core::VertexWeighting::constant(h.n(), Rat::one()),
        )
        .unwrap();
        prop_assert!(verdict.matching_feasible);
    }

    #[test]
    fn nu_frac_monotone_under_edge_insertion(h in instance(2..=3, 4), rot in any::<u64>()) {
        let mut current = h.clone();
        let mut value = nu_frac(&current).value;
        let mut missing: Vec<Vec<u32>> = subsets(h.n(), h.k())
            .filter(|e| !h.contains_edge(e))
            .collect();
        if !missing.is_empty() {
            let shift = (rot % missing.len() as u64) as usize;
            missing.rotate_left(shift);
        }
        for edge in missing.into_iter().take(4) {
            let mut edges: Vec<_> = current.edges().to_vec();
            edges.push(edge);
            current = Hypergraph::build(current.n(), current.k(), edges).unwrap();
            let next = nu_frac(&current).value;
            prop_assert!(next >= value, "nu' dropped from {value} to {next}");
            value = next;
        }
    }

    #[test]
    fn graphs_are_half_integral(h in instance(2..=2, 5)) {
        let out = nu_frac(&h);
        let two = BigInt::from(2);
        prop_assert!(out.value.denom() == &BigInt::one() || out.value.denom() == &two);
        for x in out.primal.weights.values() {
            prop_assert!(x.denom() == &BigInt::one() || x.denom() == &two);
        }
    }

    #[test]
    fn build_ignores_input_order(h in instance(2..=4, 4), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<Vec<u32>> = h
            .edges()
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.reverse();
                e
            })
            .collect();
        edges.shuffle(&mut rng);
        let rebuilt = Hypergraph::build(h.n(), h.k(), edges).unwrap();
        prop_assert_eq!(&rebuilt, &h);
        // idempotence
        let again = Hypergraph::build(h.n(), h.k(), rebuilt.edges().to_vec()).unwrap();
        prop_assert_eq!(&again, &h);
    }

    #[test]
    fn degree_counts_link_edges(h in instance(2..=4, 4), pick in any::<u64>()) {
        for d in 1..h.k() {
            let all: Vec<_> = subsets(h.n(), d).collect();
            let set = VertexSet::new(all[(pick % all.len() as u64) as usize].clone()).unwrap();
            let (link, _) = h.link(&set).unwrap();
            prop_assert_eq!(h.d_degree(&set).unwrap(), link.edge_count());
            prop_assert_eq!(link.n(), h.n() - d);
            prop_assert_eq!(link.k(), h.k() - d);
        }
    }

    #[test]
    fn tight_expansion_monotone_in_cover(h in instance(2..=3, 4), v in any::<u32>()) {
        let out = nu_frac(&h);
        let small = out.dual;
        let mut large = small.clone();
        large.weights[(v % h.n()) as usize] += rat(1, 2);
        let e_small = tight_expansion(&h, &small).unwrap();
        let e_large = tight_expansion(&h, &large).unwrap();
        for edge in e_small.edges() {
            prop_assert!(e_large.contains_edge(edge));
        }
    }

    #[test]
    fn rescale_is_deterministic(h in instance(3..=3, 4)) {
        let cover = nu_frac(&h).dual;
        for d in 1..h.k() {
            let a = bottom_d_rescale(&cover, d, h.k()).unwrap();
            let b = bottom_d_rescale(&cover, d, h.k()).unwrap();
            match (a, b) {
                (
                    RescaleOutcome::EarlyExit { w0: wa, bound: ba },
                    RescaleOutcome::EarlyExit { w0: wb, bound: bb },
                ) => {
                    prop_assert_eq!(wa, wb);
                    prop_assert_eq!(ba, bb);
                }
                (
                    RescaleOutcome::Rescaled { s: sa, w0: wa, w2: ra },
                    RescaleOutcome::Rescaled { s: sb, w0: wb, w2: rb },
                ) => {
                    prop_assert_eq!(sa, sb);
                    prop_assert_eq!(wa, wb);
                    prop_assert_eq!(ra, rb);
                }
                _ => prop_assert!(false, "branches disagree between runs"),
            }
        }
    }
}

#[test]
fn extremal_family_matches_closed_forms() {
    // minimum d-degree by enumeration equals the binomial expression, and
    // the LP value equals ceil(s) - 1, over a desk-scale grid
    for n in 3..=8u32 {
        for k in 2..=n.min(4) {
            for num in 1..=(2 * n / k) as i64 {
                let s = rat(num, 2); // half-integer grid up to n/k
                if &s * &rat_u(k as u64) > rat_u(n as u64) {
                    continue;
                }
                let h = Hypergraph::extremal(n, k, &s).unwrap();
                let cover = ceil_u64(&s).unwrap() as i64 - 1;
                for d in 0..k {
                    let (delta, _) = h.min_d_degree(d).unwrap();
                    let expected = binomial_i((n - d) as i64, (k - d) as i64)
                        - binomial_i((n - d) as i64 - cover, (k - d) as i64);
                    assert_eq!(
                        BigInt::from(delta),
                        expected,
                        "degree mismatch at ({n},{k},{s},{d})"
                    );
                }
                if n <= 7 {
                    assert_eq!(
                        nu_frac(&h).value,
                        rat(cover, 1),
                        "nu' of extremal({n},{k},{s})"
                    );
                }
            }
        }
    }
}

#[test]
fn links_of_complete_graphs_are_complete() {
    for n in 4..=7u32 {
        for k in 2..=4.min(n - 1) {
            let h = Hypergraph::complete(n, k).unwrap();
            for d in 1..k {
                for set in subsets(n, d) {
                    let s = VertexSet::new(set).unwrap();
                    let (link, _) = h.link(&s).unwrap();
                    assert_eq!(link, Hypergraph::complete(n - d, k - d).unwrap());
                }
            }
        }
    }
}

#[test]
fn oracle_respects_reduction_chain() {
    // f_d^s(k, n) <= f_0^s(k-d, n-d), both sides by brute force
    let limits = Limits::default();
    let cells = [
        (5u32, 3u32, 1u32, 1i64),
        (5, 3, 2, 1),
        (6, 3, 1, 2),
        (6, 2, 1, 1),
        (6, 2, 1, 2),
        (6, 2, 1, 3),
        (7, 2, 1, 2),
    ];
    for (n, k, d, s) in cells {
        let reduced = brute_force_threshold(&query(n, k, d, s, Mode::Fractional), &limits)
            .unwrap()
            .oracle
            .unwrap();
        let zero_degree = brute_force_threshold(&query(n - d, k - d, 0, s, Mode::Fractional), &limits)
            .unwrap()
            .oracle
            .unwrap();
        assert!(
            reduced <= zero_degree,
            "chain violated at ({n},{k},{d},{s}): {reduced} > {zero_degree}"
        );
    }
}

#[test]
fn oracle_never_beats_formula_on_3_graphs() {
    let limits = Limits::default();
    for (n, d, s) in [(5u32, 1u32, 1i64), (5, 2, 1), (6, 1, 2), (6, 2, 2)] {
        let q = query(n, 3, d, s, Mode::Fractional);
        let report = brute_force_threshold(&q, &limits).unwrap();
        let formula = f_formula(n, 3, d, &q.s).unwrap();
        assert!(
            BigInt::from(report.oracle.unwrap()) >= formula,
            "oracle below lower bound at ({n},3,{d},{s})"
        );
    }
}

#[test]
fn frozen_fractional_oracle_example() {
    // (6, 2, d=1, s=2): the 5-edge star has minimum degree 1, so the oracle
    // value is 2 and meets the formula exactly
    let limits = Limits::default();
    let report =
        brute_force_threshold(&query(6, 2, 1, 2, Mode::Fractional), &limits).unwrap();
    assert_eq!(report.oracle, Some(2));
    assert_eq!(report.formula, BigInt::from(2));
    assert!(!report.regime.theorem);
    assert!(report.regime.lower_bound_only);
}

#[test]
fn early_exit_bound_is_tight_when_taken() {
    // uniform covers trigger the early exit with bound n/k, and then the
    // instance really has a perfect fractional matching
    let h = Hypergraph::complete(6, 3).unwrap();
    let cover = nu_frac(&h).dual;
    match bottom_d_rescale(&cover, 2, 3).unwrap() {
        RescaleOutcome::EarlyExit { w0, bound } => {
            assert!(w0 >= rat(1, 3));
            assert_eq!(bound, rat(2, 1));
            assert_eq!(nu_frac(&h).value, bound);
        }
        RescaleOutcome::Rescaled { .. } => panic!("uniform cover must exit early"),
    }
    assert!(!cover.weights.iter().any(|w| w.is_negative()));
}
