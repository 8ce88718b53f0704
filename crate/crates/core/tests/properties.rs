mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use discovery_core::{
    shortest_path_subgraph, solve, verify_certificate, Algorithm, DiscoveryInstance, Dist, Violation, WeightedDigraph,
};

use common::{exact_options, random_instance};

fn instance(seed: u64) -> DiscoveryInstance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 7, 4)
}

/// Bellman-Ford distances from `s`, independent of the library's routines.
fn bellman_ford(g: &WeightedDigraph, s: usize, reversed: bool) -> Vec<Option<i64>> {
    let mut d = vec![None; g.vertex_count()];
    d[s] = Some(0);
    for _ in 0..g.vertex_count() {
        for e in g.edges() {
            let (a, b) = if reversed { (e.head, e.tail) } else { (e.tail, e.head) };
            if let Some(x) = d[a] {
                if d[b].is_none_or(|y| x + e.weight < y) {
                    d[b] = Some(x + e.weight);
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assert_eq!(DiscoveryInstance::from_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn certificates_verify(seed in any::<u64>()) {
        let inst = instance(seed);
        let r = solve(&inst, Algorithm::Auto, &exact_options(&inst)).unwrap();
        prop_assert_eq!(r.is_yes(), r.optimal_cost.within(inst.budget()));
        if let Some(cert) = &r.certificate {
            let v = verify_certificate(&inst, cert);
            prop_assert!(v.valid, "{}", v.detail);
            prop_assert_eq!(Dist::Finite(cert.cost), r.optimal_cost);

            let mut wrong = cert.clone();
            wrong.cost += 1;
            prop_assert_eq!(verify_certificate(&inst, &wrong).violation, Some(Violation::CostMismatch));
        }
    }

    #[test]
    fn optimal_cost_ignores_budget(seed in any::<u64>(), budget in -2i64..12) {
        let inst = instance(seed);
        let other = inst.with_budget(budget).unwrap();
        let a = solve(&inst, Algorithm::FptK, &exact_options(&inst)).unwrap();
        let b = solve(&other, Algorithm::FptK, &exact_options(&other)).unwrap();
        prop_assert_eq!(a.optimal_cost, b.optimal_cost);
        prop_assert_eq!(b.is_yes(), b.optimal_cost.within(budget));
    }

    #[test]
    fn extra_token_never_costs_more(seed in any::<u64>(), at in any::<prop::sample::Index>()) {
        let inst = instance(seed);
        let mut tokens = inst.tokens().to_vec();
        tokens.push(at.index(inst.vertex_count()));
        let more = inst.with_tokens(tokens).unwrap();
        let a = solve(&inst, Algorithm::FptK, &exact_options(&inst)).unwrap();
        let b = solve(&more, Algorithm::FptK, &exact_options(&more)).unwrap();
        prop_assert!(b.optimal_cost <= a.optimal_cost);
    }

    #[test]
    fn star_holds_exactly_the_tight_arcs(seed in any::<u64>()) {
        let inst = instance(seed);
        let g = inst.problem();
        let ds = bellman_ford(g, inst.s(), false);
        let dt = bellman_ford(g, inst.t(), true);
        match shortest_path_subgraph(g, inst.s(), inst.t()) {
            Err(_) => prop_assert!(ds[inst.t()].is_none()),
            Ok((star, d)) => {
                prop_assert_eq!(Some(d), ds[inst.t()]);
                let tight: Vec<_> = g
                    .edges()
                    .iter()
                    .filter(|e| matches!((ds[e.tail], dt[e.head]), (Some(a), Some(b)) if a + e.weight + b == d))
                    .collect();
                prop_assert_eq!(star.edges().len(), tight.len());
                for e in tight {
                    prop_assert!(star.edges().contains(e));
                }
            }
        }
    }
}
