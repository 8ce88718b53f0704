//! Token jumping: every move costs one, so a path costs the number of its
//! vertices without a token, and a layered shortest-path computation suffices.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::{DiscoveryInstance, MovementMode};
use crate::matching::TokenDistances;

use super::{conclude, no_path, Prepared, SolveOptions, SolveResult, Stats};

pub fn token_jumping_solve(instance: &DiscoveryInstance, _options: &SolveOptions) -> Result<SolveResult> {
    if instance.movement().mode() != MovementMode::TokenJumping {
        return Err(Error::AlgorithmPreconditionViolated(
            "jump requires the token jumping movement model".into(),
        ));
    }
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let g = &prep.graph;
    let n = g.vertex_count();
    let k = instance.k();
    let (s, t) = (instance.s(), instance.t());
    let occupied = instance.token_counts();
    let price = |v: Vertex| i64::from(occupied[v] == 0);

    // layers[i][v]: cheapest walk s..v with i + 1 vertices; pred holds the previous vertex.
    const NONE: usize = usize::MAX;
    let mut cost: Vec<Vec<i64>> = Vec::with_capacity(k);
    let mut pred: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut best: Option<(i64, usize)> = None;
    if k >= 1 {
        let mut first = vec![i64::MAX; n];
        first[s] = price(s);
        cost.push(first);
        pred.push(vec![NONE; n]);
    }
    for layer in 1..k {
        let prev = &cost[layer - 1];
        let mut next = vec![i64::MAX; n];
        let mut back = vec![NONE; n];
        for u in (0..n).filter(|&u| prev[u] != i64::MAX && u != t && prep.on_st_walk[u]) {
            for &(v, _) in g.out_edges(u) {
                let c = prev[u] + price(v);
                if c < next[v] {
                    next[v] = c;
                    back[v] = u;
                }
            }
        }
        stats.add("dp_states", next.iter().filter(|&&c| c != i64::MAX).count() as u64);
        if next[t] != i64::MAX && best.is_none_or(|(c, _)| next[t] < c) {
            best = Some((next[t], layer));
        }
        cost.push(next);
        pred.push(back);
    }
    let path = best.map(|(_, layer)| {
        let mut walk = vec![t];
        let mut v = t;
        for i in (1..=layer).rev() {
            v = pred[i][v];
            walk.push(v);
        }
        walk.reverse();
        strip_cycles(&walk)
    });
    let tokens = TokenDistances::new(instance);
    let result = conclude(instance, &tokens, path, stats);
    debug_assert!(best.is_none() || result.optimal_cost == best.unwrap().0.into());
    Ok(result)
}

/// Removes closed sub-walks so every vertex appears once.
pub(crate) fn strip_cycles(walk: &[Vertex]) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(i) = path.iter().position(|&u| u == v) {
            path.truncate(i);
        }
        path.push(v);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Dist;
    use crate::graph::WeightedDigraph;
    use crate::instance::{Movement, Variant};
    use crate::solvers::Answer;

    fn jumping(n: usize, arcs: &[(usize, usize, i64)], t: usize, tokens: Vec<usize>, budget: i64) -> DiscoveryInstance {
        let g = WeightedDigraph::new(n, arcs.iter().copied()).unwrap();
        DiscoveryInstance::new(g, Movement::Jumping(n), 0, t, tokens, budget, Variant::Path).unwrap()
    }

    #[test]
    fn two_jumps_onto_a_four_vertex_path() {
        // s=0 -> 1 -> 2 -> t=3; x=4, y=5 off the path.
        let inst = jumping(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)], 3, vec![0, 3, 4, 5], 2);
        let r = token_jumping_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::Yes, Dist::Finite(2)));
    }

    #[test]
    fn occupied_path_is_free() {
        let inst = jumping(3, &[(0, 1, 1), (1, 2, 1)], 2, vec![0, 1, 2], 0);
        let r = token_jumping_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::Yes, Dist::ZERO));
    }

    #[test]
    fn token_count_forces_the_short_path() {
        // Long route 0-1-2-3 is fully occupied but needs 4 tokens; short route 0-4-3.
        let inst = jumping(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 4, 1), (4, 3, 1)], 3, vec![0, 1, 3], 5);
        let r = token_jumping_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.optimal_cost, Dist::Finite(1));
        assert_eq!(r.certificate.unwrap().path, vec![0, 4, 3]);
    }

    #[test]
    fn cycles_are_stripped() {
        assert_eq!(strip_cycles(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(strip_cycles(&[0, 1, 2, 0, 3]), vec![0, 3]);
    }
}
