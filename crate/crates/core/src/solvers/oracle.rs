//! Ground truth by exhaustive path enumeration.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::DiscoveryInstance;
use crate::matching::TokenDistances;
use crate::shortest::hops_to;

use super::{conclude, improve, no_path, Prepared, SolveOptions, SolveResult, Stats};

/// Prices every simple s-t path with at most `k` vertices (in the
/// shortest-path subgraph for the shortest variant) and keeps the cheapest.
pub fn oracle_solve(instance: &DiscoveryInstance, options: &SolveOptions) -> Result<SolveResult> {
    let caps = &options.caps;
    if instance.vertex_count() > caps.max_oracle_vertices {
        return Err(Error::InstanceTooLarge(format!(
            "{} vertices exceed the oracle limit {}",
            instance.vertex_count(),
            caps.max_oracle_vertices
        )));
    }
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let tokens = TokenDistances::new(instance);
    let limit = caps.max_path_vertices.map_or(instance.k(), |c| c.min(instance.k()));

    let mut best: Option<(i64, Vec<Vertex>)> = None;
    let mut paths = 0u64;
    let mut overflow = false;
    for_each_st_path(&prep, limit, &mut |path| {
        paths += 1;
        if paths > caps.max_paths {
            overflow = true;
            return false;
        }
        if let Some(cost) = tokens.realization_cost(path) {
            improve(&mut best, cost, || path.to_vec());
            if options.decision_only && cost <= instance.budget() {
                return false;
            }
        }
        true
    });
    if overflow {
        return Err(Error::CapExceeded { paths: caps.max_paths });
    }
    stats.set("paths_enumerated", paths);
    Ok(conclude(instance, &tokens, best.map(|(_, p)| p), stats))
}

/// Depth-first enumeration of simple s-t paths with at most `limit` vertices
/// in adjacency order. The visitor returns `false` to stop.
pub(crate) fn for_each_st_path(prep: &Prepared, limit: usize, visit: &mut dyn FnMut(&[Vertex]) -> bool) {
    let g = &prep.graph;
    let (s, t) = (prep.instance.s(), prep.instance.t());
    if limit < 2 {
        return;
    }
    let hops = hops_to(g, t);
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = vec![s];
    on_path[s] = true;
    // Stack of next-arc indices, one per path vertex.
    let mut cursor = vec![0usize];
    while let Some(&v) = path.last() {
        let i = *cursor.last().unwrap();
        let arcs = g.out_edges(v);
        if i >= arcs.len() {
            on_path[v] = false;
            path.pop();
            cursor.pop();
            continue;
        }
        *cursor.last_mut().unwrap() += 1;
        let w = arcs[i].0;
        if on_path[w] || hops[w] == usize::MAX || path.len() + 1 + hops[w] > limit {
            continue;
        }
        if w == t {
            path.push(t);
            let go_on = visit(&path);
            path.pop();
            if !go_on {
                return;
            }
            continue;
        }
        on_path[w] = true;
        path.push(w);
        cursor.push(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Dist;
    use crate::graph::WeightedDigraph;
    use crate::instance::{Movement, Variant};
    use crate::solvers::Answer;

    #[test]
    fn no_st_path() {
        let g = WeightedDigraph::new(3, [(0, 1, 1)]).unwrap();
        let inst = DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 2, vec![0, 1, 2], 9, Variant::Path)
            .unwrap();
        let r = oracle_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::Infinite));
    }

    #[test]
    fn diamond_prefers_cheaper_route() {
        // s=0, a=1, b=2, t=3, x=4; x reaches a for 2 and b for 5.
        let g = WeightedDigraph::new(5, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]).unwrap();
        let m = WeightedDigraph::new(5, [(4, 1, 2), (4, 2, 5)]).unwrap();
        let inst = DiscoveryInstance::new(g, Movement::Explicit(m), 0, 3, vec![0, 3, 4], 10, Variant::Path).unwrap();
        let r = oracle_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.optimal_cost, Dist::Finite(2));
        assert_eq!(r.certificate.unwrap().path, vec![0, 1, 3]);
        assert_eq!(r.stats.get("paths_enumerated"), 2);
    }

    #[test]
    fn too_few_tokens_for_any_path() {
        let g = WeightedDigraph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let inst = DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 2, vec![0, 2], 1000, Variant::Path)
            .unwrap();
        let r = oracle_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::Infinite));
    }

    #[test]
    fn cap_exceeded() {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]).unwrap();
        let inst = DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 3, vec![0; 3], 9, Variant::Path)
            .unwrap();
        let mut options = SolveOptions::default();
        options.caps.max_paths = 1;
        assert_eq!(oracle_solve(&inst, &options), Err(Error::CapExceeded { paths: 1 }));
    }
}
