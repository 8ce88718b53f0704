//! Single-source distances in the problem and movement graphs, and the
//! shortest-path subgraph used to reduce the shortest-path variant to the
//! plain one.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph};

/// Distances from (or, when `reversed`, to) a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub from: Vertex,
    pub reversed: bool,
    pub dist: Vec<Dist>,
}

impl DistanceTable {
    pub fn get(&self, v: Vertex) -> Dist {
        self.dist[v]
    }
}

/// Label-setting distances for nonnegative weights.
pub fn movement_distances(m: &WeightedDigraph, source: Vertex) -> DistanceTable {
    DistanceTable { from: source, reversed: false, dist: dijkstra(m, source) }
}

pub(crate) fn dijkstra(m: &WeightedDigraph, source: Vertex) -> Vec<Dist> {
    let mut dist = vec![Dist::Infinite; m.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = Dist::ZERO;
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if Dist::Finite(d) > dist[u] {
            continue;
        }
        for &(v, w) in m.out_edges(u) {
            debug_assert!(w >= 0, "movement weights are nonnegative");
            let nd = Dist::Finite(d + w);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    dist
}

/// Label-correcting distances that tolerate negative arcs. The graph must not
/// contain a negative cycle; with `reversed` the table holds distances *to*
/// `source`.
pub fn problem_distances(g: &WeightedDigraph, source: Vertex, reversed: bool) -> DistanceTable {
    let n = g.vertex_count();
    let mut dist = vec![Dist::Infinite; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    dist[source] = Dist::ZERO;
    queue.push_back(source);
    queued[source] = true;
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        let du = dist[u];
        let arcs = if reversed { g.in_edges(u) } else { g.out_edges(u) };
        for &(v, w) in arcs {
            let nd = du + w;
            if nd < dist[v] {
                dist[v] = nd;
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceTable { from: source, reversed, dist }
}

/// Bellman-Ford from a virtual source joined to every vertex; a relaxation
/// still succeeding after `n` rounds certifies a negative cycle.
pub fn has_negative_cycle(g: &WeightedDigraph) -> bool {
    let n = g.vertex_count();
    let mut pot = vec![0i64; n];
    for _ in 0..n {
        let mut changed = false;
        for e in g.edges() {
            if pot[e.tail] + e.weight < pot[e.head] {
                pot[e.head] = pot[e.tail] + e.weight;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    g.edges().iter().any(|e| pot[e.tail] + e.weight < pot[e.head])
}

/// The subgraph whose s-t paths are exactly the shortest s-t paths of `g`,
/// together with `D = dist(s, t)`.
pub fn shortest_path_subgraph(g: &WeightedDigraph, s: Vertex, t: Vertex) -> Result<(WeightedDigraph, i64)> {
    let ds = problem_distances(g, s, false);
    let dt = problem_distances(g, t, true);
    let d = ds.get(t).finite().ok_or(Error::NoStPath)?;
    let star = g.filter_edges(|e| match (ds.get(e.tail), dt.get(e.head)) {
        (Dist::Finite(a), Dist::Finite(b)) => a + e.weight + b == d,
        _ => false,
    });
    Ok((star, d))
}

/// Vertices reachable from `source` (or reaching it, when `reversed`) using arcs of `g`.
pub fn reachable(g: &WeightedDigraph, source: Vertex, reversed: bool) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![source];
    seen[source] = true;
    while let Some(u) = stack.pop() {
        let arcs = if reversed { g.in_edges(u) } else { g.out_edges(u) };
        for &(v, _) in arcs {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Unweighted hop counts to `target` along arcs of `g`.
pub(crate) fn hops_to(g: &WeightedDigraph, target: Vertex) -> Vec<usize> {
    let mut hops = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([target]);
    hops[target] = 0;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.in_edges(u) {
            if hops[v] == usize::MAX {
                hops[v] = hops[u] + 1;
                queue.push_back(v);
            }
        }
    }
    hops
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize, i64)]) -> WeightedDigraph {
        WeightedDigraph::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn movement_path_and_isolated() {
        let m = g(3, &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(movement_distances(&m, 0).dist, vec![0.into(), 1.into(), 2.into()]);
        let empty = WeightedDigraph::empty(3);
        assert_eq!(
            movement_distances(&empty, 0).dist,
            vec![Dist::ZERO, Dist::Infinite, Dist::Infinite]
        );
    }

    #[test]
    fn movement_bidirected_four_cycle() {
        let m = g(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).bidirected_unit();
        assert_eq!(movement_distances(&m, 0).get(2), Dist::Finite(2));
    }

    #[test]
    fn problem_distances_with_negative_arc() {
        let pg = g(3, &[(0, 1, 5), (0, 2, -1), (2, 1, 3)]);
        assert_eq!(problem_distances(&pg, 0, false).dist, vec![0.into(), 2.into(), (-1).into()]);
        let rev = g(3, &[(0, 1, 4), (1, 2, 1)]);
        assert_eq!(problem_distances(&rev, 2, true).dist, vec![5.into(), 1.into(), 0.into()]);
        let empty = WeightedDigraph::empty(3);
        assert_eq!(problem_distances(&empty, 1, false).dist[0], Dist::Infinite);
    }

    #[test]
    fn negative_cycle_detection() {
        assert!(has_negative_cycle(&g(2, &[(0, 1, 1), (1, 0, -2)])));
        assert!(!has_negative_cycle(&g(2, &[(0, 1, 1), (1, 0, -1)])));
        assert!(!has_negative_cycle(&g(2, &[(0, 1, -3)])));
    }

    #[test]
    fn shortest_subgraph_keeps_tight_arcs() {
        // s=0, a=1, b=2, t=3
        let pg = g(4, &[(0, 1, 1), (1, 3, 1), (0, 2, 2), (2, 3, 1)]);
        let (star, d) = shortest_path_subgraph(&pg, 0, 3).unwrap();
        assert_eq!(d, 2);
        let kept: Vec<_> = star.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(kept, vec![(0, 1), (1, 3)]);

        let tie = g(4, &[(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 1)]);
        assert_eq!(shortest_path_subgraph(&tie, 0, 3).unwrap().0.edge_count(), 4);

        let cut = g(3, &[(0, 1, 1)]);
        assert_eq!(shortest_path_subgraph(&cut, 0, 2), Err(Error::NoStPath));
    }
}
