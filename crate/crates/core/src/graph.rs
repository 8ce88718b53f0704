use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest admissible absolute edge weight or budget.
pub const MAX_MAGNITUDE: i64 = 1 << 40;

/// A directed arc with an integer weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: Vertex,
    pub head: Vertex,
    pub weight: i64,
}

/// Directed graph with integer arc weights on the vertex set `0..n`.
///
/// Parallel arcs given at construction collapse to the minimum weight, so
/// there is at most one arc per ordered pair. Self-loops are rejected.
/// Arcs are stored sorted by `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<(Vertex, i64)>>,
    in_adj: Vec<Vec<(Vertex, i64)>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex, i64)>) -> Result<Self> {
        let mut best: BTreeMap<(Vertex, Vertex), i64> = BTreeMap::new();
        for (tail, head, weight) in arcs {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if tail == head {
                return Err(Error::SelfLoop(tail));
            }
            best.entry((tail, head))
                .and_modify(|w| *w = (*w).min(weight))
                .or_insert(weight);
        }
        let edges = best
            .into_iter()
            .map(|((tail, head), weight)| Edge { tail, head, weight })
            .collect();
        Ok(Self::from_sorted(n, edges))
    }

    /// Graph on `n` vertices without arcs.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for e in &edges {
            out_adj[e.tail].push((e.head, e.weight));
            in_adj[e.head].push((e.tail, e.weight));
        }
        WeightedDigraph { n, edges, out_adj, in_adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: Vertex) -> &[(Vertex, i64)] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: Vertex) -> &[(Vertex, i64)] {
        &self.in_adj[v]
    }

    pub fn weight(&self, tail: Vertex, head: Vertex) -> Option<i64> {
        let adj = self.out_adj.get(tail)?;
        adj.binary_search_by_key(&head, |&(h, _)| h).ok().map(|i| adj[i].1)
    }

    pub fn has_edge(&self, tail: Vertex, head: Vertex) -> bool {
        self.weight(tail, head).is_some()
    }

    /// Keeps the arcs satisfying `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|e| keep(e)).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Same arcs with every weight replaced by `f(weight)`.
    pub fn map_weights(&self, mut f: impl FnMut(&Edge) -> i64) -> Self {
        let edges = self.edges.iter().map(|e| Edge { weight: f(e), ..*e }).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Both directions of every arc, all with unit weight.
    pub fn bidirected_unit(&self) -> Self {
        let arcs = self
            .edges
            .iter()
            .flat_map(|e| [(e.tail, e.head, 1), (e.head, e.tail, 1)]);
        Self::new(self.n, arcs).expect("arcs of a valid graph")
    }

    /// Complete bidirected graph with unit weights.
    pub fn complete_unit(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v, 1)));
        Self::new(n, arcs).expect("complete graph arcs are in range")
    }

    /// Sorted, deduplicated neighbour lists of the underlying undirected graph.
    pub fn undirected_neighbors(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Topological order of the vertices, or `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_adj[v].len()).collect();
        let mut stack: Vec<Vertex> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(v, _) in &self.out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_arcs_collapse_to_minimum() {
        let g = WeightedDigraph::new(3, [(0, 1, 5), (0, 1, 2), (1, 2, 1), (0, 1, 7)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(0, 1), Some(2));
        assert_eq!(g.weight(1, 0), None);
    }

    #[test]
    fn rejects_self_loops_and_bad_ids() {
        assert_eq!(WeightedDigraph::new(2, [(1, 1, 0)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            WeightedDigraph::new(2, [(0, 2, 0)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn acyclicity() {
        let dag = WeightedDigraph::new(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert!(dag.is_acyclic());
        assert!(!dag.bidirected_unit().is_acyclic());
    }
}
