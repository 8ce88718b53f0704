//! Enumeration of simple s-t paths by feedback-edge signatures.
//!
//! Relative to a spanning forest of the underlying undirected graph, a simple
//! s-t path is determined by the ordered, oriented list of non-forest edges it
//! uses: between consecutive feedback edges it must follow the unique forest path.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Vertex, WeightedDigraph};
use crate::instance::DiscoveryInstance;
use crate::matching::TokenDistances;

use super::{conclude, improve, no_path, Prepared, SolveOptions, SolveResult, Stats};

/// Ordered feedback edges, each oriented as `(tail, head)` of its traversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathSignature {
    pub oriented_edges: Vec<(Vertex, Vertex)>,
}

/// Spanning forest of the s-t relevant part of a digraph.
pub struct SignatureSpace<'g> {
    g: &'g WeightedDigraph,
    s: Vertex,
    t: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    /// Non-forest undirected edges `(min, max)`, sorted.
    pub feedback: Vec<(Vertex, Vertex)>,
}

impl<'g> SignatureSpace<'g> {
    /// Keeps arcs that lie on some s-t walk, takes a breadth-first spanning
    /// forest from `s` of the underlying graph, and lists the remaining edges.
    pub fn new(g: &'g WeightedDigraph, s: Vertex, t: Vertex, on_st_walk: &[bool]) -> Self {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for e in g.edges() {
            if on_st_walk[e.tail] && on_st_walk[e.head] {
                adj[e.tail].push(e.head);
                adj[e.head].push(e.tail);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree_edges = Vec::new();
        let roots = std::iter::once(s).chain((0..n).filter(|&v| v != s));
        for root in roots {
            if depth[root] != usize::MAX || adj[root].is_empty() {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if depth[v] == usize::MAX {
                        depth[v] = depth[u] + 1;
                        parent[v] = Some(u);
                        tree_edges.push((u.min(v), u.max(v)));
                        queue.push_back(v);
                    }
                }
            }
        }
        tree_edges.sort_unstable();
        let mut feedback = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if u < v && tree_edges.binary_search(&(u, v)).is_err() {
                    feedback.push((u, v));
                }
            }
        }
        SignatureSpace { g, s, t, parent, depth, feedback }
    }

    /// Number of feedback edges `f`.
    pub fn f(&self) -> usize {
        self.feedback.len()
    }

    /// Unique forest path from `a` to `b`, or `None` if they lie in different trees.
    fn tree_path(&self, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
        if self.depth[a] == usize::MAX || self.depth[b] == usize::MAX {
            return (a == b).then(|| vec![a]);
        }
        let (mut x, mut y) = (a, b);
        let (mut up, mut down) = (vec![x], vec![y]);
        while x != y {
            if self.depth[x] >= self.depth[y] {
                x = self.parent[x]?;
                up.push(x);
            } else {
                y = self.parent[y]?;
                down.push(y);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        Some(up)
    }

    /// Appends the forest path from the end of `path` to `to`, requiring
    /// every step to be an arc of the digraph and all vertices to stay new.
    fn extend(&self, path: &mut Vec<Vertex>, on_path: &mut [bool], to: Vertex) -> bool {
        let from = *path.last().unwrap();
        let Some(route) = self.tree_path(from, to) else { return false };
        self.append(path, on_path, &route[1..])
    }

    fn append(&self, path: &mut Vec<Vertex>, on_path: &mut [bool], more: &[Vertex]) -> bool {
        for &v in more {
            let u = *path.last().unwrap();
            if on_path[v] || !self.g.has_edge(u, v) {
                return false;
            }
            on_path[v] = true;
            path.push(v);
        }
        true
    }

    /// Depth-first enumeration of signatures, pruning any prefix whose
    /// reconstruction already fails or exceeds `limit` vertices. Calls `visit`
    /// with every signature whose reconstruction is a simple s-t path.
    /// Returns the number of signatures examined.
    pub fn for_each_path(&self, limit: usize, visit: &mut dyn FnMut(&PathSignature, &[Vertex]) -> bool) -> u64 {
        let mut on_path = vec![false; self.g.vertex_count()];
        on_path[self.s] = true;
        let mut path = vec![self.s];
        let mut used = vec![false; self.f()];
        let mut sig = PathSignature { oriented_edges: Vec::new() };
        let mut examined = 0;
        self.search(limit, &mut path, &mut on_path, &mut used, &mut sig, &mut examined, visit);
        examined
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        limit: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        used: &mut [bool],
        sig: &mut PathSignature,
        examined: &mut u64,
        visit: &mut dyn FnMut(&PathSignature, &[Vertex]) -> bool,
    ) -> bool {
        *examined += 1;
        let mark = path.len();
        let closed = self.extend(path, on_path, self.t) && path.len() <= limit;
        let go_on = !closed || visit(sig, path);
        for &v in &path[mark..] {
            on_path[v] = false;
        }
        path.truncate(mark);
        if !go_on {
            return false;
        }
        for i in 0..self.f() {
            if used[i] {
                continue;
            }
            let (a, b) = self.feedback[i];
            for (x, y) in [(a, b), (b, a)] {
                let mark = path.len();
                let ok = self.extend(path, on_path, x) && self.append(path, on_path, &[y]) && path.len() <= limit;
                let mut go_on = true;
                if ok && !path[..path.len() - 1].contains(&self.t) {
                    used[i] = true;
                    sig.oriented_edges.push((x, y));
                    go_on = self.search(limit, path, on_path, used, sig, examined, visit);
                    sig.oriented_edges.pop();
                    used[i] = false;
                }
                for &v in &path[mark..] {
                    on_path[v] = false;
                }
                path.truncate(mark);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// `sum_{r=0}^{f} C(f,r) r! 2^r`, the number of ordered oriented selections of feedback edges.
pub fn signature_bound(f: usize) -> u128 {
    let mut total = 0u128;
    let mut falling = 1u128;
    for r in 0..=f {
        if r > 0 {
            falling *= (f - r + 1) as u128;
        }
        total += falling << r;
    }
    total
}

pub(crate) fn feedback_edge_number(prep: &Prepared) -> usize {
    SignatureSpace::new(&prep.graph, prep.instance.s(), prep.instance.t(), &prep.on_st_walk).f()
}

/// Every simple s-t path of `g` with its signature, in enumeration order.
pub fn st_path_signatures(g: &WeightedDigraph, s: Vertex, t: Vertex) -> (usize, Vec<(PathSignature, Vec<Vertex>)>) {
    let from_s = crate::shortest::reachable(g, s, false);
    let to_t = crate::shortest::reachable(g, t, true);
    let on: Vec<bool> = from_s.iter().zip(&to_t).map(|(&a, &b)| a && b).collect();
    let space = SignatureSpace::new(g, s, t, &on);
    let mut out = Vec::new();
    if on[s] {
        space.for_each_path(usize::MAX, &mut |sig, path| {
            out.push((sig.clone(), path.to_vec()));
            true
        });
    }
    (space.f(), out)
}

/// Path discovery by signature enumeration; practical for a small feedback edge number.
pub fn feedback_edge_solve(instance: &DiscoveryInstance, options: &SolveOptions) -> Result<SolveResult> {
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let tokens = TokenDistances::new(instance);
    let space = SignatureSpace::new(&prep.graph, instance.s(), instance.t(), &prep.on_st_walk);
    stats.set("feedback_edges", space.f() as u64);
    let mut best: Option<(i64, Vec<Vertex>)> = None;
    let mut paths = 0u64;
    let examined = space.for_each_path(instance.k(), &mut |_, path| {
        paths += 1;
        if let Some(cost) = tokens.realization_cost(path) {
            improve(&mut best, cost, || path.to_vec());
            if options.decision_only && cost <= instance.budget() {
                return false;
            }
        }
        true
    });
    stats.set("signatures_enumerated", examined);
    stats.set("paths_reconstructed", paths);
    Ok(conclude(instance, &tokens, best.map(|b| b.1), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::oracle::for_each_st_path;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn tree_has_one_signature() {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
        let (f, found) = st_path_signatures(&g, 0, 3);
        assert_eq!(f, 0);
        assert_eq!(found, vec![(PathSignature { oriented_edges: vec![] }, vec![0, 1, 3])]);
    }

    #[test]
    fn cycle_through_terminals() {
        // s=0 -> 1 -> t=2 and s -> 3 -> t: one undirected cycle.
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 2, 1)]).unwrap();
        let (f, found) = st_path_signatures(&g, 0, 2);
        assert_eq!(f, 1);
        assert!(signature_bound(f) == 3);
        let paths: BTreeSet<Vec<usize>> = found.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(paths, BTreeSet::from([vec![0, 1, 2], vec![0, 3, 2]]));
    }

    #[test]
    fn bound_values() {
        assert_eq!((0..4).map(signature_bound).collect::<Vec<_>>(), vec![1, 3, 13, 79]);
        for f in 0..8 {
            assert!(signature_bound(f) <= (2 * f as u128 + 1).pow(f as u32));
        }
    }

    proptest! {
        #[test]
        fn signatures_biject_onto_simple_paths(arcs in proptest::collection::vec((0usize..7, 0usize..7, 0i64..3), 0..14)) {
            let g = WeightedDigraph::new(7, arcs.into_iter().filter(|a| a.0 != a.1)).unwrap();
            let (f, found) = st_path_signatures(&g, 0, 6);
            let sigs: BTreeSet<_> = found.iter().map(|(s, _)| s.clone()).collect();
            let paths: BTreeSet<_> = found.iter().map(|(_, p)| p.clone()).collect();
            prop_assert_eq!(sigs.len(), found.len());
            prop_assert_eq!(paths.len(), found.len());
            prop_assert!(found.len() as u128 <= signature_bound(f));

            let inst = DiscoveryInstance::new(g.clone(), crate::instance::Movement::Jumping(7), 0, 6, vec![0; 7], 0, crate::instance::Variant::Path).unwrap();
            let mut all = BTreeSet::new();
            if let Some(prep) = Prepared::new(&inst) {
                for_each_st_path(&prep, 7, &mut |p| { all.insert(p.to_vec()); true });
            }
            prop_assert_eq!(paths, all);
        }
    }
}
