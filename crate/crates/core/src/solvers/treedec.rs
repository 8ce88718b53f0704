//! Tree decompositions of the undirected union of the problem and movement
//! graphs, and their conversion to nice form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMode {
    #[default]
    MinFillHeuristic,
    /// Optimal width by dynamic programming over vertex subsets; at most 16 vertices.
    ExactSmall,
}

pub const EXACT_LIMIT: usize = 16;

/// Bags and tree edges (indices into `bags`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

/// Nodes of a nice decomposition, children before parents; the last node is
/// the root and both the root and every leaf have empty bags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: Vertex, child: usize },
    Forget { vertex: Vertex, child: usize },
    Join { left: usize, right: usize },
}

/// Sorted, deduplicated undirected adjacency of the union of `g` and `m`.
pub fn union_graph(g: &WeightedDigraph, m: &WeightedDigraph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count().max(m.vertex_count());
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for e in g.edges().iter().chain(m.edges()) {
        adj[e.tail].insert(e.head);
        adj[e.head].insert(e.tail);
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

pub fn build_tree_decomposition(adj: &[Vec<Vertex>], mode: DecompositionMode) -> Result<TreeDecomposition> {
    let order = match mode {
        DecompositionMode::MinFillHeuristic => min_fill_order(adj),
        DecompositionMode::ExactSmall => {
            if adj.len() > EXACT_LIMIT {
                return Err(Error::NTooLargeForExact(adj.len()));
            }
            exact_order(adj)
        }
    };
    Ok(from_elimination_order(adj, &order))
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the decomposition axioms against `adj`.
    pub fn validate(&self, adj: &[Vec<Vertex>]) -> Result<()> {
        let n = adj.len();
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.bags.is_empty() {
            return bad("no bags".into());
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= n) {
                return bad(format!("bag vertex {v} out of range"));
            }
        }
        let nb = self.bags.len();
        if self.edges.len() != nb - 1 {
            return bad(format!("{} tree edges for {nb} bags", self.edges.len()));
        }
        let mut tree = vec![Vec::new(); nb];
        for &(a, b) in &self.edges {
            if a >= nb || b >= nb || a == b {
                return bad(format!("bad tree edge ({a}, {b})"));
            }
            tree[a].push(b);
            tree[b].push(a);
        }
        let mut seen = vec![false; nb];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &tree[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("tree is disconnected".into());
        }
        let holds: Vec<BTreeSet<Vertex>> = self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        for v in 0..n {
            let with_v: Vec<usize> = (0..nb).filter(|&i| holds[i].contains(&v)).collect();
            if with_v.is_empty() {
                return bad(format!("vertex {v} in no bag"));
            }
            // The bags containing v must induce a connected subtree.
            let mut reached = BTreeSet::from([with_v[0]]);
            let mut stack = vec![with_v[0]];
            while let Some(x) = stack.pop() {
                for &y in &tree[x] {
                    if holds[y].contains(&v) && reached.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if reached.len() != with_v.len() {
                return bad(format!("bags containing {v} are not connected"));
            }
            for &u in &adj[v] {
                if u > v && !holds.iter().any(|h| h.contains(&u) && h.contains(&v)) {
                    return bad(format!("edge {{{v}, {u}}} in no bag"));
                }
            }
        }
        Ok(())
    }

    /// Nice form rooted at bag 0.
    pub fn nice(&self) -> Vec<NiceNode> {
        let nb = self.bags.len();
        let mut tree = vec![Vec::new(); nb];
        for &(a, b) in &self.edges {
            tree[a].push(b);
            tree[b].push(a);
        }
        // Iterative post-order from bag 0.
        let mut order = Vec::with_capacity(nb);
        let mut parent = vec![usize::MAX; nb];
        let mut stack = vec![0];
        let mut seen = vec![false; nb];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &tree[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let sorted: Vec<Vec<Vertex>> = self
            .bags
            .iter()
            .map(|b| b.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let mut nodes = Vec::new();
        // top[x]: nice node whose bag equals bag x.
        let mut top = vec![usize::MAX; nb];
        let mut pending: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for &x in order.iter().rev() {
            let mut children = std::mem::take(&mut pending[x]).into_iter();
            let mut acc = match children.next() {
                Some(c) => c,
                None => {
                    nodes.push(NiceNode::Leaf);
                    let leaf = nodes.len() - 1;
                    transition(&mut nodes, leaf, &[], &sorted[x])
                }
            };
            for c in children {
                nodes.push(NiceNode::Join { left: acc, right: c });
                acc = nodes.len() - 1;
            }
            top[x] = acc;
            if parent[x] != usize::MAX {
                let p = parent[x];
                let lifted = transition(&mut nodes, acc, &sorted[x], &sorted[p]);
                pending[p].push(lifted);
            }
        }
        transition(&mut nodes, top[0], &sorted[0], &[]);
        nodes
    }
}

/// Forgets `from \ to`, then introduces `to \ from`; returns the final node.
fn transition(nodes: &mut Vec<NiceNode>, mut at: usize, from: &[Vertex], to: &[Vertex]) -> usize {
    for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
        nodes.push(NiceNode::Forget { vertex: v, child: at });
        at = nodes.len() - 1;
    }
    for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
        nodes.push(NiceNode::Introduce { vertex: v, child: at });
        at = nodes.len() - 1;
    }
    at
}

/// Bags of the nice nodes, recomputed from the node list.
pub fn nice_bags(nodes: &[NiceNode]) -> Vec<Vec<Vertex>> {
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(nodes.len());
    for node in nodes {
        let bag = match *node {
            NiceNode::Leaf => Vec::new(),
            NiceNode::Introduce { vertex, child } => {
                let mut b = bags[child].clone();
                let at = b.binary_search(&vertex).unwrap_err();
                b.insert(at, vertex);
                b
            }
            NiceNode::Forget { vertex, child } => bags[child].iter().copied().filter(|&v| v != vertex).collect(),
            NiceNode::Join { left, .. } => bags[left].clone(),
        };
        bags.push(bag);
    }
    bags
}

fn from_elimination_order(adj: &[Vec<Vertex>], order: &[Vertex]) -> TreeDecomposition {
    let n = adj.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nbrs: Vec<BTreeSet<Vertex>> = adj.iter().map(|a| a.iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut later_roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let higher: Vec<Vertex> = nbrs[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for (a, &x) in higher.iter().enumerate() {
            for &y in &higher[a + 1..] {
                nbrs[x].insert(y);
                nbrs[y].insert(x);
            }
        }
        let mut bag = higher.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match higher.iter().min_by_key(|&&u| pos[u]) {
            Some(&u) => edges.push((i, pos[u])),
            None => later_roots.push(i),
        }
    }
    // Components become separate trees; chain their roots.
    for pair in later_roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    // Root at the last bag by reversing indices, so bag 0 holds the last eliminated vertex.
    let last = bags.len().saturating_sub(1);
    let bags = bags.into_iter().rev().collect();
    let edges = edges.into_iter().map(|(a, b)| (last - a, last - b)).collect();
    TreeDecomposition { bags, edges }
}

/// Repeatedly eliminates the vertex adding the fewest fill edges (ties: lower
/// degree, then lower id).
fn min_fill_order(adj: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = adj.len();
    let mut nbrs: Vec<BTreeSet<Vertex>> = adj.iter().map(|a| a.iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: Vertex| {
            let list: Vec<Vertex> = nbrs[v].iter().copied().collect();
            let mut missing = 0usize;
            for (a, &x) in list.iter().enumerate() {
                missing += list[a + 1..].iter().filter(|y| !nbrs[x].contains(y)).count();
            }
            missing
        };
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (fill(v), nbrs[v].len(), v)).unwrap();
        let list: Vec<Vertex> = nbrs[v].iter().copied().collect();
        for (a, &x) in list.iter().enumerate() {
            for &y in &list[a + 1..] {
                nbrs[x].insert(y);
                nbrs[y].insert(x);
            }
        }
        for &x in &list {
            nbrs[x].remove(&v);
        }
        nbrs[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Optimal elimination order: `tw(S)` over eliminated prefixes `S`, where
/// eliminating `v` after `S` costs the number of vertices outside `S + v`
/// reachable from `v` through `S`.
fn exact_order(adj: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = adj.len();
    let masks: Vec<u32> = adj.iter().map(|a| a.iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let q = |set: u32, v: usize| -> u32 {
        // Vertices outside set+v adjacent to the component of v in set+v.
        let mut comp = 1u32 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                grow |= masks[u];
            }
            let inside = grow & set & !comp;
            comp |= inside;
            frontier = inside;
        }
        let mut out = 0;
        let mut c = comp;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            out |= masks[u];
        }
        (out & !comp & !set).count_ones()
    };
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; full + 1];
    let mut choice = vec![0u8; full + 1];
    best[0] = 0;
    for set in 1..=full {
        for v in 0..n {
            if set >> v & 1 == 0 {
                continue;
            }
            let rest = set & !(1 << v);
            let cost = best[rest].max(q(rest as u32, v));
            if cost < best[set] {
                best[set] = cost;
                choice[set] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = choice[set] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    order
}
