use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_BRUTE_EDGES: usize = 20;

/// An undirected multigraph with positive edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CirculatingOrientationInstance {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize, i64)>,
    /// Order in which edges become gadgets; input order when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_order: Option<Vec<usize>>,
}

impl CirculatingOrientationInstance {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        let src = CirculatingOrientationInstance { vertex_count, edges, edge_order: None };
        src.validate()?;
        Ok(src)
    }

    pub fn validate(&self) -> Result<()> {
        for &(u, v, w) in &self.edges {
            if u >= self.vertex_count || v >= self.vertex_count {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n: self.vertex_count });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if w < 1 {
                return Err(Error::Malformed(format!("edge weight {w} must be positive")));
            }
            if w > crate::graph::MAX_MAGNITUDE {
                return Err(Error::ValueTooLarge(w));
            }
        }
        if let Some(order) = &self.edge_order {
            let mut seen = vec![false; self.edges.len()];
            let ok = order.len() == self.edges.len()
                && order.iter().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true));
            if !ok {
                return Err(Error::Malformed("edge_order is not a permutation of the edges".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let src: Self = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        src.validate()?;
        Ok(src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("source serialises")
    }

    /// `W(v)`: total weight of edges at `v`.
    pub fn weighted_degree(&self, v: usize) -> i64 {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).map(|e| e.2).sum()
    }

    /// `W`: total edge weight.
    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Vertices of odd weighted degree.
    pub fn odd_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| self.weighted_degree(v) % 2 != 0).collect()
    }

    /// Edges in gadget order.
    pub fn ordered_edges(&self) -> Vec<(usize, usize, i64)> {
        match &self.edge_order {
            Some(order) => order.iter().map(|&i| self.edges[i]).collect(),
            None => self.edges.clone(),
        }
    }

    /// A random multigraph with `edges` edges and weights in `1..=max_weight`.
    pub fn random(edges: usize, max_weight: i64, rng: &mut impl Rng) -> Self {
        let n = rng.gen_range(2..=edges.max(1) + 1);
        let edges = (0..edges)
            .map(|_| {
                let u = rng.gen_range(0..n);
                let v = (u + rng.gen_range(1..n)) % n;
                (u, v, rng.gen_range(1..=max_weight.max(1)))
            })
            .collect();
        CirculatingOrientationInstance { vertex_count: n, edges, edge_order: None }
    }
}

/// A balancing orientation by exhaustive search, as `true` = edge oriented
/// from its first to its second endpoint; `None` when none exists.
pub fn circ_orient_brute(src: &CirculatingOrientationInstance) -> Result<Option<Vec<bool>>> {
    src.validate()?;
    let m = src.edges.len();
    if m > MAX_BRUTE_EDGES {
        return Err(Error::TooManyEdges(m));
    }
    if !src.odd_vertices().is_empty() {
        return Ok(None);
    }
    let mut balance = vec![0i64; src.vertex_count];
    for mask in 0u32..1 << m {
        balance.fill(0);
        for (i, &(u, v, w)) in src.edges.iter().enumerate() {
            let (from, to) = if mask >> i & 1 == 1 { (u, v) } else { (v, u) };
            balance[from] += w;
            balance[to] -= w;
        }
        if balance.iter().all(|&b| b == 0) {
            return Ok(Some((0..m).map(|i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}
