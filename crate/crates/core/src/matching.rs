//! Cheapest way to occupy a fixed target vertex set with distinct tokens.
//!
//! Tokens may stack and unused tokens are lifted for free, so the cost of a
//! target set is the weight of a minimum assignment of token copies to target
//! vertices under movement distances.

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::DiscoveryInstance;

const BIG: i128 = 1 << 80;

/// Minimum-cost assignment of `rows` to distinct columns of `cost`.
///
/// `cost` is row-major with `cols >= rows`; `None` entries are forbidden.
/// Returns the cost and `col_of_row`, or `None` when every assignment uses a
/// forbidden entry.
pub fn min_cost_assignment(rows: usize, cols: usize, cost: &[Option<i64>]) -> Option<(i64, Vec<usize>)> {
    assert!(rows <= cols, "assignment needs at least as many columns as rows");
    assert_eq!(cost.len(), rows * cols);
    if rows == 0 {
        return Some((0, Vec::new()));
    }
    let c = |i: usize, j: usize| cost[i * cols + j].map_or(BIG, i128::from);
    // Potentials-based shortest augmenting paths, 1-indexed with a dummy column 0.
    let mut u = vec![0i128; rows + 1];
    let mut v = vec![0i128; cols + 1];
    let mut row_of = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i128::MAX; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = i128::MAX;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of_row = vec![0; rows];
    for j in 1..=cols {
        if row_of[j] != 0 {
            col_of_row[row_of[j] - 1] = j - 1;
        }
    }
    let total: i128 = col_of_row.iter().enumerate().map(|(i, &j)| c(i, j)).sum();
    if total >= BIG {
        return None;
    }
    Some((total as i64, col_of_row))
}

/// Movement distances from each distinct token position, shared by all
/// solvers that price candidate paths.
#[derive(Debug, Clone)]
pub struct TokenDistances {
    /// Distinct token positions, ascending.
    pub sources: Vec<Vertex>,
    /// Number of tokens stacked on each entry of `sources`.
    pub counts: Vec<usize>,
    /// `dist[i][v]`: movement distance from `sources[i]` to `v`.
    pub dist: Vec<Vec<Dist>>,
}

impl TokenDistances {
    pub fn new(instance: &DiscoveryInstance) -> Self {
        let mut sources: Vec<Vertex> = instance.tokens().to_vec();
        sources.dedup();
        let counts = sources
            .iter()
            .map(|&x| instance.tokens().iter().filter(|&&y| y == x).count())
            .collect();
        let dist = sources.iter().map(|&x| instance.movement().distances_from(x)).collect();
        TokenDistances { sources, counts, dist }
    }

    pub fn k(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Optimal cost of occupying `target`; `None` if some target vertex is
    /// out of reach.
    pub fn realization_cost(&self, target: &[Vertex]) -> Option<i64> {
        let (rows, cols, cost) = self.cost_matrix(target, &self.counts);
        min_cost_assignment(rows, cols, &cost).map(|(c, _)| c)
    }

    /// Optimal realization of `target` with a canonical assignment: position
    /// by position, each takes the smallest token position that still admits
    /// an optimal completion.
    pub fn realize(&self, target: &[Vertex]) -> Realization {
        let Some(best) = self.realization_cost(target) else {
            return Realization { cost: Dist::Infinite, assignment: Vec::new() };
        };
        let mut remaining = self.counts.clone();
        let mut spent = 0;
        let mut assignment = Vec::with_capacity(target.len());
        for (pos, &v) in target.iter().enumerate() {
            let rest = &target[pos + 1..];
            let choice = (0..self.sources.len())
                .find_map(|i| {
                    if remaining[i] == 0 {
                        return None;
                    }
                    let d = self.dist[i][v].finite()?;
                    remaining[i] -= 1;
                    let (rows, cols, cost) = self.cost_matrix(rest, &remaining);
                    let tail = min_cost_assignment(rows, cols, &cost).map(|(c, _)| c);
                    remaining[i] += 1;
                    (tail == Some(best - spent - d)).then_some((i, d))
                })
                .expect("an optimal completion exists at every step");
            remaining[choice.0] -= 1;
            spent += choice.1;
            assignment.push((self.sources[choice.0], pos));
        }
        debug_assert_eq!(spent, best);
        Realization { cost: Dist::Finite(best), assignment }
    }

    fn cost_matrix(&self, target: &[Vertex], counts: &[usize]) -> (usize, usize, Vec<Option<i64>>) {
        let copies: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat(i).take(c.min(target.len())))
            .collect();
        let rows = target.len();
        let cols = copies.len().max(rows);
        let mut cost = vec![None; rows * cols];
        for (r, &v) in target.iter().enumerate() {
            for (c, &i) in copies.iter().enumerate() {
                cost[r * cols + c] = self.dist[i][v].finite();
            }
        }
        (rows, cols, cost)
    }
}

/// A priced target set: cost and, when finite, `(token position, target index)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub cost: Dist,
    pub assignment: Vec<(Vertex, usize)>,
}

/// Minimum total movement cost of occupying every vertex of `target` with a
/// distinct token, plus a witnessing assignment.
pub fn min_cost_target_realization(instance: &DiscoveryInstance, target: &[Vertex]) -> Result<Realization> {
    if target.len() > instance.k() {
        return Err(Error::TargetTooLarge { target: target.len(), tokens: instance.k() });
    }
    if let Some(&v) = target.iter().find(|&&v| v >= instance.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: instance.vertex_count() });
    }
    Ok(TokenDistances::new(instance).realize(target))
}
