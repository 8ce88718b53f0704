//! Decision and optimisation algorithms, all reporting the same
//! `(answer, optimal_cost)` on instances inside their preconditions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph};
use crate::instance::{DiscoveryInstance, MovementMode, Variant};
use crate::matching::TokenDistances;
use crate::shortest::{reachable, shortest_path_subgraph};

pub mod bounded;
pub mod coloring;
pub mod colorful;
pub mod fes;
pub mod fpt_k;
pub mod jump;
pub mod oracle;
pub mod treedec;
pub mod treewidth;

pub use bounded::{bounded_length_solve, spd_diameter_bound};
pub use coloring::{ColoringFamily, ColoringMode};
pub use fes::{feedback_edge_solve, signature_bound, st_path_signatures, PathSignature};
pub use fpt_k::fpt_k_solve;
pub use jump::token_jumping_solve;
pub use oracle::oracle_solve;
pub use treedec::{build_tree_decomposition, DecompositionMode, NiceNode, TreeDecomposition};
pub use treewidth::treewidth_solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Auto,
    Oracle,
    Jump,
    FptK,
    BoundedLen,
    Fes,
    Treewidth,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Auto,
        Algorithm::Oracle,
        Algorithm::Jump,
        Algorithm::FptK,
        Algorithm::BoundedLen,
        Algorithm::Fes,
        Algorithm::Treewidth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Jump => "jump",
            Algorithm::FptK => "fpt-k",
            Algorithm::BoundedLen => "bounded-len",
            Algorithm::Fes => "fes",
            Algorithm::Treewidth => "treewidth",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}'"))
    }
}

/// Limits and thresholds; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Oracle: maximum number of s-t paths priced before giving up.
    pub max_paths: u64,
    /// Oracle: longest path (in vertices) considered; `None` means `k`.
    pub max_path_vertices: Option<usize>,
    /// Oracle: refuse instances with more vertices than this.
    pub max_oracle_vertices: usize,
    /// fpt-k: largest admissible token count.
    pub fpt_k_limit: usize,
    /// bounded-len: longest path considered; `None` derives it from the instance.
    pub ell_max: Option<usize>,
    /// treewidth: largest decomposition width accepted.
    pub width_cap: usize,
    /// Largest number of colorings one exhaustive family may contain.
    pub max_family_size: u64,
    /// auto: feedback-edge count up to which fes is chosen.
    pub auto_fes_threshold: usize,
    /// auto: token count up to which fpt-k is chosen.
    pub auto_k_threshold: usize,
    /// auto: heuristic width up to which treewidth is chosen.
    pub auto_width_threshold: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_paths: 1_000_000,
            max_path_vertices: None,
            max_oracle_vertices: 100_000,
            fpt_k_limit: 12,
            ell_max: None,
            width_cap: 5,
            max_family_size: 5_000_000,
            auto_fes_threshold: 8,
            auto_k_threshold: 7,
            auto_width_threshold: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveOptions {
    pub seed: u64,
    /// Failure probability bound for randomized colorings.
    pub delta: f64,
    pub caps: Caps,
    /// Stop at the first solution within budget; `optimal_cost` is then only
    /// an upper bound on YES answers.
    pub decision_only: bool,
    pub coloring: ColoringMode,
    pub decomposition: DecompositionMode,
}

pub const DEFAULT_SEED: u64 = 0x5eed_1e55;

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: DEFAULT_SEED,
            delta: 1e-6,
            caps: Caps::default(),
            decision_only: false,
            coloring: ColoringMode::RandomTrials,
            decomposition: DecompositionMode::MinFillHeuristic,
        }
    }
}

/// Solver counters, serialised as a JSON object with sorted keys.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Stats(pub BTreeMap<String, u64>);

impl Stats {
    pub fn add(&mut self, key: &str, amount: u64) {
        *self.0.entry(key.to_string()).or_default() += amount;
    }

    pub fn set(&mut self, key: &str, value: u64) {
        self.0.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub answer: Answer,
    /// Minimum realization cost over all admissible paths, even above budget.
    pub optimal_cost: Dist,
    pub certificate: Option<Certificate>,
    pub stats: Stats,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialises")
    }
}

/// Runs the requested algorithm.
pub fn solve(instance: &DiscoveryInstance, algorithm: Algorithm, options: &SolveOptions) -> Result<SolveResult> {
    match algorithm {
        Algorithm::Auto => auto_solve(instance, options),
        Algorithm::Oracle => oracle_solve(instance, options),
        Algorithm::Jump => token_jumping_solve(instance, options),
        Algorithm::FptK => fpt_k_solve(instance, options),
        Algorithm::BoundedLen => bounded_length_solve(instance, options),
        Algorithm::Fes => feedback_edge_solve(instance, options),
        Algorithm::Treewidth => treewidth_solve(instance, None, options),
    }
}

/// The algorithm `auto` would run on this instance.
pub fn auto_choice(instance: &DiscoveryInstance, options: &SolveOptions) -> Algorithm {
    let caps = &options.caps;
    if instance.movement().mode() == MovementMode::TokenJumping {
        return Algorithm::Jump;
    }
    let Some(prep) = Prepared::new(instance) else {
        return Algorithm::Oracle;
    };
    if fes::feedback_edge_number(&prep) <= caps.auto_fes_threshold {
        return Algorithm::Fes;
    }
    if instance.k() <= caps.auto_k_threshold {
        return Algorithm::FptK;
    }
    let union = treedec::union_graph(&prep.graph, &instance.movement().graph());
    let td = build_tree_decomposition(&union, DecompositionMode::MinFillHeuristic).expect("heuristic never fails");
    if td.width() <= caps.auto_width_threshold {
        return Algorithm::Treewidth;
    }
    Algorithm::Oracle
}

fn auto_solve(instance: &DiscoveryInstance, options: &SolveOptions) -> Result<SolveResult> {
    let choice = auto_choice(instance, options);
    let mut result = match choice {
        Algorithm::Oracle => oracle_solve(instance, options).map_err(|e| match e {
            Error::CapExceeded { .. } | Error::InstanceTooLarge(_) => Error::Undecided,
            other => other,
        })?,
        other => solve(instance, other, options)?,
    };
    result.stats.set(&format!("auto_{}", choice.name().replace('-', "_")), 1);
    Ok(result)
}

/// Instance data shared by the solvers: the graph whose s-t paths are
/// admissible (the shortest-path subgraph for the shortest variant) and the
/// token distance table.
pub(crate) struct Prepared<'a> {
    pub instance: &'a DiscoveryInstance,
    pub graph: WeightedDigraph,
    /// Vertices that lie on some s-t walk of `graph`.
    pub on_st_walk: Vec<bool>,
}

impl<'a> Prepared<'a> {
    /// `None` when no s-t path exists.
    pub fn new(instance: &'a DiscoveryInstance) -> Option<Self> {
        let (s, t) = (instance.s(), instance.t());
        let graph = match instance.variant() {
            Variant::Path => instance.problem().clone(),
            Variant::ShortestPath => shortest_path_subgraph(instance.problem(), s, t).ok()?.0,
        };
        let from_s = reachable(&graph, s, false);
        if !from_s[t] {
            return None;
        }
        let to_t = reachable(&graph, t, true);
        let on_st_walk = from_s.iter().zip(&to_t).map(|(&a, &b)| a && b).collect();
        Some(Prepared { instance, graph, on_st_walk })
    }
}

/// Builds the result from the best path found (if any). The reported cost is
/// the exact realization cost of that path.
pub(crate) fn conclude(
    instance: &DiscoveryInstance,
    tokens: &TokenDistances,
    best: Option<Vec<Vertex>>,
    stats: Stats,
) -> SolveResult {
    let Some(path) = best else {
        return no_path(stats);
    };
    let realization = tokens.realize(&path);
    let cost = realization.cost;
    let certificate = match cost {
        Dist::Finite(c) if c <= instance.budget() => Some(Certificate { path, assignment: realization.assignment, cost: c }),
        _ => None,
    };
    SolveResult {
        answer: if certificate.is_some() { Answer::Yes } else { Answer::No },
        optimal_cost: cost,
        certificate,
        stats,
    }
}

pub(crate) fn no_path(stats: Stats) -> SolveResult {
    SolveResult { answer: Answer::No, optimal_cost: Dist::Infinite, certificate: None, stats }
}

/// Keeps the cheaper of two candidates; ties keep the incumbent.
pub(crate) fn improve(best: &mut Option<(i64, Vec<Vertex>)>, cost: i64, path: impl FnOnce() -> Vec<Vertex>) -> bool {
    match best {
        Some((c, _)) if *c <= cost => false,
        _ => {
            *best = Some((cost, path()));
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Movement;

    /// s=0 -> a=1 -> t=2 under token sliding.
    fn sliding_path(tokens: Vec<usize>, budget: i64) -> DiscoveryInstance {
        let g = WeightedDigraph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let m = g.bidirected_unit();
        DiscoveryInstance::new(g, Movement::Sliding(m), 0, 2, tokens, budget, Variant::Path).unwrap()
    }

    #[test]
    fn occupied_path_costs_nothing() {
        let r = solve(&sliding_path(vec![0, 1, 2], 0), Algorithm::Auto, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::Yes, Dist::ZERO));
    }

    #[test]
    fn stacked_token_slides_once() {
        for alg in [Algorithm::Auto, Algorithm::Oracle, Algorithm::FptK, Algorithm::Fes, Algorithm::Treewidth] {
            let r = solve(&sliding_path(vec![0, 0, 2], 1), alg, &SolveOptions::default()).unwrap();
            assert_eq!((r.answer, r.optimal_cost), (Answer::Yes, Dist::Finite(1)), "{alg}");
            let r = solve(&sliding_path(vec![0, 0, 2], 0), alg, &SolveOptions::default()).unwrap();
            assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::Finite(1)), "{alg}");
        }
    }

    #[test]
    fn negative_budget_is_no() {
        let r = solve(&sliding_path(vec![0, 1, 2], -1), Algorithm::Oracle, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::ZERO));
    }

    #[test]
    fn jump_requires_jumping_movement() {
        let err = solve(&sliding_path(vec![0, 1, 2], 0), Algorithm::Jump, &SolveOptions::default()).unwrap_err();
        assert_eq!(err.code(), "ALGORITHM_PRECONDITION_VIOLATED");
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        let json = serde_json::to_string(&SolveResult {
            answer: Answer::No,
            optimal_cost: Dist::Infinite,
            certificate: None,
            stats: Stats::default(),
        })
        .unwrap();
        assert_eq!(json, r#"{"answer":"no","optimal_cost":"inf","certificate":null,"stats":{}}"#);
    }
}
