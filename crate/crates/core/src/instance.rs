//! Discovery instances and their JSON file format.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph, MAX_MAGNITUDE};
use crate::shortest::{dijkstra, has_negative_cycle};

/// Whether the discovered path must be a shortest s-t path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Path,
    ShortestPath,
}

/// How the movement graph is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovementMode {
    Explicit,
    TokenSliding,
    TokenJumping,
}

/// The movement graph. Token jumping stays implicit so that large jumping
/// instances never materialise the complete graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Movement {
    Explicit(WeightedDigraph),
    /// Bidirected problem graph with unit weights.
    Sliding(WeightedDigraph),
    /// Complete bidirected graph with unit weights on `n` vertices.
    Jumping(usize),
}

impl Movement {
    pub fn mode(&self) -> MovementMode {
        match self {
            Movement::Explicit(_) => MovementMode::Explicit,
            Movement::Sliding(_) => MovementMode::TokenSliding,
            Movement::Jumping(_) => MovementMode::TokenJumping,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Movement::Explicit(g) | Movement::Sliding(g) => g.vertex_count(),
            Movement::Jumping(n) => *n,
        }
    }

    /// The movement graph as explicit arcs.
    pub fn graph(&self) -> Cow<'_, WeightedDigraph> {
        match self {
            Movement::Explicit(g) | Movement::Sliding(g) => Cow::Borrowed(g),
            Movement::Jumping(n) => Cow::Owned(WeightedDigraph::complete_unit(*n)),
        }
    }

    /// Movement distances from `source` to every vertex.
    pub fn distances_from(&self, source: Vertex) -> Vec<Dist> {
        match self {
            Movement::Explicit(g) | Movement::Sliding(g) => dijkstra(g, source),
            Movement::Jumping(n) => (0..*n)
                .map(|v| if v == source { Dist::ZERO } else { Dist::Finite(1) })
                .collect(),
        }
    }
}

/// A validated (shortest) path discovery instance.
///
/// Invariants: both graphs share the vertex set, `s != t`, movement weights are
/// nonnegative, and the problem graph has no negative cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveryInstance {
    problem: WeightedDigraph,
    movement: Movement,
    s: Vertex,
    t: Vertex,
    /// Sorted token positions; repeated entries are stacked tokens.
    tokens: Vec<Vertex>,
    budget: i64,
    variant: Variant,
}

impl DiscoveryInstance {
    pub fn new(
        problem: WeightedDigraph,
        movement: Movement,
        s: Vertex,
        t: Vertex,
        mut tokens: Vec<Vertex>,
        budget: i64,
        variant: Variant,
    ) -> Result<Self> {
        let n = problem.vertex_count();
        if movement.vertex_count() != n {
            return Err(Error::Malformed(format!(
                "movement graph has {} vertices, problem graph {}",
                movement.vertex_count(),
                n
            )));
        }
        for &v in [s, t].iter().chain(&tokens) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if s == t {
            return Err(Error::TerminalsEqual(s));
        }
        if budget.abs() > MAX_MAGNITUDE {
            return Err(Error::ValueTooLarge(budget));
        }
        if let Some(e) = problem.edges().iter().find(|e| e.weight.abs() > MAX_MAGNITUDE) {
            return Err(Error::ValueTooLarge(e.weight));
        }
        if let Movement::Explicit(m) = &movement {
            if let Some(e) = m.edges().iter().find(|e| e.weight.abs() > MAX_MAGNITUDE) {
                return Err(Error::ValueTooLarge(e.weight));
            }
            if let Some(e) = m.edges().iter().find(|e| e.weight < 0) {
                return Err(Error::NegativeMovementWeight { tail: e.tail, head: e.head, weight: e.weight });
            }
        }
        if has_negative_cycle(&problem) {
            return Err(Error::NegativeCycleInProblem);
        }
        tokens.sort_unstable();
        Ok(DiscoveryInstance { problem, movement, s, t, tokens, budget, variant })
    }

    pub fn problem(&self) -> &WeightedDigraph {
        &self.problem
    }

    pub fn movement(&self) -> &Movement {
        &self.movement
    }

    pub fn s(&self) -> Vertex {
        self.s
    }

    pub fn t(&self) -> Vertex {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.problem.vertex_count()
    }

    /// Token positions in nondecreasing order.
    pub fn tokens(&self) -> &[Vertex] {
        &self.tokens
    }

    /// Number of tokens, `k`.
    pub fn k(&self) -> usize {
        self.tokens.len()
    }

    pub fn token_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vertex_count()];
        for &v in &self.tokens {
            counts[v] += 1;
        }
        counts
    }

    pub fn budget(&self) -> i64 {
        self.budget
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_budget(&self, budget: i64) -> Result<Self> {
        if budget.abs() > MAX_MAGNITUDE {
            return Err(Error::ValueTooLarge(budget));
        }
        Ok(DiscoveryInstance { budget, ..self.clone() })
    }

    pub fn with_tokens(&self, tokens: Vec<Vertex>) -> Result<Self> {
        Self::new(self.problem.clone(), self.movement.clone(), self.s, self.t, tokens, self.budget, self.variant)
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        DiscoveryInstance { variant, ..self.clone() }
    }

    /// Replaces the problem graph; a sliding movement graph follows the new
    /// problem graph.
    pub fn with_problem(&self, problem: WeightedDigraph) -> Result<Self> {
        let movement = match &self.movement {
            Movement::Sliding(_) => Movement::Sliding(problem.bidirected_unit()),
            other => other.clone(),
        };
        Self::new(problem, movement, self.s, self.t, self.tokens.clone(), self.budget, self.variant)
    }

    /// Parses and validates the JSON instance format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }

    pub fn to_raw(&self) -> RawInstance {
        let arcs = |g: &WeightedDigraph| -> Vec<[i64; 3]> {
            g.edges().iter().map(|e| [e.tail as i64, e.head as i64, e.weight]).collect()
        };
        RawInstance {
            n: self.vertex_count(),
            problem_edges: arcs(&self.problem),
            movement: self.movement.mode(),
            movement_edges: match &self.movement {
                Movement::Explicit(m) => Some(arcs(m)),
                _ => None,
            },
            s: self.s,
            t: self.t,
            tokens: self.tokens.clone(),
            budget: self.budget,
            variant: self.variant,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("instance serialises")
    }
}

/// The on-disk instance object, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub n: usize,
    pub problem_edges: Vec<[i64; 3]>,
    pub movement: MovementMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub movement_edges: Option<Vec<[i64; 3]>>,
    pub s: usize,
    pub t: usize,
    pub tokens: Vec<usize>,
    pub budget: i64,
    pub variant: Variant,
}

impl RawInstance {
    /// Checks every model constraint and builds the instance.
    pub fn validate(&self) -> Result<DiscoveryInstance> {
        let n = self.n;
        let problem = WeightedDigraph::new(n, convert_arcs(n, &self.problem_edges)?)?;
        let movement = match (self.movement, &self.movement_edges) {
            (MovementMode::Explicit, Some(arcs)) => {
                Movement::Explicit(WeightedDigraph::new(n, convert_arcs(n, arcs)?)?)
            }
            (MovementMode::Explicit, None) => {
                return Err(Error::Malformed("explicit movement requires movement_edges".into()))
            }
            (_, Some(_)) => {
                return Err(Error::Malformed("movement_edges given for an implicit movement graph".into()))
            }
            (MovementMode::TokenSliding, None) => Movement::Sliding(problem.bidirected_unit()),
            (MovementMode::TokenJumping, None) => Movement::Jumping(n),
        };
        DiscoveryInstance::new(problem, movement, self.s, self.t, self.tokens.clone(), self.budget, self.variant)
    }
}

fn convert_arcs(n: usize, arcs: &[[i64; 3]]) -> Result<Vec<(Vertex, Vertex, i64)>> {
    arcs.iter()
        .map(|&[u, v, w]| {
            let id = |x: i64| {
                usize::try_from(x)
                    .ok()
                    .filter(|&x| x < n)
                    .ok_or(Error::VertexOutOfRange { vertex: x.max(0) as usize, n })
            };
            if w.abs() > MAX_MAGNITUDE {
                return Err(Error::ValueTooLarge(w));
            }
            Ok((id(u)?, id(v)?, w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<DiscoveryInstance> {
        DiscoveryInstance::from_json(text)
    }

    #[test]
    fn negative_arc_without_cycle_is_valid() {
        let inst = parse(
            r#"{"n":2,"problem_edges":[[0,1,-3]],"movement":"explicit","movement_edges":[],
                "s":0,"t":1,"tokens":[],"budget":0,"variant":"path"}"#,
        )
        .unwrap();
        assert_eq!(inst.k(), 0);
    }

    #[test]
    fn diagnostics() {
        let base = |pe: &str, me: &str, s: usize, t: usize| {
            parse(&format!(
                r#"{{"n":2,"problem_edges":{pe},"movement":"explicit","movement_edges":{me},
                    "s":{s},"t":{t},"tokens":[0],"budget":1,"variant":"path"}}"#
            ))
        };
        assert_eq!(base("[[0,1,1],[1,0,-2]]", "[]", 0, 1), Err(Error::NegativeCycleInProblem));
        assert_eq!(
            base("[]", "[[0,1,-1]]", 0, 1),
            Err(Error::NegativeMovementWeight { tail: 0, head: 1, weight: -1 })
        );
        assert_eq!(base("[]", "[]", 1, 1), Err(Error::TerminalsEqual(1)));
        assert_eq!(base("[[0,0,1]]", "[]", 0, 1), Err(Error::SelfLoop(0)));
        assert!(matches!(base("[[0,5,1]]", "[]", 0, 1), Err(Error::VertexOutOfRange { vertex: 5, .. })));
        assert!(matches!(base("[[0,1,1099511627777]]", "[]", 0, 1), Err(Error::ValueTooLarge(_))));
    }

    #[test]
    fn schema_is_strict() {
        let unknown = r#"{"n":2,"problem_edges":[],"movement":"token_jumping","s":0,"t":1,
                          "tokens":[],"budget":0,"variant":"path","extra":1}"#;
        assert!(matches!(parse(unknown), Err(Error::Malformed(_))));
        let missing = r#"{"n":2,"problem_edges":[],"movement":"explicit","s":0,"t":1,
                          "tokens":[],"budget":0,"variant":"path"}"#;
        assert!(matches!(parse(missing), Err(Error::Malformed(_))));
        let spurious = r#"{"n":2,"problem_edges":[],"movement":"token_sliding","movement_edges":[],
                           "s":0,"t":1,"tokens":[],"budget":0,"variant":"path"}"#;
        assert!(matches!(parse(spurious), Err(Error::Malformed(_))));
    }

    #[test]
    fn implicit_movement_graphs() {
        let inst = parse(
            r#"{"n":3,"problem_edges":[[0,1,4],[1,2,4]],"movement":"token_sliding",
                "s":0,"t":2,"tokens":[2,0,0],"budget":3,"variant":"shortest_path"}"#,
        )
        .unwrap();
        assert_eq!(inst.tokens(), &[0, 0, 2]);
        assert_eq!(inst.movement().distances_from(0), vec![0.into(), 1.into(), 2.into()]);
        let jump = inst.to_raw();
        let jump = RawInstance { movement: MovementMode::TokenJumping, ..jump }.validate().unwrap();
        assert_eq!(jump.movement().distances_from(0), vec![0.into(), 1.into(), 1.into()]);
        assert_eq!(jump.movement().graph().edge_count(), 6);
    }
}
