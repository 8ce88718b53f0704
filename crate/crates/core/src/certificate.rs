use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::graph::Vertex;
use crate::instance::{DiscoveryInstance, Variant};
use crate::shortest::problem_distances;

/// A discovered path together with the tokens that occupy it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    /// `s = path[0], ..., path[r-1] = t`.
    pub path: Vec<Vertex>,
    /// `(token source vertex, path position)` pairs.
    pub assignment: Vec<(Vertex, usize)>,
    pub cost: i64,
}

/// First condition a certificate violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    VertexOutOfRange,
    WrongEndpoints,
    NotSimple,
    MissingEdge,
    NotShortest,
    PositionNotCovered,
    TokenOveruse,
    UnreachableToken,
    CostMismatch,
    OverBudget,
}

impl Violation {
    pub fn code(self) -> &'static str {
        match self {
            Violation::VertexOutOfRange => "VERTEX_OUT_OF_RANGE",
            Violation::WrongEndpoints => "WRONG_ENDPOINTS",
            Violation::NotSimple => "NOT_SIMPLE",
            Violation::MissingEdge => "MISSING_EDGE",
            Violation::NotShortest => "NOT_SHORTEST",
            Violation::PositionNotCovered => "POSITION_NOT_COVERED",
            Violation::TokenOveruse => "TOKEN_OVERUSE",
            Violation::UnreachableToken => "UNREACHABLE_TOKEN",
            Violation::CostMismatch => "COST_MISMATCH",
            Violation::OverBudget => "OVER_BUDGET",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub detail: String,
}

impl Verdict {
    fn ok() -> Self {
        Verdict { valid: true, violation: None, detail: String::new() }
    }

    fn fail(violation: Violation, detail: impl Into<String>) -> Self {
        Verdict { valid: false, violation: Some(violation), detail: detail.into() }
    }
}

/// Checks a certificate against the instance from first principles,
/// without trusting any solver.
pub fn verify_certificate(instance: &DiscoveryInstance, cert: &Certificate) -> Verdict {
    let n = instance.vertex_count();
    let g = instance.problem();
    let path = &cert.path;

    let out_of_range = path.iter().chain(cert.assignment.iter().map(|(x, _)| x)).find(|&&v| v >= n);
    if let Some(v) = out_of_range {
        return Verdict::fail(Violation::VertexOutOfRange, format!("vertex {v} not in 0..{n}"));
    }
    if path.first() != Some(&instance.s()) || path.last() != Some(&instance.t()) {
        return Verdict::fail(Violation::WrongEndpoints, "path must run from s to t");
    }
    let mut seen = vec![false; n];
    for &v in path {
        if std::mem::replace(&mut seen[v], true) {
            return Verdict::fail(Violation::NotSimple, format!("vertex {v} repeats"));
        }
    }
    let mut weight = 0i64;
    for pair in path.windows(2) {
        match g.weight(pair[0], pair[1]) {
            Some(w) => weight += w,
            None => return Verdict::fail(Violation::MissingEdge, format!("no arc ({}, {})", pair[0], pair[1])),
        }
    }
    if instance.variant() == Variant::ShortestPath {
        let d = problem_distances(g, instance.s(), false).get(instance.t());
        if Dist::Finite(weight) != d {
            return Verdict::fail(Violation::NotShortest, format!("path weight {weight}, distance {d}"));
        }
    }

    let mut covered = vec![0usize; path.len()];
    for &(_, pos) in &cert.assignment {
        if pos >= path.len() {
            return Verdict::fail(Violation::PositionNotCovered, format!("position {pos} beyond path"));
        }
        covered[pos] += 1;
    }
    if let Some(pos) = covered.iter().position(|&c| c != 1) {
        return Verdict::fail(Violation::PositionNotCovered, format!("position {pos} covered {} times", covered[pos]));
    }
    let mut available = instance.token_counts();
    for &(x, _) in &cert.assignment {
        if available[x] == 0 {
            return Verdict::fail(Violation::TokenOveruse, format!("more tokens taken from {x} than present"));
        }
        available[x] -= 1;
    }

    let mut cost = 0i64;
    for &(x, pos) in &cert.assignment {
        match instance.movement().distances_from(x)[path[pos]] {
            Dist::Finite(d) => cost += d,
            Dist::Infinite => {
                return Verdict::fail(Violation::UnreachableToken, format!("token at {x} cannot reach {}", path[pos]))
            }
        }
    }
    if cost != cert.cost {
        return Verdict::fail(Violation::CostMismatch, format!("claimed {}, recomputed {cost}", cert.cost));
    }
    if cost > instance.budget() {
        return Verdict::fail(Violation::OverBudget, format!("cost {cost} exceeds budget {}", instance.budget()));
    }
    Verdict::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use crate::instance::Movement;

    /// s=0 -> a=1 -> t=3 (weight 2) and s=0 -> b=2 -> t=3 (weight 5).
    fn two_routes(variant: Variant) -> DiscoveryInstance {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 4)]).unwrap();
        let m = g.bidirected_unit();
        DiscoveryInstance::new(g, Movement::Sliding(m), 0, 3, vec![0, 1, 3, 3], 1, variant).unwrap()
    }

    fn cert(path: Vec<usize>, assignment: Vec<(usize, usize)>, cost: i64) -> Certificate {
        Certificate { path, assignment, cost }
    }

    #[test]
    fn accepts_valid() {
        let inst = two_routes(Variant::ShortestPath);
        let v = verify_certificate(&inst, &cert(vec![0, 1, 3], vec![(0, 0), (1, 1), (3, 2)], 0));
        assert!(v.valid, "{v:?}");
        let v = verify_certificate(&two_routes(Variant::Path), &cert(vec![0, 2, 3], vec![(0, 0), (1, 1), (3, 2)], 2));
        assert_eq!(v.violation, Some(Violation::OverBudget));
    }

    #[test]
    fn rejects_longer_route_for_shortest_variant() {
        let inst = two_routes(Variant::ShortestPath);
        let v = verify_certificate(&inst, &cert(vec![0, 2, 3], vec![(0, 0), (3, 1), (3, 2)], 1));
        assert_eq!(v.violation, Some(Violation::NotShortest));
        let path_inst = two_routes(Variant::Path).with_budget(2).unwrap();
        let v = verify_certificate(&path_inst, &cert(vec![0, 2, 3], vec![(0, 0), (3, 1), (3, 2)], 1));
        assert!(v.valid, "{v:?}");
    }

    #[test]
    fn rejects_duplicated_vertex_and_bad_assignment() {
        let inst = two_routes(Variant::Path);
        let v = verify_certificate(&inst, &cert(vec![0, 1, 0, 3], vec![], 0));
        assert_eq!(v.violation, Some(Violation::NotSimple));
        let v = verify_certificate(&inst, &cert(vec![0, 1, 3], vec![(0, 0), (1, 1)], 0));
        assert_eq!(v.violation, Some(Violation::PositionNotCovered));
        let v = verify_certificate(&inst, &cert(vec![0, 1, 3], vec![(0, 0), (0, 1), (3, 2)], 1));
        assert_eq!(v.violation, Some(Violation::TokenOveruse));
        let v = verify_certificate(&inst, &cert(vec![0, 1, 3], vec![(0, 0), (1, 1), (3, 2)], 3));
        assert_eq!(v.violation, Some(Violation::CostMismatch));
        let v = verify_certificate(&inst, &cert(vec![0, 9, 3], vec![], 0));
        assert_eq!(v.violation, Some(Violation::VertexOutOfRange));
        let v = verify_certificate(&inst, &cert(vec![0, 3], vec![], 0));
        assert_eq!(v.violation, Some(Violation::MissingEdge));
    }
}
