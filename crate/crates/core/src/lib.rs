//! Solution discovery for s-t paths: move tokens along a movement graph,
//! within a budget, until the occupied vertices contain a (shortest) s-t
//! path of the problem graph.

pub mod certificate;
pub mod dist;
pub mod error;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod reductions;
pub mod shortest;
pub mod solvers;

pub use certificate::{verify_certificate, Certificate, Verdict, Violation};
pub use dist::Dist;
pub use error::{Error, Result};
pub use graph::{Edge, Vertex, WeightedDigraph};
pub use instance::{DiscoveryInstance, Movement, MovementMode, RawInstance, Variant};
pub use matching::{min_cost_target_realization, Realization, TokenDistances};
pub use shortest::{movement_distances, problem_distances, shortest_path_subgraph, DistanceTable};
pub use solvers::{solve, Algorithm, Answer, Caps, SolveOptions, SolveResult, Stats};
