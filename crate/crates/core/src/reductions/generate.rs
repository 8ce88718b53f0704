//! Path discovery instances whose answer equals that of a circulating
//! orientation source.
//!
//! Every generator lays out the same gadget chain: terminals `s` and `t`,
//! chain vertices `q_1^s, q_1^t, ..., q_m^t`, and per source edge two
//! branches with `w(e)` internal vertices each, one branch per endpoint.
//! Reservoirs `p_v` hold `W(v)/2` tokens and reach every branch vertex
//! associated with `v` at movement distance exactly `L = m + W + 1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph};
use crate::instance::{DiscoveryInstance, Movement, Variant};

use super::circ::CirculatingOrientationInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    GadgetChain,
    Caterpillar,
    ZeroBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantTransform {
    ZeroProblemWeights,
    DagOrient,
}

/// How sources with an odd weighted degree are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddMode {
    /// Refuse with `ODD_DEGREE_SOURCE`.
    #[default]
    Strict,
    /// Emit the same skeleton with budget -1, a trivially negative instance.
    Permissive,
}

/// Internal vertices of one branch of an edge gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// Source vertex this branch is associated with.
    pub owner: usize,
    /// Half-open vertex range, in order from `q_i^s` to `q_i^t`.
    pub vertices: (Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    /// Index of the source edge.
    pub edge: usize,
    pub source: Vertex,
    pub target: Vertex,
    pub branches: [Branch; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactMetadata {
    pub reduction: Reduction,
    /// Transforms applied after generation, in order.
    pub transforms: Vec<VariantTransform>,
    pub variant: Variant,
    pub vertex_count: usize,
    pub m: usize,
    /// `W`, the total source weight.
    pub total_weight: i64,
    /// `L = m + W + 1`.
    pub l: i64,
    pub budget: i64,
    /// Set when the source has an odd weighted degree and the budget is -1.
    pub trivially_negative: bool,
    /// Named half-open vertex ranges partitioning `0..vertex_count`.
    pub ranges: Vec<(String, Vertex, Vertex)>,
    pub s: Vertex,
    pub t: Vertex,
    /// `q_1^s, q_1^t, ..., q_m^t`.
    pub chain: Vec<Vertex>,
    pub gadgets: Vec<Gadget>,
    /// `p_v` for each source vertex `v`.
    pub reservoirs: Vec<Vertex>,
    /// Problem graph edges, each oriented from `s` toward `t` or from a
    /// reservoir toward the gadgets.
    pub forward_problem_edges: Vec<(Vertex, Vertex)>,
    /// Movement arcs oriented the same way; empty under token sliding.
    pub forward_movement_arcs: Vec<(Vertex, Vertex, i64)>,
    pub source: CirculatingOrientationInstance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedArtifact {
    pub instance: DiscoveryInstance,
    pub metadata: ArtifactMetadata,
}

impl GeneratedArtifact {
    pub fn metadata_json(&self) -> String {
        serde_json::to_string_pretty(&self.metadata).expect("metadata serialises")
    }
}

pub fn generate_gadget_chain(src: &CirculatingOrientationInstance, odd: OddMode) -> Result<GeneratedArtifact> {
    generate(src, Reduction::GadgetChain, odd)
}

pub fn generate_caterpillar(src: &CirculatingOrientationInstance, odd: OddMode) -> Result<GeneratedArtifact> {
    generate(src, Reduction::Caterpillar, odd)
}

pub fn generate_zero_budget(src: &CirculatingOrientationInstance, odd: OddMode) -> Result<GeneratedArtifact> {
    generate(src, Reduction::ZeroBudget, odd)
}

pub fn generate(src: &CirculatingOrientationInstance, reduction: Reduction, odd: OddMode) -> Result<GeneratedArtifact> {
    src.validate()?;
    let odd_vertices = src.odd_vertices();
    if let (Some(&v), OddMode::Strict) = (odd_vertices.first(), odd) {
        return Err(Error::OddDegreeSource(v));
    }
    let edges = src.ordered_edges();
    let order: Vec<usize> = src.edge_order.clone().unwrap_or_else(|| (0..edges.len()).collect());
    let m = edges.len();
    let total = src.total_weight();
    let l = m as i64 + total + 1;
    let mut next: Vertex = 0;
    let mut ranges = Vec::new();

    // Terminals and chain: s, q_1^s, q_1^t, ..., q_m^t, t.
    let s = fresh(&mut next, 1);
    let chain_len = if m == 0 { 0 } else { m + 1 };
    let chain_start = fresh(&mut next, chain_len);
    let chain: Vec<Vertex> = (chain_start..chain_start + chain_len).collect();
    let t = fresh(&mut next, 1);
    ranges.push(("chain".to_string(), s, t + 1));
    let mut forward: Vec<(Vertex, Vertex)> = Vec::new();
    if m == 0 {
        forward.push((s, t));
    } else {
        forward.push((s, chain[0]));
        forward.push((chain[m], t));
    }

    // Gadgets and the branch vertices associated with each source vertex, in gadget order.
    let branch_start = next;
    let mut gadgets = Vec::with_capacity(m);
    let mut associated: Vec<Vec<Vertex>> = vec![Vec::new(); src.vertex_count];
    for (i, &(u, v, w)) in edges.iter().enumerate() {
        let (qs, qt) = (chain[i], chain[i + 1]);
        let branches = [u, v].map(|owner| {
            let start = fresh(&mut next, w as usize);
            let inner: Vec<Vertex> = (start..start + w as usize).collect();
            let route: Vec<Vertex> = std::iter::once(qs).chain(inner.iter().copied()).chain([qt]).collect();
            forward.extend(route.windows(2).map(|p| (p[0], p[1])));
            associated[owner].extend(&inner);
            Branch { owner, vertices: (start, start + w as usize) }
        });
        gadgets.push(Gadget { edge: order[i], source: qs, target: qt, branches });
    }
    ranges.push(("branches".to_string(), branch_start, next));

    let reservoir_start = next;
    let reservoirs: Vec<Vertex> = (0..src.vertex_count).map(|_| fresh(&mut next, 1)).collect();
    ranges.push(("reservoirs".to_string(), reservoir_start, next));

    // Reservoir attachments.
    let attach_start = next;
    let mut movement_arcs: Vec<(Vertex, Vertex, i64)> = Vec::new();
    for (v, zs) in associated.iter().enumerate() {
        let p = reservoirs[v];
        match reduction {
            Reduction::GadgetChain => {
                for &z in zs {
                    let start = fresh(&mut next, l as usize - 1);
                    let route: Vec<Vertex> = std::iter::once(p).chain(start..start + l as usize - 1).chain([z]).collect();
                    forward.extend(route.windows(2).map(|q| (q[0], q[1])));
                }
            }
            Reduction::Caterpillar => {
                // Spine p = c_0, c_1, ..., c_{W(v)}; leg of length L - j from c_j to z_j.
                let spine_start = fresh(&mut next, zs.len());
                let spine: Vec<Vertex> = std::iter::once(p).chain(spine_start..spine_start + zs.len()).collect();
                forward.extend(spine.windows(2).map(|q| (q[0], q[1])));
                for (j, &z) in zs.iter().enumerate() {
                    let j = j + 1;
                    let inner = l as usize - j - 1;
                    let start = fresh(&mut next, inner);
                    let leg: Vec<Vertex> = std::iter::once(spine[j]).chain(start..start + inner).chain([z]).collect();
                    forward.extend(leg.windows(2).map(|q| (q[0], q[1])));
                }
            }
            Reduction::ZeroBudget => movement_arcs.extend(zs.iter().map(|&z| (p, z, 0))),
        }
    }
    ranges.push(("attachments".to_string(), attach_start, next));
    let n = next;

    let mut tokens = vec![s, t];
    tokens.extend(&chain);
    for (v, &p) in reservoirs.iter().enumerate() {
        tokens.extend(std::iter::repeat(p).take((src.weighted_degree(v) / 2) as usize));
    }
    let trivially_negative = !odd_vertices.is_empty();
    let budget = match (trivially_negative, reduction) {
        (true, _) => -1,
        (false, Reduction::ZeroBudget) => 0,
        (false, _) => total * l,
    };
    let problem = WeightedDigraph::new(n, forward.iter().flat_map(|&(a, b)| [(a, b, 1), (b, a, 1)]))?;
    let movement = match reduction {
        Reduction::ZeroBudget => Movement::Explicit(WeightedDigraph::new(n, movement_arcs.iter().copied())?),
        _ => Movement::Sliding(problem.bidirected_unit()),
    };
    let instance = DiscoveryInstance::new(problem, movement, s, t, tokens, budget, Variant::ShortestPath)?;
    let metadata = ArtifactMetadata {
        reduction,
        transforms: Vec::new(),
        variant: Variant::ShortestPath,
        vertex_count: n,
        m,
        total_weight: total,
        l,
        budget,
        trivially_negative,
        ranges,
        s,
        t,
        chain,
        gadgets,
        reservoirs,
        forward_problem_edges: forward,
        forward_movement_arcs: movement_arcs,
        source: src.clone(),
    };
    Ok(GeneratedArtifact { instance, metadata })
}

fn fresh(next: &mut Vertex, count: usize) -> Vertex {
    let start = *next;
    *next += count;
    start
}

/// Applies a structural transform that preserves the answer.
pub fn apply_variant(artifact: &GeneratedArtifact, transform: VariantTransform) -> Result<GeneratedArtifact> {
    check_generated(artifact)?;
    let meta = &artifact.metadata;
    let inst = &artifact.instance;
    let instance = match transform {
        VariantTransform::ZeroProblemWeights => inst.with_problem(inst.problem().map_weights(|_| 0))?,
        VariantTransform::DagOrient => {
            let g = inst.problem();
            let problem = WeightedDigraph::new(
                g.vertex_count(),
                meta.forward_problem_edges.iter().filter_map(|&(a, b)| g.weight(a, b).map(|w| (a, b, w))),
            )?;
            let movement_graph = match inst.movement() {
                Movement::Sliding(_) => problem.map_weights(|_| 1),
                Movement::Explicit(m) => m.filter_edges(|e| {
                    meta.forward_movement_arcs.iter().any(|&(a, b, _)| (a, b) == (e.tail, e.head))
                }),
                Movement::Jumping(_) => return Err(Error::NotAGeneratedArtifact("unexpected movement mode".into())),
            };
            if !problem.is_acyclic() || !movement_graph.is_acyclic() {
                return Err(Error::NotAGeneratedArtifact("orientation leaves a directed cycle".into()));
            }
            DiscoveryInstance::new(
                problem,
                Movement::Explicit(movement_graph),
                inst.s(),
                inst.t(),
                inst.tokens().to_vec(),
                inst.budget(),
                inst.variant(),
            )?
        }
    };
    let mut metadata = meta.clone();
    metadata.transforms.push(transform);
    Ok(GeneratedArtifact { instance, metadata })
}

/// Rejects artifacts whose instance does not fit their metadata.
fn check_generated(artifact: &GeneratedArtifact) -> Result<()> {
    let meta = &artifact.metadata;
    let inst = &artifact.instance;
    let fail = |why: &str| Err(Error::NotAGeneratedArtifact(why.to_string()));
    if inst.vertex_count() != meta.vertex_count || inst.s() != meta.s || inst.t() != meta.t {
        return fail("vertex count or terminals differ from the metadata");
    }
    if inst.budget() != meta.budget {
        return fail("budget differs from the metadata");
    }
    let allowed: BTreeSet<(Vertex, Vertex)> =
        meta.forward_problem_edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    if inst.problem().edges().iter().any(|e| !allowed.contains(&(e.tail, e.head))) {
        return fail("problem graph has arcs outside the generated skeleton");
    }
    let mut covered = 0;
    for (_, start, end) in &meta.ranges {
        if *start != covered || end < start {
            return fail("vertex ranges do not partition the vertex set");
        }
        covered = *end;
    }
    if covered != meta.vertex_count {
        return fail("vertex ranges do not cover the vertex set");
    }
    Ok(())
}
