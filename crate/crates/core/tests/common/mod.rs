#![allow(dead_code)]

use rand::Rng;

use discovery_core::solvers::ColoringMode;
use discovery_core::{
    shortest_path_subgraph, solve, Algorithm, DiscoveryInstance, Error, Movement, MovementMode, SolveOptions,
    SolveResult, Variant, WeightedDigraph,
};

fn random_arcs(rng: &mut impl Rng, n: usize, density: f64, max_weight: i64) -> Vec<(usize, usize, i64)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v, rng.gen_range(0..=max_weight)));
            }
        }
    }
    arcs
}

/// A random instance with `2..=max_n` vertices, at most `max_k` tokens,
/// weights in `0..=4` and a random movement mode and variant.
pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_k: usize) -> DiscoveryInstance {
    let n = rng.gen_range(2..=max_n);
    let density = rng.gen_range(0.15..0.6);
    let g = WeightedDigraph::new(n, random_arcs(rng, n, density, 4)).unwrap();
    let movement = match rng.gen_range(0..3) {
        0 => Movement::Explicit(WeightedDigraph::new(n, random_arcs(rng, n, density, 4)).unwrap()),
        1 => Movement::Sliding(g.bidirected_unit()),
        _ => Movement::Jumping(n),
    };
    let s = rng.gen_range(0..n);
    let t = (s + rng.gen_range(1..n)) % n;
    let k = rng.gen_range(0..=max_k);
    let tokens = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let variant = if rng.gen_bool(0.5) { Variant::Path } else { Variant::ShortestPath };
    DiscoveryInstance::new(g, movement, s, t, tokens, rng.gen_range(0..=8), variant).unwrap()
}

/// Path discovery on the shortest-path subgraph; `None` without an s-t path.
pub fn star_instance(inst: &DiscoveryInstance) -> Option<DiscoveryInstance> {
    let (star, _) = shortest_path_subgraph(inst.problem(), inst.s(), inst.t()).ok()?;
    let movement = match inst.movement() {
        Movement::Sliding(m) => Movement::Explicit(m.clone()),
        other => other.clone(),
    };
    Some(DiscoveryInstance::new(star, movement, inst.s(), inst.t(), inst.tokens().to_vec(), inst.budget(), Variant::Path).unwrap())
}

/// Exact settings: exhaustive coloring families and no length bound below `n`.
pub fn exact_options(inst: &DiscoveryInstance) -> SolveOptions {
    let mut o = SolveOptions { coloring: ColoringMode::Exhaustive, ..Default::default() };
    o.caps.ell_max = Some(inst.vertex_count().max(2));
    o
}

/// Every exact solver whose preconditions the instance meets.
pub fn exact_solvers(inst: &DiscoveryInstance) -> Vec<Algorithm> {
    let mut algs = vec![Algorithm::FptK, Algorithm::BoundedLen, Algorithm::Fes, Algorithm::Treewidth];
    if inst.movement().mode() == MovementMode::TokenJumping {
        algs.insert(0, Algorithm::Jump);
    }
    algs
}

/// `Ok(None)` when the solver declines the instance as outside its scope.
pub fn run_exact(inst: &DiscoveryInstance, alg: Algorithm) -> Result<Option<SolveResult>, Error> {
    match solve(inst, alg, &exact_options(inst)) {
        Ok(r) => Ok(Some(r)),
        Err(Error::WidthTooLarge { .. }) if alg == Algorithm::Treewidth => Ok(None),
        Err(e) => Err(e),
    }
}
