//! Double color coding for solutions with few vertices: vertices are colored
//! to keep the path simple, tokens are colored into classes, and a guessed
//! permutation fixes which token class serves each path position.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::{DiscoveryInstance, Variant};
use crate::matching::TokenDistances;
use crate::shortest::problem_distances;

use super::coloring::{injective_probability, trial_count, ColoringFamily, ColoringMode};
use super::colorful::{colorful_path_min, BLOCKED};
use super::{conclude, improve, no_path, Prepared, SolveOptions, SolveResult, Stats};

/// `D + 1` for a shortest-path instance with positive weights: every
/// shortest s-t path has at most that many vertices.
pub fn spd_diameter_bound(instance: &DiscoveryInstance) -> Result<usize> {
    if instance.variant() != Variant::ShortestPath {
        return Err(Error::AlgorithmPreconditionViolated("diameter bound needs the shortest_path variant".into()));
    }
    if instance.problem().edges().iter().any(|e| e.weight < 1) {
        return Err(Error::NonpositiveWeightPresent);
    }
    match problem_distances(instance.problem(), instance.s(), false).get(instance.t()) {
        Dist::Finite(d) => Ok(d as usize + 1),
        Dist::Infinite => Err(Error::NoStPath),
    }
}

fn default_ell_max(instance: &DiscoveryInstance) -> usize {
    spd_diameter_bound(instance).unwrap_or(instance.vertex_count()).min(instance.vertex_count())
}

pub fn bounded_length_solve(instance: &DiscoveryInstance, options: &SolveOptions) -> Result<SolveResult> {
    let ell_max = options.caps.ell_max.unwrap_or_else(|| default_ell_max(instance));
    if ell_max < 2 {
        return Err(Error::AlgorithmPreconditionViolated(format!("ell_max must be at least 2, got {ell_max}")));
    }
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let tokens = TokenDistances::new(instance);
    let (s, t) = (instance.s(), instance.t());
    let n = instance.vertex_count();
    let candidates: Vec<Vertex> = (0..n).filter(|&v| prep.on_st_walk[v] && v != s && v != t).collect();
    let ell_hi = ell_max.min(instance.k()).min(candidates.len() + 2);

    let mut best: Option<(i64, Vec<Vertex>)> = None;
    let mut color = vec![BLOCKED; n];
    let mut vertex_buf = vec![0u8; candidates.len()];
    'lengths: for ell in 2..=ell_hi {
        let interior = ell - 2;
        let runs = match options.coloring {
            ColoringMode::Exhaustive => {
                let token_colorings = exhaustive_token_colorings(&tokens.counts, ell);
                let vertices = ColoringFamily::exhaustive(candidates.len(), interior);
                check_family(vertices.size().saturating_mul(token_colorings.len() as u64), options)?;
                Runs::Exhaustive { vertices, token_colorings, next: 0, current: None }
            }
            ColoringMode::RandomTrials => {
                let p = injective_probability(interior) * injective_probability(ell);
                let trials = trial_count(p, options.delta);
                check_family(trials.saturating_mul(factorial(ell)), options)?;
                let seed = options.seed ^ (ell as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
                Runs::Random {
                    vertices: ColoringFamily::random(candidates.len(), interior, trials, seed),
                    rng: ChaCha8Rng::seed_from_u64(seed.rotate_left(17)),
                }
            }
        };
        let mut runs = runs;
        while let Some((classes, perms)) = runs.next(&mut vertex_buf, &tokens.counts, ell) {
            for (&v, &c) in candidates.iter().zip(&vertex_buf) {
                color[v] = c;
            }
            stats.add("colorings", 1);
            // class_cost[i][v]: cheapest token of class i reaching v.
            let class_cost: Vec<Vec<Option<i64>>> = (0..ell)
                .map(|class| {
                    (0..n)
                        .map(|v| {
                            classes
                                .iter()
                                .enumerate()
                                .filter(|&(_, set)| set >> class & 1 == 1)
                                .filter_map(|(i, _)| tokens.dist[i][v].finite())
                                .min()
                        })
                        .collect()
                })
                .collect();
            for pi in perms {
                stats.add("dp_runs", 1);
                let found = colorful_path_min(&prep.graph, s, t, &color, ell, |j, v| class_cost[pi[j]][v]);
                if let Some((cost, path)) = found {
                    improve(&mut best, cost, || path);
                }
                if options.decision_only && best.as_ref().is_some_and(|b| b.0 <= instance.budget()) {
                    break 'lengths;
                }
            }
        }
    }
    Ok(conclude(instance, &tokens, best.map(|b| b.1), stats))
}

fn check_family(size: u64, options: &SolveOptions) -> Result<()> {
    if size > options.caps.max_family_size {
        return Err(Error::InstanceTooLarge(format!(
            "{size} colorings exceed the family limit {}",
            options.caps.max_family_size
        )));
    }
    Ok(())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |a, b| a.saturating_mul(b))
}

/// Source of (vertex coloring, token classes, permutations) combinations.
enum Runs {
    /// Every vertex coloring against every token coloring; the identity
    /// permutation suffices because token colorings are not taken up to relabeling.
    Exhaustive { vertices: ColoringFamily, token_colorings: Vec<Vec<u32>>, next: usize, current: Option<()> },
    /// Independent random vertex and token colorings, each tried under every permutation.
    Random { vertices: ColoringFamily, rng: ChaCha8Rng },
}

impl Runs {
    /// Fills `vertex_buf` and returns, per distinct token position, the set of
    /// classes its copies belong to, with the permutations to try.
    fn next(&mut self, vertex_buf: &mut [u8], counts: &[usize], ell: usize) -> Option<(Vec<u32>, Vec<Vec<usize>>)> {
        match self {
            Runs::Exhaustive { vertices, token_colorings, next, current } => {
                if token_colorings.is_empty() {
                    return None;
                }
                if current.is_none() || *next == token_colorings.len() {
                    if !vertices.next_into(vertex_buf) {
                        return None;
                    }
                    *current = Some(());
                    *next = 0;
                }
                *next += 1;
                Some((token_colorings[*next - 1].clone(), vec![(0..ell).collect()]))
            }
            Runs::Random { vertices, rng } => {
                if !vertices.next_into(vertex_buf) {
                    return None;
                }
                let classes = counts
                    .iter()
                    .map(|&c| (0..c).fold(0u32, |set, _| set | 1 << rng.gen_range(0..ell)))
                    .collect();
                Some((classes, permutations(ell)))
            }
        }
    }
}

/// Token colorings up to stacking: for each distinct token position a set of
/// `min(count, ell)` classes, jointly covering all `ell` classes. Giving a
/// position more classes only lowers class costs, so larger sets lose nothing.
fn exhaustive_token_colorings(counts: &[usize], ell: usize) -> Vec<Vec<u32>> {
    let per_source: Vec<Vec<u32>> = counts
        .iter()
        .map(|&c| (0u32..1 << ell).filter(|m| m.count_ones() as usize == c.min(ell)).collect())
        .collect();
    let full = (1u32 << ell) - 1;
    let mut out = Vec::new();
    let mut pick = vec![0u32; counts.len()];
    fn go(i: usize, acc: u32, full: u32, per_source: &[Vec<u32>], pick: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == per_source.len() {
            if acc == full {
                out.push(pick.clone());
            }
            return;
        }
        for &m in &per_source[i] {
            pick[i] = m;
            go(i + 1, acc | m, full, per_source, pick, out);
        }
    }
    go(0, 0, full, &per_source, &mut pick, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use crate::instance::Movement;
    use crate::solvers::{oracle_solve, Answer};

    fn exhaustive(ell_max: Option<usize>) -> SolveOptions {
        let mut o = SolveOptions { coloring: ColoringMode::Exhaustive, ..SolveOptions::default() };
        o.caps.ell_max = ell_max;
        o
    }

    /// s=0 -> 1 -> 2 -> t=3 and the direct arc s -> t.
    fn two_routes() -> DiscoveryInstance {
        let g = WeightedDigraph::new(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 5)]).unwrap();
        DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 3, vec![0, 1, 2, 4], 9, Variant::Path)
            .unwrap()
    }

    #[test]
    fn diameter_bound() {
        let unit = WeightedDigraph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let inst = DiscoveryInstance::new(unit, Movement::Jumping(4), 0, 3, vec![0], 0, Variant::ShortestPath).unwrap();
        assert_eq!(spd_diameter_bound(&inst), Ok(4));
        let twos = WeightedDigraph::new(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2)]).unwrap();
        let inst = DiscoveryInstance::new(twos, Movement::Jumping(4), 0, 3, vec![0], 0, Variant::ShortestPath).unwrap();
        assert_eq!(spd_diameter_bound(&inst), Ok(7));
        let zero = WeightedDigraph::new(2, [(0, 1, 0)]).unwrap();
        let inst = DiscoveryInstance::new(zero, Movement::Jumping(2), 0, 1, vec![0], 0, Variant::ShortestPath).unwrap();
        assert_eq!(spd_diameter_bound(&inst), Err(Error::NonpositiveWeightPresent));
    }

    #[test]
    fn matches_oracle_with_full_length() {
        let inst = two_routes();
        let expected = oracle_solve(&inst, &SolveOptions::default()).unwrap();
        let r = bounded_length_solve(&inst, &exhaustive(Some(5))).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (expected.answer, expected.optimal_cost));
        let r = bounded_length_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (expected.answer, expected.optimal_cost));
    }

    #[test]
    fn length_two_sees_only_the_direct_arc() {
        let r = bounded_length_solve(&two_routes(), &exhaustive(Some(2))).unwrap();
        assert_eq!(r.certificate.unwrap().path, vec![0, 3]);
    }

    #[test]
    fn too_short_bound_is_no() {
        let g = WeightedDigraph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let inst =
            DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 2, vec![0, 1, 2], 9, Variant::Path).unwrap();
        let r = bounded_length_solve(&inst, &exhaustive(Some(2))).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::Infinite));
    }

    #[test]
    fn token_colorings_cover_all_classes() {
        assert_eq!(exhaustive_token_colorings(&[1, 1, 1], 3).len(), 6);
        assert_eq!(exhaustive_token_colorings(&[2, 1], 2), vec![vec![0b11, 0b01], vec![0b11, 0b10]]);
        assert_eq!(permutations(3).len(), 6);
    }
}
