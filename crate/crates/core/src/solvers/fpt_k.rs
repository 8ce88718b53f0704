//! Color coding over the unraveling graph, parameterized by the token count.
//!
//! A layered state `(v, colors used, tokens used)` stands for a colorful
//! s-v path whose `i`-th vertex is served by the `i`-th chosen token. Tracking
//! the used tokens as a multiset over distinct token positions ranges over
//! every token order at once and never distinguishes stacked copies.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::instance::DiscoveryInstance;
use crate::matching::TokenDistances;

use super::coloring::{injective_probability, trial_count, ColoringFamily, ColoringMode};
use super::{conclude, no_path, Prepared, SolveOptions, SolveResult, Stats};

pub fn fpt_k_solve(instance: &DiscoveryInstance, options: &SolveOptions) -> Result<SolveResult> {
    let k = instance.k();
    if k > options.caps.fpt_k_limit {
        return Err(Error::KTooLarge { tokens: k, limit: options.caps.fpt_k_limit });
    }
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let tokens = TokenDistances::new(instance);
    if k < 2 {
        return Ok(no_path(stats));
    }
    let (s, t) = (instance.s(), instance.t());
    let candidates: Vec<Vertex> =
        (0..instance.vertex_count()).filter(|&v| prep.on_st_walk[v] && v != s && v != t).collect();
    // Interior colors: a path has at most k - 2 interior vertices.
    let colors = (k - 2).min(candidates.len());
    let mut family = match options.coloring {
        ColoringMode::Exhaustive => ColoringFamily::exhaustive(candidates.len(), colors),
        ColoringMode::RandomTrials => {
            // A fixed interior of `colors` vertices is colorful with probability colors!/colors^colors.
            let trials = trial_count(injective_probability(colors), options.delta);
            ColoringFamily::random(candidates.len(), colors, trials, options.seed)
        }
    };
    if family.size() > options.caps.max_family_size {
        return Err(Error::InstanceTooLarge(format!(
            "{} colorings exceed the family limit {}",
            family.size(),
            options.caps.max_family_size
        )));
    }

    let dp = TokenDp::new(&prep, &tokens, colors);
    let mut color = vec![super::colorful::BLOCKED; instance.vertex_count()];
    let mut buf = vec![0u8; candidates.len()];
    let mut best: Option<(i64, Vec<Vertex>)> = None;
    while family.next_into(&mut buf) {
        for (&v, &c) in candidates.iter().zip(&buf) {
            color[v] = c;
        }
        stats.add("colorings", 1);
        let bound = best.as_ref().map(|b| b.0);
        if let Some((cost, path)) = dp.run(&color, bound, &mut stats) {
            best = Some((cost, path));
        }
        if options.decision_only && best.as_ref().is_some_and(|b| b.0 <= instance.budget()) {
            break;
        }
    }
    Ok(conclude(instance, &tokens, best.map(|b| b.1), stats))
}

struct TokenDp<'a> {
    prep: &'a Prepared<'a>,
    tokens: &'a TokenDistances,
    colors: usize,
    /// Mixed-radix place value of each distinct token position in a used-multiset index.
    place: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    v: u32,
    mask: u32,
    used: u32,
}

#[derive(Clone, Copy)]
struct Entry {
    key: Key,
    cost: i64,
    /// Index of the predecessor entry in the previous layer.
    pred: u32,
}

impl<'a> TokenDp<'a> {
    fn new(prep: &'a Prepared<'a>, tokens: &'a TokenDistances, colors: usize) -> Self {
        let mut place = Vec::with_capacity(tokens.counts.len());
        let mut acc = 1u32;
        for &c in &tokens.counts {
            place.push(acc);
            acc *= c as u32 + 1;
        }
        TokenDp { prep, tokens, colors, place }
    }

    fn count(&self, used: u32, i: usize) -> usize {
        (used / self.place[i]) as usize % (self.tokens.counts[i] + 1)
    }

    /// Cheapest colorful path strictly below `bound`, if any.
    fn run(&self, color: &[u8], bound: Option<i64>, stats: &mut Stats) -> Option<(i64, Vec<Vertex>)> {
        let g = &self.prep.graph;
        let (s, t) = (self.prep.instance.s(), self.prep.instance.t());
        let k = self.tokens.k();
        let below = |c: i64| bound.is_none_or(|b| c < b);
        let mut layers: Vec<Vec<Entry>> = Vec::new();
        let mut first = Vec::new();
        for i in 0..self.tokens.sources.len() {
            if let Some(d) = self.tokens.dist[i][s].finite() {
                if below(d) {
                    let key = Key { v: s as u32, mask: 0, used: self.place[i] };
                    first.push(Entry { key, cost: d, pred: u32::MAX });
                }
            }
        }
        layers.push(first);
        let mut best: Option<(i64, usize, usize)> = None;
        for j in 1..k {
            let prev = &layers[j - 1];
            let mut next: Vec<Entry> = Vec::new();
            let mut index: HashMap<Key, usize> = HashMap::new();
            for (pi, e) in prev.iter().enumerate() {
                let u = e.key.v as usize;
                for &(v, _) in g.out_edges(u) {
                    let interior = v != t;
                    if interior {
                        let col = color[v];
                        if v == s || col == super::colorful::BLOCKED || e.key.mask >> col & 1 == 1 {
                            continue;
                        }
                        if e.key.mask.count_ones() as usize >= self.colors || j + 1 >= k {
                            continue;
                        }
                    }
                    for i in 0..self.tokens.sources.len() {
                        if self.count(e.key.used, i) >= self.tokens.counts[i] {
                            continue;
                        }
                        let Some(d) = self.tokens.dist[i][v].finite() else { continue };
                        let cost = e.cost + d;
                        let cap = best.map(|b| b.0);
                        if !below(cost) || cap.is_some_and(|b| cost >= b) {
                            continue;
                        }
                        let used = e.key.used + self.place[i];
                        if !interior {
                            best = Some((cost, j, pi));
                            continue;
                        }
                        let key = Key { v: v as u32, mask: e.key.mask | 1 << color[v], used };
                        match index.get(&key) {
                            Some(&at) if next[at].cost <= cost => {}
                            Some(&at) => next[at] = Entry { key, cost, pred: pi as u32 },
                            None => {
                                index.insert(key, next.len());
                                next.push(Entry { key, cost, pred: pi as u32 });
                            }
                        }
                    }
                }
            }
            stats.add("dp_states", next.len() as u64);
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        let (cost, j, mut at) = best?;
        let mut path = vec![t];
        for layer in (0..j).rev() {
            let e = layers[layer][at];
            path.push(e.key.v as usize);
            at = e.pred as usize;
        }
        path.reverse();
        Some((cost, path))
    }
}
