//! Dynamic programming over a nice tree decomposition of the union of the
//! admissible problem graph and the movement graph.
//!
//! A solution is a simple s-t path together with an integral token flow in
//! the movement graph in which every path vertex ends up with at least one
//! token; the cheapest such flow costs exactly the matching cost of the path.
//! Both are decided edge by edge at the node that forgets the first endpoint.
//! Per bag vertex a state records the path arcs chosen so far (in and out
//! degree), the other end of its path segment, and the net token flow `beta`.
//!
//! The degree and segment data of a bag form its shape, interned once per
//! run; the balances are packed one biased byte per bag position.

use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedDigraph};
use crate::instance::DiscoveryInstance;
use crate::matching::TokenDistances;

use super::treedec::{nice_bags, union_graph, NiceNode, TreeDecomposition};
use super::{build_tree_decomposition, conclude, no_path, Prepared, SolveOptions, SolveResult, Stats};

const IN: u8 = 1;
const OUT: u8 = 2;
/// No segment partner: the vertex is untouched or interior to its segment.
const NONE: u32 = u32::MAX;
/// The partner was forgotten, so it is `s` (for a segment end) or `t` (for a start).
const FORGOTTEN: u32 = u32::MAX - 1;

/// Bag positions that fit in the packed balance word.
const MAX_BAG: usize = 16;
const BIAS: i32 = 64;
/// Largest balance magnitude the packed representation holds.
const MAX_BALANCE: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Port {
    deg: u8,
    mate: u32,
}

const FRESH: Port = Port { deg: 0, mate: NONE };

type Shape = Vec<Port>;

/// Byte `i` holds the balance of bag position `i` plus `BIAS`.
type Betas = u128;

fn beta(b: Betas, i: usize) -> i32 {
    (b >> (8 * i) & 0xff) as i32 - BIAS
}

fn with_beta(b: Betas, i: usize, v: i32) -> Betas {
    b & !(0xff << (8 * i)) | ((v + BIAS) as u128) << (8 * i)
}

fn insert_beta(b: Betas, at: usize) -> Betas {
    let low = b & ((1u128 << (8 * at)) - 1);
    let high = (b >> (8 * at)).checked_shl(8 * (at as u32 + 1)).unwrap_or(0);
    low | high | (BIAS as u128) << (8 * at)
}

fn remove_beta(b: Betas, at: usize) -> Betas {
    let low = b & ((1u128 << (8 * at)) - 1);
    let high = b.checked_shr(8 * (at as u32 + 1)).unwrap_or(0) << (8 * at);
    low | high
}

fn bias_word(len: usize) -> Betas {
    (0..len).fold(0, |acc, i| acc | (BIAS as u128) << (8 * i))
}

/// Chosen path arcs as a persistent tree, shared between states.
enum Step {
    Arc(Vertex, Vertex, Trail),
    Join(Trail, Trail),
}

type Trail = Option<Rc<Step>>;

fn trail_arcs(trail: &Trail) -> Vec<(Vertex, Vertex)> {
    let mut arcs = Vec::new();
    let mut stack: Vec<&Trail> = vec![trail];
    while let Some(t) = stack.pop() {
        match t.as_deref() {
            None => {}
            Some(Step::Arc(a, b, rest)) => {
                arcs.push((*a, *b));
                stack.push(rest);
            }
            Some(Step::Join(l, r)) => {
                stack.push(l);
                stack.push(r);
            }
        }
    }
    arcs
}

#[derive(Default)]
struct Shapes {
    list: Vec<Shape>,
    ids: FxHashMap<Shape, u32>,
}

impl Shapes {
    fn intern(&mut self, shape: Shape) -> u32 {
        if let Some(&id) = self.ids.get(&shape) {
            return id;
        }
        let id = self.list.len() as u32;
        self.list.push(shape.clone());
        self.ids.insert(shape, id);
        id
    }
}

struct Entry {
    shape: u32,
    betas: Betas,
    cost: i64,
    trail: Trail,
}

/// States in discovery order with the cheapest value per key; equal costs keep the earlier value.
#[derive(Default)]
struct Table {
    entries: Vec<Entry>,
    index: FxHashMap<(u32, Betas), usize>,
}

impl Table {
    fn offer(&mut self, shape: u32, betas: Betas, cost: i64, trail: impl FnOnce() -> Trail) {
        match self.index.get(&(shape, betas)) {
            Some(&i) => {
                if cost < self.entries[i].cost {
                    self.entries[i].cost = cost;
                    self.entries[i].trail = trail();
                }
            }
            None => {
                self.index.insert((shape, betas), self.entries.len());
                self.entries.push(Entry { shape, betas, cost, trail: trail() });
            }
        }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }
}

pub fn treewidth_solve(
    instance: &DiscoveryInstance,
    decomposition: Option<&TreeDecomposition>,
    options: &SolveOptions,
) -> Result<SolveResult> {
    let mut stats = Stats::default();
    let Some(prep) = Prepared::new(instance) else {
        return Ok(no_path(stats));
    };
    let (movement, capacity) = useful_movement(instance);
    let adj = union_graph(&prep.graph, &movement);
    let td = match decomposition {
        Some(td) => {
            td.validate(&adj)?;
            td.clone()
        }
        None => build_tree_decomposition(&adj, options.decomposition)?,
    };
    let width = td.width();
    if width > options.caps.width_cap {
        return Err(Error::WidthTooLarge { width, cap: options.caps.width_cap });
    }
    if width >= MAX_BAG {
        return Err(Error::InstanceTooLarge(format!("bags of {} vertices exceed the supported {MAX_BAG}", width + 1)));
    }
    // An optimal flow splits into unit paths, one per moved token, each ending
    // at its own path vertex; no balance exceeds their number.
    let moving = instance.k().min(instance.vertex_count());
    if moving > MAX_BALANCE {
        return Err(Error::InstanceTooLarge(format!("{moving} moving tokens exceed the supported {MAX_BALANCE}")));
    }
    stats.set("width", width as u64);
    let nodes = td.nice();
    let bags = nice_bags(&nodes);
    let mut dp = Dp {
        g: &prep.graph,
        m: &movement,
        on_st_walk: &prep.on_st_walk,
        s: instance.s(),
        t: instance.t(),
        tokens: instance.token_counts(),
        k: moving as i32,
        capacity,
        shapes: Shapes::default(),
    };
    let empty = dp.shapes.intern(Vec::new());

    let mut tables: Vec<Option<Table>> = Vec::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        let table = match *node {
            NiceNode::Leaf => {
                let mut t = Table::default();
                t.offer(empty, 0, 0, || None);
                t
            }
            NiceNode::Introduce { vertex, child } => {
                let from = tables[child].take().expect("child table");
                let at = bags[i].binary_search(&vertex).unwrap();
                dp.introduce(from, at)
            }
            NiceNode::Forget { vertex, child } => {
                let from = tables[child].take().expect("child table");
                dp.forget(from, &bags[child], vertex)
            }
            NiceNode::Join { left, right } => {
                let l = tables[left].take().expect("left table");
                let r = tables[right].take().expect("right table");
                dp.join(&l, &r, &bags[i])
            }
        };
        stats.add("dp_states", table.len() as u64);
        tables.push(Some(table));
    }
    let root = tables.pop().flatten().expect("root table");
    let best = root.entries.first().map(|e| path_from_arcs(&trail_arcs(&e.trail), instance.s(), instance.t()));
    let tokens = TokenDistances::new(instance);
    let result = conclude(instance, &tokens, best, stats);
    debug_assert_eq!(root.entries.first().map(|e| e.cost), result.optimal_cost.finite());
    Ok(result)
}

/// Movement arcs that lie on a shortest path from some token, with the number
/// of such tokens as capacity. Some optimal flow routes every moved token along
/// a shortest path from its source, so it uses only these arcs.
fn useful_movement(instance: &DiscoveryInstance) -> (WeightedDigraph, FxHashMap<(Vertex, Vertex), i32>) {
    let n = instance.vertex_count();
    let counts = instance.token_counts();
    let sources: Vec<(Vertex, Vec<crate::dist::Dist>)> = (0..n)
        .filter(|&x| counts[x] > 0)
        .map(|x| (x, instance.movement().distances_from(x)))
        .collect();
    let m = instance.movement().graph();
    let mut capacity = FxHashMap::default();
    let mut arcs = Vec::new();
    for e in m.edges() {
        let cap: usize = sources
            .iter()
            .filter(|(_, d)| d[e.tail].finite().is_some_and(|a| d[e.head] == crate::dist::Dist::Finite(a + e.weight)))
            .map(|(x, _)| counts[*x])
            .sum();
        if cap > 0 {
            capacity.insert((e.tail, e.head), cap.min(instance.k()) as i32);
            arcs.push((e.tail, e.head, e.weight));
        }
    }
    (WeightedDigraph::new(n, arcs).expect("subgraph of a valid graph"), capacity)
}

fn path_from_arcs(arcs: &[(Vertex, Vertex)], s: Vertex, t: Vertex) -> Vec<Vertex> {
    let succ: FxHashMap<Vertex, Vertex> = arcs.iter().copied().collect();
    let mut path = vec![s];
    let mut v = s;
    while v != t {
        v = succ[&v];
        path.push(v);
    }
    debug_assert_eq!(path.len(), arcs.len() + 1);
    path
}

struct Dp<'a> {
    g: &'a WeightedDigraph,
    m: &'a WeightedDigraph,
    /// Flow bound per movement arc.
    capacity: FxHashMap<(Vertex, Vertex), i32>,
    on_st_walk: &'a [bool],
    s: Vertex,
    t: Vertex,
    tokens: Vec<usize>,
    k: i32,
    shapes: Shapes,
}

enum Decision {
    PathArc(usize, usize),
    Flow(usize, usize, i64, i32),
}

impl Dp<'_> {
    fn path_arc_allowed(&self, a: Vertex, b: Vertex) -> bool {
        self.g.has_edge(a, b) && self.on_st_walk[a] && self.on_st_walk[b] && b != self.s && a != self.t
    }

    /// Applies `f` to every distinct shape of `table` once.
    fn map_shapes(
        &mut self,
        table: &Table,
        mut f: impl FnMut(&Shape) -> Option<Shape>,
    ) -> FxHashMap<u32, Option<u32>> {
        let mut map = FxHashMap::default();
        for e in &table.entries {
            if !map.contains_key(&e.shape) {
                let next = f(&self.shapes.list[e.shape as usize]).map(|s| self.shapes.intern(s));
                map.insert(e.shape, next);
            }
        }
        map
    }

    fn introduce(&mut self, from: Table, at: usize) -> Table {
        let map = self.map_shapes(&from, |shape| {
            let mut s = shape.clone();
            s.insert(at, FRESH);
            Some(s)
        });
        let mut t = Table::default();
        for e in from.entries {
            let trail = e.trail;
            t.offer(map[&e.shape].unwrap(), insert_beta(e.betas, at), e.cost, || trail);
        }
        t
    }

    fn forget(&mut self, from: Table, bag: &[Vertex], u: Vertex) -> Table {
        let pu = bag.binary_search(&u).unwrap();
        let mut decisions = Vec::new();
        for (px, &x) in bag.iter().enumerate() {
            if x == u {
                continue;
            }
            if self.path_arc_allowed(u, x) {
                decisions.push(Decision::PathArc(pu, px));
            }
            if self.path_arc_allowed(x, u) {
                decisions.push(Decision::PathArc(px, pu));
            }
            if let Some(w) = self.m.weight(u, x) {
                decisions.push(Decision::Flow(pu, px, w, self.capacity[&(u, x)]));
            }
            if let Some(w) = self.m.weight(x, u) {
                decisions.push(Decision::Flow(px, pu, w, self.capacity[&(x, u)]));
            }
        }
        let k = self.k;
        let mut table = from;
        for d in &decisions {
            let mut next = Table::default();
            match *d {
                Decision::PathArc(pa, pb) => {
                    let map = self.map_shapes(&table, |shape| {
                        let mut s = shape.clone();
                        add_path_arc(&mut s, bag, pa, pb).then_some(s)
                    });
                    for e in &table.entries {
                        next.offer(e.shape, e.betas, e.cost, || e.trail.clone());
                        if let Some(shape) = map[&e.shape] {
                            next.offer(shape, e.betas, e.cost, || {
                                Some(Rc::new(Step::Arc(bag[pa], bag[pb], e.trail.clone())))
                            });
                        }
                    }
                }
                Decision::Flow(pa, pb, w, cap) => {
                    for e in &table.entries {
                        next.offer(e.shape, e.betas, e.cost, || e.trail.clone());
                        let (mut ba, mut bb) = (beta(e.betas, pa), beta(e.betas, pb));
                        for f in 1..=i64::from(cap.min(k)) {
                            ba -= 1;
                            bb += 1;
                            if ba < -k || bb > k {
                                break;
                            }
                            let betas = with_beta(with_beta(e.betas, pa, ba), pb, bb);
                            next.offer(e.shape, betas, e.cost + f * w, || e.trail.clone());
                        }
                    }
                }
            }
            table = next;
        }

        let (s, t) = (self.s, self.t);
        let map = self.map_shapes(&table, |shape| {
            let (din, dout) = (shape[pu].deg & IN != 0, shape[pu].deg & OUT != 0);
            let shape_ok = if u == s {
                !din && dout
            } else if u == t {
                din && !dout
            } else {
                din == dout
            };
            shape_ok.then(|| {
                let mut next = shape.clone();
                next.remove(pu);
                for other in &mut next {
                    if other.mate == u as u32 {
                        other.mate = FORGOTTEN;
                    }
                }
                next
            })
        });
        let mut out = Table::default();
        for e in table.entries {
            let Some(shape) = map[&e.shape] else { continue };
            let on_path = self.shapes.list[e.shape as usize][pu].deg != 0;
            let demand = i32::from(u == s || u == t || on_path);
            if (self.tokens[u] as i32) + beta(e.betas, pu) < demand {
                continue;
            }
            let trail = e.trail;
            out.offer(shape, remove_beta(e.betas, pu), e.cost, || trail);
        }
        out
    }

    fn join(&mut self, l: &Table, r: &Table, bag: &[Vertex]) -> Table {
        let group = |t: &Table| {
            let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
            let mut at: FxHashMap<u32, usize> = FxHashMap::default();
            for (i, e) in t.entries.iter().enumerate() {
                let g = *at.entry(e.shape).or_insert_with(|| {
                    groups.push((e.shape, Vec::new()));
                    groups.len() - 1
                });
                groups[g].1.push(i);
            }
            groups
        };
        let (lg, rg) = (group(l), group(r));
        let bias = bias_word(bag.len());
        let (lo, hi) = (BIAS - self.k, BIAS + self.k);
        let mut out = Table::default();
        for (ls, lmembers) in &lg {
            for (rs, rmembers) in &rg {
                let merged = join_shapes(&self.shapes.list[*ls as usize], &self.shapes.list[*rs as usize], bag);
                let Some(merged) = merged else { continue };
                let shape = self.shapes.intern(merged);
                for &i in lmembers {
                    let a = &l.entries[i];
                    for &j in rmembers {
                        let b = &r.entries[j];
                        let sum = a.betas + b.betas - bias;
                        let in_range = (0..bag.len()).all(|p| (lo..=hi).contains(&((sum >> (8 * p) & 0xff) as i32)));
                        if !in_range {
                            continue;
                        }
                        out.offer(shape, sum, a.cost + b.cost, || match (&a.trail, &b.trail) {
                            (None, t) | (t, None) => t.clone(),
                            (x, y) => Some(Rc::new(Step::Join(x.clone(), y.clone()))),
                        });
                    }
                }
            }
        }
        out
    }
}

fn position(bag: &[Vertex], v: u32) -> usize {
    bag.binary_search(&(v as usize)).expect("segment partner lies in the bag")
}

/// Adds the path arc `bag[pa] -> bag[pb]`, merging their segments; `false`
/// if a degree bound would break or the arc would close a cycle.
fn add_path_arc(key: &mut [Port], bag: &[Vertex], pa: usize, pb: usize) -> bool {
    if key[pa].deg & OUT != 0 || key[pb].deg & IN != 0 {
        return false;
    }
    let start = if key[pa].deg & IN == 0 { bag[pa] as u32 } else { key[pa].mate };
    let end = if key[pb].deg & OUT == 0 { bag[pb] as u32 } else { key[pb].mate };
    if start == bag[pb] as u32 {
        return false;
    }
    key[pa].deg |= OUT;
    key[pb].deg |= IN;
    if key[pa].deg == IN | OUT {
        key[pa].mate = NONE;
    }
    if key[pb].deg == IN | OUT {
        key[pb].mate = NONE;
    }
    if start != FORGOTTEN {
        key[position(bag, start)].mate = end;
    }
    if end != FORGOTTEN {
        key[position(bag, end)].mate = start;
    }
    true
}

/// Combines the path segments of two subtrees sharing `bag`; `None` if a
/// vertex gets a degree twice or the pieces close a cycle.
fn join_shapes(l: &[Port], r: &[Port], bag: &[Vertex]) -> Option<Shape> {
    let mut out: Shape = Vec::with_capacity(l.len());
    for (a, b) in l.iter().zip(r) {
        if a.deg & b.deg != 0 {
            return None;
        }
        out.push(Port { deg: a.deg | b.deg, mate: NONE });
    }
    // Segment pieces of both sides, as (start, end) bag positions; None is a forgotten end.
    let mut piece_from: Vec<Option<Option<usize>>> = vec![None; bag.len()];
    let mut from_s: Option<Option<usize>> = None;
    let mut pieces = 0usize;
    for side in [l, r] {
        for (i, slot) in side.iter().enumerate() {
            let end = |m: u32| (m != FORGOTTEN).then(|| position(bag, m));
            if slot.deg == OUT {
                piece_from[i] = Some(end(slot.mate));
                pieces += 1;
            } else if slot.deg == IN && slot.mate == FORGOTTEN {
                from_s = Some(Some(i));
                pieces += 1;
            }
        }
    }
    let mut walked = 0usize;
    let mut follow = |first: Option<usize>, out: &[Port]| -> Option<usize> {
        // Returns the chain's final end position (None if it ends at a forgotten t).
        let mut end = first;
        walked += 1;
        while let Some(e) = end {
            if out[e].deg & OUT == 0 {
                break;
            }
            end = piece_from[e].expect("a continuing vertex starts a piece");
            walked += 1;
            if walked > pieces {
                return None;
            }
        }
        end
    };
    let mut links: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    if let Some(first) = from_s {
        links.push((None, follow(first, &out)));
    }
    for i in 0..bag.len() {
        if out[i].deg == OUT {
            let first = piece_from[i].expect("combined start begins a piece");
            links.push((Some(i), follow(first, &out)));
        }
    }
    if walked != pieces {
        return None;
    }
    for (start, end) in links {
        let id = |p: Option<usize>| p.map_or(FORGOTTEN, |i| bag[i] as u32);
        if let Some(a) = start {
            out[a].mate = id(end);
        }
        if let Some(b) = end {
            out[b].mate = id(start);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Dist;
    use crate::instance::{Movement, Variant};
    use crate::solvers::{oracle_solve, Answer};

    #[test]
    fn occupied_path_costs_nothing() {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 7)]).unwrap();
        let inst =
            DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 3, vec![0, 1, 2, 3], 0, Variant::Path)
                .unwrap();
        let r = treewidth_solve(&inst, None, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::Yes, Dist::ZERO));
    }

    #[test]
    fn disconnected_target_is_no() {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let inst =
            DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 3, vec![0, 1, 2, 3], 9, Variant::Path)
                .unwrap();
        let r = treewidth_solve(&inst, None, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost), (Answer::No, Dist::Infinite));
    }

    #[test]
    fn tokens_travel_through_forgotten_vertices() {
        // Path s=0 -> 1 -> t=2; tokens wait at 4 behind 3 on a movement chain 4 -> 3 -> 1.
        let g = WeightedDigraph::new(5, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let m = WeightedDigraph::new(5, [(4, 3, 2), (3, 1, 3), (4, 0, 10)]).unwrap();
        let inst = DiscoveryInstance::new(g, Movement::Explicit(m), 0, 2, vec![0, 2, 4, 4], 5, Variant::Path).unwrap();
        let expected = oracle_solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(expected.optimal_cost, Dist::Finite(5));
        let r = treewidth_solve(&inst, None, &SolveOptions::default()).unwrap();
        assert_eq!((r.answer, r.optimal_cost, r.certificate), (expected.answer, expected.optimal_cost, expected.certificate));
    }

    #[test]
    fn supplied_decomposition_is_validated() {
        let g = WeightedDigraph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let inst =
            DiscoveryInstance::new(g.clone(), Movement::Sliding(g.bidirected_unit()), 0, 2, vec![0, 1, 2], 0, Variant::Path).unwrap();
        let bad = TreeDecomposition { bags: vec![vec![0, 1], vec![2]], edges: vec![(0, 1)] };
        let err = treewidth_solve(&inst, Some(&bad), &SolveOptions::default()).unwrap_err();
        assert_eq!(err.code(), "INVALID_DECOMPOSITION");
        let good = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![(0, 1)] };
        assert!(treewidth_solve(&inst, Some(&good), &SolveOptions::default()).unwrap().is_yes());
    }

    #[test]
    fn width_cap() {
        let n = 8;
        let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v, 1))).collect();
        let g = WeightedDigraph::new(n, arcs).unwrap();
        let inst = DiscoveryInstance::new(g, Movement::Jumping(n), 0, 1, vec![0, 1], 0, Variant::Path).unwrap();
        assert_eq!(
            treewidth_solve(&inst, None, &SolveOptions::default()),
            Err(Error::WidthTooLarge { width: 7, cap: 5 })
        );
    }

    #[test]
    fn packed_balances() {
        let b = with_beta(with_beta(bias_word(3), 0, -2), 2, 5);
        assert_eq!((beta(b, 0), beta(b, 1), beta(b, 2)), (-2, 0, 5));
        let wider = insert_beta(b, 1);
        assert_eq!((0..4).map(|i| beta(wider, i)).collect::<Vec<_>>(), vec![-2, 0, 0, 5]);
        assert_eq!(remove_beta(wider, 1), b);
        assert_eq!(remove_beta(insert_beta(bias_word(15), 15), 15), bias_word(15));
        assert_eq!(insert_beta(bias_word(15), 0), bias_word(16));
    }

    proptest::proptest! {
        #[test]
        fn matches_oracle(
            arcs in proptest::collection::vec((0usize..6, 0usize..6, 0i64..4), 0..14),
            moves in proptest::collection::vec((0usize..6, 0usize..6, 0i64..4), 0..14),
            tokens in proptest::collection::vec(0usize..6, 0..4),
            mode in 0usize..3,
            shortest in proptest::bool::ANY,
        ) {
            let g = WeightedDigraph::new(6, arcs.into_iter().filter(|a| a.0 != a.1)).unwrap();
            let movement = match mode {
                0 => Movement::Explicit(WeightedDigraph::new(6, moves.into_iter().filter(|a| a.0 != a.1)).unwrap()),
                1 => Movement::Sliding(g.bidirected_unit()),
                _ => Movement::Jumping(6),
            };
            let variant = if shortest { Variant::ShortestPath } else { Variant::Path };
            let inst = DiscoveryInstance::new(g, movement, 0, 5, tokens, 3, variant).unwrap();
            let expected = oracle_solve(&inst, &SolveOptions::default()).unwrap();
            let got = treewidth_solve(&inst, None, &SolveOptions::default()).unwrap();
            proptest::prop_assert_eq!((got.answer, got.optimal_cost), (expected.answer, expected.optimal_cost));
        }
    }
}
