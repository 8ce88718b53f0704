//! Minimum-weight colorful s-t paths with position-dependent vertex costs.

use crate::graph::{Vertex, WeightedDigraph};

/// Colour marking a vertex that may not appear in the interior of a path.
pub const BLOCKED: u8 = u8::MAX;

/// Cheapest path `s = v_1, ..., v_len = t` whose interior vertices carry
/// pairwise distinct colors from `0..len-2`, where position `j` (0-based)
/// at vertex `v` costs `cost(j, v)` and `None` forbids the pair.
///
/// Ties between equal-cost predecessors keep the one reached first in
/// vertex order, so the returned path is deterministic.
pub fn colorful_path_min(
    g: &WeightedDigraph,
    s: Vertex,
    t: Vertex,
    color: &[u8],
    len: usize,
    cost: impl Fn(usize, Vertex) -> Option<i64>,
) -> Option<(i64, Vec<Vertex>)> {
    if len < 2 {
        return None;
    }
    let n = g.vertex_count();
    let colors = len - 2;
    let subsets = 1usize << colors;
    const UNSET: i64 = i64::MAX;
    let first = cost(0, s)?;
    if len == 2 {
        let last = cost(1, t)?;
        return g.has_edge(s, t).then(|| (first + last, vec![s, t]));
    }
    // layer[j][mask * n + v]: cheapest prefix of j + 1 vertices ending at v
    // whose interior used exactly the colors in mask.
    let mut layers: Vec<Vec<i64>> = Vec::with_capacity(len - 1);
    let mut preds: Vec<Vec<u32>> = Vec::with_capacity(len - 1);
    let mut start = vec![UNSET; subsets * n];
    start[s] = first;
    layers.push(start);
    preds.push(vec![u32::MAX; subsets * n]);
    for j in 1..len - 1 {
        let prev = &layers[j - 1];
        let mut next = vec![UNSET; subsets * n];
        let mut back = vec![u32::MAX; subsets * n];
        for mask in 0..subsets {
            if (mask.count_ones() as usize) != j - 1 {
                continue;
            }
            for u in 0..n {
                let c = prev[mask * n + u];
                if c == UNSET {
                    continue;
                }
                for &(v, _) in g.out_edges(u) {
                    let col = color[v];
                    if v == s || v == t || col == BLOCKED || mask >> col & 1 == 1 {
                        continue;
                    }
                    let Some(step) = cost(j, v) else { continue };
                    let idx = (mask | 1 << col) * n + v;
                    if c + step < next[idx] {
                        next[idx] = c + step;
                        back[idx] = u as u32;
                    }
                }
            }
        }
        layers.push(next);
        preds.push(back);
    }
    let last = cost(len - 1, t)?;
    let full = subsets - 1;
    let prev = &layers[len - 2];
    let (total, u) = g
        .in_edges(t)
        .iter()
        .filter_map(|&(u, _)| {
            let c = prev[full * n + u];
            (c != UNSET).then(|| (c + last, u))
        })
        .min_by_key(|&(c, u)| (c, u))?;
    let mut path = vec![t, u];
    let (mut mask, mut v) = (full, u);
    for j in (1..len - 1).rev() {
        let p = preds[j][mask * n + v] as usize;
        mask &= !(1 << color[v]);
        v = p;
        path.push(v);
    }
    path.reverse();
    Some((total, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// All walks s..t of exactly `len` vertices with a colorful interior.
    fn brute(
        g: &WeightedDigraph,
        s: Vertex,
        t: Vertex,
        color: &[u8],
        len: usize,
        cost: &dyn Fn(usize, Vertex) -> Option<i64>,
    ) -> Option<i64> {
        fn go(
            g: &WeightedDigraph,
            t: Vertex,
            color: &[u8],
            len: usize,
            cost: &dyn Fn(usize, Vertex) -> Option<i64>,
            walk: &mut Vec<Vertex>,
            acc: i64,
            best: &mut Option<i64>,
        ) {
            let j = walk.len();
            let u = *walk.last().unwrap();
            if j == len {
                if u == t {
                    let inner = &walk[1..len - 1];
                    let colorful = inner.iter().all(|&v| color[v] != BLOCKED && v != walk[0] && v != t)
                        && inner.iter().enumerate().all(|(a, &x)| inner[a + 1..].iter().all(|&y| color[x] != color[y]));
                    if colorful && best.is_none_or(|b| acc < b) {
                        *best = Some(acc);
                    }
                }
                return;
            }
            for &(v, _) in g.out_edges(u) {
                if let Some(c) = cost(j, v) {
                    walk.push(v);
                    go(g, t, color, len, cost, walk, acc + c, best);
                    walk.pop();
                }
            }
        }
        let mut best = None;
        let first = cost(0, s)?;
        go(g, t, color, len, cost, &mut vec![s], first, &mut best);
        best
    }

    fn arbitrary_case() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<u8>, usize, Vec<i64>)> {
        (3usize..=6).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..n * 3),
                2usize..=4,
                proptest::collection::vec(-1i64..6, n * 4),
            )
                .prop_flat_map(|(n, arcs, len, raw)| {
                    let colors = (len - 2).max(1) as u8;
                    (Just(n), Just(arcs), proptest::collection::vec(0..colors, n), Just(len), Just(raw))
                })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force((n, arcs, color, len, raw) in arbitrary_case()) {
            let g = WeightedDigraph::new(n, arcs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u, v, 1))).unwrap();
            let cost = |j: usize, v: Vertex| {
                let c = raw[(j * n + v) % raw.len()];
                (c >= 0).then_some(c)
            };
            let fast = colorful_path_min(&g, 0, n - 1, &color, len, cost);
            prop_assert_eq!(fast.as_ref().map(|r| r.0), brute(&g, 0, n - 1, &color, len, &cost));
            if let Some((c, path)) = fast {
                prop_assert_eq!(path.len(), len);
                prop_assert_eq!(path.iter().enumerate().map(|(j, &v)| cost(j, v).unwrap()).sum::<i64>(), c);
                prop_assert!(path.windows(2).all(|p| g.has_edge(p[0], p[1])));
            }
        }
    }

    #[test]
    fn blocked_vertices_are_skipped() {
        let g = WeightedDigraph::new(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]).unwrap();
        let r = colorful_path_min(&g, 0, 3, &[0, BLOCKED, 0, 0], 3, |_, _| Some(1));
        assert_eq!(r, Some((3, vec![0, 2, 3])));
    }
}
