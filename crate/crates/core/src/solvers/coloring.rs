//! Vertex and token coloring families for the color-coding solvers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringMode {
    /// Seeded independent uniform colorings; NO answers are correct with
    /// probability at least `1 - delta`.
    #[default]
    RandomTrials,
    /// Every coloring up to relabeling of colors; deterministic and complete.
    Exhaustive,
}

/// A stream of colorings of `len` items with colors in `0..colors`.
///
/// Exhaustive families list every surjective coloring once up to relabeling
/// (restricted growth strings), which is enough for color coding because the
/// dynamic programs treat colors symmetrically.
#[derive(Debug, Clone)]
pub struct ColoringFamily {
    len: usize,
    colors: usize,
    source: Source,
}

#[derive(Debug, Clone)]
enum Source {
    Random { rng: ChaCha8Rng, remaining: u64 },
    Exhaustive { current: Vec<u8>, started: bool, done: bool },
    Single { done: bool },
}

impl ColoringFamily {
    pub fn random(len: usize, colors: usize, trials: u64, seed: u64) -> Self {
        let source = if colors <= 1 {
            Source::Single { done: false }
        } else {
            Source::Random { rng: ChaCha8Rng::seed_from_u64(seed), remaining: trials }
        };
        ColoringFamily { len, colors, source }
    }

    pub fn exhaustive(len: usize, colors: usize) -> Self {
        let source = if colors <= 1 {
            Source::Single { done: colors > len }
        } else {
            Source::Exhaustive { current: vec![0; len], started: false, done: colors > len }
        };
        ColoringFamily { len, colors, source }
    }

    pub fn color_count(&self) -> usize {
        self.colors
    }

    /// Number of colorings the family will produce.
    pub fn size(&self) -> u64 {
        match &self.source {
            Source::Random { remaining, .. } => *remaining,
            Source::Exhaustive { .. } => stirling2(self.len, self.colors),
            Source::Single { done } => u64::from(!done),
        }
    }

    /// Writes the next coloring into `out` (length `len`); `false` when exhausted.
    pub fn next_into(&mut self, out: &mut [u8]) -> bool {
        debug_assert_eq!(out.len(), self.len);
        let colors = self.colors;
        match &mut self.source {
            Source::Single { done } => {
                if *done {
                    return false;
                }
                *done = true;
                out.fill(0);
                true
            }
            Source::Random { rng, remaining } => {
                if *remaining == 0 {
                    return false;
                }
                *remaining -= 1;
                for c in out.iter_mut() {
                    *c = rng.gen_range(0..colors) as u8;
                }
                true
            }
            Source::Exhaustive { current, started, done } => loop {
                if *done {
                    return false;
                }
                if *started {
                    if !next_rgs(current, colors) {
                        *done = true;
                        return false;
                    }
                } else {
                    *started = true;
                }
                if current.iter().max().map_or(0, |&m| m as usize + 1) == colors {
                    out.copy_from_slice(current);
                    return true;
                }
            },
        }
    }
}

impl Iterator for ColoringFamily {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let mut out = vec![0; self.len];
        self.next_into(&mut out).then_some(out)
    }
}

/// Advances a restricted growth string with values below `colors`.
fn next_rgs(a: &mut [u8], colors: usize) -> bool {
    let n = a.len();
    let mut prefix_max = vec![0u8; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
    }
    for i in (1..n).rev() {
        if (a[i] as usize) + 1 < colors && a[i] <= prefix_max[i] {
            a[i] += 1;
            a[i + 1..].fill(0);
            return true;
        }
    }
    false
}

/// Stirling numbers of the second kind, saturating at `u64::MAX`.
pub fn stirling2(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = (j as u128 * row[j]).saturating_add(row[j - 1]).min(u64::MAX as u128);
        }
        row[0] = 0;
    }
    row[k] as u64
}

/// `ceil(ln(1/delta) / p)`: trials after which a coloring that succeeds with
/// probability `p` per trial has failed every time with probability at most `delta`.
pub fn trial_count(p: f64, delta: f64) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    let delta = delta.clamp(f64::MIN_POSITIVE, 1.0);
    ((1.0 / delta).ln() / p).ceil().clamp(1.0, u64::MAX as f64) as u64
}

/// Probability that a uniform coloring with `c` colors is injective on a fixed `c`-set.
pub fn injective_probability(c: usize) -> f64 {
    (1..=c).map(|i| i as f64 / c as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn exhaustive_family_matches_stirling_numbers() {
        for n in 0..=6 {
            for c in 2..=4 {
                let all: Vec<Vec<u8>> = ColoringFamily::exhaustive(n, c).collect();
                assert_eq!(all.len() as u64, stirling2(n, c), "n={n} c={c}");
                assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), all.len());
            }
        }
        assert_eq!(stirling2(6, 3), 90);
    }

    #[test]
    fn exhaustive_family_separates_every_small_set() {
        // Every c-subset of items receives distinct colors in some member.
        let (n, c) = (6, 3);
        let family: Vec<Vec<u8>> = ColoringFamily::exhaustive(n, c).collect();
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != c {
                continue;
            }
            let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            assert!(family.iter().any(|col| items.iter().map(|&i| col[i]).collect::<BTreeSet<_>>().len() == c));
        }
    }

    #[test]
    fn random_family_is_seeded() {
        let a: Vec<Vec<u8>> = ColoringFamily::random(5, 3, 4, 7).collect();
        let b: Vec<Vec<u8>> = ColoringFamily::random(5, 3, 4, 7).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        assert!(a.iter().flatten().all(|&c| c < 3));
    }

    #[test]
    fn single_coloring_when_at_most_one_color() {
        assert_eq!(ColoringFamily::random(3, 1, 100, 0).count(), 1);
        assert_eq!(ColoringFamily::exhaustive(3, 0).count(), 1);
        assert_eq!(ColoringFamily::exhaustive(2, 3).count(), 0);
    }

    #[test]
    fn trial_counts() {
        assert_eq!(trial_count(1.0, 1e-6), 1);
        assert_eq!(trial_count(0.5, 0.25), 3);
        assert!((injective_probability(3) - 6.0 / 27.0).abs() < 1e-12);
    }
}
