use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rat, ratio, Rational};

/// Weight of the distinguished coordinate in the near-vertex samples `(d, 1, …, 1)`.
pub const VERTEX_WEIGHT: i64 = 10;

const MAX_NUMERATOR: i64 = 24;
const MAX_DENOMINATOR: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleStrategy {
    /// Positive integer points `t` with `Σ tⁱ ≤ r + depth − 1`.
    Grid { depth: usize },
    /// Seeded random positive rationals with bounded numerators and denominators.
    Random,
    /// Only the barycenter and the near-vertex points.
    VerticesBarycenter,
}

fn grid(r: usize, depth: usize) -> Vec<Vec<Rational>> {
    fn go(r: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let left = r - cur.len() - 1;
        for t in 1..=budget.saturating_sub(left) {
            cur.push(t);
            go(r, budget - t, cur, out);
            cur.pop();
        }
    }
    let mut pts = Vec::new();
    go(r, r + depth.max(1) - 1, &mut Vec::new(), &mut pts);
    pts.sort_by_key(|p| p.iter().sum::<usize>());
    pts.into_iter().map(|p| p.into_iter().map(|t| rat(t as i64)).collect()).collect()
}

/// Coefficient vectors `t` (all entries positive) for a cone with `r`
/// generators. The barycenter `(1, …, 1)` comes first, then the near-vertex
/// points, then the points of the chosen strategy; duplicates are dropped and
/// the list is cut at `count`.
pub fn sample_cone(r: usize, count: usize, strategy: SampleStrategy, seed: u64) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |t: Vec<Rational>, out: &mut Vec<Vec<Rational>>| {
        if out.len() < count && seen.insert(t.clone()) {
            out.push(t);
        }
    };
    push(vec![rat(1); r], &mut out);
    if r > 1 {
        for i in 0..r {
            push((0..r).map(|j| rat(if i == j { VERTEX_WEIGHT } else { 1 })).collect(), &mut out);
        }
    }
    match strategy {
        SampleStrategy::VerticesBarycenter => {}
        SampleStrategy::Grid { depth } => {
            for t in grid(r, depth) {
                push(t, &mut out);
            }
        }
        SampleStrategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // The rational grid is finite, so stop after a generous number of draws.
            let mut draws = 0usize;
            while out.len() < count && draws < 64 * count + 1024 {
                draws += 1;
                let t = (0..r)
                    .map(|_| ratio(rng.gen_range(1..=MAX_NUMERATOR), rng.gen_range(1..=MAX_DENOMINATOR)))
                    .collect();
                push(t, &mut out);
            }
        }
    }
    out
}
