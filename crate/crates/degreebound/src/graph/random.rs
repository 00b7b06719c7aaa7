//! Seeded random graph models used as test-instance generators.

use super::Graph;
use crate::rng::SplitMix64;

/// Binomial random graph: each pair is an edge independently with
/// probability `p`.
pub fn gnp(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("gnp instance")
}

/// Random bipartite graph on sides `0..na` and `na..na+nb`.
pub fn bipartite(na: usize, nb: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..na {
        for v in 0..nb {
            if rng.next_bool(p) {
                edges.push((u, na + v));
            }
        }
    }
    Graph::from_edges(na + nb, &edges).expect("bipartite instance")
}

/// Random `d`-degenerate graph: vertex `i` picks `min(d, i)` distinct
/// earlier neighbors, so every suffix of the insertion order certifies
/// degeneracy at most `d`.
pub fn degenerate(n: usize, d: usize, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for i in 1..n {
        let picks = rng.sample_distinct(i, d.min(i));
        for p in picks {
            edges.push((p, i));
        }
    }
    Graph::from_edges(n, &edges).expect("degenerate instance")
}
