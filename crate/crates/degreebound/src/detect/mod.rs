//! Witness-producing structure detectors.
//!
//! Every search here returns a certificate object that can be re-verified
//! from scratch (`verify` methods do pure re-checks, no search). Searches are
//! exponential in the worst case and take a [`Budget`]; running out of budget
//! is reported as [`SearchOutcome::TimedOut`], distinct from a completed
//! search that found nothing.

mod biclique;
mod induced;
mod subdivision;

pub use biclique::find_biclique;
pub use induced::{
    collect_induced_embeddings, count_extensions, count_induced_copies, find_induced,
    pattern_minus,
};
pub use subdivision::{find_induced_subdivision, one_subdivision_of, SubdivisionMode};

use crate::graph::{Graph, VertexSet};
use std::time::{Duration, Instant};

/// Wall-clock budget for a single detection call.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    /// No limit; the search runs to completion.
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn seconds(secs: u64) -> Budget {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs(secs)),
        }
    }

    pub fn from_duration(d: Duration) -> Budget {
        Budget {
            deadline: Some(Instant::now() + d),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Outcome of a budgeted search: a witness, a completed search with no
/// witness, or an aborted search (which says nothing about existence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Exhausted,
    TimedOut,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted)
    }
}

/// An injective map from pattern vertices to host vertices preserving both
/// adjacency and non-adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedEmbedding {
    pub host: Graph,
    pub pattern: Graph,
    /// `map[p]` is the host image of pattern vertex `p`.
    pub map: Vec<usize>,
}

impl InducedEmbedding {
    pub fn verify(&self) -> bool {
        let np = self.pattern.vertex_count();
        if self.map.len() != np {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &v in &self.map {
            if v >= self.host.vertex_count() || !seen.insert(v) {
                return false;
            }
        }
        for u in 0..np {
            for v in u + 1..np {
                if self.pattern.has_edge(u, v) != self.host.has_edge(self.map[u], self.map[v]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Two disjoint vertex sets, every cross pair adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicliqueWitness {
    pub host: Graph,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl BicliqueWitness {
    pub fn verify(&self) -> bool {
        if self.side_a.is_empty() || self.side_b.is_empty() {
            return false;
        }
        if !self.side_a.valid_for(&self.host) || !self.side_b.valid_for(&self.host) {
            return false;
        }
        if !self.side_a.is_disjoint(&self.side_b) {
            return false;
        }
        for a in self.side_a.iter() {
            for b in self.side_b.iter() {
                if !self.host.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to the first `s` and `t` vertices of each side.
    pub fn truncate(&self, s: usize, t: usize) -> BicliqueWitness {
        BicliqueWitness {
            host: self.host.clone(),
            side_a: self.side_a.iter().take(s).collect(),
            side_b: self.side_b.iter().take(t).collect(),
        }
    }
}

/// A subdivision of `pattern` inside `host`: branch vertices plus one host
/// path per pattern edge, internally disjoint from everything else in the
/// witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionWitness {
    pub host: Graph,
    pub pattern: Graph,
    /// `branch[p]` is the host image of pattern vertex `p`.
    pub branch: Vec<usize>,
    /// One entry per pattern edge `(u, v)` with `u < v`: the host path from
    /// `branch[u]` to `branch[v]`, endpoints included.
    pub paths: Vec<((usize, usize), Vec<usize>)>,
    /// Every path has at least three vertices.
    pub proper: bool,
    /// Every path has exactly three vertices.
    pub one_subdivision: bool,
    /// The host subgraph induced on all witness vertices is exactly the
    /// subdivision (no extra adjacencies anywhere).
    pub induced: bool,
}

impl SubdivisionWitness {
    /// All witness vertices: branch images and path interiors.
    pub fn vertex_set(&self) -> VertexSet {
        let mut set = VertexSet::new();
        for &b in &self.branch {
            set.insert(b);
        }
        for (_, path) in &self.paths {
            for &v in path {
                set.insert(v);
            }
        }
        set
    }

    pub fn verify(&self) -> bool {
        let np = self.pattern.vertex_count();
        if self.branch.len() != np {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &v in &self.branch {
            if v >= self.host.vertex_count() || !seen.insert(v) {
                return false;
            }
        }
        // Exactly one path per pattern edge, ascending.
        let mut edges: Vec<(usize, usize)> = self.paths.iter().map(|&(e, _)| e).collect();
        edges.sort_unstable();
        if edges != self.pattern.edges() {
            return false;
        }
        let mut interior_seen = std::collections::BTreeSet::new();
        for ((u, v), path) in &self.paths {
            if path.len() < 2 {
                return false;
            }
            if path[0] != self.branch[*u] || *path.last().unwrap() != self.branch[*v] {
                return false;
            }
            for w in path.windows(2) {
                if !self.host.has_edge(w[0], w[1]) {
                    return false;
                }
            }
            // Interior vertices are fresh: not branch images, not reused.
            for &w in &path[1..path.len() - 1] {
                if self.branch.contains(&w) || !interior_seen.insert(w) {
                    return false;
                }
            }
            // No repeats inside a single path (windows check misses
            // non-adjacent repeats).
            let mut sorted = path.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != path.len() {
                return false;
            }
        }
        if self.proper && self.paths.iter().any(|(_, p)| p.len() < 3) {
            return false;
        }
        if self.one_subdivision && self.paths.iter().any(|(_, p)| p.len() != 3) {
            return false;
        }
        if self.induced && !self.check_induced() {
            return false;
        }
        true
    }

    /// True when host adjacency restricted to the witness vertices is
    /// exactly the subdivision's edge set.
    pub fn check_induced(&self) -> bool {
        let vertices = self.vertex_set().to_vec();
        let mut allowed = std::collections::BTreeSet::new();
        for (_, path) in &self.paths {
            for w in path.windows(2) {
                allowed.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        for (i, &x) in vertices.iter().enumerate() {
            for &y in &vertices[i + 1..] {
                let present = self.host.has_edge(x, y);
                let wanted = allowed.contains(&(x.min(y), x.max(y)));
                if present != wanted {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn embedding_verify_accepts_and_rejects() {
        let host = named::cycle(6);
        let pattern = named::path(4);
        let good = InducedEmbedding {
            host: host.clone(),
            pattern: pattern.clone(),
            map: vec![0, 1, 2, 3],
        };
        assert!(good.verify());
        // Flip one adjacency: map path ends onto adjacent host vertices.
        let bad = InducedEmbedding {
            host,
            pattern,
            map: vec![0, 1, 2, 5],
        };
        assert!(!bad.verify());
    }

    #[test]
    fn biclique_verify() {
        let host = named::complete_bipartite(3, 3);
        let good = BicliqueWitness {
            host: host.clone(),
            side_a: [0, 1].into_iter().collect(),
            side_b: [3, 4].into_iter().collect(),
        };
        assert!(good.verify());
        let overlapping = BicliqueWitness {
            host: host.clone(),
            side_a: [0, 1].into_iter().collect(),
            side_b: [1, 3].into_iter().collect(),
        };
        assert!(!overlapping.verify());
        let missing_edge = BicliqueWitness {
            host,
            side_a: [0, 3].into_iter().collect(),
            side_b: [1, 4].into_iter().collect(),
        };
        assert!(!missing_edge.verify());
    }

    #[test]
    fn subdivision_verify_rejects_shared_interior() {
        // Host: K4 one-subdivided would do, but a hand instance is clearer.
        // Pattern P3 (edges 0-1, 1-2) in a 5-cycle, sharing an interior.
        let host = named::cycle(5);
        let pattern = named::path(3);
        let shared = SubdivisionWitness {
            host: host.clone(),
            pattern: pattern.clone(),
            branch: vec![0, 2, 4],
            paths: vec![((0, 1), vec![0, 1, 2]), ((1, 2), vec![2, 1, 0, 4])],
            proper: true,
            one_subdivision: false,
            induced: false,
        };
        assert!(!shared.verify());
    }
}
