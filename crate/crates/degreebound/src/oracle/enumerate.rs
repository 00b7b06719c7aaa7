//! Exhaustive generation of small graphs, one representative per
//! isomorphism class, by canonical augmentation.
//!
//! Level `k+1` is built from level `k`: every representative is extended by
//! one new vertex attached to each subset of the old vertices. A child is
//! kept only when deleting its *canonical deletion vertex* (the vertex in
//! the last canonical position) recovers the parent's isomorphism class.
//! Since that parent class is an isomorphism invariant of the child, every
//! class is produced from exactly one parent; children of a single parent
//! are deduplicated locally by canonical form. No global seen-set is needed.
//!
//! The prune predicate must be hereditary and monotone under vertex
//! deletion (if a graph fails, so do all its extensions); it is applied to
//! every candidate child, which is sound because the canonical-deletion
//! parent of a pruned-in graph also passes the prune.

use super::canon::canon_masks;
use super::OracleError;
use crate::graph::Graph;
use rayon::prelude::*;
use std::collections::HashSet;

/// Hard cap on the order; beyond this the class counts explode.
pub const MAX_ENUMERATION_ORDER: usize = 10;

pub(crate) fn masks_to_graph(n: usize, adj: &[u64]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("mask graph")
}

/// Streams one representative per isomorphism class of graphs on exactly
/// `n` vertices that pass `prune`.
pub fn enumerate_graphs(
    n: usize,
    prune: Option<&(dyn Fn(&Graph) -> bool + Sync)>,
) -> Result<Vec<Graph>, OracleError> {
    let mask_prune = |k: usize, adj: &[u64]| -> bool {
        match prune {
            None => true,
            Some(p) => p(&masks_to_graph(k, adj)),
        }
    };
    Ok(enumerate_masks(n, &mask_prune)?
        .into_iter()
        .map(|adj| masks_to_graph(n, &adj))
        .collect())
}

/// Mask-level enumeration; `prune(k, adj)` must return true to keep a graph.
pub(crate) fn enumerate_masks(
    n: usize,
    prune: &(dyn Fn(usize, &[u64]) -> bool + Sync),
) -> Result<Vec<Vec<u64>>, OracleError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(OracleError::OrderCap(n));
    }
    let single = vec![0u64];
    if !prune(1, &single) {
        return Ok(Vec::new());
    }
    let mut level: Vec<Vec<u64>> = vec![single];
    for k in 1..n {
        level = level
            .par_iter()
            .map(|parent| children_of(k, parent, prune))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    Ok(level)
}

fn children_of(
    k: usize,
    parent: &[u64],
    prune: &(dyn Fn(usize, &[u64]) -> bool + Sync),
) -> Vec<Vec<u64>> {
    let parent_bytes = canon_masks(k, parent).0;
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for subset in 0u64..(1u64 << k) {
        // Child: parent plus vertex k adjacent to `subset`.
        let mut child: Vec<u64> = parent.to_vec();
        child.push(subset);
        for v in 0..k {
            if subset >> v & 1 == 1 {
                child[v] |= 1 << k;
            }
        }
        if !prune(k + 1, &child) {
            continue;
        }
        let (child_bytes, perm) = canon_masks(k + 1, &child);
        // Canonical deletion vertex: the one in the last canonical position.
        let deleted = perm
            .iter()
            .position(|&p| p == k)
            .expect("some vertex sits in the last position");
        let reduced = delete_vertex(k + 1, &child, deleted);
        if canon_masks(k, &reduced).0 != parent_bytes {
            continue;
        }
        if seen.insert(child_bytes) {
            out.push(child);
        }
    }
    out
}

fn delete_vertex(n: usize, adj: &[u64], target: usize) -> Vec<u64> {
    let low_mask = (1u64 << target) - 1;
    (0..n)
        .filter(|&v| v != target)
        .map(|v| {
            let row = adj[v];
            (row & low_mask) | ((row >> (target + 1)) << target)
        })
        .collect()
}
