//! Ground-truth oracles: exhaustive enumeration and exact extremal numbers.

pub mod canon;
mod enumerate;

pub use canon::{canonical_form, canonical_graph, canonical_labeling, CanonicalForm};
pub use enumerate::{enumerate_graphs, MAX_ENUMERATION_ORDER};

use crate::detect::{find_induced, Budget};
use crate::graph::{graph6, Graph};
use enumerate::{enumerate_masks, masks_to_graph};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("order {0} outside the supported range 1..=10")]
    OrderCap(usize),
    #[error("no n={n} graph satisfies the constraints ({constraint})")]
    NoAdmissibleGraph { n: usize, constraint: String },
    #[error("exponent fit needs {0}")]
    DegenerateFit(&'static str),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache decode: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exact extremal result: the maximum edge count together with every
/// extremal graph up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    /// Biclique side size for the induced variant; 0 for classical records.
    pub s: usize,
    /// Forbidden pattern in canonical graph6.
    pub h: String,
    pub max_edges: usize,
    /// Canonical graph6 of every extremal graph, sorted.
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

/// `K_{s,t}`-subgraph test on adjacency masks: some `s`-subset whose common
/// neighborhood keeps `t` vertices outside the subset.
pub(crate) fn has_biclique_masks(n: usize, adj: &[u64], s: usize, t: usize) -> bool {
    #[allow(clippy::too_many_arguments)]
    fn descend(
        n: usize,
        adj: &[u64],
        s: usize,
        t: usize,
        start: usize,
        chosen: u64,
        chosen_count: usize,
        common: u64,
    ) -> bool {
        if chosen_count == s {
            return (common & !chosen).count_ones() as usize >= t;
        }
        for v in start..n {
            let next_common = if chosen_count == 0 {
                adj[v]
            } else {
                common & adj[v]
            };
            if (next_common.count_ones() as usize) < t {
                continue;
            }
            if descend(n, adj, s, t, v + 1, chosen | 1 << v, chosen_count + 1, next_common) {
                return true;
            }
        }
        false
    }
    descend(n, adj, s, t, 0, 0, 0, 0)
}

/// Non-induced subgraph containment on adjacency masks: pattern edges must
/// map to host edges, non-edges are unconstrained.
pub(crate) fn has_subgraph_masks(n: usize, adj: &[u64], pattern: &Graph) -> bool {
    let np = pattern.vertex_count();
    if np > n {
        return false;
    }
    let mut order: Vec<usize> = pattern.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    let mut image = vec![usize::MAX; np];
    let mut used = 0u64;
    fn descend(
        n: usize,
        adj: &[u64],
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        'host: for v in 0..n {
            if *used >> v & 1 == 1 {
                continue;
            }
            if (adj[v].count_ones() as usize) < pattern.degree(p) {
                continue;
            }
            for &q in &order[..depth] {
                if pattern.has_edge(p, q) && adj[v] >> image[q] & 1 == 0 {
                    continue 'host;
                }
            }
            image[p] = v;
            *used |= 1 << v;
            if descend(n, adj, pattern, order, depth + 1, image, used) {
                return true;
            }
            *used &= !(1 << v);
            image[p] = usize::MAX;
        }
        false
    }
    descend(n, adj, pattern, &order, 0, &mut image, &mut used)
}

fn finish_record(
    n: usize,
    s: usize,
    pattern: &Graph,
    qualifying: Vec<Graph>,
    constraint: &str,
    started: Instant,
) -> Result<ExtremalRecord, OracleError> {
    let max_edges = match qualifying.iter().map(Graph::edge_count).max() {
        Some(m) => m,
        None => {
            return Err(OracleError::NoAdmissibleGraph {
                n,
                constraint: constraint.to_string(),
            })
        }
    };
    let mut witnesses: Vec<String> = qualifying
        .iter()
        .filter(|g| g.edge_count() == max_edges)
        .map(|g| graph6::encode(&canonical_graph(g)))
        .collect();
    witnesses.sort();
    Ok(ExtremalRecord {
        n,
        s,
        h: graph6::encode(&canonical_graph(pattern)),
        max_edges,
        witnesses,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Maximum edges of an `n`-vertex graph with no `K_{s,s}` subgraph and no
/// induced copy of `h`, with all extremal witnesses.
///
/// The biclique constraint is monotone and prunes during generation; the
/// induced constraint is not (a vertex extension can destroy copies), so it
/// is only applied to fully generated graphs.
pub fn ex_induced(
    n: usize,
    s: usize,
    h: &Graph,
    cache: Option<&Path>,
) -> Result<ExtremalRecord, OracleError> {
    assert!(s >= 1, "biclique side must be positive");
    let key = memo_name("ex-induced", n, s, h);
    if let Some(record) = cache.and_then(|dir| memo_load(dir, &key)) {
        return Ok(record);
    }
    let started = Instant::now();
    let prune = |k: usize, adj: &[u64]| !has_biclique_masks(k, adj, s, s);
    let candidates = enumerate_masks(n, &prune)?;
    let qualifying: Vec<Graph> = candidates
        .into_iter()
        .map(|adj| masks_to_graph(n, &adj))
        .filter(|g| find_induced(g, h, &Budget::unlimited()).is_exhausted())
        .collect();
    let record = finish_record(
        n,
        s,
        h,
        qualifying,
        &format!("K_{{{s},{s}}}-subgraph-free, no induced pattern"),
        started,
    )?;
    if let Some(dir) = cache {
        memo_store(dir, &key, &record)?;
    }
    Ok(record)
}

/// Classical extremal number: maximum edges with no `f` subgraph.
pub fn ex_subgraph(n: usize, f: &Graph, cache: Option<&Path>) -> Result<ExtremalRecord, OracleError> {
    let key = memo_name("ex-subgraph", n, 0, f);
    if let Some(record) = cache.and_then(|dir| memo_load(dir, &key)) {
        return Ok(record);
    }
    let started = Instant::now();
    let prune = |k: usize, adj: &[u64]| !has_subgraph_masks(k, adj, f);
    let candidates = enumerate_masks(n, &prune)?;
    let qualifying: Vec<Graph> = candidates
        .into_iter()
        .map(|adj| masks_to_graph(n, &adj))
        .collect();
    let record = finish_record(n, 0, f, qualifying, "subgraph-free", started)?;
    if let Some(dir) = cache {
        memo_store(dir, &key, &record)?;
    }
    Ok(record)
}

/// Least-squares slope of `log(max_edges)` against `log(n)`, with the fit's
/// coefficient of determination.
pub fn fit_exponent(records: &[ExtremalRecord]) -> Result<(f64, f64), OracleError> {
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 {
        return Err(OracleError::DegenerateFit("at least 3 distinct n"));
    }
    if records.iter().any(|r| r.max_edges < 1) {
        return Err(OracleError::DegenerateFit("all max_edges >= 1"));
    }
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.max_edges as f64).ln()))
        .collect();
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let alpha = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok((alpha, r_squared))
}

fn memo_name(kind: &str, n: usize, s: usize, pattern: &Graph) -> String {
    format!("{kind}-n{n}-s{s}-{}.json", canonical_form(pattern).hex())
}

fn memo_load(dir: &Path, name: &str) -> Option<ExtremalRecord> {
    let path = dir.join(name);
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn memo_store(dir: &Path, name: &str, record: &ExtremalRecord) -> Result<(), OracleError> {
    std::fs::create_dir_all(dir)?;
    let path: PathBuf = dir.join(name);
    std::fs::write(path, serde_json::to_string_pretty(record)?)?;
    Ok(())
}
