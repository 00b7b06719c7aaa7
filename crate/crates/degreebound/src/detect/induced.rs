//! Induced-subgraph isomorphism: existence, counting, and extension counts.

use super::{Budget, InducedEmbedding, SearchOutcome};
use crate::graph::{Graph, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("base embedding is not a valid induced embedding")]
    InvalidBase,
    #[error("x_image does not induce h minus {{u,v}}")]
    WrongBasePattern,
    #[error("u and v must be distinct pattern vertices")]
    BadPair,
}

/// Pattern vertices ordered most-constrained first: by descending degree,
/// ties by ascending index.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = h.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    order
}

struct InducedSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    budget: &'a Budget,
    ticker: u32,
    timed_out: bool,
    collected: Vec<Vec<usize>>,
    collect_cap: usize,
}

impl<'a> InducedSearch<'a> {
    /// Runs the backtracking search. With `count_all` set it visits every
    /// complete labeled embedding and returns the count; otherwise it stops
    /// at the first embedding found.
    fn run(&mut self, count_all: bool) -> (Option<Vec<usize>>, u64) {
        let mut assignment = vec![usize::MAX; self.pattern.vertex_count()];
        let mut used = vec![false; self.host.vertex_count()];
        let mut count = 0u64;
        let found = self.descend(0, &mut assignment, &mut used, count_all, &mut count);
        (found, count)
    }

    fn descend(
        &mut self,
        depth: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        count_all: bool,
        count: &mut u64,
    ) -> Option<Vec<usize>> {
        if depth == self.order.len() {
            *count += 1;
            if self.collected.len() < self.collect_cap {
                self.collected.push(assignment.clone());
            }
            return if count_all {
                None
            } else {
                Some(assignment.clone())
            };
        }
        self.ticker = self.ticker.wrapping_add(1);
        if self.ticker % 1024 == 0 && self.budget.expired() {
            self.timed_out = true;
            return None;
        }
        let p = self.order[depth];
        'host: for v in self.host.vertices() {
            if used[v] || self.host.degree(v) < self.pattern.degree(p) {
                continue;
            }
            for &q in &self.order[..depth] {
                let adjacency_needed = self.pattern.has_edge(p, q);
                if self.host.has_edge(v, assignment[q]) != adjacency_needed {
                    continue 'host;
                }
            }
            assignment[p] = v;
            used[v] = true;
            let result = self.descend(depth + 1, assignment, used, count_all, count);
            assignment[p] = usize::MAX;
            used[v] = false;
            if result.is_some() || self.timed_out {
                return result;
            }
        }
        None
    }
}

/// Finds some induced copy of `h` in `g`.
pub fn find_induced(g: &Graph, h: &Graph, budget: &Budget) -> SearchOutcome<InducedEmbedding> {
    assert!(h.vertex_count() >= 1);
    if h.vertex_count() > g.vertex_count() {
        return SearchOutcome::Exhausted;
    }
    let mut search = InducedSearch {
        host: g,
        pattern: h,
        order: pattern_order(h),
        budget,
        ticker: 0,
        timed_out: false,
        collected: Vec::new(),
        collect_cap: 0,
    };
    let (found, _) = search.run(false);
    match found {
        Some(map) => SearchOutcome::Found(InducedEmbedding {
            host: g.clone(),
            pattern: h.clone(),
            map,
        }),
        None if search.timed_out => SearchOutcome::TimedOut,
        None => SearchOutcome::Exhausted,
    }
}

/// Number of labeled induced embeddings of `h` into `g`.
fn count_labeled_embeddings(g: &Graph, h: &Graph) -> u64 {
    if h.vertex_count() > g.vertex_count() {
        return 0;
    }
    let mut search = InducedSearch {
        host: g,
        pattern: h,
        order: pattern_order(h),
        budget: &Budget::unlimited(),
        ticker: 0,
        timed_out: false,
        collected: Vec::new(),
        collect_cap: 0,
    };
    let (_, count) = search.run(true);
    count
}

/// Up to `cap` labeled induced embeddings of `h` into `g` (`map[p]` is the
/// host image of pattern vertex `p`), in deterministic search order.
pub fn collect_induced_embeddings(g: &Graph, h: &Graph, cap: usize) -> Vec<Vec<usize>> {
    if h.vertex_count() > g.vertex_count() || cap == 0 {
        return Vec::new();
    }
    let mut search = InducedSearch {
        host: g,
        pattern: h,
        order: pattern_order(h),
        budget: &Budget::unlimited(),
        ticker: 0,
        timed_out: false,
        collected: Vec::new(),
        collect_cap: cap,
    };
    let _ = search.run(true);
    search.collected
}

/// Number of vertex subsets `S` of `g` with `g[S]` isomorphic to `h`.
///
/// Counted as labeled embeddings divided by `|Aut(h)|`; each qualifying
/// subset admits exactly `|Aut(h)|` embeddings.
pub fn count_induced_copies(g: &Graph, h: &Graph) -> u64 {
    let labeled = count_labeled_embeddings(g, h);
    if labeled == 0 {
        return 0;
    }
    let aut = count_labeled_embeddings(h, h);
    debug_assert!(aut >= 1 && labeled % aut == 0);
    labeled / aut
}

/// The pattern `h` with vertices `u, v` removed, relabeled by ascending
/// original index, plus the relabeling map (new index -> original vertex).
pub fn pattern_minus(h: &Graph, u: usize, v: usize) -> (Graph, Vec<usize>) {
    let keep: VertexSet = h.vertices().filter(|&x| x != u && x != v).collect();
    h.induced(&keep)
}

/// Candidate completions of a fixed embedding of `h - {u, v}`.
///
/// `base` must embed exactly `pattern_minus(h, u, v).0` into `g`. Returns
/// the candidate host sets `C_u`, `C_v` (vertices that could play the role
/// of `u` resp. `v` against the fixed base), and the number of unordered
/// pairs joined by a host edge with one end in each set. When `uv` is an
/// edge of `h`, that count is exactly the number of ways to complete the
/// embedding to an induced copy of `h`.
pub fn count_extensions(
    g: &Graph,
    h: &Graph,
    u: usize,
    v: usize,
    base: &InducedEmbedding,
) -> Result<(VertexSet, VertexSet, u64), ExtensionError> {
    if u == v || u >= h.vertex_count() || v >= h.vertex_count() {
        return Err(ExtensionError::BadPair);
    }
    let (reduced, rest) = pattern_minus(h, u, v);
    if base.pattern != reduced {
        return Err(ExtensionError::WrongBasePattern);
    }
    if !base.verify() {
        return Err(ExtensionError::InvalidBase);
    }
    let x_image: Vec<usize> = base.map.clone();
    let candidates = |role: usize| -> VertexSet {
        g.vertices()
            .filter(|&a| !x_image.contains(&a))
            .filter(|&a| {
                rest.iter()
                    .enumerate()
                    .all(|(i, &orig)| g.has_edge(a, x_image[i]) == h.has_edge(role, orig))
            })
            .collect()
    };
    let c_u = candidates(u);
    let c_v = candidates(v);
    let mut pairs = 0u64;
    for (a, b) in g.edges() {
        let fits = (c_u.contains(a) && c_v.contains(b)) || (c_u.contains(b) && c_v.contains(a));
        if fits {
            pairs += 1;
        }
    }
    Ok((c_u, c_v, pairs))
}
