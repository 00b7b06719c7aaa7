//! Complete-graph subdivisions (not necessarily induced) and the transform
//! from an induced proper subdivision of a complete graph to an induced
//! subdivision of an arbitrary pattern on the same branch vertices.

use super::PipelineError;
use crate::detect::{Budget, SearchOutcome, SubdivisionWitness};
use crate::graph::{named, Graph};

type RoutedPath = ((usize, usize), Vec<usize>);

const FREE: usize = usize::MAX;

struct CliqueSubSearch<'a> {
    host: &'a Graph,
    order: usize,
    pairs: Vec<(usize, usize)>,
    branch: Vec<usize>,
    occupied: Vec<bool>,
    budget: &'a Budget,
    ticker: u32,
    timed_out: bool,
}

impl<'a> CliqueSubSearch<'a> {
    fn tick(&mut self) -> bool {
        self.ticker = self.ticker.wrapping_add(1);
        if self.ticker % 1024 == 0 && self.budget.expired() {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn choose_branch(&mut self, depth: usize, start: usize) -> Option<Vec<RoutedPath>> {
        if depth == self.order {
            let mut paths = Vec::new();
            return self.route(0, &mut paths);
        }
        if self.tick() {
            return None;
        }
        for v in start..self.host.vertex_count() {
            if self.occupied[v] || self.host.degree(v) + 1 < self.order {
                continue;
            }
            self.branch[depth] = v;
            self.occupied[v] = true;
            if let Some(paths) = self.choose_branch(depth + 1, v + 1) {
                return Some(paths);
            }
            self.occupied[v] = false;
            self.branch[depth] = FREE;
            if self.timed_out {
                return None;
            }
        }
        None
    }

    fn route(
        &mut self,
        pair_index: usize,
        paths: &mut Vec<RoutedPath>,
    ) -> Option<Vec<RoutedPath>> {
        if pair_index == self.pairs.len() {
            return Some(paths.clone());
        }
        if self.tick() {
            return None;
        }
        let (x, y) = self.pairs[pair_index];
        let (from, to) = (self.branch[x], self.branch[y]);
        let free = self.occupied.iter().filter(|&&o| !o).count();
        for interior_len in 0..=free {
            if interior_len == 0 && !self.host.has_edge(from, to) {
                continue;
            }
            let mut interior = Vec::with_capacity(interior_len);
            if let Some(done) =
                self.grow(pair_index, from, to, interior_len, &mut interior, paths)
            {
                return Some(done);
            }
            if self.timed_out {
                return None;
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        pair_index: usize,
        from: usize,
        to: usize,
        target_len: usize,
        interior: &mut Vec<usize>,
        paths: &mut Vec<RoutedPath>,
    ) -> Option<Vec<RoutedPath>> {
        if interior.len() == target_len {
            let last = interior.last().copied().unwrap_or(from);
            if !self.host.has_edge(last, to) {
                return None;
            }
            let (x, y) = self.pairs[pair_index];
            let mut route = vec![from];
            route.extend_from_slice(interior);
            route.push(to);
            paths.push(((x, y), route));
            let result = self.route(pair_index + 1, paths);
            if result.is_some() {
                return result;
            }
            paths.pop();
            return None;
        }
        if self.tick() {
            return None;
        }
        let predecessor = interior.last().copied().unwrap_or(from);
        for w in self.host.vertices() {
            if self.occupied[w] || !self.host.has_edge(w, predecessor) {
                continue;
            }
            interior.push(w);
            self.occupied[w] = true;
            let result = self.grow(pair_index, from, to, target_len, interior, paths);
            if result.is_some() {
                return result;
            }
            self.occupied[w] = false;
            interior.pop();
            if self.timed_out {
                return None;
            }
        }
        None
    }
}

/// Searches `f` for a subdivision of the complete graph on `h` vertices:
/// branch vertices of degree at least `h - 1`, joined by pairwise
/// internally disjoint paths found shortest-first with backtracking. The
/// witness is a subgraph subdivision; it need not be induced.
pub fn find_clique_subdivision(
    f: &Graph,
    h: usize,
    budget: &Budget,
) -> SearchOutcome<SubdivisionWitness> {
    assert!(h >= 1);
    if f.vertex_count() < h {
        return SearchOutcome::Exhausted;
    }
    let pattern = named::complete(h);
    let pairs = pattern.edges();
    let mut search = CliqueSubSearch {
        host: f,
        order: h,
        pairs,
        branch: vec![FREE; h],
        occupied: vec![false; f.vertex_count()],
        budget,
        ticker: 0,
        timed_out: false,
    };
    match search.choose_branch(0, 0) {
        Some(paths) => {
            let witness = SubdivisionWitness {
                host: f.clone(),
                pattern,
                branch: search.branch.clone(),
                proper: paths.iter().all(|(_, p)| p.len() >= 3),
                one_subdivision: !paths.is_empty() && paths.iter().all(|(_, p)| p.len() == 3),
                paths,
                induced: false,
            };
            debug_assert!(witness.verify());
            SearchOutcome::Found(witness)
        }
        None if search.timed_out => SearchOutcome::TimedOut,
        None => SearchOutcome::Exhausted,
    }
}

/// Restricts an induced proper subdivision of a complete graph to the edge
/// set of `h` (assigned to the branch vertices in index order), yielding an
/// induced subdivision of `h`.
///
/// Properness of the input is what rules out stray adjacencies between
/// branch vertices after the unused paths are dropped; the induced flag of
/// the output is re-derived from the host, never copied.
pub fn proper_to_induced_h(
    witness: &SubdivisionWitness,
    h: &Graph,
) -> Result<SubdivisionWitness, PipelineError> {
    if !witness.proper || !witness.induced {
        return Err(PipelineError::Precondition(
            "input must be a proper induced subdivision".into(),
        ));
    }
    if !witness.verify() {
        return Err(PipelineError::Precondition(
            "input witness fails verification".into(),
        ));
    }
    let m = witness.pattern.vertex_count();
    let complete_edges = m * m.saturating_sub(1) / 2;
    if witness.pattern.edge_count() != complete_edges {
        return Err(PipelineError::Precondition(
            "input pattern is not a complete graph".into(),
        ));
    }
    if h.vertex_count() != m {
        return Err(PipelineError::Precondition(format!(
            "pattern order {} does not match branch count {m}",
            h.vertex_count()
        )));
    }
    let kept: Vec<((usize, usize), Vec<usize>)> = h
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let path = witness
                .paths
                .iter()
                .find(|&&((a, b), _)| (a, b) == (u, v))
                .map(|(_, p)| p.clone())
                .expect("complete pattern covers every pair");
            ((u, v), path)
        })
        .collect();
    let mut output = SubdivisionWitness {
        host: witness.host.clone(),
        pattern: h.clone(),
        branch: witness.branch.clone(),
        paths: kept,
        proper: true,
        one_subdivision: false,
        induced: false,
    };
    output.one_subdivision = output.paths.iter().all(|(_, p)| p.len() == 3);
    output.induced = output.check_induced();
    if !output.induced || !output.verify() {
        return Err(PipelineError::VerificationBug("proper_to_induced_h".into()));
    }
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_induced_subdivision, one_subdivision_of, SubdivisionMode};
    use crate::graph::named;

    #[test]
    fn k5_contains_k4_subdivision() {
        let w = find_clique_subdivision(&named::complete(5), 4, &Budget::unlimited())
            .found()
            .unwrap();
        assert!(w.verify());
        assert_eq!(w.branch.len(), 4);
    }

    #[test]
    fn any_cycle_is_a_triangle_subdivision() {
        let w = find_clique_subdivision(&named::cycle(9), 3, &Budget::unlimited())
            .found()
            .unwrap();
        assert!(w.verify());
        assert!(w.proper || w.paths.iter().any(|(_, p)| p.len() == 2));
    }

    #[test]
    fn trees_have_no_triangle_subdivision() {
        assert!(
            find_clique_subdivision(&named::path(8), 3, &Budget::unlimited()).is_exhausted()
        );
    }

    #[test]
    fn lift_k4_subdivision_to_c4_pattern() {
        // Host: the 1-subdivision of K4 is an induced proper subdivision of
        // K4 in itself.
        let k4 = named::complete(4);
        let host = one_subdivision_of(&k4);
        let witness =
            find_induced_subdivision(&host, &k4, SubdivisionMode::One, &Budget::unlimited())
                .found()
                .unwrap();
        let c4 = named::cycle(4);
        let lifted = proper_to_induced_h(&witness, &c4).unwrap();
        assert!(lifted.induced && lifted.proper);
        assert!(lifted.verify());
        assert_eq!(lifted.paths.len(), 4);
        // Vertex set shrank: two paths were dropped.
        assert!(lifted.vertex_set().len() < witness.vertex_set().len());
    }

    #[test]
    fn empty_pattern_keeps_only_branch_vertices() {
        let k3 = named::complete(3);
        let host = one_subdivision_of(&k3);
        let witness =
            find_induced_subdivision(&host, &k3, SubdivisionMode::One, &Budget::unlimited())
                .found()
                .unwrap();
        let empty = Graph::empty(3);
        let lifted = proper_to_induced_h(&witness, &empty).unwrap();
        assert!(lifted.paths.is_empty());
        assert_eq!(lifted.vertex_set().len(), 3);
        assert!(lifted.verify());
    }

    #[test]
    fn improper_input_rejected() {
        // K4 inside K4 in any mode has direct edges: not proper.
        let k4 = named::complete(4);
        let witness =
            find_induced_subdivision(&k4, &k4, SubdivisionMode::Any, &Budget::unlimited())
                .found()
                .unwrap();
        assert!(matches!(
            proper_to_induced_h(&witness, &named::cycle(4)),
            Err(PipelineError::Precondition(_))
        ));
    }
}
