//! Induced-subdivision search.
//!
//! Branch vertices are assigned first (most-constrained pattern vertex
//! first, host candidates ascending), then each pattern edge is routed as an
//! induced host path by iterative deepening on interior length, so shorter
//! witnesses are preferred. All placement constraints are checked against
//! the partial witness, which keeps every accepted witness induced by
//! construction; the flag is still re-derived at the end.

use super::{Budget, SearchOutcome, SubdivisionWitness};
use crate::graph::Graph;

/// A routed pattern edge: `((u, v), host path from branch[u] to branch[v])`.
type RoutedPath = ((usize, usize), Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdivisionMode {
    /// Paths of any length (two or more vertices).
    Any,
    /// Proper: every path has at least three vertices.
    Proper,
    /// 1-subdivision: every path has exactly three vertices.
    One,
}

impl SubdivisionMode {
    fn interior_bounds(self, host_adjacent: bool, free: usize) -> (usize, usize) {
        match self {
            SubdivisionMode::Any => {
                if host_adjacent {
                    (0, 0)
                } else {
                    (1, free)
                }
            }
            SubdivisionMode::Proper => (1, free),
            SubdivisionMode::One => (1, 1),
        }
    }
}

struct SubdivisionSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    mode: SubdivisionMode,
    pattern_edges: Vec<(usize, usize)>,
    branch: Vec<usize>,
    /// usize::MAX when free; otherwise an id marking the occupying role.
    placed: Vec<usize>,
    placed_list: Vec<usize>,
    budget: &'a Budget,
    ticker: u32,
    timed_out: bool,
}

const FREE: usize = usize::MAX;

impl<'a> SubdivisionSearch<'a> {
    fn tick(&mut self) -> bool {
        self.ticker = self.ticker.wrapping_add(1);
        if self.ticker % 1024 == 0 && self.budget.expired() {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn assign_branches(&mut self, order: &[usize], depth: usize) -> Option<Vec<RoutedPath>> {
        if depth == order.len() {
            let mut paths = Vec::new();
            return self.route_edges(0, &mut paths);
        }
        if self.tick() {
            return None;
        }
        let p = order[depth];
        'host: for v in self.host.vertices() {
            if self.placed[v] != FREE || self.host.degree(v) < self.pattern.degree(p) {
                continue;
            }
            for &q in &order[..depth] {
                let image = self.branch[q];
                let host_adjacent = self.host.has_edge(v, image);
                if self.pattern.has_edge(p, q) {
                    // Adjacent branch images are only legal when the edge may
                    // be routed directly.
                    if host_adjacent && self.mode != SubdivisionMode::Any {
                        continue 'host;
                    }
                } else if host_adjacent {
                    continue 'host;
                }
            }
            self.branch[p] = v;
            self.placed[v] = p;
            self.placed_list.push(v);
            if let Some(paths) = self.assign_branches(order, depth + 1) {
                return Some(paths);
            }
            self.placed_list.pop();
            self.placed[v] = FREE;
            self.branch[p] = FREE;
            if self.timed_out {
                return None;
            }
        }
        None
    }

    fn route_edges(
        &mut self,
        edge_index: usize,
        paths: &mut Vec<RoutedPath>,
    ) -> Option<Vec<RoutedPath>> {
        if edge_index == self.pattern_edges.len() {
            return Some(paths.clone());
        }
        if self.tick() {
            return None;
        }
        let (x, y) = self.pattern_edges[edge_index];
        let (from, to) = (self.branch[x], self.branch[y]);
        let host_adjacent = self.host.has_edge(from, to);
        let free = self
            .placed
            .iter()
            .filter(|&&occupied| occupied == FREE)
            .count();
        let (min_len, max_len) = self.mode.interior_bounds(host_adjacent, free);
        if host_adjacent && self.mode != SubdivisionMode::Any {
            // Cannot happen: branch assignment already excluded it.
            return None;
        }
        for interior_len in min_len..=max_len {
            let mut interior = Vec::with_capacity(interior_len);
            if let Some(done) =
                self.grow_path(edge_index, from, to, interior_len, &mut interior, paths)
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
    fn grow_path(
        &mut self,
        edge_index: usize,
        from: usize,
        to: usize,
        target_len: usize,
        interior: &mut Vec<usize>,
        paths: &mut Vec<RoutedPath>,
    ) -> Option<Vec<RoutedPath>> {
        if interior.len() == target_len {
            let last = interior.last().copied().unwrap_or(from);
            let closes = if target_len == 0 {
                self.host.has_edge(from, to)
            } else {
                // Adjacency of the last interior vertex to `to` was already
                // enforced when it was placed.
                self.host.has_edge(last, to)
            };
            if !closes {
                return None;
            }
            let (x, y) = self.pattern_edges[edge_index];
            let mut route = vec![from];
            route.extend_from_slice(interior);
            route.push(to);
            paths.push(((x, y), route));
            let result = self.route_edges(edge_index + 1, paths);
            if result.is_some() {
                return result;
            }
            paths.pop();
            return None;
        }
        if self.tick() {
            return None;
        }
        let position = interior.len();
        let predecessor = if position == 0 {
            from
        } else {
            interior[position - 1]
        };
        let is_last = position + 1 == target_len;
        for w in self.host.vertices() {
            if self.placed[w] != FREE {
                continue;
            }
            if !self.host.has_edge(w, predecessor) {
                continue;
            }
            // Induced constraints against everything placed so far: the only
            // allowed witness neighbors of w are its predecessor, and `to`
            // when w is the final interior vertex.
            let mut valid = true;
            for &z in &self.placed_list {
                let must_be_adjacent = z == predecessor || (is_last && z == to);
                if self.host.has_edge(w, z) != must_be_adjacent {
                    valid = false;
                    break;
                }
            }
            if !valid {
                continue;
            }
            interior.push(w);
            self.placed[w] = self.pattern.vertex_count() + edge_index;
            self.placed_list.push(w);
            let result = self.grow_path(edge_index, from, to, target_len, interior, paths);
            if result.is_some() {
                return result;
            }
            self.placed_list.pop();
            self.placed[w] = FREE;
            interior.pop();
            if self.timed_out {
                return None;
            }
        }
        None
    }
}

/// Searches for an induced subdivision of `h` in `g` under the given mode.
/// The returned witness always has its `induced` flag verified true.
pub fn find_induced_subdivision(
    g: &Graph,
    h: &Graph,
    mode: SubdivisionMode,
    budget: &Budget,
) -> SearchOutcome<SubdivisionWitness> {
    assert!(h.vertex_count() >= 1);
    if h.vertex_count() > g.vertex_count() {
        return SearchOutcome::Exhausted;
    }
    let mut order: Vec<usize> = h.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut search = SubdivisionSearch {
        host: g,
        pattern: h,
        mode,
        pattern_edges: h.edges(),
        branch: vec![FREE; h.vertex_count()],
        placed: vec![FREE; g.vertex_count()],
        placed_list: Vec::new(),
        budget,
        ticker: 0,
        timed_out: false,
    };
    match search.assign_branches(&order, 0) {
        Some(paths) => {
            let witness = SubdivisionWitness {
                host: g.clone(),
                pattern: h.clone(),
                branch: search.branch.clone(),
                proper: paths.iter().all(|(_, p)| p.len() >= 3),
                one_subdivision: paths.iter().all(|(_, p)| p.len() == 3),
                paths,
                induced: true,
            };
            debug_assert!(witness.verify());
            SearchOutcome::Found(witness)
        }
        None if search.timed_out => SearchOutcome::TimedOut,
        None => SearchOutcome::Exhausted,
    }
}

/// Builds the 1-subdivision of `h`: branch vertices keep their indices, and
/// edge `i` (in ascending edge order) gets subdivision vertex `|h| + i`.
pub fn one_subdivision_of(h: &Graph) -> Graph {
    let n = h.vertex_count();
    let mut edges = Vec::new();
    for (i, (u, v)) in h.edges().into_iter().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    Graph::from_edges(n + h.edge_count(), &edges).expect("subdivision host")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn identity_subdivision() {
        let g = named::complete_bipartite(2, 3);
        let w = find_induced_subdivision(&g, &g, SubdivisionMode::Any, &Budget::unlimited())
            .found()
            .unwrap();
        assert!(w.verify());
        assert!(w.induced);
    }

    #[test]
    fn cycles_have_no_high_degree_subdivisions() {
        let g = named::cycle(9);
        let h = named::complete_bipartite(2, 3);
        assert!(
            find_induced_subdivision(&g, &h, SubdivisionMode::Any, &Budget::unlimited())
                .is_exhausted()
        );
    }

    #[test]
    fn one_subdivision_host_recovers_pattern() {
        for h in [named::complete(4), named::complete_bipartite(2, 3), named::cycle(5)] {
            let host = one_subdivision_of(&h);
            let w = find_induced_subdivision(&host, &h, SubdivisionMode::One, &Budget::unlimited())
                .found()
                .unwrap();
            assert!(w.verify());
            assert!(w.one_subdivision && w.induced);
        }
    }

    #[test]
    fn theta_found_in_subdivided_host() {
        // A long theta: K_{2,3} with each edge subdivided once lives inside
        // its own 1-subdivision, searched in proper mode.
        let h = named::complete_bipartite(2, 3);
        let host = one_subdivision_of(&h);
        let w = find_induced_subdivision(&host, &h, SubdivisionMode::Proper, &Budget::unlimited())
            .found()
            .unwrap();
        assert!(w.proper && w.induced);
    }

    #[test]
    fn direct_edges_allowed_only_in_any_mode() {
        let g = named::complete(4);
        // K4 inside K4: any mode finds the identity.
        let w = find_induced_subdivision(&g, &g, SubdivisionMode::Any, &Budget::unlimited())
            .found()
            .unwrap();
        assert!(!w.proper);
        // Proper mode cannot subdivide inside K4: not enough room.
        assert!(
            find_induced_subdivision(&g, &g, SubdivisionMode::Proper, &Budget::unlimited())
                .is_exhausted()
        );
    }
}
