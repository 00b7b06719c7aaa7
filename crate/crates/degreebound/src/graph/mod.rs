//! Simple undirected graphs with exact degree statistics.
//!
//! [`Graph`] values are immutable after construction, so they can be shared
//! freely across parallel workers. Vertices are `0..n`; adjacency is stored
//! as sorted neighbor lists with a cached edge count.

mod bitset;
pub mod graph6;
mod mad;
pub mod named;
pub mod random;

pub use bitset::Bitset;
pub use mad::max_average_degree;

use crate::exact::{rat_usize, Rat};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("undefined on zero vertices")]
    EmptyGraph,
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph is not {0}-degenerate (degeneracy {1})")]
    NotDegenerate(usize, usize),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("unknown graph name: {0}")]
    UnknownName(String),
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adjacency: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            vertex_count: n,
            adjacency,
            edge_count,
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            vertex_count: n,
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.vertices() {
            for &v in &self.adjacency[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Per-vertex neighbor bitsets; the workhorse for detector inner loops.
    pub fn adjacency_bitsets(&self) -> Vec<Bitset> {
        let mut masks = vec![Bitset::new(self.vertex_count); self.vertex_count];
        for u in self.vertices() {
            for &v in &self.adjacency[u] {
                masks[u].set(v);
            }
        }
        masks
    }

    /// Induced subgraph on `keep` (ascending relabeling), plus the map from
    /// new vertex index to original index.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut index_of = vec![usize::MAX; self.vertex_count];
        for (new, &old) in map.iter().enumerate() {
            index_of[old] = new;
        }
        let mut adjacency = vec![Vec::new(); map.len()];
        let mut edge_count = 0;
        for (new, &old) in map.iter().enumerate() {
            for &w in &self.adjacency[old] {
                let wn = index_of[w];
                if wn != usize::MAX {
                    adjacency[new].push(wn);
                    if new < wn {
                        edge_count += 1;
                    }
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        (
            Graph {
                vertex_count: map.len(),
                adjacency,
                edge_count,
            },
            map,
        )
    }

    /// Exact average degree `2e/n`.
    pub fn average_degree(&self) -> Result<Rat, GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(rat_usize(2 * self.edge_count) / rat_usize(self.vertex_count))
    }

    /// Average degree of the subgraph induced on `set` (exact).
    pub fn average_degree_of(&self, set: &VertexSet) -> Result<Rat, GraphError> {
        if set.len() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut edges = 0usize;
        for u in set.iter() {
            for &v in &self.adjacency[u] {
                if u < v && set.contains(v) {
                    edges += 1;
                }
            }
        }
        Ok(rat_usize(2 * edges) / rat_usize(set.len()))
    }

    /// Edges with one endpoint in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        let mut count = 0;
        for u in a.iter() {
            for &v in &self.adjacency[u] {
                if b.contains(v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Minimum-degree peeling order and the degeneracy it certifies.
    ///
    /// Ties are broken toward the lowest vertex index, so the order is
    /// deterministic. Every vertex has at most `degeneracy` neighbors later
    /// in the returned order.
    pub fn degeneracy(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count;
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("peeling a live vertex");
            degeneracy = degeneracy.max(degree[v]);
            alive[v] = false;
            order.push(v);
            for &w in &self.adjacency[v] {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
        (order, degeneracy)
    }

    /// Orients every edge away from the endpoint peeled earlier, giving
    /// out-degree at most `d`. Fails when the graph is not `d`-degenerate.
    pub fn degenerate_orientation(&self, d: usize) -> Result<Orientation, GraphError> {
        let (order, degeneracy) = self.degeneracy();
        if degeneracy > d {
            return Err(GraphError::NotDegenerate(d, degeneracy));
        }
        let mut position = vec![0usize; self.vertex_count];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let arcs = self
            .edges()
            .into_iter()
            .map(|(u, v)| {
                if position[u] < position[v] {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        Ok(Orientation { arcs })
    }

    /// Greedy independent set: repeatedly take a minimum-degree vertex and
    /// delete its closed neighborhood. The result has size at least
    /// `n / (d(G) + 1)`.
    pub fn greedy_independent_set(&self) -> VertexSet {
        let n = self.vertex_count;
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; n];
        let mut remaining = n;
        let mut chosen = VertexSet::new();
        while remaining > 0 {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("nonempty remainder");
            chosen.insert(v);
            let mut to_remove = vec![v];
            for &w in &self.adjacency[v] {
                if alive[w] {
                    to_remove.push(w);
                }
            }
            for x in to_remove {
                alive[x] = false;
                remaining -= 1;
                for &y in &self.adjacency[x] {
                    if alive[y] {
                        degree[y] -= 1;
                    }
                }
            }
        }
        chosen
    }

    /// Length of a shortest cycle; `None` for forests.
    ///
    /// One BFS per root; for every non-tree edge `(u, v)` seen from root `r`,
    /// `dist(u) + dist(v) + 1` bounds some cycle length from above, and the
    /// minimum over all roots is attained on a shortest cycle.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                // Cycles through vertices farther than the current best
                // cannot improve it.
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        continue;
                    }
                }
                for &v in &self.adjacency[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v && parent[v] != u {
                        let len = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// True when the graph has no odd cycle; also returns a two-coloring
    /// (side per vertex) if it is bipartite.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.vertex_count;
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let mut left = VertexSet::new();
        let mut right = VertexSet::new();
        for v in 0..n {
            if color[v] == 0 {
                left.insert(v);
            } else {
                right.insert(v);
            }
        }
        Some((left, right))
    }
}

/// A set of vertex indices within some graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: BTreeSet<usize>,
}

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet {
            members: BTreeSet::new(),
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        VertexSet {
            members: iter.into_iter().collect(),
        }
    }

    pub fn full(n: usize) -> VertexSet {
        Self::from_iter(0..n)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.members.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.is_disjoint(&other.members)
    }

    /// Checks membership range and returns the members as a sorted vec.
    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn valid_for(&self, g: &Graph) -> bool {
        self.members.last().map_or(true, |&m| m < g.vertex_count())
    }

    /// True when no two members are adjacent in `g`.
    pub fn is_independent_in(&self, g: &Graph) -> bool {
        let items = self.to_vec();
        for (i, &u) in items.iter().enumerate() {
            for &v in &items[i + 1..] {
                if g.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        VertexSet::from_iter(iter)
    }
}

/// An orientation of a graph's edge set: one `(tail, head)` arc per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == v).count()
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|&&(t, _)| t == v)
            .map(|&(_, h)| h)
            .collect()
    }

    /// The underlying unordered pairs must equal the graph's edge set.
    pub fn matches(&self, g: &Graph) -> bool {
        let mut pairs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(t, h)| (t.min(h), t.max(h)))
            .collect();
        pairs.sort_unstable();
        pairs == g.edges()
    }
}

#[cfg(test)]
mod tests {
    use super::named;
    use super::*;
    use crate::exact::rat;

    #[test]
    fn average_degree_examples() {
        let k33 = named::complete_bipartite(3, 3);
        assert_eq!(k33.average_degree().unwrap(), rat(3, 1));
        let p4 = named::path(4);
        assert_eq!(p4.average_degree().unwrap(), rat(3, 2));
        let petersen = named::petersen();
        assert_eq!(petersen.average_degree().unwrap(), rat(3, 1));
        assert_eq!(
            Graph::empty(0).average_degree().unwrap_err(),
            GraphError::EmptyGraph
        );
    }

    #[test]
    fn degeneracy_examples() {
        let tree = named::path(6);
        assert_eq!(tree.degeneracy().1, 1);
        let kss = named::complete_bipartite(4, 4);
        assert_eq!(kss.degeneracy().1, 4);
    }

    #[test]
    fn petersen_degeneracy_via_peeling_oracle() {
        // Independent oracle: check directly that every induced subgraph has
        // a vertex of degree <= 3 and that some subgraph has min degree 3.
        let g = named::petersen();
        let n = g.vertex_count();
        let mut bound = 0usize;
        for mask in 1u32..(1 << n) {
            let set: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let (sub, _) = g.induced(&set);
            let min_deg = (0..sub.vertex_count())
                .map(|v| sub.degree(v))
                .min()
                .unwrap();
            bound = bound.max(min_deg);
        }
        assert_eq!(bound, 3);
        assert_eq!(g.degeneracy().1, 3);
    }

    #[test]
    fn orientation_out_degrees() {
        let star = named::complete_bipartite(1, 5);
        let orient = star.degenerate_orientation(1).unwrap();
        assert!(orient.matches(&star));
        for v in star.vertices() {
            assert!(orient.out_degree(v) <= 1);
        }

        let c6 = named::cycle(6);
        let orient = c6.degenerate_orientation(2).unwrap();
        for v in c6.vertices() {
            assert!(orient.out_degree(v) <= 2);
        }

        let petersen = named::petersen();
        let orient = petersen.degenerate_orientation(3).unwrap();
        assert!(orient.matches(&petersen));
        for v in petersen.vertices() {
            assert!(orient.out_degree(v) <= 3);
        }
        assert!(petersen.degenerate_orientation(2).is_err());
    }

    #[test]
    fn greedy_independent_set_examples() {
        let edgeless = Graph::empty(6);
        assert_eq!(edgeless.greedy_independent_set().len(), 6);
        let k6 = named::complete(6);
        assert_eq!(k6.greedy_independent_set().len(), 1);
        // C5: maximum independent set has size 2 (exhaustively checkable),
        // and the greedy bound n/(d+1) = 5/3 forces at least 2.
        let c5 = named::cycle(5);
        let s = c5.greedy_independent_set();
        assert!(s.is_independent_in(&c5));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(named::cycle(7).girth(), Some(7));
        assert_eq!(named::path(9).girth(), None);
        assert_eq!(named::petersen().girth(), Some(5));
        assert_eq!(named::complete(4).girth(), Some(3));
        assert_eq!(named::complete_bipartite(2, 3).girth(), Some(4));
    }

    #[test]
    fn girth_matches_exhaustive_cycle_search_on_small_graphs() {
        // Oracle: shortest cycle by DFS enumeration of all simple cycles.
        fn brute_girth(g: &Graph) -> Option<usize> {
            let n = g.vertex_count();
            let mut best = None;
            fn extend(
                g: &Graph,
                start: usize,
                current: usize,
                visited: &mut Vec<usize>,
                best: &mut Option<usize>,
            ) {
                for &w in g.neighbors(current) {
                    if w == start && visited.len() >= 3 {
                        if best.map_or(true, |b| visited.len() < b) {
                            *best = Some(visited.len());
                        }
                    } else if w > start && !visited.contains(&w) {
                        visited.push(w);
                        extend(g, start, w, visited, best);
                        visited.pop();
                    }
                }
            }
            for start in 0..n {
                let mut visited = vec![start];
                extend(g, start, start, &mut visited, &mut best);
            }
            best
        }
        let mut rng = crate::rng::SplitMix64::new(11);
        for trial in 0..60 {
            let g = random::gnp(8, 0.25 + 0.05 * (trial % 5) as f64, &mut rng);
            assert_eq!(g.girth(), brute_girth(&g), "graph {:?}", g.edges());
        }
    }

    #[test]
    fn bipartition_detects_sides() {
        let (a, b) = named::complete_bipartite(2, 3).bipartition().unwrap();
        assert_eq!(a.len().min(b.len()), 2);
        assert!(named::cycle(5).bipartition().is_none());
        assert!(named::cycle(6).bipartition().is_some());
    }
}
