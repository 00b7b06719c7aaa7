//! Canonical labeling by individualization-refinement.
//!
//! The search keeps an ordered partition of the vertices, refines it to
//! equitability (splitting cells by neighbor counts into other cells), and
//! individualizes one vertex of the smallest non-singleton cell at a time.
//! Each leaf (discrete partition) yields a candidate labeling; the canonical
//! one minimizes the pair (refinement trace, adjacency bytes).
//!
//! Two prunings keep the tree small without affecting that minimum: subtrees
//! whose partial trace already exceeds the best leaf's are cut, and a branch
//! vertex is skipped when an automorphism fixing every previously
//! individualized vertex maps it to a sibling already explored (such
//! automorphisms are harvested from pairs of equal-value leaves).

use crate::graph::Graph;

/// Canonical certificate: equal bytes if and only if the graphs are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form plus one labeling that realizes it (`perm[v]` is the
/// canonical position of vertex `v`).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.vertex_count();
    assert!(n <= 64, "canonical labeling supports at most 64 vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let (bytes, perm) = canon_masks(n, &adj);
    (CanonicalForm { bytes }, perm)
}

/// The graph relabeled into canonical position order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, perm) = canonical_labeling(g);
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(g.vertex_count(), &edges).expect("relabeling")
}

const SEPARATOR: u32 = u32::MAX;
const MAX_GENERATORS: usize = 256;

struct Best {
    trace: Vec<u32>,
    bytes: Vec<u8>,
    perm: Vec<usize>,
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    best: Option<Best>,
    /// Discovered automorphisms (vertex -> image), used only for pruning.
    generators: Vec<Vec<usize>>,
    /// Vertices individualized along the current path.
    prefix: Vec<usize>,
}

pub(crate) fn canon_masks(n: usize, adj: &[u64]) -> (Vec<u8>, Vec<usize>) {
    if n == 0 {
        return (vec![0], Vec::new());
    }
    let mut search = Search {
        n,
        adj,
        best: None,
        generators: Vec::new(),
        prefix: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<usize>>()];
    let mut trace = Vec::new();
    search.descend(cells, &mut trace);
    let best = search.best.expect("at least one leaf");
    (best.bytes, best.perm)
}

impl<'a> Search<'a> {
    /// Refines to an equitable partition: every cell's members must have
    /// uniform neighbor counts into every cell. Subcells are ordered by
    /// ascending count vector, so the evolution depends only on the abstract
    /// graph, not on its labeling.
    fn refine(&self, cells: &mut Vec<Vec<usize>>, trace: &mut Vec<u32>) {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            let mut changed = false;
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
                for &v in cell {
                    let sig: Vec<u32> = masks
                        .iter()
                        .map(|&m| (self.adj[v] & m).count_ones())
                        .collect();
                    match groups.iter_mut().find(|(s, _)| *s == sig) {
                        Some((_, members)) => members.push(v),
                        None => groups.push((sig, vec![v])),
                    }
                }
                if groups.len() > 1 {
                    changed = true;
                    groups.sort_by(|a, b| a.0.cmp(&b.0));
                }
                for (_, mut members) in groups {
                    members.sort_unstable();
                    next.push(members);
                }
            }
            *cells = next;
            if !changed {
                break;
            }
        }
        for cell in cells.iter() {
            trace.push(cell.len() as u32);
        }
        trace.push(SEPARATOR);
    }

    /// Lexicographic comparison of the partial trace against the best leaf's
    /// prefix: `Greater` means the whole subtree is dominated.
    fn trace_status(&self, trace: &[u32]) -> std::cmp::Ordering {
        match &self.best {
            None => std::cmp::Ordering::Less,
            Some(best) => {
                let common = trace.len().min(best.trace.len());
                trace[..common]
                    .cmp(&best.trace[..common])
                    .then(if trace.len() > best.trace.len() {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    })
            }
        }
    }

    /// Orbit partition of `0..n` under the discovered automorphisms that fix
    /// every vertex individualized on the current path.
    fn stabilizer_orbits(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            let mut root = v;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = v;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for gen in &self.generators {
            if self.prefix.iter().any(|&w| gen[w] != w) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gen[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut roots = vec![0usize; self.n];
        for v in 0..self.n {
            roots[v] = find(&mut parent, v);
        }
        roots
    }

    fn descend(&mut self, mut cells: Vec<Vec<usize>>, trace: &mut Vec<u32>) {
        let rollback = trace.len();
        self.refine(&mut cells, trace);
        if self.trace_status(trace) == std::cmp::Ordering::Greater {
            trace.truncate(rollback);
            return;
        }
        if cells.iter().all(|c| c.len() == 1) {
            self.visit_leaf(&cells, trace);
            trace.truncate(rollback);
            return;
        }
        // Branch on the smallest non-singleton cell, earliest on ties.
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a splittable cell");
        let members = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            let orbits = self.stabilizer_orbits();
            if explored.iter().any(|&u| orbits[u] == orbits[v]) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            self.prefix.push(v);
            self.descend(child, trace);
            self.prefix.pop();
        }
        trace.truncate(rollback);
    }

    fn visit_leaf(&mut self, cells: &[Vec<usize>], trace: &[u32]) {
        let mut perm = vec![0usize; self.n];
        for (position, cell) in cells.iter().enumerate() {
            perm[cell[0]] = position;
        }
        let bytes = pack_bytes(self.n, self.adj, &perm);
        match &self.best {
            None => {
                self.best = Some(Best {
                    trace: trace.to_vec(),
                    bytes,
                    perm,
                });
            }
            Some(best) => match (trace, &bytes).cmp(&(&best.trace[..], &best.bytes)) {
                std::cmp::Ordering::Less => {
                    self.best = Some(Best {
                        trace: trace.to_vec(),
                        bytes,
                        perm,
                    });
                }
                std::cmp::Ordering::Equal => {
                    // Two labelings with identical canonical value compose to
                    // an automorphism: v -> best_perm^{-1}(perm(v)).
                    if self.generators.len() < MAX_GENERATORS {
                        let best_perm = &self.best.as_ref().unwrap().perm;
                        let mut inverse = vec![0usize; self.n];
                        for (v, &p) in best_perm.iter().enumerate() {
                            inverse[p] = v;
                        }
                        let gen: Vec<usize> = (0..self.n).map(|v| inverse[perm[v]]).collect();
                        if gen.iter().enumerate().any(|(v, &img)| v != img) {
                            self.generators.push(gen);
                        }
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

/// `[n, packed upper-triangle adjacency in canonical position order]`.
fn pack_bytes(n: usize, adj: &[u64], perm: &[usize]) -> Vec<u8> {
    let mut inverse = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    let bits = n * (n - 1) / 2;
    let mut bytes = vec![0u8; 1 + bits.div_ceil(8)];
    bytes[0] = n as u8;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let edge = adj[inverse[i]] >> inverse[j] & 1 == 1;
            if edge {
                bytes[1 + k / 8] |= 1 << (7 - k % 8);
            }
            k += 1;
        }
    }
    bytes
}
