//! Induced bipartite subgraphs of triangle-free graphs, and the composition
//! yielding a C4-free bipartite subgraph of a biclique-free graph.

use super::{
    extract_girth5, CertPayload, Certificate, Check, ParamMode, PipelineError, PipelineParams,
};
use crate::detect::{find_biclique, SearchOutcome};
use crate::exact::{rat, rat_str, rat_to_f64, rat_usize, Rat};
use crate::graph::{Graph, VertexSet};

/// Best induced bipartite subgraph: exhaustive below 21 vertices, seeded
/// hill-climbing above.
///
/// The returned sides are independent sets whose union induces the
/// subgraph; the average degree is exact. In paper mode a check comparing
/// against `C log d / log log d` is recorded (approximately: the constant
/// is a non-authoritative knob).
pub fn triangle_free_to_bipartite(
    g: &Graph,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "triangle_free_to_bipartite";
    let n = g.vertex_count();
    if n == 0 {
        return Err(PipelineError::Precondition("empty graph".into()));
    }
    if has_triangle(g) {
        return Err(PipelineError::Precondition("input has a triangle".into()));
    }
    let (left, right) = if n <= 20 {
        best_bipartite_exhaustive(g)
    } else {
        best_bipartite_local_search(g, params)
    };
    let all: VertexSet = left.iter().chain(right.iter()).collect();
    let average_degree = g.average_degree_of(&all).expect("nonempty selection");
    let mut checks = vec![
        Check::bool("left side independent", left.is_independent_in(g)),
        Check::bool("right side independent", right.is_independent_in(g)),
    ];
    if params.mode == ParamMode::Paper {
        let d_in = rat_to_f64(&g.average_degree().expect("nonempty"));
        let bound = if d_in > 2.0 {
            rat_to_f64(&params.kwan_c) * d_in.log2() / d_in.log2().log2().max(f64::MIN_POSITIVE)
        } else {
            0.0
        };
        checks.push(Check {
            name: "d(G'') >= C log d / log log d [approx]".into(),
            holds: rat_to_f64(&average_degree) >= bound,
            lhs: rat_str(&average_degree),
            rhs: format!("{bound:.6}"),
        });
    }
    Certificate::new(
        CertPayload::InducedBipartite {
            host: g.clone(),
            left,
            right,
            average_degree,
        },
        stage,
        params,
    )
    .with_checks(checks)
    .sealed(stage)
}

fn has_triangle(g: &Graph) -> bool {
    let masks = g.adjacency_bitsets();
    for (u, v) in g.edges() {
        if masks[u].intersection_count(&masks[v]) > 0 {
            return true;
        }
    }
    false
}

/// All subsets, bipartiteness-checked, densest first by exact comparison;
/// ties resolved toward the earliest subset in mask order.
fn best_bipartite_exhaustive(g: &Graph) -> (VertexSet, VertexSet) {
    let n = g.vertex_count();
    debug_assert!(n <= 20);
    let adj_mask: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    // best = (2*edges, size, mask)
    let mut best: (usize, usize, u32) = (0, 1, 1);
    for mask in 1u32..(1 << n) {
        let Some(_) = two_color(n, &adj_mask, mask) else {
            continue;
        };
        let mut edges = 0usize;
        for v in 0..n {
            if mask >> v & 1 == 1 {
                edges += (adj_mask[v] & mask).count_ones() as usize;
            }
        }
        edges /= 2;
        let size = mask.count_ones() as usize;
        if (edges as u128) * best.1 as u128 > (best.0 as u128) * size as u128 {
            best = (edges, size, mask);
        }
    }
    let coloring = two_color(n, &adj_mask, best.2).expect("best subset is bipartite");
    split_by_color(n, best.2, &coloring)
}

fn two_color(n: usize, adj_mask: &[u32], mask: u32) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if mask >> start & 1 == 0 || color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let neighbors = adj_mask[u] & mask;
            for v in 0..n {
                if neighbors >> v & 1 == 0 {
                    continue;
                }
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

fn split_by_color(n: usize, mask: u32, color: &[u8]) -> (VertexSet, VertexSet) {
    let left: VertexSet = (0..n)
        .filter(|&v| mask >> v & 1 == 1 && color[v] == 0)
        .collect();
    let right: VertexSet = (0..n)
        .filter(|&v| mask >> v & 1 == 1 && color[v] == 1)
        .collect();
    (left, right)
}

/// Seeded hill-climb: start from a random bipartition of a random subset,
/// then greedily apply the best single-vertex move (add, drop, or swap
/// sides) while the exact average degree improves.
fn best_bipartite_local_search(g: &Graph, params: &PipelineParams) -> (VertexSet, VertexSet) {
    let n = g.vertex_count();
    #[derive(Clone)]
    struct State {
        side: Vec<u8>, // 0 = out, 1 = left, 2 = right
    }
    impl State {
        fn density(&self, g: &Graph) -> (usize, usize) {
            let mut vertices = 0;
            let mut edges = 0;
            for v in g.vertices() {
                if self.side[v] != 0 {
                    vertices += 1;
                    for &w in g.neighbors(v) {
                        if v < w && self.side[w] != 0 && self.side[w] != self.side[v] {
                            edges += 1;
                        }
                    }
                }
            }
            (edges, vertices.max(1))
        }
        fn placeable(&self, g: &Graph, v: usize, side: u8) -> bool {
            g.neighbors(v).iter().all(|&w| self.side[w] != side)
        }
    }
    let better = |a: (usize, usize), b: (usize, usize)| -> bool {
        (a.0 as u128) * b.1 as u128 > (b.0 as u128) * a.1 as u128
    };
    let mut best_state: Option<(State, (usize, usize))> = None;
    let restarts = 8.max(params.max_retries / 8);
    for restart in 0..restarts {
        let mut rng = params.rng_for_retry(restart);
        let mut state = State {
            side: (0..n)
                .map(|_| match rng.next_below(3) {
                    0 => 0u8,
                    1 => 1,
                    _ => 2,
                })
                .collect(),
        };
        // Repair: clear conflicts in ascending order.
        for v in 0..n {
            if state.side[v] != 0 {
                let side = state.side[v];
                let conflict = g
                    .neighbors(v)
                    .iter()
                    .any(|&w| w < v && state.side[w] == side);
                if conflict {
                    state.side[v] = 0;
                }
            }
        }
        let mut score = state.density(g);
        loop {
            let mut improved = false;
            for v in 0..n {
                let original = state.side[v];
                for target in [0u8, 1, 2] {
                    if target == original {
                        continue;
                    }
                    if target != 0 && !state.placeable(g, v, target) {
                        continue;
                    }
                    state.side[v] = target;
                    let candidate = state.density(g);
                    if better(candidate, score) {
                        score = candidate;
                        improved = true;
                    } else {
                        state.side[v] = original;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        match &best_state {
            Some((_, best_score)) if !better(score, *best_score) => {}
            _ => best_state = Some((state, score)),
        }
    }
    let (state, _) = best_state.expect("at least one restart");
    let left: VertexSet = (0..n).filter(|&v| state.side[v] == 1).collect();
    let right: VertexSet = (0..n).filter(|&v| state.side[v] == 2).collect();
    if left.is_empty() && right.is_empty() {
        // Fall back to a single vertex.
        (VertexSet::from_iter([0]), VertexSet::new())
    } else {
        (left, right)
    }
}

/// Composition: extract a girth-5 induced subgraph, then its best induced
/// bipartite subgraph. The result is C4-subgraph-free because it sits
/// inside a graph of girth at least five; that is still re-verified.
pub fn extract_c4free_bipartite(
    g: &Graph,
    s: usize,
    k: usize,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "extract_c4free_bipartite";
    // Precondition: biclique-free, checked under budget.
    match find_biclique(g, s, s, &params.budget()) {
        SearchOutcome::Found(_) => {
            return Err(PipelineError::Precondition(format!(
                "input contains K_{{{s},{s}}}"
            ))
            .at_stage(stage))
        }
        SearchOutcome::TimedOut => {
            return Err(PipelineError::Timeout(format!("{stage}: biclique precheck")))
        }
        SearchOutcome::Exhausted => {}
    }
    let delta_cap = rat_usize(g.max_degree().max(1));
    let girth_cert =
        extract_girth5(g, s, &delta_cap, params).map_err(|e| e.at_stage(stage))?;
    let CertPayload::Girth5Subgraph { vertices, .. } = &girth_cert.payload else {
        return Err(PipelineError::VerificationBug(stage.into()));
    };
    if vertices.is_empty() {
        return Err(PipelineError::ExtractionFailed(format!(
            "{stage}: girth-5 stage deleted every vertex"
        )));
    }
    let (survivor, survivor_map) = g.induced(&vertices.clone());
    let bip_cert =
        triangle_free_to_bipartite(&survivor, params).map_err(|e| e.at_stage(stage))?;
    let CertPayload::InducedBipartite { left, right, .. } = &bip_cert.payload else {
        return Err(PipelineError::VerificationBug(stage.into()));
    };
    // Lift back to host coordinates.
    let left: VertexSet = left.iter().map(|v| survivor_map[v]).collect();
    let right: VertexSet = right.iter().map(|v| survivor_map[v]).collect();
    let all: VertexSet = left.iter().chain(right.iter()).collect();
    let average_degree = g.average_degree_of(&all).expect("nonempty selection");
    let target = rat(k as i64, 1);
    let mut checks = girth_cert.checks.clone();
    checks.extend(bip_cert.checks.clone());
    checks.push(Check::ge(
        "d(bipartite) >= k",
        &average_degree,
        &target,
    ));
    let degree_ok = checks.last().map(|c| c.holds).unwrap_or(false);
    let cert = Certificate::new(
        CertPayload::C4FreeBipartite {
            host: g.clone(),
            left,
            right,
            average_degree,
        },
        stage,
        params,
    )
    .with_checks(checks)
    .sealed(stage)?;
    if params.mode == ParamMode::Desk || degree_ok {
        Ok(cert)
    } else {
        Err(PipelineError::SearchIncomplete(format!(
            "{stage}: certificate verified but average degree {} below target {}",
            rat_str(&cert_average(&cert)),
            rat_str(&target)
        )))
    }
}

fn cert_average(cert: &Certificate) -> Rat {
    match &cert.payload {
        CertPayload::C4FreeBipartite { average_degree, .. }
        | CertPayload::InducedBipartite { average_degree, .. }
        | CertPayload::Girth5Subgraph { average_degree, .. } => average_degree.clone(),
        _ => rat(0, 1),
    }
}
