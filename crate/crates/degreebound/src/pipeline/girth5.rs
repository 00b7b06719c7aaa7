//! Alteration step: sample vertices, delete everything on a short cycle.

use super::{CertPayload, Certificate, Check, ParamMode, PipelineError, PipelineParams};
use crate::exact::{rat, rat_str, rat_to_f64, Rat};
use num_traits::One;
use crate::graph::{Graph, VertexSet};
use rayon::prelude::*;

/// Vertices of `g` restricted to `sample` that lie on a 3- or 4-cycle of
/// the induced subgraph.
fn short_cycle_vertices(g: &Graph, sample: &[bool]) -> Vec<bool> {
    let n = g.vertex_count();
    let mut on_cycle = vec![false; n];
    let masks = {
        let mut masks = vec![crate::graph::Bitset::new(n); n];
        for u in 0..n {
            if !sample[u] {
                continue;
            }
            for &v in g.neighbors(u) {
                if sample[v] {
                    masks[u].set(v);
                }
            }
        }
        masks
    };
    for u in 0..n {
        if !sample[u] {
            continue;
        }
        for v in u + 1..n {
            if !sample[v] {
                continue;
            }
            let common = masks[u].intersection(&masks[v]);
            let shared = common.count();
            if g.has_edge(u, v) && shared >= 1 {
                // Triangle through u, v.
                on_cycle[u] = true;
                on_cycle[v] = true;
                for w in common.iter_ones() {
                    on_cycle[w] = true;
                }
            }
            if !g.has_edge(u, v) && shared >= 2 {
                // Four-cycle u-w1-v-w2.
                on_cycle[u] = true;
                on_cycle[v] = true;
                for w in common.iter_ones() {
                    on_cycle[w] = true;
                }
            }
            // Adjacent pair with >= 2 common neighbors also spans a C4, but
            // the triangles above already mark all involved vertices.
        }
    }
    on_cycle
}

/// One sampling round: keep each vertex with probability `p`, then delete
/// every kept vertex lying on a 3- or 4-cycle of the kept subgraph. The
/// survivor has girth at least 5 by construction.
fn alteration_round(g: &Graph, p: f64, rng: &mut crate::rng::SplitMix64) -> VertexSet {
    let n = g.vertex_count();
    let sample: Vec<bool> = (0..n).map(|_| rng.next_bool(p)).collect();
    let on_cycle = short_cycle_vertices(g, &sample);
    (0..n).filter(|&v| sample[v] && !on_cycle[v]).collect()
}

/// Extracts an induced subgraph of girth at least five whose average degree
/// meets the target, by repeated sampling and short-cycle deletion.
///
/// `delta_cap` must bound the maximum degree of `g`. Paper mode samples at
/// `p = delta_cap^(epsilon/5 - 1)` and targets average degree
/// `delta_cap^(epsilon/10) / 2`; desk mode accepts overrides for both.
pub fn extract_girth5(
    g: &Graph,
    s: usize,
    delta_cap: &Rat,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "extract_girth5";
    let n = g.vertex_count();
    if n == 0 {
        return Err(PipelineError::Precondition("empty graph".into()));
    }
    let max_degree = crate::exact::rat_usize(g.max_degree());
    if &max_degree > delta_cap {
        return Err(PipelineError::Precondition(format!(
            "delta_cap {} below the maximum degree {}",
            rat_str(delta_cap),
            rat_str(&max_degree)
        )));
    }
    let paper = params.mode == ParamMode::Paper;
    let mut hypothesis = Vec::new();
    if paper {
        // delta_cap >= P(s) with P(x) = x^(20/eps) + (116 c)^(10/eps):
        // both power terms bounded dyadically from above for a sound check.
        let term1 = crate::exact::bound_pow(
            &crate::exact::rat_usize(s.max(1)),
            &(rat(20, 1) / params.epsilon.clone()),
            10,
        )
        .1;
        let term2 = crate::exact::bound_pow(
            &(rat(116, 1) * params.c.clone()),
            &(rat(10, 1) / params.epsilon.clone()),
            10,
        )
        .1;
        hypothesis.push(Check::ge(
            "delta >= s^(20/eps) + (116c)^(10/eps) [outer bound]",
            delta_cap,
            &(term1 + term2),
        ));
        if let Some(failed) = hypothesis.iter().find(|c| !c.holds) {
            return Err(PipelineError::Precondition(format!(
                "{stage}: hypothesis '{}' fails ({} vs {})",
                failed.name, failed.lhs, failed.rhs
            )));
        }
    }
    let exponent = params.epsilon.clone() / rat(5, 1) - Rat::one();
    let paper_p = rat_to_f64(delta_cap).powf(rat_to_f64(&exponent)).clamp(0.0, 1.0);
    let p = if paper {
        paper_p
    } else {
        params.desk.girth5_probability.unwrap_or(1.0)
    };
    let target_exp = params.epsilon.clone() / rat(10, 1);
    let desk_target = params
        .desk
        .girth5_target
        .clone()
        .unwrap_or_else(|| rat(0, 1));

    let target_met = |avg: &Rat| -> Check {
        if paper {
            Check::ge_pow(
                "d(G') >= (1/2) delta^(epsilon/10)",
                avg,
                delta_cap,
                &target_exp,
                &rat(1, 2),
            )
        } else {
            Check::ge("d(G') >= desk girth-5 target", avg, &desk_target)
        }
    };

    let retries = params.max_retries.max(1);
    // Low retry indexes win; evaluate in order-preserving parallel chunks.
    let attempt = |retry: u32| -> Option<(VertexSet, Rat, Check)> {
        let mut rng = params.rng_for_retry(retry);
        let kept = alteration_round(g, p, &mut rng);
        // An empty survivor counts only against a non-positive desk target.
        let avg = if kept.is_empty() {
            rat(0, 1)
        } else {
            g.average_degree_of(&kept).expect("nonempty survivor")
        };
        let check = target_met(&avg);
        if check.holds {
            Some((kept, avg, check))
        } else {
            None
        }
    };
    let winner = (0..retries)
        .into_par_iter()
        .find_first(|&retry| attempt(retry).is_some())
        .and_then(attempt);

    match winner {
        Some((kept, avg, check)) => {
            let girth_ok = if kept.is_empty() {
                true
            } else {
                g.induced(&kept).0.girth().map_or(true, |girth| girth >= 5)
            };
            let mut checks = hypothesis;
            checks.push(check);
            checks.push(Check::bool("girth(G') >= 5", girth_ok));
            Certificate::new(
                CertPayload::Girth5Subgraph {
                    host: g.clone(),
                    vertices: kept,
                    average_degree: avg,
                },
                stage,
                params,
            )
            .with_checks(checks)
            .sealed(stage)
        }
        None => {
            // Report the best achieved average degree for diagnostics.
            let mut best = rat(0, 1);
            for retry in 0..retries.min(16) {
                let mut rng = params.rng_for_retry(retry);
                let kept = alteration_round(g, p, &mut rng);
                if !kept.is_empty() {
                    let avg = g.average_degree_of(&kept).expect("nonempty survivor");
                    if avg > best {
                        best = avg;
                    }
                }
            }
            Err(PipelineError::RetriesExhausted(format!(
                "{stage}: best surviving average degree {} after {} retries (p={p:.6})",
                rat_str(&best),
                retries
            )))
        }
    }
}
