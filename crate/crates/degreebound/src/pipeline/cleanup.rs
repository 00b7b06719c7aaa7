//! Unbalanced bipartite cleanup: prune extreme degrees, make the large side
//! independent, orient the small side, subsample it, and keep the large-side
//! vertices whose sampled neighborhood is exactly their preselected
//! independent set of size `r`.

use super::{CertPayload, Certificate, Check, ParamMode, PipelineError, PipelineParams};
use crate::exact::{rat, rat_str, rat_to_f64, rat_usize, Rat};
use crate::graph::{Graph, VertexSet};
use rayon::prelude::*;

pub fn unbalanced_cleanup(
    g0: &Graph,
    side_a: &VertexSet,
    side_b: &VertexSet,
    d: &Rat,
    r: usize,
    s: usize,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "unbalanced_cleanup";
    let n = g0.vertex_count();
    if side_a.len() + side_b.len() != n || !side_a.is_disjoint(side_b) {
        return Err(PipelineError::Precondition(
            "A and B must partition the vertex set".into(),
        ));
    }
    if !d.numer().sign().eq(&num_bigint::Sign::Plus) {
        return Err(PipelineError::Precondition("d must be positive".into()));
    }
    let paper = params.mode == ParamMode::Paper;
    let delta = params.delta();
    let mut hypothesis_checks = Vec::new();
    if paper {
        let cross = rat_usize(g0.edges_between(side_a, side_b));
        hypothesis_checks.push(Check::ge_pow(
            "e(A,B) >= 3 sqrt(d) |A|",
            &cross,
            d,
            &rat(1, 2),
            &(rat(3, 1) * rat_usize(side_a.len())),
        ));
        hypothesis_checks.push(Check::ge_exp2_pow(
            "|A| >= 2^(d^delta) |B|",
            &rat_usize(side_a.len()),
            d,
            &delta,
            0,
            &rat_usize(side_b.len()),
        ));
        hypothesis_checks.push(Check::le_pow(
            "r <= d^(delta/4)",
            &rat_usize(r),
            d,
            &(delta.clone() / rat(4, 1)),
            &rat(1, 1),
        ));
        let scale = rat(4, 1) * params.c.clone() * rat_usize(s.pow(4));
        hypothesis_checks.push(Check::le_pow(
            "r <= d^(epsilon/2) / (4 c s^4)",
            &(rat_usize(r) * scale),
            d,
            &(params.epsilon.clone() / rat(2, 1)),
            &rat(1, 1),
        ));
        if let Some(failed) = hypothesis_checks.iter().find(|c| !c.holds) {
            return Err(PipelineError::Precondition(format!(
                "{stage}: hypothesis '{}' fails ({} vs {})",
                failed.name, failed.lhs, failed.rhs
            )));
        }
    }

    // Degree cleaning within A: drop vertices too heavy (>= 10d) or too
    // light (<= sqrt(d)) toward B.
    let ten_d = rat(10, 1) * d.clone();
    let degree_to_b = |v: usize| -> usize {
        g0.neighbors(v).iter().filter(|&&w| side_b.contains(w)).count()
    };
    let mut cleaning_skipped = false;
    let mut cleaned_a: Vec<usize> = side_a
        .iter()
        .filter(|&a| {
            let db = rat_usize(degree_to_b(a));
            let too_heavy = db >= ten_d;
            // d_B(a) <= sqrt(d) <=> d_B(a)^2 <= d
            let too_light = db.clone() * db <= *d;
            !too_heavy && !too_light
        })
        .collect();
    if cleaned_a.is_empty() {
        if paper {
            return Err(PipelineError::ExtractionFailed(format!(
                "{stage}: degree cleaning removed every vertex of A"
            )));
        }
        // Desk scale: the magnitude cuts can empty A outright; keep the
        // vertices with at least one neighbor toward B instead, and say so.
        cleaning_skipped = true;
        cleaned_a = side_a.iter().filter(|&a| degree_to_b(a) >= 1).collect();
        if cleaned_a.is_empty() {
            return Err(PipelineError::ExtractionFailed(format!(
                "{stage}: no vertex of A has a neighbor in B"
            )));
        }
    }

    // Independent subset of the cleaned side via degeneracy coloring:
    // largest color class, lowest color index on ties.
    let a1_set: VertexSet = cleaned_a.iter().copied().collect();
    let (a1_graph, a1_map) = g0.induced(&a1_set);
    let coloring = crate::chi::color_by_degeneracy(&a1_graph);
    let mut class_sizes = vec![0usize; coloring.palette_size];
    for &c in &coloring.color {
        class_sizes[c] += 1;
    }
    let best_class = (0..coloring.palette_size)
        .max_by_key(|&c| (class_sizes[c], std::cmp::Reverse(c)))
        .expect("nonempty coloring");
    let a0: Vec<usize> = a1_graph
        .vertices()
        .filter(|&v| coloring.color[v] == best_class)
        .map(|v| a1_map[v])
        .collect();

    // Orientation of G0[B] with small out-degrees from its own degeneracy.
    let (b_graph, b_map) = g0.induced(side_b);
    let (_, b_degeneracy) = b_graph.degeneracy();
    let orientation = b_graph
        .degenerate_orientation(b_degeneracy)
        .expect("own degeneracy always suffices");
    let mut out_neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(tail, head) in orientation.arcs() {
        out_neighbors[b_map[tail]].push(b_map[head]);
    }
    let outdeg_check = Check::le(
        "orientation out-degree <= d",
        &rat_usize(
            b_graph
                .vertices()
                .map(|v| orientation.out_degree(v))
                .max()
                .unwrap_or(0),
        ),
        d,
    );

    // Preselected independent set of size r inside each N(a) ∩ B; fixed
    // across retries.
    let mut target_sets: Vec<(usize, Vec<usize>)> = Vec::with_capacity(a0.len());
    for &a in &a0 {
        let neighborhood: VertexSet = g0
            .neighbors(a)
            .iter()
            .copied()
            .filter(|w| side_b.contains(*w))
            .collect();
        let (na_graph, na_map) = g0.induced(&neighborhood);
        let independent = na_graph.greedy_independent_set();
        if independent.len() < r {
            return Err(PipelineError::NeighborhoodTooDense(format!(
                "{stage}: greedy independent set of size {} < r = {r} inside N({a})",
                independent.len()
            )));
        }
        let chosen: Vec<usize> = independent.iter().take(r).map(|v| na_map[v]).collect();
        target_sets.push((a, chosen));
    }

    let probability = if paper {
        (1.0 / rat_to_f64(d).powi(2)).clamp(0.0, 1.0)
    } else {
        params.desk.cleanup_probability.unwrap_or(0.5)
    };
    let ratio_check = |a_len: usize, b_len: usize| -> Check {
        if paper {
            Check::ge_exp2_pow(
                "|A'| >= 2^(d^(delta/2)) |B'|",
                &rat_usize(a_len),
                d,
                &(delta.clone() / rat(2, 1)),
                0,
                &rat_usize(b_len),
            )
        } else {
            let ratio = params
                .desk
                .cleanup_ratio
                .clone()
                .unwrap_or_else(|| rat(1, 1));
            Check::ge(
                "|A'| >= ratio |B'|",
                &rat_usize(a_len),
                &(ratio * rat_usize(b_len)),
            )
        }
    };

    let b_members: Vec<usize> = side_b.iter().collect();
    let attempt = |retry: u32| -> Option<(VertexSet, VertexSet, Check)> {
        let mut rng = params.rng_for_retry(retry);
        let mut sampled = vec![false; n];
        for &b in &b_members {
            if rng.next_bool(probability) {
                sampled[b] = true;
            }
        }
        // Keep sampled vertices with no sampled out-neighbor; the survivor
        // is independent.
        let mut in_b_prime = vec![false; n];
        for &b in &b_members {
            if sampled[b] && out_neighbors[b].iter().all(|&w| !sampled[w]) {
                in_b_prime[b] = true;
            }
        }
        let mut a_prime = VertexSet::new();
        for (a, targets) in &target_sets {
            let sampled_neighborhood: Vec<usize> = g0
                .neighbors(*a)
                .iter()
                .copied()
                .filter(|w| side_b.contains(*w) && sampled[*w])
                .collect();
            let matches = sampled_neighborhood.len() == targets.len()
                && targets.iter().all(|t| sampled_neighborhood.contains(t));
            if matches && targets.iter().all(|&t| in_b_prime[t]) {
                a_prime.insert(*a);
            }
        }
        let b_prime: VertexSet = b_members.iter().copied().filter(|&b| in_b_prime[b]).collect();
        if a_prime.is_empty() {
            return None;
        }
        let check = ratio_check(a_prime.len(), b_prime.len());
        if check.holds {
            Some((a_prime, b_prime, check))
        } else {
            None
        }
    };

    let retries = params.max_retries.max(1);
    let winner = (0..retries)
        .into_par_iter()
        .find_first(|&retry| attempt(retry).is_some())
        .and_then(attempt);

    match winner {
        Some((a_prime, b_prime, check)) => {
            let mut checks = hypothesis_checks;
            if cleaning_skipped {
                checks.push(Check::bool(
                    "degree cleaning relaxed (cuts would empty A at desk scale)",
                    true,
                ));
            }
            checks.push(outdeg_check);
            checks.push(check);
            checks.push(Check::bool(
                "A' independent",
                a_prime.is_independent_in(g0),
            ));
            checks.push(Check::bool(
                "B' independent",
                b_prime.is_independent_in(g0),
            ));
            let degree_exact = a_prime.iter().all(|a| {
                g0.neighbors(a)
                    .iter()
                    .filter(|&&b| b_prime.contains(b))
                    .count()
                    == r
            });
            checks.push(Check::bool("every a in A' has exactly r neighbors in B'", degree_exact));
            Certificate::new(
                CertPayload::UnbalancedRRegular {
                    host: g0.clone(),
                    side_a: side_a.clone(),
                    side_b: side_b.clone(),
                    a_prime,
                    b_prime,
                    r,
                },
                stage,
                params,
            )
            .with_checks(checks)
            .sealed(stage)
        }
        None => {
            // Diagnose with the best ratio over a few deterministic retries.
            let mut best = (0usize, 0usize);
            for retry in 0..retries.min(16) {
                let mut rng = params.rng_for_retry(retry);
                let mut sampled = vec![false; n];
                for &b in &b_members {
                    if rng.next_bool(probability) {
                        sampled[b] = true;
                    }
                }
                let survivors = b_members
                    .iter()
                    .filter(|&&b| sampled[b] && out_neighbors[b].iter().all(|&w| !sampled[w]))
                    .count();
                let matched = target_sets
                    .iter()
                    .filter(|(a, targets)| {
                        let sampled_neighborhood: Vec<usize> = g0
                            .neighbors(*a)
                            .iter()
                            .copied()
                            .filter(|w| side_b.contains(*w) && sampled[*w])
                            .collect();
                        sampled_neighborhood.len() == targets.len()
                            && targets.iter().all(|t| sampled_neighborhood.contains(t))
                    })
                    .count();
                if matched > best.0 {
                    best = (matched, survivors);
                }
            }
            Err(PipelineError::RetriesExhausted(format!(
                "{stage}: best attempt matched {} of {} candidates (|B0 survivors| ~ {}) over {} retries; d = {}",
                best.0,
                target_sets.len(),
                best.1,
                retries,
                rat_str(d)
            )))
        }
    }
}
