//! Orchestration: the degree-boundedness dichotomy, the bipartite-reduction
//! certificate, and the full induced-subdivision pipeline.

use super::{
    extract_c4free_bipartite, find_clique_subdivision, one_subdivision_extract,
    proper_to_induced_h, regular_or_unbalanced, unbalanced_cleanup, CertPayload, Certificate,
    Check, DichotomyOutcome, ParamMode, PipelineError, PipelineParams, Polynomial,
};
use crate::detect::{
    find_biclique, find_induced_subdivision, SearchOutcome, SubdivisionMode, SubdivisionWitness,
};
use crate::exact::{bound_pow, cmp_pow, floor_pow, rat, rat_str, rat_usize, Rat};
use crate::graph::{max_average_degree, Graph, VertexSet};
use num_traits::{One, Signed, ToPrimitive};
use std::cmp::Ordering;

/// `floor(d^epsilon / s^4)`, exact.
fn floor_pow_over(d: &Rat, epsilon: &Rat, s: usize) -> usize {
    let t = floor_pow(d, epsilon); // floor(d^epsilon)
    let divisor = num_bigint::BigInt::from(s.pow(4));
    (t / divisor).to_usize().unwrap_or(usize::MAX)
}

/// Computes the maximum-average-degree subgraph, runs the regularization
/// dichotomy on it, and routes the outcome: the almost-regular branch
/// through the girth-5 + bipartization composition, the unbalanced branch
/// through the cleanup. All coordinates are lifted back to the input graph.
pub fn degree_bounded_dichotomy(
    g: &Graph,
    s: usize,
    k: usize,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "degree_bounded_dichotomy";
    let (d, dense_set) = max_average_degree(g)?;
    let f1 = params.f1_check(&d);
    if params.mode == ParamMode::Paper && !f1.holds {
        return Err(PipelineError::Precondition(format!(
            "{stage}: {} fails ({} vs {})",
            f1.name, f1.lhs, f1.rhs
        )));
    }
    let (g0, map0) = g.induced(&dense_set);
    let outcome = regular_or_unbalanced(&g0, &d, params).map_err(|e| e.at_stage(stage))?;
    match outcome {
        DichotomyOutcome::AlmostRegular {
            vertices, checks, ..
        } => {
            let (g_star, map1) = g0.induced(&vertices);
            let inner = extract_c4free_bipartite(&g_star, s, k, params)
                .map_err(|e| e.at_stage(stage))?;
            let CertPayload::C4FreeBipartite {
                left,
                right,
                average_degree,
                ..
            } = &inner.payload
            else {
                return Err(PipelineError::VerificationBug(stage.into()));
            };
            let lift = |set: &VertexSet| -> VertexSet {
                set.iter().map(|v| map0[map1[v]]).collect()
            };
            let mut checks = checks;
            checks.push(f1);
            checks.extend(inner.checks.clone());
            Certificate::new(
                CertPayload::C4FreeBipartite {
                    host: g.clone(),
                    left: lift(left),
                    right: lift(right),
                    average_degree: average_degree.clone(),
                },
                stage,
                params,
            )
            .with_checks(checks)
            .sealed(stage)
        }
        DichotomyOutcome::Unbalanced {
            side_a,
            side_b,
            checks,
            ..
        } => {
            let r = match params.mode {
                ParamMode::Paper => floor_pow_over(&d, &params.epsilon, s),
                ParamMode::Desk => params
                    .desk
                    .r_override
                    .unwrap_or_else(|| floor_pow_over(&d, &params.epsilon, s).max(1)),
            };
            if r == 0 {
                return Err(PipelineError::Precondition(format!(
                    "{stage}: r = floor(d^epsilon / s^4) vanished (d = {})",
                    rat_str(&d)
                )));
            }
            let inner = unbalanced_cleanup(&g0, &side_a, &side_b, &d, r, s, params)
                .map_err(|e| e.at_stage(stage))?;
            let CertPayload::UnbalancedRRegular {
                a_prime, b_prime, ..
            } = &inner.payload
            else {
                return Err(PipelineError::VerificationBug(stage.into()));
            };
            let lift = |set: &VertexSet| -> VertexSet { set.iter().map(|v| map0[v]).collect() };
            let mut checks = checks;
            checks.push(f1);
            checks.extend(inner.checks.clone());
            Certificate::new(
                CertPayload::UnbalancedRRegular {
                    host: g.clone(),
                    side_a: lift(&side_a),
                    side_b: lift(&side_b),
                    a_prime: lift(a_prime),
                    b_prime: lift(b_prime),
                    r,
                },
                stage,
                params,
            )
            .with_checks(checks)
            .sealed(stage)
        }
    }
}

/// Either the average degree is at most `(2 s^4 p(s))^(1/epsilon) + P`,
/// or the graph yields a bipartite induced subgraph with average degree
/// exceeding `p` at the relevant argument — the hereditary contradiction
/// witness.
///
/// The additive constant `P` stands in for the dichotomy threshold
/// polynomial; it is taken from the desk degree-bound override (default 0).
pub fn mccarty_certificate(
    g: &Graph,
    s: usize,
    p: &Polynomial,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "mccarty_certificate";
    let average = g.average_degree()?;
    let p_at_s = p.eval(&rat_usize(s));
    let p_at_2 = p.eval(&rat(2, 1));
    let additive = params
        .desk
        .degree_bound
        .clone()
        .unwrap_or_else(|| rat(0, 1));
    // avg <= (2 s^4 p(s))^(1/epsilon) + additive, decided exactly.
    let base = rat(2, 1) * rat_usize(s.pow(4)) * p_at_s.clone();
    let inv_eps = Rat::one() / params.epsilon.clone();
    let shifted = average.clone() - additive.clone();
    let bound_holds = !shifted.is_positive()
        || (base.is_positive() && cmp_pow(&base, &inv_eps, &shifted) != Ordering::Less);
    let bound_check = Check {
        name: "d(G) <= (2 s^4 p(s))^(1/epsilon) + P".into(),
        holds: bound_holds,
        lhs: rat_str(&average),
        rhs: format!(
            "({})^({}) + {}",
            rat_str(&base),
            rat_str(&inv_eps),
            rat_str(&additive)
        ),
    };
    if bound_holds {
        // A certified rational upper bound for the payload.
        let rational_bound = if base.is_positive() {
            bound_pow(&base, &inv_eps, 20).1 + additive
        } else {
            additive
        };
        return Certificate::new(
            CertPayload::DegreeBoundHolds {
                average_degree: average.clone(),
                bound: rational_bound.max(average),
            },
            stage,
            params,
        )
        .with_checks(vec![bound_check])
        .sealed(stage);
    }
    // A bipartite host above the polynomial is its own witness.
    if let Some((left, right)) = g.bipartition() {
        if average > p_at_s && !left.is_empty() {
            let beats = Check {
                name: format!("bipartite host average degree > p({s})"),
                holds: true,
                lhs: rat_str(&average),
                rhs: rat_str(&p_at_s),
            };
            return Certificate::new(
                CertPayload::InducedBipartite {
                    host: g.clone(),
                    left,
                    right,
                    average_degree: average,
                },
                stage,
                params,
            )
            .with_checks(vec![bound_check, beats])
            .sealed(stage);
        }
    }
    // Contradiction branch: the dichotomy must yield a bipartite witness
    // whose average degree beats the polynomial.
    let k_target = (crate::exact::floor_rat(&p_at_2).to_usize().unwrap_or(0) + 1).max(params.k);
    let inner =
        degree_bounded_dichotomy(g, s, k_target, params).map_err(|e| e.at_stage(stage))?;
    let (left, right, claim_s, threshold) = match &inner.payload {
        CertPayload::C4FreeBipartite { left, right, .. } => {
            (left.clone(), right.clone(), 2usize, p_at_2.clone())
        }
        CertPayload::UnbalancedRRegular {
            a_prime, b_prime, ..
        } => (a_prime.clone(), b_prime.clone(), s, p_at_s.clone()),
        _ => return Err(PipelineError::VerificationBug(stage.into())),
    };
    let all: VertexSet = left.iter().chain(right.iter()).collect();
    let witness_average = g.average_degree_of(&all)?;
    let beats = Check {
        name: format!("bipartite witness average degree > p({claim_s})"),
        holds: witness_average > threshold,
        lhs: rat_str(&witness_average),
        rhs: rat_str(&threshold),
    };
    if !beats.holds {
        return Err(PipelineError::Inconclusive(format!(
            "{stage}: witness average degree {} does not exceed p({claim_s}) = {}",
            rat_str(&witness_average),
            rat_str(&threshold)
        )));
    }
    let mut checks = vec![bound_check, beats];
    checks.extend(inner.checks.clone());
    Certificate::new(
        CertPayload::InducedBipartite {
            host: g.clone(),
            left,
            right,
            average_degree: witness_average,
        },
        stage,
        params,
    )
    .with_checks(checks)
    .sealed(stage)
}

/// Lifts a complete-graph subdivision found in the recovered pattern `F`
/// through the induced 1-subdivision witness, producing an induced proper
/// subdivision of the complete graph in the 1-subdivision's host.
fn lift_through_one_subdivision(
    one_sub: &SubdivisionWitness,
    in_pattern: &SubdivisionWitness,
) -> Result<SubdivisionWitness, PipelineError> {
    // Middle vertex of the 2-edge host path for a pattern edge of F.
    let middle_of = |edge: (usize, usize)| -> Result<usize, PipelineError> {
        one_sub
            .paths
            .iter()
            .find(|&&(e, _)| e == edge)
            .map(|(_, path)| path[1])
            .ok_or_else(|| PipelineError::VerificationBug("lift: missing pattern edge".into()))
    };
    let branch: Vec<usize> = in_pattern
        .branch
        .iter()
        .map(|&f_vertex| one_sub.branch[f_vertex])
        .collect();
    let mut paths = Vec::with_capacity(in_pattern.paths.len());
    for ((x, y), f_path) in &in_pattern.paths {
        let mut route = Vec::with_capacity(2 * f_path.len() - 1);
        route.push(one_sub.branch[f_path[0]]);
        for window in f_path.windows(2) {
            let edge = (window[0].min(window[1]), window[0].max(window[1]));
            route.push(middle_of(edge)?);
            route.push(one_sub.branch[window[1]]);
        }
        paths.push(((*x, *y), route));
    }
    let mut lifted = SubdivisionWitness {
        host: one_sub.host.clone(),
        pattern: in_pattern.pattern.clone(),
        branch,
        paths,
        proper: true,
        one_subdivision: false,
        induced: false,
    };
    lifted.one_subdivision = lifted.paths.iter().all(|(_, p)| p.len() == 3);
    lifted.induced = lifted.check_induced();
    if !lifted.proper || !lifted.induced || !lifted.verify() {
        return Err(PipelineError::VerificationBug(
            "lift through 1-subdivision".into(),
        ));
    }
    Ok(lifted)
}

/// Relabels a witness living in an induced subgraph into host coordinates.
fn relabel_witness(witness: &SubdivisionWitness, host: &Graph, map: &[usize]) -> SubdivisionWitness {
    let mut out = SubdivisionWitness {
        host: host.clone(),
        pattern: witness.pattern.clone(),
        branch: witness.branch.iter().map(|&v| map[v]).collect(),
        paths: witness
            .paths
            .iter()
            .map(|((x, y), path)| ((*x, *y), path.iter().map(|&v| map[v]).collect()))
            .collect(),
        proper: witness.proper,
        one_subdivision: witness.one_subdivision,
        induced: false,
    };
    out.induced = out.check_induced();
    out
}

/// End-to-end pipeline: biclique scan, degree-bound short-circuit, the
/// dichotomy, and then branch-specific extraction of an induced subdivision
/// of `h`, every step verified.
pub fn kuhn_osthus_pipeline(
    g: &Graph,
    h: &Graph,
    s: usize,
    params: &PipelineParams,
) -> Result<Certificate, PipelineError> {
    params.validate()?;
    let stage = "kuhn_osthus_pipeline";
    if g.vertex_count() == 0 {
        return Err(PipelineError::Precondition("empty graph".into()));
    }
    // Immediate biclique.
    match find_biclique(g, s, s, &params.budget()) {
        SearchOutcome::Found(witness) => {
            return Certificate::new(CertPayload::Biclique(witness), stage, params)
                .with_checks(vec![Check::bool("host contains K_{s,s}", true)])
                .sealed(stage);
        }
        SearchOutcome::TimedOut => {
            return Err(PipelineError::Timeout(format!("{stage}: biclique scan")))
        }
        SearchOutcome::Exhausted => {}
    }
    // Degree-bound short-circuit: paper mode uses the computable part of
    // the bound (sound: the true bound is at least this large); desk mode
    // uses the override when provided.
    let average = g.average_degree()?;
    let order_h = h.vertex_count().max(1);
    let degree_bound_holds = match params.mode {
        ParamMode::Paper => {
            let base = rat_usize(2 * order_h * s);
            let exponent = rat(5, 1) / params.epsilon.clone();
            let check = cmp_pow(&base, &exponent, &average) != Ordering::Less;
            check.then(|| bound_pow(&base, &exponent, 20).1)
        }
        ParamMode::Desk => params
            .desk
            .degree_bound
            .clone()
            .filter(|bound| &average <= bound),
    };
    if let Some(bound) = degree_bound_holds {
        return Certificate::new(
            CertPayload::DegreeBoundHolds {
                average_degree: average.clone(),
                bound: bound.max(average),
            },
            stage,
            params,
        )
        .with_checks(vec![Check::bool("average degree within bound", true)])
        .sealed(stage);
    }

    let dichotomy =
        degree_bounded_dichotomy(g, s, params.k, params).map_err(|e| e.at_stage(stage))?;
    match &dichotomy.payload {
        CertPayload::C4FreeBipartite { left, right, .. } => {
            // Small, sparse branch: search it directly.
            let all: VertexSet = left.iter().chain(right.iter()).collect();
            let (sub, map) = g.induced(&all);
            match find_induced_subdivision(&sub, h, SubdivisionMode::Any, &params.budget()) {
                SearchOutcome::Found(witness) => {
                    let lifted = relabel_witness(&witness, g, &map);
                    if !lifted.induced || !lifted.verify() {
                        return Err(PipelineError::VerificationBug(stage.into()));
                    }
                    let mut checks = dichotomy.checks.clone();
                    checks.push(Check::bool("induced subdivision found in C4-free branch", true));
                    Certificate::new(CertPayload::InducedSubdivisionOfH(lifted), stage, params)
                        .with_checks(checks)
                        .sealed(stage)
                }
                SearchOutcome::Exhausted => Err(PipelineError::SearchIncomplete(format!(
                    "{stage}: C4-free bipartite branch (order {}) has no induced subdivision of the pattern at this scale",
                    all.len()
                ))),
                SearchOutcome::TimedOut => {
                    Err(PipelineError::Timeout(format!("{stage}: subdivision search")))
                }
            }
        }
        CertPayload::UnbalancedRRegular {
            a_prime,
            b_prime,
            r,
            ..
        } => {
            let alpha = r / 8;
            let beta = rat_usize(*r);
            let all: VertexSet = a_prime.iter().chain(b_prime.iter()).collect();
            let (gprime, map) = g.induced(&all);
            let mut inverse = vec![usize::MAX; g.vertex_count()];
            for (new, &old) in map.iter().enumerate() {
                inverse[old] = new;
            }
            let side_a: VertexSet = a_prime.iter().map(|v| inverse[v]).collect();
            let side_b: VertexSet = b_prime.iter().map(|v| inverse[v]).collect();
            let inner = one_subdivision_extract(&gprime, &side_a, &side_b, alpha, &beta, params)
                .map_err(|e| e.at_stage(stage))?;
            match &inner.payload {
                CertPayload::Biclique(witness) => {
                    let lifted = crate::detect::BicliqueWitness {
                        host: g.clone(),
                        side_a: witness.side_a.iter().map(|v| map[v]).collect(),
                        side_b: witness.side_b.iter().map(|v| map[v]).collect(),
                    };
                    let mut checks = dichotomy.checks.clone();
                    checks.extend(inner.checks.clone());
                    checks.push(Check::bool(
                        "biclique sides reach s",
                        lifted.side_a.len() >= s && lifted.side_b.len() >= s,
                    ));
                    Certificate::new(CertPayload::Biclique(lifted), stage, params)
                        .with_checks(checks)
                        .sealed(stage)
                }
                CertPayload::OneSubdivision(one_sub) => {
                    let pattern_f = &one_sub.pattern;
                    let clique_target = h.vertex_count();
                    let f_average = pattern_f.average_degree().unwrap_or_else(|_| rat(0, 1));
                    let threshold = rat_usize(256 * clique_target * clique_target);
                    let degree_check =
                        Check::ge("d(F) >= 256 |H|^2", &f_average, &threshold);
                    if params.mode == ParamMode::Paper && !degree_check.holds {
                        return Err(PipelineError::SearchIncomplete(format!(
                            "{stage}: recovered pattern has average degree {} below the clique-subdivision threshold {}",
                            rat_str(&f_average),
                            rat_str(&threshold)
                        )));
                    }
                    match find_clique_subdivision(pattern_f, clique_target, &params.budget()) {
                        SearchOutcome::Found(in_pattern) => {
                            let proper_in_gprime =
                                lift_through_one_subdivision(one_sub, &in_pattern)?;
                            let proper_in_g = relabel_witness(&proper_in_gprime, g, &map);
                            if !proper_in_g.induced || !proper_in_g.verify() {
                                return Err(PipelineError::VerificationBug(stage.into()));
                            }
                            let final_witness = proper_to_induced_h(&proper_in_g, h)
                                .map_err(|e| e.at_stage(stage))?;
                            let mut checks = dichotomy.checks.clone();
                            checks.extend(inner.checks.clone());
                            checks.push(degree_check);
                            Certificate::new(
                                CertPayload::InducedSubdivisionOfH(final_witness),
                                stage,
                                params,
                            )
                            .with_checks(checks)
                            .sealed(stage)
                        }
                        SearchOutcome::Exhausted => Err(PipelineError::SearchIncomplete(format!(
                            "{stage}: no complete-graph subdivision of order {clique_target} in the recovered pattern (average degree {})",
                            rat_str(&f_average)
                        ))),
                        SearchOutcome::TimedOut => Err(PipelineError::Timeout(format!(
                            "{stage}: clique subdivision search"
                        ))),
                    }
                }
                _ => Err(PipelineError::VerificationBug(stage.into())),
            }
        }
        _ => Err(PipelineError::VerificationBug(stage.into())),
    }
}
