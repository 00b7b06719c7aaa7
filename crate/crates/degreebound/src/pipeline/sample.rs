//! Random-subset density estimation.

use super::{Check, PipelineError, PipelineParams};
use crate::exact::{cmp_pow, rat, rat_str, rat_usize};
use crate::graph::Graph;
use serde::Serialize;
use std::cmp::Ordering;

/// Outcome of a density sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub mean: f64,
    /// Fraction of samples whose induced edge count strictly exceeds the
    /// threshold `c * s^4 * m^(2-epsilon)`.
    pub frac_above: f64,
    pub threshold: String,
    pub threshold_approx: f64,
    /// Exact expectation `binom(m,2) * 2e / n^2` as `num/den`.
    pub exact_expectation: String,
    pub trials: usize,
    pub checks: Vec<Check>,
}

/// Draws `trials` samples of `m` independent uniform vertices (repeats
/// possible) and reports the sample mean of the number of adjacent index
/// pairs, the fraction of samples exceeding the threshold, and the exact
/// expectation `binom(m,2) * 2e(G)/n^2` for comparison. The index-pair
/// count coincides with the induced edge count whenever the draws are
/// distinct, and its expectation matches the formula exactly.
pub fn sample_density(
    g: &Graph,
    m: usize,
    trials: usize,
    seed: u64,
    s: usize,
    params: &PipelineParams,
) -> Result<DensityReport, PipelineError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(PipelineError::Precondition("empty graph".into()));
    }
    if m == 0 || m > n {
        return Err(PipelineError::Precondition(format!(
            "sample size {m} outside 1..={n}"
        )));
    }
    // Threshold c * s^4 * m^(2 - epsilon); the comparison per sample is
    // exact: e > scale * m^(2-eps)  <=>  m^(2-eps) < e / scale.
    let scale = params.c.clone() * rat_usize(s.pow(4));
    let exponent = rat(2, 1) - params.epsilon.clone();
    let m_rat = rat_usize(m);
    let exceeds = |edges: usize| -> bool {
        cmp_pow(&m_rat, &exponent, &(rat_usize(edges) / scale.clone())) == Ordering::Less
    };

    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut total_edges: u64 = 0;
    let mut above = 0usize;
    let mut draws: Vec<usize> = Vec::with_capacity(m);
    for _ in 0..trials {
        draws.clear();
        for _ in 0..m {
            draws.push(rng.next_below(n as u64) as usize);
        }
        // Adjacent index pairs; coincident draws contribute once per pair
        // of indexes realizing an edge, matching the expectation formula.
        let mut edges = 0usize;
        for (i, &u) in draws.iter().enumerate() {
            for &v in &draws[i + 1..] {
                if u != v && g.has_edge(u, v) {
                    edges += 1;
                }
            }
        }
        total_edges += edges as u64;
        if exceeds(edges) {
            above += 1;
        }
    }
    let mean = total_edges as f64 / trials as f64;
    // binom(m,2) * 2e / n^2
    let expectation = rat_usize(m * (m - 1) / 2) * rat_usize(2 * g.edge_count())
        / rat_usize(n * n);
    let expectation_f = crate::exact::rat_to_f64(&expectation);
    let within = if expectation_f > 0.0 {
        (mean - expectation_f).abs() / expectation_f
    } else {
        mean.abs()
    };
    let checks = vec![Check {
        name: "sample_mean_near_expectation".into(),
        holds: within <= 0.05,
        lhs: format!("{mean:.6}"),
        rhs: format!("{} (~{:.6})", rat_str(&expectation), expectation_f),
    }];
    Ok(DensityReport {
        mean,
        frac_above: above as f64 / trials as f64,
        threshold: format!(
            "{} * {}^({})",
            rat_str(&scale),
            m,
            rat_str(&exponent)
        ),
        threshold_approx: crate::exact::rat_to_f64(&scale)
            * (m as f64).powf(crate::exact::rat_to_f64(&exponent)),
        exact_expectation: rat_str(&expectation),
        trials,
        checks,
    })
}
