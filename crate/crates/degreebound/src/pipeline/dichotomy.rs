//! Regularization dichotomy: an almost-regular induced subgraph with
//! comparable average degree, or a very unbalanced partition carrying a
//! constant fraction of the edges.

use super::{Check, ParamMode, PipelineError, PipelineParams};
use crate::exact::{rat, rat_usize, Rat};
use crate::graph::{Graph, VertexSet};
use num_traits::One;

/// Outcome of the dichotomy search, with the checks its inequalities
/// passed.
#[derive(Debug, Clone)]
pub enum DichotomyOutcome {
    /// An induced subgraph with high average degree and capped maximum
    /// degree.
    AlmostRegular {
        vertices: VertexSet,
        average_degree: Rat,
        max_degree: usize,
        checks: Vec<Check>,
    },
    /// A partition `A ∪ B` with many cross edges and `|A|` much larger
    /// than `|B|`.
    Unbalanced {
        side_a: VertexSet,
        side_b: VertexSet,
        cross_edges: usize,
        checks: Vec<Check>,
    },
}

/// Searches for either outcome, preferring the almost-regular one.
///
/// The almost-regular attempt iteratively deletes the lowest-index vertex
/// whose current degree exceeds the cap and re-tests the average degree of
/// the survivor. The unbalanced attempt sweeps degree thresholds downward,
/// setting `B` to the vertices of original degree at least the threshold.
pub fn regular_or_unbalanced(
    g0: &Graph,
    d: &Rat,
    params: &PipelineParams,
) -> Result<DichotomyOutcome, PipelineError> {
    params.validate()?;
    let n = g0.vertex_count();
    if n == 0 {
        return Err(PipelineError::Precondition("empty graph".into()));
    }
    let gamma = params.gamma();
    let paper = params.mode == ParamMode::Paper;

    // Targets. Paper mode: avg >= 6 d^(1-5gamma), max <= 6 d^(1+3gamma).
    // Desk mode: overridable, defaulting to avg >= d/2 and max <= 2d + 2.
    let one = Rat::one();
    let exp_low = one.clone() - rat(5, 1) * gamma.clone();
    let exp_high = one.clone() + rat(3, 1) * gamma.clone();
    let six = rat(6, 1);
    let desk_avg = params
        .desk
        .min_average_degree
        .clone()
        .unwrap_or_else(|| d.clone() / rat(2, 1));
    let desk_cap = params
        .desk
        .max_degree_cap
        .clone()
        .unwrap_or_else(|| rat(2, 1) * d.clone() + rat(2, 1));

    // Degree cap as an integer bound for the deletion loop.
    let cap: usize = if paper {
        crate::exact::floor_pow(d, &exp_high)
            .try_into()
            .ok()
            .and_then(|f: u64| f.checked_mul(6))
            .map(|v| v as usize)
            .unwrap_or(usize::MAX)
    } else {
        crate::exact::floor_rat(&desk_cap)
            .try_into()
            .map(|v: u64| v as usize)
            .unwrap_or(usize::MAX)
    };

    // Attempt A: delete over-cap vertices until none remain.
    let mut alive: Vec<bool> = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g0.degree(v)).collect();
    let mut survivors = n;
    loop {
        let offender = (0..n).find(|&v| alive[v] && degree[v] > cap);
        match offender {
            None => break,
            Some(v) => {
                alive[v] = false;
                survivors -= 1;
                for &w in g0.neighbors(v) {
                    if alive[w] {
                        degree[w] -= 1;
                    }
                }
            }
        }
    }
    if survivors > 0 {
        let vertices: VertexSet = (0..n).filter(|&v| alive[v]).collect();
        let (sub, _) = g0.induced(&vertices);
        let avg = sub.average_degree().expect("survivor nonempty");
        let max_deg = sub.max_degree();
        let avg_check = if paper {
            Check::ge_pow("d(G*) >= 6 d^(1-5gamma)", &avg, d, &exp_low, &six)
        } else {
            Check::ge("d(G*) >= desk average target", &avg, &desk_avg)
        };
        let cap_check = if paper {
            Check::le_pow(
                "max_degree(G*) <= 6 d^(1+3gamma)",
                &rat_usize(max_deg),
                d,
                &exp_high,
                &six,
            )
        } else {
            Check::le("max_degree(G*) <= desk cap", &rat_usize(max_deg), &desk_cap)
        };
        if avg_check.holds && cap_check.holds {
            return Ok(DichotomyOutcome::AlmostRegular {
                vertices,
                average_degree: avg,
                max_degree: max_deg,
                checks: vec![avg_check, cap_check],
            });
        }
    }

    // Attempt B: degree-threshold sweep for an unbalanced partition.
    let nd_over_4 = rat_usize(n) * d.clone() / rat(4, 1);
    let desk_ratio = params
        .desk
        .unbalanced_ratio
        .clone()
        .unwrap_or_else(|| rat(2, 1));
    let mut thresholds: Vec<usize> = (0..n).map(|v| g0.degree(v)).collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    thresholds.reverse();
    for theta in thresholds {
        if theta == 0 {
            continue;
        }
        let side_b: VertexSet = (0..n).filter(|&v| g0.degree(v) >= theta).collect();
        let side_a: VertexSet = (0..n).filter(|&v| g0.degree(v) < theta).collect();
        if side_a.is_empty() || side_b.is_empty() {
            continue;
        }
        let cross = g0.edges_between(&side_a, &side_b);
        let cross_check = Check::ge(
            "e(A,B) >= n d / 4",
            &rat_usize(cross),
            &nd_over_4,
        );
        let ratio_check = if paper {
            // |A| >= 2^(d^gamma - 2) |B|
            Check::ge_exp2_pow(
                "|A| >= 2^(d^gamma - 2) |B|",
                &rat_usize(side_a.len()),
                d,
                &gamma,
                -2,
                &rat_usize(side_b.len()),
            )
        } else {
            Check::ge(
                "|A| >= ratio * |B|",
                &rat_usize(side_a.len()),
                &(desk_ratio.clone() * rat_usize(side_b.len())),
            )
        };
        if cross_check.holds && ratio_check.holds {
            return Ok(DichotomyOutcome::Unbalanced {
                side_a,
                side_b,
                cross_edges: cross,
                checks: vec![cross_check, ratio_check],
            });
        }
    }

    let message = format!(
        "no almost-regular subgraph met avg/cap targets and no threshold split was unbalanced enough (n={n}, d={})",
        crate::exact::rat_str(d)
    );
    if paper {
        Err(PipelineError::SearchIncomplete(message))
    } else {
        Err(PipelineError::DichotomyFailed(message))
    }
}
