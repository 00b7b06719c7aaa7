//! Executable extraction procedures with machine-verified certificates.
//!
//! Each operation implements one proof step as a seeded, retry-bounded
//! search. Operations run in one of two regimes:
//!
//! * **paper** mode enforces every hypothesis inequality exactly (the
//!   thresholds are astronomically large, so on desk-scale inputs the
//!   checks mostly record honest failures);
//! * **desk** mode replaces magnitude thresholds by user-supplied values
//!   while still verifying every structural postcondition of the output.
//!
//! All inequality checks on densities are exact; randomized steps derive a
//! fresh deterministic stream per retry from the master seed, and a
//! parallel retry sweep accepts the lowest retry index that validates, so
//! results are independent of thread count.

mod bipartite;
mod cleanup;
mod cliquesub;
mod dichotomy;
mod girth5;
mod hminuse;
mod onesub;
mod orchestrate;
mod sample;

pub use bipartite::{extract_c4free_bipartite, triangle_free_to_bipartite};
pub use cleanup::unbalanced_cleanup;
pub use cliquesub::{find_clique_subdivision, proper_to_induced_h};
pub use dichotomy::{regular_or_unbalanced, DichotomyOutcome};
pub use girth5::extract_girth5;
pub use hminuse::find_h_minus_e;
pub use onesub::one_subdivision_extract;
pub use orchestrate::{degree_bounded_dichotomy, kuhn_osthus_pipeline, mccarty_certificate};
pub use sample::{sample_density, DensityReport};

use crate::detect::{BicliqueWitness, Budget, InducedEmbedding, SubdivisionWitness};
use crate::exact::{cmp_pow, rat, rat_str, rat_to_f64, Rat};
use crate::graph::{graph6, Graph, VertexSet};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use std::cmp::Ordering;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<PipelineError>,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("insufficient density: {0}")]
    InsufficientDensity(String),
    #[error("dichotomy search failed: {0}")]
    DichotomyFailed(String),
    #[error("search incomplete: {0}")]
    SearchIncomplete(String),
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("neighborhood too dense: {0}")]
    NeighborhoodTooDense(String),
    #[error("extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("inconclusive under desk thresholds: {0}")]
    Inconclusive(String),
    #[error("detection timed out in {0}")]
    Timeout(String),
    #[error("verification failed for an emitted certificate in {0}; this is a bug")]
    VerificationBug(String),
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

impl PipelineError {
    pub fn at_stage(self, stage: &str) -> PipelineError {
        PipelineError::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }

    /// Exit-code class 2: the search gave up without refuting existence.
    pub fn is_search_incomplete(&self) -> bool {
        match self {
            PipelineError::Stage { source, .. } => source.is_search_incomplete(),
            PipelineError::SearchIncomplete(_)
            | PipelineError::RetriesExhausted(_)
            | PipelineError::Timeout(_)
            | PipelineError::DichotomyFailed(_)
            | PipelineError::InsufficientDensity(_)
            | PipelineError::ExtractionFailed(_)
            | PipelineError::NeighborhoodTooDense(_)
            | PipelineError::Inconclusive(_) => true,
            _ => false,
        }
    }

    /// Exit-code class 3: an emitted certificate failed verification.
    pub fn is_verification_bug(&self) -> bool {
        match self {
            PipelineError::Stage { source, .. } => source.is_verification_bug(),
            PipelineError::VerificationBug(_) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamMode {
    Paper,
    Desk,
}

/// Polynomial with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<Rat>);

impl Polynomial {
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat(0, 1);
        for coefficient in self.0.iter().rev() {
            acc = acc * x.clone() + coefficient.clone();
        }
        acc
    }

    pub fn parse(text: &str) -> Option<Polynomial> {
        let coefficients: Option<Vec<Rat>> = text
            .split(',')
            .map(|part| {
                let part = part.trim();
                if let Some((num, den)) = part.split_once('/') {
                    Some(rat(num.trim().parse().ok()?, den.trim().parse().ok()?))
                } else {
                    Some(rat(part.parse().ok()?, 1))
                }
            })
            .collect();
        coefficients.map(Polynomial)
    }

    pub fn describe(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{}*s^{}", rat_str(c), i))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Desk-mode magnitude overrides; unset fields fall back to built-in
/// desk-scale defaults inside each operation.
#[derive(Debug, Clone, Default)]
pub struct DeskOverrides {
    pub min_average_degree: Option<Rat>,
    pub max_degree_cap: Option<Rat>,
    pub unbalanced_ratio: Option<Rat>,
    pub girth5_probability: Option<f64>,
    pub girth5_target: Option<Rat>,
    pub cleanup_probability: Option<f64>,
    pub cleanup_ratio: Option<Rat>,
    pub r_override: Option<usize>,
    pub sample_m: Option<usize>,
    pub degree_bound: Option<Rat>,
}

#[derive(Debug, Clone)]
pub struct PipelineParams {
    /// Exponent constant in (0, 1/2].
    pub epsilon: Rat,
    /// Leading constant, > 1.
    pub c: Rat,
    /// Defaults to epsilon/8 when unset.
    pub gamma: Option<Rat>,
    /// Defaults to epsilon/10 when unset.
    pub delta: Option<Rat>,
    /// Average-degree target for the C4-free bipartite branch.
    pub k: usize,
    pub seed: u64,
    pub max_retries: u32,
    pub mode: ParamMode,
    pub f1_override: Option<Rat>,
    pub f3_override: Option<Rat>,
    /// Constant for the triangle-free bipartization bound (non-authoritative).
    pub kwan_c: Rat,
    pub detection_budget: Duration,
    pub desk: DeskOverrides,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            epsilon: rat(1, 4),
            c: rat(2, 1),
            gamma: None,
            delta: None,
            k: 3,
            seed: 0,
            max_retries: 100,
            mode: ParamMode::Desk,
            f1_override: None,
            f3_override: None,
            kwan_c: rat(1, 4),
            detection_budget: Duration::from_secs(60),
            desk: DeskOverrides::default(),
        }
    }
}

impl PipelineParams {
    pub fn desk(seed: u64) -> PipelineParams {
        PipelineParams {
            seed,
            ..PipelineParams::default()
        }
    }

    pub fn paper(seed: u64) -> PipelineParams {
        PipelineParams {
            seed,
            mode: ParamMode::Paper,
            ..PipelineParams::default()
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let half = rat(1, 2);
        if !self.epsilon.is_positive() || self.epsilon > half {
            return Err(PipelineError::InvalidParams(
                "epsilon must lie in (0, 1/2]".into(),
            ));
        }
        if self.c <= Rat::one() {
            return Err(PipelineError::InvalidParams("c must exceed 1".into()));
        }
        Ok(())
    }

    pub fn gamma(&self) -> Rat {
        self.gamma
            .clone()
            .unwrap_or_else(|| self.epsilon.clone() / rat(8, 1))
    }

    pub fn delta(&self) -> Rat {
        self.delta
            .clone()
            .unwrap_or_else(|| self.epsilon.clone() / rat(10, 1))
    }

    pub fn trials(&self) -> usize {
        (8 * self.max_retries as usize).max(100)
    }

    pub fn budget(&self) -> Budget {
        Budget::from_duration(self.detection_budget)
    }

    pub fn rng_for_retry(&self, retry: u32) -> crate::rng::SplitMix64 {
        crate::rng::SplitMix64::new(self.seed).split(retry as u64)
    }

    /// Minimum degree threshold for the dichotomy hypothesis: an override,
    /// or the documented heuristic default `2^(1/gamma)`.
    pub fn f1_check(&self, d: &Rat) -> Check {
        match &self.f1_override {
            Some(threshold) => Check::ge("d >= f1(gamma) [override]", d, threshold),
            None => {
                let gamma = self.gamma();
                let inv = Rat::one() / gamma.clone();
                // d >= 2^(1/gamma)  <=>  log2(d) >= 1/gamma
                let holds = d > &Rat::one()
                    && crate::exact::cmp_log2(d, &inv) != Ordering::Less;
                Check {
                    name: "d >= f1(gamma) [heuristic 2^(1/gamma)]".into(),
                    holds,
                    lhs: rat_str(d),
                    rhs: format!("2^({})", rat_str(&inv)),
                }
            }
        }
    }

    /// Least degree satisfying the three cleanup feasibility conditions,
    /// located by doubling plus bisection. Conditions are evaluated with
    /// conservative dyadic bounds on the transcendental terms, so the
    /// returned value may slightly exceed the true least degree.
    pub fn f3_threshold(&self) -> BigInt {
        if let Some(threshold) = &self.f3_override {
            return threshold.ceil().to_integer();
        }
        let delta = self.delta();
        let satisfied = |d: &BigInt| f3_conditions_hold(d, &delta);
        let mut hi = BigInt::from(4);
        let mut guard = 0;
        while !satisfied(&hi) {
            hi *= 2;
            guard += 1;
            assert!(guard < 8192, "cleanup threshold search exploded");
        }
        let mut lo: BigInt = hi.clone() / 2;
        while &lo + 1 < hi {
            let mid: BigInt = (&lo + &hi) / 2;
            if satisfied(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "epsilon": rat_str(&self.epsilon),
            "c": rat_str(&self.c),
            "gamma": rat_str(&self.gamma()),
            "delta": rat_str(&self.delta()),
            "k": self.k,
            "seed": self.seed,
            "max_retries": self.max_retries,
            "mode": match self.mode { ParamMode::Paper => "paper", ParamMode::Desk => "desk" },
            "kwan_c": rat_str(&self.kwan_c),
            "budget_secs": self.detection_budget.as_secs(),
        })
    }
}

/// The three explicit feasibility conditions on the cleanup degree, checked
/// with outer dyadic bounds (20 fractional bits) so that `true` is reliable.
fn f3_conditions_hold(d: &BigInt, delta: &Rat) -> bool {
    use crate::exact::{bound_log2, bound_pow};
    if d < &BigInt::from(4) {
        return false;
    }
    let bits = 20;
    let d_rat = Rat::from_integer(d.clone());
    let half = |r: &Rat| r.clone() / rat(2, 1);
    let quarter = |r: &Rat| r.clone() / rat(4, 1);
    let (p_lo, _) = bound_pow(&d_rat, delta, bits);
    let (ph_lo, ph_hi) = bound_pow(&d_rat, &half(delta), bits);
    let (_, pq_hi) = bound_pow(&d_rat, &quarter(delta), bits);
    let (_, log_hi) = bound_log2(&d_rat, bits);
    let log20_hi = rat(4_321_929, 1_000_000); // upper bound on log2(20)
    // (i) d^delta >= 2 d^(delta/2) + (3/2) log2(d) + log2(20)
    let condition_i =
        p_lo >= rat(2, 1) * ph_hi.clone() + rat(3, 2) * log_hi.clone() + log20_hi;
    // (ii) d/2 >= 10 + d^(delta/4)
    let condition_ii = half(&d_rat) >= rat(10, 1) + pq_hi.clone();
    // (iii) d^(delta/2) >= 2 d^(delta/4) log2(d) + 1
    let condition_iii = ph_lo >= rat(2, 1) * pq_hi * log_hi + Rat::one();
    condition_i && condition_ii && condition_iii
}

/// One recorded inequality check: both sides rendered exactly when rational.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn ge(name: &str, lhs: &Rat, rhs: &Rat) -> Check {
        Check {
            name: name.to_string(),
            holds: lhs >= rhs,
            lhs: rat_str(lhs),
            rhs: rat_str(rhs),
        }
    }

    pub fn le(name: &str, lhs: &Rat, rhs: &Rat) -> Check {
        Check {
            name: name.to_string(),
            holds: lhs <= rhs,
            lhs: rat_str(lhs),
            rhs: rat_str(rhs),
        }
    }

    pub fn eq_usize(name: &str, lhs: usize, rhs: usize) -> Check {
        Check {
            name: name.to_string(),
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn bool(name: &str, holds: bool) -> Check {
        Check {
            name: name.to_string(),
            holds,
            lhs: holds.to_string(),
            rhs: "true".to_string(),
        }
    }

    /// `lhs >= base^exp * scale`, decided exactly.
    pub fn ge_pow(name: &str, lhs: &Rat, base: &Rat, exp: &Rat, scale: &Rat) -> Check {
        let holds = if scale.is_positive() {
            // lhs/scale >= base^exp
            cmp_pow(base, exp, &(lhs.clone() / scale.clone())) != Ordering::Greater
        } else {
            !lhs.is_negative()
        };
        Check {
            name: name.to_string(),
            holds,
            lhs: rat_str(lhs),
            rhs: format!(
                "{}^({}) * {} (~{:.4})",
                rat_str(base),
                rat_str(exp),
                rat_str(scale),
                rat_to_f64(base).powf(rat_to_f64(exp)) * rat_to_f64(scale)
            ),
        }
    }

    /// `lhs <= base^exp * scale`, decided exactly.
    pub fn le_pow(name: &str, lhs: &Rat, base: &Rat, exp: &Rat, scale: &Rat) -> Check {
        let holds = if scale.is_positive() {
            cmp_pow(base, exp, &(lhs.clone() / scale.clone())) != Ordering::Less
        } else {
            false
        };
        Check {
            name: name.to_string(),
            holds,
            lhs: rat_str(lhs),
            rhs: format!(
                "{}^({}) * {} (~{:.4})",
                rat_str(base),
                rat_str(exp),
                rat_str(scale),
                rat_to_f64(base).powf(rat_to_f64(exp)) * rat_to_f64(scale)
            ),
        }
    }

    /// `lhs >= 2^(base^exp + shift) * scale`, decided exactly (up to the
    /// refinement cap of the dyadic comparison).
    pub fn ge_exp2_pow(
        name: &str,
        lhs: &Rat,
        base: &Rat,
        exp: &Rat,
        shift: i64,
        scale: &Rat,
    ) -> Check {
        let holds = if scale.is_positive() {
            crate::exact::cmp_exp2_pow(base, exp, shift, &(lhs.clone() / scale.clone()))
                != Ordering::Greater
        } else {
            true
        };
        Check {
            name: name.to_string(),
            holds,
            lhs: rat_str(lhs),
            rhs: format!(
                "2^({}^({}) + {}) * {}",
                rat_str(base),
                rat_str(exp),
                shift,
                rat_str(scale)
            ),
        }
    }
}

fn vertex_set_json(set: &VertexSet) -> serde_json::Value {
    serde_json::json!(set.to_vec())
}

fn embedding_json(embedding: &InducedEmbedding) -> serde_json::Value {
    serde_json::json!({
        "host": graph6::encode(&embedding.host),
        "pattern": graph6::encode(&embedding.pattern),
        "map": embedding.map,
    })
}

fn biclique_json(witness: &BicliqueWitness) -> serde_json::Value {
    serde_json::json!({
        "host": graph6::encode(&witness.host),
        "side_a": vertex_set_json(&witness.side_a),
        "side_b": vertex_set_json(&witness.side_b),
    })
}

fn subdivision_json(witness: &SubdivisionWitness) -> serde_json::Value {
    serde_json::json!({
        "host": graph6::encode(&witness.host),
        "pattern": graph6::encode(&witness.pattern),
        "branch": witness.branch,
        "paths": witness.paths.iter().map(|((u, v), path)| {
            serde_json::json!({"edge": [u, v], "route": path})
        }).collect::<Vec<_>>(),
        "proper": witness.proper,
        "one_subdivision": witness.one_subdivision,
        "induced": witness.induced,
    })
}

/// Everything the pipeline can output, as a verifiable tagged union.
#[derive(Debug, Clone)]
pub enum CertPayload {
    InducedCopy(InducedEmbedding),
    InducedHMinusE {
        embedding: InducedEmbedding,
        removed_edge: (usize, usize),
    },
    Biclique(BicliqueWitness),
    Girth5Subgraph {
        host: Graph,
        vertices: VertexSet,
        average_degree: Rat,
    },
    InducedBipartite {
        host: Graph,
        left: VertexSet,
        right: VertexSet,
        average_degree: Rat,
    },
    C4FreeBipartite {
        host: Graph,
        left: VertexSet,
        right: VertexSet,
        average_degree: Rat,
    },
    UnbalancedRRegular {
        host: Graph,
        side_a: VertexSet,
        side_b: VertexSet,
        a_prime: VertexSet,
        b_prime: VertexSet,
        r: usize,
    },
    OneSubdivision(SubdivisionWitness),
    KhSubdivision(SubdivisionWitness),
    InducedSubdivisionOfH(SubdivisionWitness),
    DegreeBoundHolds {
        average_degree: Rat,
        bound: Rat,
    },
}

impl CertPayload {
    pub fn tag(&self) -> &'static str {
        match self {
            CertPayload::InducedCopy(_) => "InducedCopy",
            CertPayload::InducedHMinusE { .. } => "InducedHMinusE",
            CertPayload::Biclique(_) => "Biclique",
            CertPayload::Girth5Subgraph { .. } => "Girth5Subgraph",
            CertPayload::InducedBipartite { .. } => "InducedBipartite",
            CertPayload::C4FreeBipartite { .. } => "C4FreeBipartite",
            CertPayload::UnbalancedRRegular { .. } => "UnbalancedRRegular",
            CertPayload::OneSubdivision(_) => "OneSubdivision",
            CertPayload::KhSubdivision(_) => "KhSubdivision",
            CertPayload::InducedSubdivisionOfH(_) => "InducedSubdivisionOfH",
            CertPayload::DegreeBoundHolds { .. } => "DegreeBoundHolds",
        }
    }

    /// Pure structural re-check of the payload, no search.
    pub fn verify(&self) -> bool {
        match self {
            CertPayload::InducedCopy(embedding) => embedding.verify(),
            CertPayload::InducedHMinusE { embedding, .. } => embedding.verify(),
            CertPayload::Biclique(witness) => witness.verify(),
            CertPayload::Girth5Subgraph {
                host,
                vertices,
                average_degree,
            } => {
                if !vertices.valid_for(host) {
                    return false;
                }
                if vertices.is_empty() {
                    // A fully deleted sample is a degenerate but valid
                    // girth-certified output.
                    return average_degree == &rat(0, 1);
                }
                let (sub, _) = host.induced(vertices);
                sub.girth().map_or(true, |g| g >= 5)
                    && sub.average_degree().ok().as_ref() == Some(average_degree)
            }
            CertPayload::InducedBipartite {
                host,
                left,
                right,
                average_degree,
            } => verify_bipartite_part(host, left, right, average_degree),
            CertPayload::C4FreeBipartite {
                host,
                left,
                right,
                average_degree,
            } => {
                if !verify_bipartite_part(host, left, right, average_degree) {
                    return false;
                }
                let all: VertexSet = left.iter().chain(right.iter()).collect();
                let (sub, _) = host.induced(&all);
                // C4-free as a subgraph: no pair with two common neighbors.
                let masks = sub.adjacency_bitsets();
                for u in sub.vertices() {
                    for v in u + 1..sub.vertex_count() {
                        if masks[u].intersection_count(&masks[v]) >= 2 {
                            return false;
                        }
                    }
                }
                true
            }
            CertPayload::UnbalancedRRegular {
                host,
                side_a,
                side_b,
                a_prime,
                b_prime,
                r,
            } => {
                let subset_ok = a_prime.iter().all(|a| side_a.contains(a))
                    && b_prime.iter().all(|b| side_b.contains(b));
                if !subset_ok || !a_prime.valid_for(host) || !b_prime.valid_for(host) {
                    return false;
                }
                if !a_prime.is_independent_in(host) || !b_prime.is_independent_in(host) {
                    return false;
                }
                a_prime.iter().all(|a| {
                    host.neighbors(a)
                        .iter()
                        .filter(|&&b| b_prime.contains(b))
                        .count()
                        == *r
                })
            }
            CertPayload::OneSubdivision(witness) => {
                witness.one_subdivision && witness.induced && witness.verify()
            }
            CertPayload::KhSubdivision(witness) => witness.verify(),
            CertPayload::InducedSubdivisionOfH(witness) => witness.induced && witness.verify(),
            CertPayload::DegreeBoundHolds {
                average_degree,
                bound,
            } => average_degree <= bound,
        }
    }

    fn witness_json(&self) -> serde_json::Value {
        match self {
            CertPayload::InducedCopy(embedding) => embedding_json(embedding),
            CertPayload::InducedHMinusE {
                embedding,
                removed_edge,
            } => serde_json::json!({
                "embedding": embedding_json(embedding),
                "removed_edge": [removed_edge.0, removed_edge.1],
            }),
            CertPayload::Biclique(witness) => biclique_json(witness),
            CertPayload::Girth5Subgraph {
                host,
                vertices,
                average_degree,
            } => serde_json::json!({
                "host": graph6::encode(host),
                "vertices": vertex_set_json(vertices),
                "average_degree": rat_str(average_degree),
            }),
            CertPayload::InducedBipartite {
                host,
                left,
                right,
                average_degree,
            }
            | CertPayload::C4FreeBipartite {
                host,
                left,
                right,
                average_degree,
            } => serde_json::json!({
                "host": graph6::encode(host),
                "left": vertex_set_json(left),
                "right": vertex_set_json(right),
                "average_degree": rat_str(average_degree),
            }),
            CertPayload::UnbalancedRRegular {
                host,
                side_a,
                side_b,
                a_prime,
                b_prime,
                r,
            } => serde_json::json!({
                "host": graph6::encode(host),
                "side_a": vertex_set_json(side_a),
                "side_b": vertex_set_json(side_b),
                "a_prime": vertex_set_json(a_prime),
                "b_prime": vertex_set_json(b_prime),
                "r": r,
            }),
            CertPayload::OneSubdivision(witness)
            | CertPayload::KhSubdivision(witness)
            | CertPayload::InducedSubdivisionOfH(witness) => subdivision_json(witness),
            CertPayload::DegreeBoundHolds {
                average_degree,
                bound,
            } => serde_json::json!({
                "average_degree": rat_str(average_degree),
                "bound": rat_str(bound),
            }),
        }
    }
}

fn verify_bipartite_part(host: &Graph, left: &VertexSet, right: &VertexSet, avg: &Rat) -> bool {
    if !left.valid_for(host) || !right.valid_for(host) || !left.is_disjoint(right) {
        return false;
    }
    if left.is_empty() && right.is_empty() {
        return false;
    }
    if !left.is_independent_in(host) || !right.is_independent_in(host) {
        return false;
    }
    let all: VertexSet = left.iter().chain(right.iter()).collect();
    host.average_degree_of(&all).ok().as_ref() == Some(avg)
}

/// A verified pipeline output: payload, provenance, and the exact checks it
/// passed on the way out.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub payload: CertPayload,
    pub stage_chain: Vec<String>,
    pub checks: Vec<Check>,
    pub params: serde_json::Value,
}

impl Certificate {
    pub fn new(payload: CertPayload, stage: &str, params: &PipelineParams) -> Certificate {
        Certificate {
            payload,
            stage_chain: vec![stage.to_string()],
            checks: Vec::new(),
            params: params.to_json(),
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Certificate {
        self.checks.extend(checks);
        self
    }

    pub fn pushed_stage(mut self, stage: &str) -> Certificate {
        self.stage_chain.insert(0, stage.to_string());
        self
    }

    pub fn verify(&self) -> bool {
        self.payload.verify()
    }

    /// Final gate before a certificate leaves an operation: structural
    /// verification failures are bugs, never silent.
    pub(crate) fn sealed(self, stage: &str) -> Result<Certificate, PipelineError> {
        if !self.verify() {
            return Err(PipelineError::VerificationBug(stage.to_string()));
        }
        Ok(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tag": self.payload.tag(),
            "stage_chain": self.stage_chain,
            "params": self.params,
            "witness": self.payload.witness_json(),
            "checks": self.checks,
        })
    }
}
