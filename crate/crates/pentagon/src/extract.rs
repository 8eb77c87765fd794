//! Recursive cograph extraction from a C5-free graph, and the end-to-end
//! pipeline that turns the extracted cograph into an explicit clique or
//! stable set.
//!
//! One recursion step: take a density pair (A, B), drop the A-vertices with
//! at least 2c|B| (non-)neighbors in B, recurse on what is left of A, and
//! either stop early with that cograph or recurse again on the B-vertices
//! compatible with it and return the union. In the sparse orientation the
//! two halves end up anticomplete (disjoint union of cographs), in the dense
//! orientation complete (join); both are checked at every union node.

use crate::cograph;
use crate::density::{density_pair_with, DensityConfig, DensityError, Orientation};
use crate::frac::Frac;
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, OracleLimits};
use crate::schedule::ScheduleParams;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractBranch {
    Base,
    EarlyStop,
    Union,
}

/// One recursion node's quantities, sizes only.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractNode {
    pub depth: usize,
    pub n_local: usize,
    pub c: Frac,
    pub branch: ExtractBranch,
    /// `1/(4c)`, the early-stop threshold.
    pub stop_threshold: Frac,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_size: Option<usize>,
    /// |A''|: the A-vertices dropped for having too many B-(non)neighbors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_drop_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_prime_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_prime_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_hat: Option<f64>,
}

/// Post-order list of recursion nodes; the last node is the root.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ExtractionTrace {
    pub nodes: Vec<ExtractNode>,
}

impl ExtractionTrace {
    pub fn root(&self) -> Option<&ExtractNode> {
        self.nodes.last()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("input contains an induced C5: {cycle:?}")]
    InputContainsC5 { cycle: [usize; 5] },
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractConfig {
    pub density: DensityConfig,
    /// At or below this size the exact maximum-cograph oracle answers.
    pub base_limit: usize,
    /// Recompute c per node from this mu instead of reusing the top-level c.
    pub adaptive_mu: Option<f64>,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig {
            density: DensityConfig::default(),
            base_limit: 16,
            adaptive_mu: None,
        }
    }
}

pub fn extract_cograph(g: &Graph, c: Frac) -> Result<(VertexSet, ExtractionTrace), ExtractError> {
    extract_cograph_with(g, c, &ExtractConfig::default())
}

pub fn extract_cograph_with(
    g: &Graph,
    c: Frac,
    cfg: &ExtractConfig,
) -> Result<(VertexSet, ExtractionTrace), ExtractError> {
    if c.is_zero() || c > Frac::HALF {
        return Err(ExtractError::Precondition(format!(
            "need 0 < c <= 1/2, got {c}"
        )));
    }
    let limits = OracleLimits::default();
    if cfg.base_limit > limits.max_cograph {
        return Err(ExtractError::Precondition(format!(
            "base_limit {} exceeds the max-cograph oracle limit {}",
            cfg.base_limit, limits.max_cograph
        )));
    }
    let mut trace = ExtractionTrace::default();
    let s = extract_rec(g, c, cfg, &mut trace, 0)?;
    Ok((s, trace))
}

fn extract_rec(
    g: &Graph,
    c: Frac,
    cfg: &ExtractConfig,
    trace: &mut ExtractionTrace,
    depth: usize,
) -> Result<VertexSet, ExtractError> {
    let n = g.n();
    let c = match cfg.adaptive_mu {
        Some(mu) if n >= 2 => crate::schedule::choose_c(n as u64, mu),
        _ => c,
    };
    let stop_threshold = Frac::new(c.den(), 4 * c.num());

    if n <= cfg.base_limit {
        let s = oracle::max_cograph(g)
            .map_err(|e| ExtractError::Internal(format!("base oracle: {e}")))?;
        trace.nodes.push(ExtractNode {
            depth,
            n_local: n,
            c,
            branch: ExtractBranch::Base,
            stop_threshold,
            orientation: None,
            trivial: false,
            a_size: None,
            a_drop_size: None,
            a_prime_size: None,
            a0_size: Some(s.len()),
            b_size: None,
            b_prime_size: None,
            delta_hat: None,
        });
        return Ok(s);
    }

    let pair = density_pair_with(g, c, &cfg.density).map_err(|e| match e {
        DensityError::InputContainsC5 { cycle } => ExtractError::InputContainsC5 { cycle },
        DensityError::Precondition(m) => ExtractError::Precondition(m),
        DensityError::Internal(m) => ExtractError::Internal(m),
    })?;
    let (a, b) = (&pair.a, &pair.b);
    let b_len = b.len() as u64;

    // A'' = A-vertices with at least 2c|B| neighbors (sparse) or
    // non-neighbors (dense) in B; exact comparison 2 c_num |B| <= count c_den.
    let heavy =
        |count: u64| 2u128 * c.num() as u128 * b_len as u128 <= count as u128 * c.den() as u128;
    let mut a_prime = VertexSet::empty(n);
    let mut dropped = 0usize;
    for v in a.iter() {
        let nbrs_in_b = g.row(v).intersection_count(b.bits()) as u64;
        let measure = match pair.orientation {
            Orientation::Sparse => nbrs_in_b,
            Orientation::Dense => b_len - nbrs_in_b,
        };
        if heavy(measure) {
            dropped += 1;
        } else {
            a_prime.insert(v);
        }
    }
    if 2 * a_prime.len() < a.len() {
        return Err(ExtractError::Internal(format!(
            "|A'| = {} < |A|/2 = {}/2 at depth {depth}",
            a_prime.len(),
            a.len()
        )));
    }

    let (ga, map_a) = g
        .induced_subgraph(&a_prime)
        .map_err(|e| ExtractError::Internal(format!("inducing A': {e}")))?;
    let a0_local = extract_rec(&ga, c, cfg, trace, depth + 1).map_err(|e| remap_c5(e, &map_a))?;
    let a0 = lift(&a0_local, &map_a, n);

    // The proof stops here once A0 alone beats 1/(4c). Trivial pairs always
    // take the union: their B is exactly the (non-)neighborhood of the one
    // A-vertex, so B' = B and the union is free.
    let early = !pair.trivial && 4u128 * c.num() as u128 * a0.len() as u128 > c.den() as u128;
    if early {
        trace.nodes.push(ExtractNode {
            depth,
            n_local: n,
            c,
            branch: ExtractBranch::EarlyStop,
            stop_threshold,
            orientation: Some(pair.orientation),
            trivial: pair.trivial,
            a_size: Some(a.len()),
            a_drop_size: Some(dropped),
            a_prime_size: Some(a_prime.len()),
            a0_size: Some(a0.len()),
            b_size: Some(b.len()),
            b_prime_size: None,
            delta_hat: Some(pair.source.delta_hat),
        });
        return Ok(a0);
    }

    let b_prime = match pair.orientation {
        Orientation::Sparse => {
            let mut touched = fixedbitset::FixedBitSet::with_capacity(n);
            for v in a0.iter() {
                touched.union_with(g.row(v));
            }
            b.difference(&VertexSet::from_bits(touched))
        }
        Orientation::Dense => {
            VertexSet::from_indices(n, b.iter().filter(|&v| a0.bits().is_subset(g.row(v)))).unwrap()
        }
    };
    if 2 * b_prime.len() < b.len() {
        return Err(ExtractError::Internal(format!(
            "|B'| = {} < |B|/2 = {}/2 at depth {depth}",
            b_prime.len(),
            b.len()
        )));
    }

    let (gb, map_b) = g
        .induced_subgraph(&b_prime)
        .map_err(|e| ExtractError::Internal(format!("inducing B': {e}")))?;
    let s2_local = extract_rec(&gb, c, cfg, trace, depth + 1).map_err(|e| remap_c5(e, &map_b))?;
    let s2 = lift(&s2_local, &map_b, n);

    let structural_ok = match pair.orientation {
        Orientation::Sparse => g.is_anticomplete(&a0, &s2),
        Orientation::Dense => g.is_complete_between(&a0, &s2),
    }
    .map_err(|e| ExtractError::Internal(format!("structural check: {e}")))?;
    if !structural_ok {
        return Err(ExtractError::Internal(format!(
            "union halves are not {} at depth {depth}",
            match pair.orientation {
                Orientation::Sparse => "anticomplete",
                Orientation::Dense => "complete",
            }
        )));
    }

    trace.nodes.push(ExtractNode {
        depth,
        n_local: n,
        c,
        branch: ExtractBranch::Union,
        stop_threshold,
        orientation: Some(pair.orientation),
        trivial: pair.trivial,
        a_size: Some(a.len()),
        a_drop_size: Some(dropped),
        a_prime_size: Some(a_prime.len()),
        a0_size: Some(a0.len()),
        b_size: Some(b.len()),
        b_prime_size: Some(b_prime.len()),
        delta_hat: Some(pair.source.delta_hat),
    });
    Ok(a0.union(&s2))
}

fn lift(local: &VertexSet, map: &[usize], n: usize) -> VertexSet {
    VertexSet::from_indices(n, local.iter().map(|v| map[v])).unwrap()
}

/// C5 certificates surface from recursion in local labels; translate them.
fn remap_c5(e: ExtractError, map: &[usize]) -> ExtractError {
    match e {
        ExtractError::InputContainsC5 { cycle } => ExtractError::InputContainsC5 {
            cycle: cycle.map(|v| map[v]),
        },
        other => other,
    }
}

/// Full pipeline report: schedule, sizes, witnesses and guarantees.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub c: Frac,
    pub sigma: f64,
    pub epsilon: Frac,
    pub mu: f64,
    pub kappa: f64,
    pub log2_n0: f64,
    pub s_size: usize,
    pub alpha: usize,
    pub omega: usize,
    pub best: usize,
    pub guarantee_cograph: f64,
    pub guarantee_best: f64,
    /// True when n < n0: the guarantee is below its regime and means nothing.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_hat: Option<f64>,
    pub trace: ExtractionTrace,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub s: VertexSet,
    pub stable: VertexSet,
    pub clique: VertexSet,
    pub report: PipelineReport,
}

pub fn pipeline(g: &Graph, params: &ScheduleParams) -> Result<PipelineOutput, ExtractError> {
    pipeline_with(g, params, &ExtractConfig::default())
}

pub fn pipeline_with(
    g: &Graph,
    params: &ScheduleParams,
    cfg: &ExtractConfig,
) -> Result<PipelineOutput, ExtractError> {
    let n = g.n();
    if n < 2 {
        return Err(ExtractError::Precondition(format!(
            "pipeline needs n >= 2, got {n}"
        )));
    }
    // no_trivial_branch promises that a C5-containing input always raises,
    // even when the recursion would bottom out in the base oracle without
    // ever consulting density_pair
    if cfg.density.no_trivial_branch {
        if let Some(cycle) = oracle::find_induced_c5(g) {
            return Err(ExtractError::InputContainsC5 { cycle });
        }
    }
    let c = params.c_for(n as u64);
    let (s, trace) = extract_cograph_with(g, c, cfg)?;
    let (gs, map_s) = g
        .induced_subgraph(&s)
        .map_err(|e| ExtractError::Internal(format!("inducing S: {e}")))?;
    let cotree = cograph::build_cotree(&gs).map_err(|e| {
        ExtractError::Internal(format!("extracted set does not induce a cograph: {e}"))
    })?;
    let witness = cograph::alpha_omega(&cotree);
    let stable = lift(&witness.stable, &map_s, n);
    let clique = lift(&witness.clique, &map_s, n);
    let (alpha, omega) = (stable.len(), clique.len());
    let best = alpha.max(omega);
    if best < ceil_sqrt(s.len()) {
        return Err(ExtractError::Internal(format!(
            "max(alpha, omega) = {best} below ceil(sqrt(|S|)) = {}",
            ceil_sqrt(s.len())
        )));
    }
    let (guarantee_cograph, guarantee_best) = params.guarantee_for(n as u64);
    let delta_hat = trace.root().and_then(|node| node.delta_hat);
    let report = PipelineReport {
        n,
        c,
        sigma: params.sigma,
        epsilon: params.epsilon,
        mu: params.mu,
        kappa: params.kappa,
        log2_n0: params.log2_n0,
        s_size: s.len(),
        alpha,
        omega,
        best,
        guarantee_cograph,
        guarantee_best,
        vacuous: params.vacuous_at(n as u64),
        delta_hat,
        trace,
    };
    Ok(PipelineOutput {
        s,
        stable,
        clique,
        report,
    })
}

/// Smallest integer k with k*k >= x.
pub fn ceil_sqrt(x: usize) -> usize {
    if x == 0 {
        return 0;
    }
    let mut k = (x as f64).sqrt() as usize;
    while k * k < x {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) >= x {
        k -= 1;
    }
    k
}
