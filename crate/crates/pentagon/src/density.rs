//! Density dichotomy for general C5-free graphs: greedy sparsification to a
//! low-degree side, then the sparse-graph dichotomy on that side. A pair
//! found in the complement reads as a dense pair in the original graph; a C5
//! found in either side converts to an induced C5 of the input (C5 is
//! self-complementary) and is raised as an error carrying the certificate.

use crate::dichotomy::{
    find_c5_or_sparse_pair_with, DichotomyConfig, DichotomyError, DichotomyOutcome,
};
use crate::frac::Frac;
use crate::graph::{Graph, VertexSet};
use crate::oracle;
use serde::Serialize;
use thiserror::Error;

/// Below this surviving-set size the dichotomy's closed-degree precondition
/// is not implied by the peel guarantee, and the single-vertex branch is used
/// instead. With integer degrees, degree <= floor(|X|/20) gives closed degree
/// <= |X|/16 exactly when |X| >= 80.
pub const TRIVIAL_BRANCH_BELOW: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Graph,
    Complement,
}

/// The surviving set of the greedy peel, with its verified degree bound.
#[derive(Debug, Clone, Serialize)]
pub struct SparsifierReport {
    pub x: VertexSet,
    pub side: Side,
    pub d_target: Frac,
    pub max_degree_in_side: usize,
    /// |X| / n; reporting only.
    pub delta_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// density < c in the input graph
    Sparse,
    /// density > 1 - c in the input graph
    Dense,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityPairResult {
    pub a: VertexSet,
    pub b: VertexSet,
    pub orientation: Orientation,
    /// Density measured in the input graph, exact.
    pub density: Frac,
    /// Single-vertex branch; size guarantees relative to X do not apply.
    pub trivial: bool,
    pub source: SparsifierReport,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("input contains an induced C5: {cycle:?}")]
    InputContainsC5 { cycle: [usize; 5] },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy)]
pub struct DensityConfig {
    /// Degree-fraction target for the peel; the paper's choice is 1/20.
    pub d: Frac,
    /// Refuse the single-vertex branch: first prove or refute the presence of
    /// an induced C5 with the exhaustive finder.
    pub no_trivial_branch: bool,
    pub dichotomy: DichotomyConfig,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            d: Frac::new(1, 20),
            no_trivial_branch: false,
            dichotomy: DichotomyConfig::default(),
        }
    }
}

/// Greedy peel on one side: while some surviving vertex has degree strictly
/// above `d * |survivors|`, remove the maximum-degree vertex (ties to the
/// lowest index). Returns the survivor set and its final maximum degree.
fn peel_side(g: &Graph, d: Frac) -> (VertexSet, usize) {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut size = n;
    loop {
        let mut max_v = None;
        let mut max_d = 0usize;
        for v in alive.iter() {
            if deg[v] > max_d || max_v.is_none() {
                max_d = deg[v];
                max_v = Some(v);
            }
        }
        let Some(v) = max_v else {
            return (alive, 0);
        };
        if d.ge_ratio(max_d as u64, size as u64) {
            return (alive, max_d);
        }
        alive.remove(v);
        size -= 1;
        let mut nbrs = g.row(v).clone();
        nbrs.intersect_with(alive.bits());
        for u in nbrs.ones() {
            deg[u] -= 1;
        }
    }
}

/// Peels the graph and its complement independently and reports the larger
/// surviving set (ties to the graph side).
pub fn peel_to_sparse(g: &Graph, d: Frac) -> SparsifierReport {
    let n = g.n();
    assert!(n >= 1, "peel_to_sparse needs at least one vertex");
    assert!(!d.is_zero(), "peel target d must be positive");
    let (x_g, md_g) = peel_side(g, d);
    let (x_c, md_c) = peel_side(&g.complement(), d);
    let (x, side, max_degree) = if x_g.len() >= x_c.len() {
        (x_g, Side::Graph, md_g)
    } else {
        (x_c, Side::Complement, md_c)
    };
    let delta_hat = x.len() as f64 / n as f64;
    SparsifierReport {
        x,
        side,
        d_target: d,
        max_degree_in_side: max_degree,
        delta_hat,
    }
}

pub fn density_pair(g: &Graph, c: Frac) -> Result<DensityPairResult, DensityError> {
    density_pair_with(g, c, &DensityConfig::default())
}

pub fn density_pair_with(
    g: &Graph,
    c: Frac,
    cfg: &DensityConfig,
) -> Result<DensityPairResult, DensityError> {
    let n = g.n();
    if n < 2 {
        return Err(DensityError::Precondition(format!(
            "need n >= 2 vertices, got {n}"
        )));
    }
    if c.is_zero() || c > Frac::HALF {
        return Err(DensityError::Precondition(format!(
            "need 0 < c <= 1/2, got {c}"
        )));
    }

    let report = peel_to_sparse(g, cfg.d);
    if report.x.len() < TRIVIAL_BRANCH_BELOW {
        return trivial_branch(g, cfg, report);
    }

    // Build the side graph J on X and hand it to the dichotomy.
    let complement;
    let side_graph = match report.side {
        Side::Graph => g,
        Side::Complement => {
            complement = g.complement();
            &complement
        }
    };
    let (j, map) = side_graph
        .induced_subgraph(&report.x)
        .map_err(|e| DensityError::Internal(format!("inducing J on X: {e}")))?;
    let xn = j.n();
    for (v, &orig) in map.iter().enumerate() {
        let closed = j.degree(v) + 1;
        if 16 * closed > xn {
            return Err(DensityError::Internal(format!(
                "vertex {orig} of J has closed degree {closed} > |X|/16 = {xn}/16 after peeling"
            )));
        }
    }

    match find_c5_or_sparse_pair_with(&j, c, &cfg.dichotomy) {
        Ok((DichotomyOutcome::Pair(p), _trace)) => {
            let a = map_back(&p.a, &map, n);
            let b = map_back(&p.b, &map, n);
            let density = g
                .density_between(&a, &b)
                .map_err(|e| DensityError::Internal(format!("density in G: {e}")))?;
            let orientation = match report.side {
                Side::Graph => Orientation::Sparse,
                Side::Complement => Orientation::Dense,
            };
            match orientation {
                Orientation::Sparse if density >= c => {
                    return Err(DensityError::Internal(format!(
                        "sparse pair has density {density} >= c = {c}"
                    )));
                }
                Orientation::Dense if density <= c.one_minus() => {
                    return Err(DensityError::Internal(format!(
                        "dense pair has density {density} <= 1-c = {}",
                        c.one_minus()
                    )));
                }
                _ => {}
            }
            Ok(DensityPairResult {
                a,
                b,
                orientation,
                density,
                trivial: false,
                source: report,
            })
        }
        Ok((DichotomyOutcome::C5(w), _trace)) => {
            let mut cycle = w.cycle.map(|v| map[v]);
            if report.side == Side::Complement {
                // complement of the 5-cycle x0-x1-x2-x3-x4 is the 5-cycle
                // x0-x2-x4-x1-x3
                cycle = [cycle[0], cycle[2], cycle[4], cycle[1], cycle[3]];
            }
            if !oracle::verify_induced_c5(g, &cycle) {
                return Err(DensityError::Internal(format!(
                    "mapped cycle {cycle:?} is not an induced C5 of the input"
                )));
            }
            Err(DensityError::InputContainsC5 { cycle })
        }
        Err(e @ DichotomyError::Internal(_)) => Err(DensityError::Internal(e.to_string())),
        Err(e) => Err(DensityError::Internal(format!(
            "dichotomy rejected J although its preconditions were established: {e}"
        ))),
    }
}

/// The single-vertex branch: A = {v} for the lowest-index vertex, B the
/// larger of its neighborhood and non-neighborhood (ties to the
/// non-neighborhood), density exactly 1 or 0.
fn trivial_branch(
    g: &Graph,
    cfg: &DensityConfig,
    report: SparsifierReport,
) -> Result<DensityPairResult, DensityError> {
    if cfg.no_trivial_branch {
        if let Some(cycle) = oracle::find_induced_c5(g) {
            debug_assert!(oracle::verify_induced_c5(g, &cycle));
            return Err(DensityError::InputContainsC5 { cycle });
        }
    }
    let n = g.n();
    let v = 0usize;
    let nbrs = VertexSet::from_bits(g.row(v).clone());
    let mut non = nbrs.complement_in_universe();
    non.remove(v);
    let a = VertexSet::singleton(n, v);
    let (b, orientation) = if nbrs.len() > non.len() {
        (nbrs, Orientation::Dense)
    } else {
        (non, Orientation::Sparse)
    };
    debug_assert!(2 * b.len() >= n - 1);
    let density = g
        .density_between(&a, &b)
        .map_err(|e| DensityError::Internal(format!("trivial-branch density: {e}")))?;
    debug_assert!(match orientation {
        Orientation::Sparse => density.is_zero(),
        Orientation::Dense => density == Frac::ONE,
    });
    Ok(DensityPairResult {
        a,
        b,
        orientation,
        density,
        trivial: true,
        source: report,
    })
}

fn map_back(local: &VertexSet, map: &[usize], n: usize) -> VertexSet {
    VertexSet::from_indices(n, local.iter().map(|v| map[v])).unwrap()
}
