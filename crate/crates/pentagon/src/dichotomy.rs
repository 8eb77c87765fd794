//! The sparse-graph dichotomy: on a graph where every closed degree is at
//! most n/16, produce either an explicit induced C5 or a certified
//! low-density pair, with every intermediate set of the construction exposed
//! in a trace.
//!
//! All branch thresholds are exact integer cross-multiplications; identical
//! input yields an identical outcome and trace.

use crate::frac::Frac;
use crate::graph::{Graph, VertexSet};
use crate::oracle;
use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Which witness branch produced a sparse pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairBranch {
    #[serde(rename = "W-N0")]
    N0,
    #[serde(rename = "W-cover")]
    Cover,
    #[serde(rename = "W-v2")]
    V2,
    #[serde(rename = "W-D2edge")]
    D2Edge,
    #[serde(rename = "W-v3")]
    V3,
    #[serde(rename = "W-C2edge")]
    C2Edge,
}

impl PairBranch {
    pub fn label(&self) -> &'static str {
        match self {
            PairBranch::N0 => "W-N0",
            PairBranch::Cover => "W-cover",
            PairBranch::V2 => "W-v2",
            PairBranch::D2Edge => "W-D2edge",
            PairBranch::V3 => "W-v3",
            PairBranch::C2Edge => "W-C2edge",
        }
    }
}

/// Five vertices inducing exactly a 5-cycle, in cycle order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C5Witness {
    pub cycle: [usize; 5],
}

/// Disjoint pair with `2|A| >= cn`, `16|B| >= n` and edge-density strictly
/// below `c`.
#[derive(Debug, Clone)]
pub struct SparsePairWitness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub density: Frac,
    pub branch: PairBranch,
}

#[derive(Debug, Clone)]
pub enum DichotomyOutcome {
    C5(C5Witness),
    Pair(SparsePairWitness),
}

impl Serialize for DichotomyOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            DichotomyOutcome::C5(w) => {
                let mut st = serializer.serialize_struct("DichotomyOutcome", 2)?;
                st.serialize_field("kind", "c5")?;
                st.serialize_field("cycle", &w.cycle)?;
                st.end()
            }
            DichotomyOutcome::Pair(p) => {
                let mut st = serializer.serialize_struct("DichotomyOutcome", 5)?;
                st.serialize_field("kind", "pair")?;
                st.serialize_field("A", &p.a)?;
                st.serialize_field("B", &p.b)?;
                st.serialize_field("density", &p.density)?;
                st.serialize_field("branch", &p.branch)?;
                st.end()
            }
        }
    }
}

/// Every named set and vertex of the construction, populated as far as the
/// run progressed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct DichotomyTrace {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2_prime: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v3: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n3: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_prime: Option<VertexSet>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceViolation {
    #[error("|Z2| = {z2} violates 16|Z2| >= 15n (n = {n})")]
    Z2TooSmall { z2: usize, n: usize },
    #[error("|B2| = {b2} outside [5n/16, 3n/8] (n = {n})")]
    B2OutOfBounds { b2: usize, n: usize },
    #[error("A2 is not anticomplete to B1")]
    A2NotAnticompleteToB1,
    #[error("|A2| = {a2} violates 16|A2| >= 9n (n = {n})")]
    A2TooSmall { a2: usize, n: usize },
    #[error("|N1| = {n1} violates 2|N1| >= cn (n = {n})")]
    N1TooSmall { n1: usize, n: usize },
    #[error("N2 is not a subset of A2")]
    N2NotInA2,
    #[error("Y2 != A2 \\ N2 or 2|Y2| < n")]
    Y2Wrong,
    #[error("C2 union D2 != B2")]
    CoverSplitWrong,
}

impl DichotomyTrace {
    /// Re-checks every displayed inequality of the construction on whichever
    /// fields are populated. Cardinality comparisons are exact.
    pub fn check(&self, g: &Graph, c: Frac) -> Result<(), TraceViolation> {
        let n = g.n();
        if let Some(z2) = &self.z2 {
            if 16 * z2.len() < 15 * n {
                return Err(TraceViolation::Z2TooSmall { z2: z2.len(), n });
            }
        }
        if let Some(b2) = &self.b2 {
            if 16 * b2.len() < 5 * n || 8 * b2.len() > 3 * n {
                return Err(TraceViolation::B2OutOfBounds { b2: b2.len(), n });
            }
        }
        if let (Some(a2), Some(b1)) = (&self.a2, &self.b1) {
            if !g.is_anticomplete(a2, b1).unwrap_or(false) {
                return Err(TraceViolation::A2NotAnticompleteToB1);
            }
        }
        if let Some(a2) = &self.a2 {
            if 16 * a2.len() < 9 * n {
                return Err(TraceViolation::A2TooSmall { a2: a2.len(), n });
            }
        }
        if let Some(n1) = &self.n1 {
            if !c.le_ratio(2 * n1.len() as u64, n as u64) {
                return Err(TraceViolation::N1TooSmall { n1: n1.len(), n });
            }
        }
        if let (Some(n2), Some(a2)) = (&self.n2, &self.a2) {
            if !n2.is_subset(a2) {
                return Err(TraceViolation::N2NotInA2);
            }
        }
        if let (Some(y2), Some(a2), Some(n2)) = (&self.y2, &self.a2, &self.n2) {
            if *y2 != a2.difference(n2) || 2 * y2.len() < n {
                return Err(TraceViolation::Y2Wrong);
            }
        }
        if let (Some(c2), Some(d2), Some(b2)) = (&self.c2, &self.d2, &self.b2) {
            if c2.union(d2) != *b2 {
                return Err(TraceViolation::CoverSplitWrong);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DichotomyError {
    #[error("graph has no vertices")]
    Empty,
    #[error("c = {c} out of range; the dichotomy needs 0 < c <= 1/2")]
    COutOfRange { c: Frac },
    #[error("vertex {vertex} has closed degree {closed} > n/16 = {n}/16")]
    DegreeTooHigh {
        vertex: usize,
        closed: usize,
        n: usize,
    },
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

/// Options for the construction; the default is fully deterministic.
#[derive(Debug, Clone, Copy, Default)]
pub struct DichotomyConfig {
    /// When set, N0 is a seeded random half instead of the first
    /// floor(n/2) indices (robustness experiments).
    pub n0_seed: Option<u64>,
}

pub fn find_c5_or_sparse_pair(
    g: &Graph,
    c: Frac,
) -> Result<(DichotomyOutcome, DichotomyTrace), DichotomyError> {
    find_c5_or_sparse_pair_with(g, c, &DichotomyConfig::default())
}

pub fn find_c5_or_sparse_pair_with(
    g: &Graph,
    c: Frac,
    cfg: &DichotomyConfig,
) -> Result<(DichotomyOutcome, DichotomyTrace), DichotomyError> {
    let n = g.n();
    if n == 0 {
        return Err(DichotomyError::Empty);
    }
    if c.is_zero() || c > Frac::HALF {
        return Err(DichotomyError::COutOfRange { c });
    }
    for v in 0..n {
        let closed = g.degree(v) + 1;
        if 16 * closed > n {
            return Err(DichotomyError::DegreeTooHigh {
                vertex: v,
                closed,
                n,
            });
        }
    }
    let nu = n as u64;
    let mut trace = DichotomyTrace::default();

    // Step 1: N0, and the densest vertex inside it.
    let n0 = match cfg.n0_seed {
        None => VertexSet::from_indices(n, 0..n / 2).unwrap(),
        Some(seed) => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order.truncate(n / 2);
            VertexSet::from_indices(n, order).unwrap()
        }
    };
    trace.n0 = Some(n0.clone());

    // Maximum-degree vertex of N0, ties to the lowest index. If even that one
    // has degree < cn/2, every N0 vertex does and the N0 split is a witness.
    let v1 = n0
        .iter()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .filter(|&v| c.le_ratio(2 * g.degree(v) as u64, nu));
    let Some(v1) = v1 else {
        let b = n0.complement_in_universe();
        return finish_pair(g, c, n0, b, PairBranch::N0, trace);
    };
    trace.v1 = Some(v1);

    // Step 2: N1 and Z2.
    let n1 = VertexSet::from_bits(g.row(v1).clone());
    let mut z2 = VertexSet::full(n);
    z2 = z2.difference(&n1);
    z2.remove(v1);
    trace.n1 = Some(n1.clone());
    trace.z2 = Some(z2.clone());

    // Step 3: Z2 vertices with no neighbor in N1.
    let mut n1_cover = FixedBitSet::with_capacity(n);
    for u in n1.iter() {
        n1_cover.union_with(g.row(u));
    }
    let uncovered = z2.difference(&VertexSet::from_bits(n1_cover.clone()));
    if 16 * uncovered.len() >= n {
        return finish_pair(g, c, n1, uncovered, PairBranch::Cover, trace);
    }

    // Step 4: greedy cover of Z2 by N1 vertices up to 5n/16.
    let mut b1 = VertexSet::empty(n);
    let mut covered = VertexSet::empty(n);
    while 16 * covered.len() < 5 * n {
        let mut best: Option<(usize, usize)> = None; // (gain, vertex)
        for u in n1.iter() {
            if b1.contains(u) {
                continue;
            }
            let mut gain_mask = g.row(u).clone();
            gain_mask.intersect_with(z2.bits());
            gain_mask.difference_with(covered.bits());
            let gain = gain_mask.count_ones(..);
            if gain > best.map_or(0, |(bg, _)| bg) {
                best = Some((gain, u));
            }
        }
        let Some((_, u)) = best else {
            return Err(DichotomyError::Internal(
                "greedy cover stalled before reaching 5n/16".into(),
            ));
        };
        b1.insert(u);
        let mut add = g.row(u).clone();
        add.intersect_with(z2.bits());
        covered = covered.union(&VertexSet::from_bits(add));
    }
    let b2 = covered;
    let a2 = z2.difference(&b2);
    let a1 = n1.difference(&b1);
    trace.b1 = Some(b1.clone());
    trace.b2 = Some(b2.clone());
    trace.a1 = Some(a1.clone());
    trace.a2 = Some(a2.clone());

    // Step 5: v2, its A2 neighborhood, and the B1/B2 split it induces.
    let a2_len = a2.len() as u64;
    let v2 = n1
        .iter()
        .find(|&u| c.le_ratio(g.row(u).intersection_count(a2.bits()) as u64, a2_len));
    let Some(v2) = v2 else {
        return finish_pair(g, c, n1, a2, PairBranch::V2, trace);
    };
    if !a1.contains(v2) {
        return Err(DichotomyError::Internal(format!(
            "v2 = {v2} should lie in A1 = N1 \\ B1 since B1 is anticomplete to A2"
        )));
    }
    trace.v2 = Some(v2);

    let n2 = VertexSet::from_bits({
        let mut m = g.row(v2).clone();
        m.intersect_with(a2.bits());
        m
    });
    let c1 = b1.intersection(&VertexSet::from_bits(g.row(v2).clone()));
    let b1_rest = b1.difference(&c1);
    let mut d2_mask = FixedBitSet::with_capacity(n);
    for u in b1_rest.iter() {
        d2_mask.union_with(g.row(u));
    }
    d2_mask.intersect_with(b2.bits());
    let d2 = VertexSet::from_bits(d2_mask);
    let mut c2_mask = FixedBitSet::with_capacity(n);
    for u in c1.iter() {
        c2_mask.union_with(g.row(u));
    }
    c2_mask.intersect_with(b2.bits());
    let c2 = VertexSet::from_bits(c2_mask);
    trace.n2 = Some(n2.clone());
    trace.c1 = Some(c1.clone());
    trace.d2 = Some(d2.clone());
    trace.c2 = Some(c2.clone());

    if 8 * d2.len() >= n {
        // Step 6: the D2 route to a C5 through v1.
        let d2_prime = {
            let mut m = d2.bits().clone();
            m.difference_with(g.row(v2));
            VertexSet::from_bits(m)
        };
        if 16 * d2_prime.len() < n {
            return Err(DichotomyError::Internal(format!(
                "|D2'| = {} fell below n/16; the degree bound should prevent this",
                d2_prime.len()
            )));
        }
        trace.d2_prime = Some(d2_prime.clone());
        match lowest_edge(g, &n2, &d2_prime) {
            None => finish_pair(g, c, n2, d2_prime, PairBranch::D2Edge, trace),
            Some((w, d2v)) => {
                let d1 = {
                    let mut m = g.row(d2v).clone();
                    m.intersect_with(b1_rest.bits());
                    m.minimum()
                };
                let Some(d1) = d1 else {
                    return Err(DichotomyError::Internal(format!(
                        "d2 = {d2v} has no neighbor in B1 \\ C1, contradicting D2's definition"
                    )));
                };
                finish_c5(g, [d1, v1, v2, w, d2v], trace)
            }
        }
    } else {
        // Step 7: the C2 route to a C5 through v2 and v3.
        if 16 * c2.len() < 3 * n {
            return Err(DichotomyError::Internal(format!(
                "|C2| = {} fell below 3n/16 even though C2 and D2 cover B2",
                c2.len()
            )));
        }
        let y2 = a2.difference(&n2);
        trace.y2 = Some(y2.clone());
        let y2_len = y2.len() as u64;
        let v3 = n2
            .iter()
            .find(|&u| c.le_ratio(g.row(u).intersection_count(y2.bits()) as u64, y2_len));
        let Some(v3) = v3 else {
            return finish_pair(g, c, n2, y2, PairBranch::V3, trace);
        };
        trace.v3 = Some(v3);
        let n3 = VertexSet::from_bits({
            let mut m = g.row(v3).clone();
            m.intersect_with(y2.bits());
            m
        });
        trace.n3 = Some(n3.clone());
        let c2_prime = {
            let mut m = c2.bits().clone();
            m.difference_with(g.row(v2));
            m.difference_with(g.row(v3));
            VertexSet::from_bits(m)
        };
        if 16 * c2_prime.len() < n {
            return Err(DichotomyError::Internal(format!(
                "|C2'| = {} fell below n/16; the degree bounds should prevent this",
                c2_prime.len()
            )));
        }
        trace.c2_prime = Some(c2_prime.clone());
        match lowest_edge(g, &n3, &c2_prime) {
            None => finish_pair(g, c, n3, c2_prime, PairBranch::C2Edge, trace),
            Some((w, c2v)) => {
                let c1v = {
                    let mut m = g.row(c2v).clone();
                    m.intersect_with(c1.bits());
                    m.minimum()
                };
                let Some(c1v) = c1v else {
                    return Err(DichotomyError::Internal(format!(
                        "c2 = {c2v} has no neighbor in C1, contradicting C2's definition"
                    )));
                };
                finish_c5(g, [c1v, v2, v3, w, c2v], trace)
            }
        }
    }
}

/// First pair `(w, b)` with `w` in `ws`, `b` in `bs`, `w` adjacent to `b`,
/// lexicographic by `(w, b)`.
fn lowest_edge(g: &Graph, ws: &VertexSet, bs: &VertexSet) -> Option<(usize, usize)> {
    for w in ws.iter() {
        let mut m = g.row(w).clone();
        m.intersect_with(bs.bits());
        if let Some(b) = m.minimum() {
            return Some((w, b));
        }
    }
    None
}

/// Self-verifies and wraps a sparse-pair return.
fn finish_pair(
    g: &Graph,
    c: Frac,
    a: VertexSet,
    b: VertexSet,
    branch: PairBranch,
    trace: DichotomyTrace,
) -> Result<(DichotomyOutcome, DichotomyTrace), DichotomyError> {
    let density = g
        .density_between(&a, &b)
        .map_err(|e| DichotomyError::Internal(format!("pair density on branch {branch:?}: {e}")))?;
    let witness = SparsePairWitness {
        a,
        b,
        density,
        branch,
    };
    let outcome = DichotomyOutcome::Pair(witness);
    verify_outcome(g, c, &outcome)
        .map_err(|e| DichotomyError::Internal(format!("self-check failed on {branch:?}: {e}")))?;
    Ok((outcome, trace))
}

/// Self-verifies and wraps a C5 return.
fn finish_c5(
    g: &Graph,
    cycle: [usize; 5],
    trace: DichotomyTrace,
) -> Result<(DichotomyOutcome, DichotomyTrace), DichotomyError> {
    let outcome = DichotomyOutcome::C5(C5Witness { cycle });
    verify_outcome(g, Frac::HALF, &outcome).map_err(|e| {
        DichotomyError::Internal(format!(
            "returned cycle {cycle:?} is not an induced C5: {e}"
        ))
    })?;
    Ok((outcome, trace))
}

/// Why an outcome failed independent verification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    #[error("cycle vertex {0} out of range")]
    CycleOutOfRange(usize),
    #[error("cycle repeats vertex {0}")]
    DuplicateVertex(usize),
    #[error("missing cycle edge {u}-{v}")]
    MissingCycleEdge { u: usize, v: usize },
    #[error("extra adjacency {u}-{v}")]
    ExtraAdjacency { u: usize, v: usize },
    #[error("pair sides are not disjoint or not within the graph")]
    BadSides,
    #[error("a side of the pair is empty")]
    EmptySide,
    #[error("|A| = {a} violates 2|A| >= cn")]
    ATooSmall { a: usize },
    #[error("|B| = {b} violates 16|B| >= n")]
    BTooSmall { b: usize },
    #[error("pair density {density} is not strictly below c = {c}")]
    DensityNotBelowC { density: Frac, c: Frac },
    #[error("reported density {reported} differs from recomputed {actual}")]
    DensityMismatch { reported: Frac, actual: Frac },
}

/// Re-checks an outcome from scratch using only graph-core primitives.
pub fn verify_outcome(g: &Graph, c: Frac, outcome: &DichotomyOutcome) -> Result<(), VerifyFailure> {
    match outcome {
        DichotomyOutcome::C5(w) => verify_c5_cycle(g, &w.cycle),
        DichotomyOutcome::Pair(p) => {
            if p.a.universe() != g.n() || p.b.universe() != g.n() || !p.a.is_disjoint(&p.b) {
                return Err(VerifyFailure::BadSides);
            }
            if p.a.is_empty() || p.b.is_empty() {
                return Err(VerifyFailure::EmptySide);
            }
            if !c.le_ratio(2 * p.a.len() as u64, g.n() as u64) {
                return Err(VerifyFailure::ATooSmall { a: p.a.len() });
            }
            if 16 * p.b.len() < g.n() {
                return Err(VerifyFailure::BTooSmall { b: p.b.len() });
            }
            let actual = g
                .density_between(&p.a, &p.b)
                .map_err(|_| VerifyFailure::BadSides)?;
            if actual != p.density {
                return Err(VerifyFailure::DensityMismatch {
                    reported: p.density,
                    actual,
                });
            }
            if actual >= c {
                return Err(VerifyFailure::DensityNotBelowC { density: actual, c });
            }
            Ok(())
        }
    }
}

fn verify_c5_cycle(g: &Graph, cycle: &[usize; 5]) -> Result<(), VerifyFailure> {
    for &v in cycle {
        if v >= g.n() {
            return Err(VerifyFailure::CycleOutOfRange(v));
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            if cycle[i] == cycle[j] {
                return Err(VerifyFailure::DuplicateVertex(cycle[i]));
            }
            let consecutive = j == i + 1 || (i == 0 && j == 4);
            let adjacent = g.has_edge(cycle[i], cycle[j]);
            if consecutive && !adjacent {
                return Err(VerifyFailure::MissingCycleEdge {
                    u: cycle[i],
                    v: cycle[j],
                });
            }
            if !consecutive && adjacent {
                return Err(VerifyFailure::ExtraAdjacency {
                    u: cycle[i],
                    v: cycle[j],
                });
            }
        }
    }
    debug_assert!(oracle::verify_induced_c5(g, cycle));
    Ok(())
}
