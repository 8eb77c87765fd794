//! Seeded graph generators for the test harness.
//!
//! Every generator draws from `rand_chacha::ChaCha8Rng` seeded with
//! `GenSpec.seed`, in a fixed order, so an identical spec produces a
//! byte-identical graph. The cograph, bipartite, chordal and split families
//! are C5-free by class membership; `repair-c5free` destroys found copies
//! one by one.

use crate::frac::Frac;
use crate::graph::Graph;
use crate::oracle::{self, OracleLimits};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gnp,
    Cograph,
    Bipartite,
    Chordal,
    Split,
    #[serde(rename = "repair-c5free")]
    RepairC5free,
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gnp" => Ok(Family::Gnp),
            "cograph" => Ok(Family::Cograph),
            "bipartite" => Ok(Family::Bipartite),
            "chordal" => Ok(Family::Chordal),
            "split" => Ok(Family::Split),
            "repair-c5free" => Ok(Family::RepairC5free),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Gnp => "gnp",
            Family::Cograph => "cograph",
            Family::Bipartite => "bipartite",
            Family::Chordal => "chordal",
            Family::Split => "split",
            Family::RepairC5free => "repair-c5free",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Frac>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("repair on {n} vertices exceeds the {limit}-vertex scan limit")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("repair did not converge within {cap} iterations")]
    IterationCapExceeded { cap: usize },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    generate_with(spec, &OracleLimits::default())
}

pub fn generate_with(spec: &GenSpec, limits: &OracleLimits) -> Result<Graph, GenError> {
    if spec.n == 0 {
        return Err(GenError::InvalidSpec("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Gnp => Ok(gnp(spec, &mut rng)?),
        Family::Cograph => Ok(cograph(spec.n, &mut rng)),
        Family::Bipartite => Ok(bipartite(spec, &mut rng)?),
        Family::Chordal => Ok(chordal(spec, &mut rng)),
        Family::Split => Ok(split(spec, &mut rng)?),
        Family::RepairC5free => repair_c5free(spec, limits, &mut rng),
    }
}

/// Edge probability as an exact coin; errors if the spec has no usable p.
fn coin(spec: &GenSpec) -> Result<(u32, u32), GenError> {
    let p = spec
        .p
        .ok_or_else(|| GenError::InvalidSpec(format!("family {} needs p", spec.family)))?;
    let p = p.reduced();
    if p.num() > p.den() {
        return Err(GenError::InvalidSpec(format!("p = {p} exceeds 1")));
    }
    let (num, den) = (p.num(), p.den());
    if den > u32::MAX as u64 {
        return Err(GenError::InvalidSpec(format!(
            "p = {p} has a denominator beyond u32 after reduction"
        )));
    }
    Ok((num as u32, den as u32))
}

fn gnp(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    let (num, den) = coin(spec)?;
    let cap = spec.degree_cap.unwrap_or(usize::MAX);
    let n = spec.n;
    let mut g = Graph::edgeless(n);
    let mut deg = vec![0usize; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_ratio(num, den) && deg[u] < cap && deg[v] < cap {
                g.add_edge(u, v).unwrap();
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Ok(g)
}

/// Random cotree: shuffle, split into 2..=4 contiguous parts at random cut
/// points, label union/join uniformly, recurse.
fn cograph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::edgeless(n);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    cograph_rec(&mut g, &verts, rng);
    g
}

fn cograph_rec(g: &mut Graph, verts: &[usize], rng: &mut ChaCha8Rng) {
    let len = verts.len();
    if len <= 1 {
        return;
    }
    let join = rng.random_bool(0.5);
    let k = rng.random_range(2..=len.min(4));
    // k - 1 distinct cut points inside 1..len
    let mut cuts: Vec<usize> = (1..len).collect();
    cuts.shuffle(rng);
    cuts.truncate(k - 1);
    cuts.sort_unstable();
    cuts.push(len);
    let mut parts: Vec<&[usize]> = Vec::with_capacity(k);
    let mut start = 0;
    for &end in &cuts {
        parts.push(&verts[start..end]);
        start = end;
    }
    if join {
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                for &u in parts[i] {
                    for &v in parts[j] {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
        }
    }
    for part in parts {
        cograph_rec(g, part, rng);
    }
}

fn bipartite(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    let (num, den) = coin(spec)?;
    let cap = spec.degree_cap.unwrap_or(usize::MAX);
    let n = spec.n;
    let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut g = Graph::edgeless(n);
    let mut deg = vec![0usize; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if side[u] != side[v] && rng.random_ratio(num, den) && deg[u] < cap && deg[v] < cap {
                g.add_edge(u, v).unwrap();
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Ok(g)
}

/// Chordal via a perfect elimination ordering built forward: each new vertex
/// attaches to a random subset of the clique formed by a random predecessor
/// and that predecessor's earlier neighbors.
fn chordal(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Graph {
    let n = spec.n;
    let cap = spec.degree_cap.unwrap_or(n);
    let mut g = Graph::edgeless(n);
    let mut deg = vec![0usize; n];
    // earlier_nbrs[v] = neighbors of v with index < v; always a clique
    let mut earlier_nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        let mut candidates: Vec<usize> = Vec::with_capacity(earlier_nbrs[u].len() + 1);
        candidates.push(u);
        candidates.extend(earlier_nbrs[u].iter().copied());
        candidates.retain(|&w| deg[w] < cap);
        let budget = cap.min(candidates.len());
        let take = if budget == 0 {
            0
        } else {
            rng.random_range(0..=budget)
        };
        candidates.shuffle(rng);
        candidates.truncate(take);
        candidates.sort_unstable();
        for &w in &candidates {
            g.add_edge(w, v).unwrap();
            deg[w] += 1;
            deg[v] += 1;
        }
        earlier_nbrs[v] = candidates;
    }
    g
}

fn split(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    let (num, den) = coin(spec)?;
    let n = spec.n;
    let cap = spec.degree_cap.unwrap_or(n);
    // clique side small enough that internal degree s-1 respects the cap
    let max_clique = n.min(cap + 1).max(1);
    let s = rng.random_range(1..=max_clique);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let clique: Vec<usize> = order[..s].to_vec();
    let mut g = Graph::edgeless(n);
    let mut deg = vec![0usize; n];
    for i in 0..clique.len() {
        for j in (i + 1)..clique.len() {
            g.add_edge(clique[i], clique[j]).unwrap();
            deg[clique[i]] += 1;
            deg[clique[j]] += 1;
        }
    }
    let in_clique: Vec<bool> = {
        let mut m = vec![false; n];
        for &v in &clique {
            m[v] = true;
        }
        m
    };
    for u in 0..n {
        for v in (u + 1)..n {
            if in_clique[u] != in_clique[v]
                && rng.random_ratio(num, den)
                && deg[u] < cap
                && deg[v] < cap
            {
                g.add_edge(u, v).unwrap();
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Ok(g)
}

/// G(n, p), then destroy induced C5s one at a time: a seeded coin picks
/// between deleting a random cycle edge and adding a random chord.
fn repair_c5free(
    spec: &GenSpec,
    limits: &OracleLimits,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, GenError> {
    if spec.n > limits.c5_scan {
        return Err(GenError::SizeLimitExceeded {
            n: spec.n,
            limit: limits.c5_scan,
        });
    }
    let mut g = gnp(spec, rng)?;
    let cap = 10 * g.edge_count() + 1000;
    for _ in 0..cap {
        let Some(cycle) = oracle::find_induced_c5(&g) else {
            return Ok(g);
        };
        if rng.random_bool(0.5) {
            let k = rng.random_range(0..5);
            g.remove_edge(cycle[k], cycle[(k + 1) % 5]);
        } else {
            let k = rng.random_range(0..5);
            g.add_edge(cycle[k], cycle[(k + 2) % 5]).unwrap();
        }
    }
    if oracle::find_induced_c5(&g).is_none() {
        Ok(g)
    } else {
        Err(GenError::IterationCapExceeded { cap })
    }
}
