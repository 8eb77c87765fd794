//! Cograph recognition, canonical cotrees, and the perfect-graph dynamic
//! program for maximum stable set and clique.
//!
//! Decomposition rule: a graph on two or more vertices is a cograph iff it or
//! its complement is disconnected and all parts are cographs. Components are
//! computed with bit-rows, O(n^2) overall.

use crate::graph::{Graph, VertexSet};
use crate::oracle;
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CographError {
    #[error("not a cograph: vertices {p4:?} induce a P4")]
    NotCograph { p4: [usize; 4] },
    #[error("cannot build a cotree for an empty graph")]
    Empty,
    #[error("invalid cotree term: {0}")]
    InvalidTerm(String),
}

/// Canonical decomposition tree of a cograph: leaves are vertex indices,
/// internal nodes alternate between disjoint union and join, children are
/// ordered by minimum leaf index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    n: usize,
    root: CotreeNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(usize),
    Union(Vec<CotreeNode>),
    Join(Vec<CotreeNode>),
}

impl CotreeNode {
    fn min_leaf(&self) -> usize {
        match self {
            CotreeNode::Leaf(v) => *v,
            CotreeNode::Union(ch) | CotreeNode::Join(ch) => {
                ch.iter().map(|c| c.min_leaf()).min().unwrap()
            }
        }
    }

    fn leaves_into(&self, out: &mut Vec<usize>) {
        match self {
            CotreeNode::Leaf(v) => out.push(*v),
            CotreeNode::Union(ch) | CotreeNode::Join(ch) => {
                for c in ch {
                    c.leaves_into(out);
                }
            }
        }
    }
}

impl Cotree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &CotreeNode {
        &self.root
    }

    pub fn leaf_count(&self) -> usize {
        let mut leaves = Vec::new();
        self.root.leaves_into(&mut leaves);
        leaves.len()
    }

    /// Rebuilds the graph the cotree describes: union children stay
    /// anticomplete, join children become complete to one another.
    pub fn rebuild(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        fn walk(node: &CotreeNode, g: &mut Graph) -> Vec<usize> {
            match node {
                CotreeNode::Leaf(v) => vec![*v],
                CotreeNode::Union(ch) => {
                    let mut all = Vec::new();
                    for c in ch {
                        all.extend(walk(c, g));
                    }
                    all
                }
                CotreeNode::Join(ch) => {
                    let parts: Vec<Vec<usize>> = ch.iter().map(|c| walk(c, g)).collect();
                    for i in 0..parts.len() {
                        for j in (i + 1)..parts.len() {
                            for &u in &parts[i] {
                                for &v in &parts[j] {
                                    g.add_edge(u, v).unwrap();
                                }
                            }
                        }
                    }
                    parts.into_iter().flatten().collect()
                }
            }
        }
        walk(&self.root, &mut g);
        g
    }
}

/// True iff `g` has no induced P4.
pub fn is_cograph(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    build_cotree(g).is_ok()
}

/// Builds the canonical cotree; fails with an induced-P4 certificate.
pub fn build_cotree(g: &Graph) -> Result<Cotree, CographError> {
    if g.n() == 0 {
        return Err(CographError::Empty);
    }
    let full = VertexSet::full(g.n());
    let root = build_node(g, full.bits())?;
    Ok(Cotree { n: g.n(), root })
}

fn build_node(g: &Graph, s: &FixedBitSet) -> Result<CotreeNode, CographError> {
    let size = s.count_ones(..);
    debug_assert!(size >= 1);
    if size == 1 {
        return Ok(CotreeNode::Leaf(s.minimum().unwrap()));
    }

    let comps = components_within(g, s, false);
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|c| build_node(g, c))
            .collect::<Result<Vec<_>, _>>()?;
        debug_assert!(children.iter().all(|c| !matches!(c, CotreeNode::Union(_))));
        debug_assert!(children
            .windows(2)
            .all(|w| w[0].min_leaf() < w[1].min_leaf()));
        return Ok(CotreeNode::Union(children));
    }

    let co_comps = components_within(g, s, true);
    if co_comps.len() > 1 {
        let children = co_comps
            .iter()
            .map(|c| build_node(g, c))
            .collect::<Result<Vec<_>, _>>()?;
        debug_assert!(children.iter().all(|c| !matches!(c, CotreeNode::Join(_))));
        debug_assert!(children
            .windows(2)
            .all(|w| w[0].min_leaf() < w[1].min_leaf()));
        return Ok(CotreeNode::Join(children));
    }

    // connected and co-connected on >= 2 vertices: must contain a P4
    match oracle::find_induced_p4_within(g, s) {
        Some(p4) => Err(CographError::NotCograph { p4 }),
        None => unreachable!("a connected, co-connected graph on >= 2 vertices contains a P4"),
    }
}

/// Connected components of `g[s]` (or of the complement restricted to `s`),
/// in increasing order of their minimum vertex.
fn components_within(g: &Graph, s: &FixedBitSet, complement: bool) -> Vec<FixedBitSet> {
    let mut unseen = s.clone();
    let mut out = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    while let Some(start) = unseen.minimum() {
        let mut comp = FixedBitSet::with_capacity(s.len());
        comp.insert(start);
        unseen.remove(start);
        frontier.clear();
        frontier.push(start);
        while let Some(v) = frontier.pop() {
            let mut nbrs = if complement {
                let mut m = unseen.clone();
                m.difference_with(g.row(v));
                m
            } else {
                let mut m = g.row(v).clone();
                m.intersect_with(&unseen);
                m
            };
            nbrs.remove(v);
            for u in nbrs.ones() {
                comp.insert(u);
                frontier.push(u);
            }
            unseen.difference_with(&nbrs);
        }
        out.push(comp);
    }
    out
}

/// Stable-set and clique witnesses with `|stable| * |clique| >= n`.
#[derive(Debug, Clone, Serialize)]
pub struct PerfectWitness {
    pub stable: VertexSet,
    pub clique: VertexSet,
}

/// DP over the cotree: union sums alpha and maxes omega, join mirrors it.
/// Ties go to the child with the smaller minimum leaf index (children are in
/// canonical order, so the first maximum wins).
pub fn alpha_omega(t: &Cotree) -> PerfectWitness {
    struct Out {
        stable: Vec<usize>,
        clique: Vec<usize>,
    }

    fn walk(node: &CotreeNode) -> Out {
        match node {
            CotreeNode::Leaf(v) => Out {
                stable: vec![*v],
                clique: vec![*v],
            },
            CotreeNode::Union(ch) => {
                let parts: Vec<Out> = ch.iter().map(walk).collect();
                let stable = parts
                    .iter()
                    .flat_map(|p| p.stable.iter().copied())
                    .collect();
                let best_len = parts.iter().map(|p| p.clique.len()).max().unwrap();
                let first = parts.iter().find(|p| p.clique.len() == best_len).unwrap();
                Out {
                    stable,
                    clique: first.clique.clone(),
                }
            }
            CotreeNode::Join(ch) => {
                let parts: Vec<Out> = ch.iter().map(walk).collect();
                let clique = parts
                    .iter()
                    .flat_map(|p| p.clique.iter().copied())
                    .collect();
                let best_len = parts.iter().map(|p| p.stable.len()).max().unwrap();
                let first = parts.iter().find(|p| p.stable.len() == best_len).unwrap();
                Out {
                    clique,
                    stable: first.stable.clone(),
                }
            }
        }
    }

    let out = walk(&t.root);
    let leaves = t.leaf_count();
    assert!(
        out.stable.len() * out.clique.len() >= leaves,
        "perfectness product violated: {} * {} < {}",
        out.stable.len(),
        out.clique.len(),
        leaves
    );
    PerfectWitness {
        stable: VertexSet::from_indices(t.n, out.stable).unwrap(),
        clique: VertexSet::from_indices(t.n, out.clique).unwrap(),
    }
}

// ---------------------------------------------------------------------------
// JSON term form: {"leaf": v} | {"op": "union"|"join", "children": [...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermRepr {
    Leaf { leaf: usize },
    Internal { op: OpKind, children: Vec<TermRepr> },
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum OpKind {
    Union,
    Join,
}

fn to_repr(node: &CotreeNode) -> TermRepr {
    match node {
        CotreeNode::Leaf(v) => TermRepr::Leaf { leaf: *v },
        CotreeNode::Union(ch) => TermRepr::Internal {
            op: OpKind::Union,
            children: ch.iter().map(to_repr).collect(),
        },
        CotreeNode::Join(ch) => TermRepr::Internal {
            op: OpKind::Join,
            children: ch.iter().map(to_repr).collect(),
        },
    }
}

fn from_repr(repr: TermRepr) -> Result<CotreeNode, CographError> {
    Ok(match repr {
        TermRepr::Leaf { leaf } => CotreeNode::Leaf(leaf),
        TermRepr::Internal { op, children } => {
            if children.len() < 2 {
                return Err(CographError::InvalidTerm(
                    "internal node needs at least two children".into(),
                ));
            }
            let ch = children
                .into_iter()
                .map(from_repr)
                .collect::<Result<Vec<_>, _>>()?;
            match op {
                OpKind::Union => CotreeNode::Union(ch),
                OpKind::Join => CotreeNode::Join(ch),
            }
        }
    })
}

impl Cotree {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&to_repr(&self.root)).unwrap()
    }

    /// Parses the JSON term form; leaves must biject with `0..leaf_count`.
    pub fn from_json(text: &str) -> Result<Cotree, CographError> {
        let repr: TermRepr =
            serde_json::from_str(text).map_err(|e| CographError::InvalidTerm(e.to_string()))?;
        let root = from_repr(repr)?;
        let mut leaves = Vec::new();
        root.leaves_into(&mut leaves);
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n || seen[v] {
                return Err(CographError::InvalidTerm(format!(
                    "leaves do not biject with 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Cotree { n, root })
    }
}
