//! Ground-truth brute-force oracles: exhaustive induced-C5 search, induced-P4
//! search, maximum induced cograph, and exact alpha/omega.
//!
//! These are the independent checks everything else is verified against, so
//! they share no state with the constructive modules. Size caps live in
//! [`OracleLimits`] and default to values that finish in seconds.

use crate::graph::{Graph, VertexSet};
use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph with {n} vertices exceeds the {limit}-vertex oracle limit")]
    SizeLimitExceeded { n: usize, limit: usize },
}

/// Size caps for the exhaustive oracles. Configuration constants, not
/// hard-coded magic: raise them explicitly if you can afford the scan.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// `max_cograph` subset search.
    pub max_cograph: usize,
    /// `alpha_omega_exact` branch and bound.
    pub alpha_omega: usize,
    /// `count_induced_c5` full enumeration (the finder has no cap).
    pub c5_scan: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_cograph: 20,
            alpha_omega: 40,
            c5_scan: 400,
        }
    }
}

/// True iff `cycle` lists five distinct in-range vertices whose only
/// adjacencies are the five consecutive (cyclic) pairs.
pub fn verify_induced_c5(g: &Graph, cycle: &[usize; 5]) -> bool {
    for &v in cycle {
        if v >= g.n() {
            return false;
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            if cycle[i] == cycle[j] {
                return false;
            }
            let consecutive = j == i + 1 || (i == 0 && j == 4);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Bits `(v, n)` set, i.e. the vertices strictly above `v`.
fn above(n: usize, v: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    if v + 1 < n {
        b.insert_range(v + 1..);
    }
    b
}

/// Visits every induced C5 whose minimum vertex is `a`, in canonical cycle
/// order `a-b-c-d-e` with `b < e`. The callback returns `true` to keep going.
fn for_each_c5_at<F: FnMut([usize; 5]) -> bool>(g: &Graph, a: usize, f: &mut F) -> bool {
    let n = g.n();
    let gt_a = above(n, a);
    let ra = g.row(a);

    let mut b_mask = ra.clone();
    b_mask.intersect_with(&gt_a);
    for b in b_mask.ones() {
        let gt_b = above(n, b);
        // c adjacent to b, nonadjacent to a, above a
        let mut c_mask = g.row(b).clone();
        c_mask.intersect_with(&gt_a);
        c_mask.difference_with(ra);
        for c in c_mask.ones() {
            // d adjacent to c, nonadjacent to a and b, above a, d != b
            let mut d_mask = g.row(c).clone();
            d_mask.intersect_with(&gt_a);
            d_mask.difference_with(ra);
            d_mask.difference_with(g.row(b));
            d_mask.remove(b);
            for d in d_mask.ones() {
                // e adjacent to d and a, nonadjacent to b and c, above b
                let mut e_mask = g.row(d).clone();
                e_mask.intersect_with(ra);
                e_mask.intersect_with(&gt_b);
                e_mask.difference_with(g.row(b));
                e_mask.difference_with(g.row(c));
                for e in e_mask.ones() {
                    if !f([a, b, c, d, e]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Exhaustive induced-C5 finder with early exit; no size cap.
///
/// Returns the lexicographically least witness 5-set, as a canonical cycle
/// (minimum vertex first, then its smaller cycle-neighbor).
pub fn find_induced_c5(g: &Graph) -> Option<[usize; 5]> {
    for a in 0..g.n() {
        let mut best: Option<([usize; 5], [usize; 5])> = None; // (sorted, cycle)
        for_each_c5_at(g, a, &mut |cyc| {
            let mut sorted = cyc;
            sorted.sort_unstable();
            match &best {
                Some((s, _)) if *s <= sorted => {}
                _ => best = Some((sorted, cyc)),
            }
            true
        });
        if let Some((_, cyc)) = best {
            return Some(cyc);
        }
    }
    None
}

/// Exhaustive induced-C5 count (each copy counted once).
pub fn count_induced_c5(g: &Graph) -> Result<u64, OracleError> {
    count_induced_c5_with(g, &OracleLimits::default())
}

pub fn count_induced_c5_with(g: &Graph, limits: &OracleLimits) -> Result<u64, OracleError> {
    if g.n() > limits.c5_scan {
        return Err(OracleError::SizeLimitExceeded {
            n: g.n(),
            limit: limits.c5_scan,
        });
    }
    let mut count = 0u64;
    for a in 0..g.n() {
        for_each_c5_at(g, a, &mut |_| {
            count += 1;
            true
        });
    }
    Ok(count)
}

/// First induced P4 in scan order, as a path `a-b-c-d`; `None` iff the graph
/// is a cograph. Exhaustive but early-exiting; no size cap.
pub fn find_induced_p4(g: &Graph) -> Option<[usize; 4]> {
    let full = VertexSet::full(g.n());
    find_induced_p4_within(g, full.bits())
}

/// Induced-P4 search restricted to the vertices of `s`.
pub fn find_induced_p4_within(g: &Graph, s: &FixedBitSet) -> Option<[usize; 4]> {
    for a in s.ones() {
        let mut b_mask = g.row(a).clone();
        b_mask.intersect_with(s);
        for b in b_mask.ones() {
            // c adjacent to b, nonadjacent to a
            let mut c_mask = g.row(b).clone();
            c_mask.intersect_with(s);
            c_mask.difference_with(g.row(a));
            c_mask.remove(a);
            for c in c_mask.ones() {
                // d adjacent to c, nonadjacent to a and b; a,b excluded
                // automatically (a,b are neighbors of b,c respectively)
                let mut d_mask = g.row(c).clone();
                d_mask.intersect_with(s);
                d_mask.difference_with(g.row(a));
                d_mask.difference_with(g.row(b));
                d_mask.remove(a);
                if let Some(d) = d_mask.minimum() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// Maximum-cardinality subset inducing a P4-free graph; lexicographically
/// least among the maximizers. Subset DFS with P4-extension pruning.
pub fn max_cograph(g: &Graph) -> Result<VertexSet, OracleError> {
    max_cograph_with(g, &OracleLimits::default())
}

pub fn max_cograph_with(g: &Graph, limits: &OracleLimits) -> Result<VertexSet, OracleError> {
    let n = g.n();
    // the u32 rows below cap the search at 32 regardless of the config
    if n > limits.max_cograph.min(32) {
        return Err(OracleError::SizeLimitExceeded {
            n,
            limit: limits.max_cograph.min(32),
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();

    // Extending a P4-free set by v stays P4-free iff no triple of the current
    // set forms a P4 with v: exactly 3 edges and all inner degrees in {1, 2}.
    fn extension_ok(adj: &[u32], cur: &[usize], v: usize) -> bool {
        let m = cur.len();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let quad = [cur[i], cur[j], cur[k], v];
                    let mask = quad.iter().fold(0u32, |m, &x| m | (1 << x));
                    let mut edges = 0;
                    let mut ok = true;
                    for &x in &quad {
                        let d = (adj[x] & mask).count_ones();
                        if d == 0 || d == 3 {
                            ok = false;
                            break;
                        }
                        edges += d;
                    }
                    if ok && edges == 6 {
                        return false; // degrees (1,2,2,1), 3 edges: a P4
                    }
                }
            }
        }
        true
    }

    fn dfs(adj: &[u32], n: usize, v: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (n - v) <= best.len() {
            return; // ties are lexicographically later; prune them too
        }
        if v == n {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        if extension_ok(adj, cur, v) {
            cur.push(v);
            dfs(adj, n, v + 1, cur, best);
            cur.pop();
        }
        dfs(adj, n, v + 1, cur, best);
    }

    let mut best = Vec::new();
    let mut cur = Vec::new();
    dfs(&adj, n, 0, &mut cur, &mut best);
    Ok(VertexSet::from_indices(n, best).unwrap())
}

/// Exact maximum stable set and maximum clique, as witness sets.
pub fn alpha_omega_exact(g: &Graph) -> Result<(VertexSet, VertexSet), OracleError> {
    alpha_omega_exact_with(g, &OracleLimits::default())
}

pub fn alpha_omega_exact_with(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(VertexSet, VertexSet), OracleError> {
    let n = g.n();
    // the u64 masks below cap the search at 64 regardless of the config
    if n > limits.alpha_omega.min(64) {
        return Err(OracleError::SizeLimitExceeded {
            n,
            limit: limits.alpha_omega.min(64),
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, u| m | (1 << u)))
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co_adj: Vec<u64> = (0..n).map(|v| full & !adj[v] & !(1u64 << v)).collect();

    let clique = max_clique_mask(&adj, n);
    let stable = max_clique_mask(&co_adj, n);
    let to_set =
        |mask: u64| VertexSet::from_indices(n, (0..n).filter(|&v| mask & (1 << v) != 0)).unwrap();
    Ok((to_set(stable), to_set(clique)))
}

/// Branch and bound maximum clique over u64 adjacency masks, with a greedy
/// coloring bound (Tomita-style). Deterministic: fixed vertex order
/// everywhere.
fn max_clique_mask(adj: &[u64], n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut best = (0u32, 0u64);
    let cand: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand_clique(adj, cand, 0, 0, &mut best);
    best.1
}

fn expand_clique(adj: &[u64], cand: u64, cur: u64, cur_size: u32, best: &mut (u32, u64)) {
    if cand == 0 {
        if cur_size > best.0 {
            *best = (cur_size, cur);
        }
        return;
    }
    // greedy sequential coloring; vertices come out ordered by color class
    let mut order: Vec<(usize, u32)> = Vec::with_capacity(cand.count_ones() as usize);
    let mut rest = cand;
    let mut color = 0u32;
    while rest != 0 {
        color += 1;
        let mut class = rest;
        while class != 0 {
            let v = class.trailing_zeros() as usize;
            class &= !(1u64 << v);
            class &= !adj[v];
            rest &= !(1u64 << v);
            order.push((v, color));
        }
    }
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if cur_size + c <= best.0 {
            return; // colors only decrease from here
        }
        expand_clique(adj, cand & adj[v], cur | (1u64 << v), cur_size + 1, best);
        cand &= !(1u64 << v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{c5, petersen, Graph};

    #[test]
    fn c5_fixtures() {
        let pentagon = c5();
        assert_eq!(count_induced_c5(&pentagon).unwrap(), 1);
        let found = find_induced_c5(&pentagon).unwrap();
        assert!(verify_induced_c5(&pentagon, &found));
        assert_eq!(found, [0, 1, 2, 3, 4]);

        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(count_induced_c5(&c4).unwrap(), 0);
        assert!(find_induced_c5(&c4).is_none());
    }

    #[test]
    fn petersen_has_twelve_pentagons() {
        let p = petersen();
        assert_eq!(count_induced_c5(&p).unwrap(), 12);
        let found = find_induced_c5(&p).unwrap();
        assert!(verify_induced_c5(&p, &found));
    }

    #[test]
    fn c5_with_chord_is_not_induced() {
        let mut g = c5();
        g.add_edge(0, 2).unwrap();
        assert!(!verify_induced_c5(&g, &[0, 1, 2, 3, 4]));
        assert_eq!(count_induced_c5(&g).unwrap(), 0);
    }

    #[test]
    fn verify_rejects_duplicates_and_range() {
        let pentagon = c5();
        assert!(!verify_induced_c5(&pentagon, &[0, 1, 2, 3, 0]));
        assert!(!verify_induced_c5(&pentagon, &[0, 1, 2, 3, 9]));
    }

    #[test]
    fn count_respects_limit() {
        let g = Graph::edgeless(401);
        assert!(matches!(
            count_induced_c5(&g),
            Err(OracleError::SizeLimitExceeded { .. })
        ));
        let limits = OracleLimits {
            c5_scan: 500,
            ..Default::default()
        };
        assert_eq!(count_induced_c5_with(&g, &limits).unwrap(), 0);
    }

    #[test]
    fn p4_finder() {
        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let found = find_induced_p4(&p4).unwrap();
        assert_eq!(found, [0, 1, 2, 3]);
        let k4 = Graph::complete(4);
        assert!(find_induced_p4(&k4).is_none());
        // C5 minus a vertex is P4
        assert!(find_induced_p4(&c5()).is_some());
    }

    #[test]
    fn max_cograph_examples() {
        // a cograph keeps all its vertices
        let k4 = Graph::complete(4);
        assert_eq!(max_cograph(&k4).unwrap().len(), 4);

        // every 4-subset of C5 induces P4
        let best = max_cograph(&c5()).unwrap();
        assert_eq!(best.len(), 3);
        assert_eq!(best.to_vec(), vec![0, 1, 2]); // lexicographically least

        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(max_cograph(&p4).unwrap().len(), 3);

        assert!(max_cograph(&Graph::edgeless(21)).is_err());
    }

    #[test]
    fn alpha_omega_fixtures() {
        let (s, c) = alpha_omega_exact(&c5()).unwrap();
        assert_eq!((s.len(), c.len()), (2, 2));

        let (s, c) = alpha_omega_exact(&Graph::complete(5)).unwrap();
        assert_eq!((s.len(), c.len()), (1, 5));

        let (s, c) = alpha_omega_exact(&petersen()).unwrap();
        assert_eq!((s.len(), c.len()), (4, 2));
        // witnesses actually are stable / clique
        for u in s.iter() {
            for v in s.iter() {
                assert!(u == v || !petersen().has_edge(u, v));
            }
        }
        for u in c.iter() {
            for v in c.iter() {
                assert!(u == v || petersen().has_edge(u, v));
            }
        }

        assert!(alpha_omega_exact(&Graph::edgeless(41)).is_err());
    }

    /// Independent naive enumerator: for every subset size from n down,
    /// scan all subsets for a stable set / clique.
    fn naive_alpha_omega(g: &Graph) -> (usize, usize) {
        let n = g.n();
        assert!(n <= 20);
        let mut alpha = 0;
        let mut omega = 0;
        for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let mut stable = true;
            let mut clique = true;
            for i in 0..verts.len() {
                for j in (i + 1)..verts.len() {
                    if g.has_edge(verts[i], verts[j]) {
                        stable = false;
                    } else {
                        clique = false;
                    }
                }
            }
            if stable {
                alpha = alpha.max(verts.len());
            }
            if clique {
                omega = omega.max(verts.len());
            }
        }
        (alpha, omega)
    }

    #[test]
    fn branch_and_bound_matches_naive() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xa1fa);
        for trial in 0..30 {
            let n = 6 + (trial % 10);
            let mut g = Graph::edgeless(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rand::Rng::random_bool(&mut rng, 0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let (s, c) = alpha_omega_exact(&g).unwrap();
            let (alpha, omega) = naive_alpha_omega(&g);
            assert_eq!(s.len(), alpha, "alpha mismatch on trial {trial}");
            assert_eq!(c.len(), omega, "omega mismatch on trial {trial}");
        }
    }

    /// Brute force over all 4-subsets, used to cross-check the scan finder.
    fn p4_exists_brute(g: &Graph) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let quad = [a, b, c, d];
                        let mut edges = 0;
                        let mut degs = [0usize; 4];
                        for i in 0..4 {
                            for j in (i + 1)..4 {
                                if g.has_edge(quad[i], quad[j]) {
                                    edges += 1;
                                    degs[i] += 1;
                                    degs[j] += 1;
                                }
                            }
                        }
                        if edges == 3 && degs.iter().all(|&d| d == 1 || d == 2) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn p4_scan_matches_brute_force() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xbeef);
        for trial in 0..40 {
            let n = 4 + (trial % 12);
            let mut g = Graph::edgeless(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rand::Rng::random_bool(&mut rng, 0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(find_induced_p4(&g).is_some(), p4_exists_brute(&g));
            if let Some(p4) = find_induced_p4(&g) {
                assert!(g.has_edge(p4[0], p4[1]));
                assert!(g.has_edge(p4[1], p4[2]));
                assert!(g.has_edge(p4[2], p4[3]));
                assert!(!g.has_edge(p4[0], p4[2]));
                assert!(!g.has_edge(p4[0], p4[3]));
                assert!(!g.has_edge(p4[1], p4[3]));
            }
        }
    }
}
