//! Exact checks and exponential-time oracles for small graphs.

use super::{Graph, GraphError, Matching, VertexSet};

pub const ALPHA_LIMIT: usize = 40;

/// True iff `s` is independent in `g` and dominates it.
pub fn verify_mis(g: &Graph, s: &VertexSet) -> bool {
    if s.host_n() != g.n() {
        return false;
    }
    let mask = s.mask();
    let mut covered = mask.clone();
    for &v in s.members() {
        for u in g.neighbors(v) {
            if mask[u as usize] {
                return false;
            }
            covered[u as usize] = true;
        }
    }
    covered.iter().all(|&c| c)
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let mask = s.mask();
    s.members()
        .iter()
        .all(|&v| g.neighbors(v).all(|u| !mask[u as usize]))
}

/// True iff `m` is a matching of `g` and no edge has both endpoints free.
pub fn verify_maximal_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in m.pairs() {
        if v as usize >= g.n() || !g.has_edge(u, v) {
            return false;
        }
        for x in [u, v] {
            if std::mem::replace(&mut used[x as usize], true) {
                return false;
            }
        }
    }
    (0..g.n() as u32)
        .filter(|&u| !used[u as usize])
        .all(|u| g.neighbors(u).all(|v| used[v as usize]))
}

/// Exact independence number by branch-and-bound.
pub fn brute_alpha(g: &Graph) -> Result<usize, GraphError> {
    if g.n() > ALPHA_LIMIT {
        return Err(GraphError::OracleLimit {
            what: "vertex count",
            value: g.n(),
            limit: ALPHA_LIMIT,
        });
    }
    let adj: Vec<u64> = (0..g.n() as u32)
        .map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u))
        .collect();
    Ok(alpha_masks(&adj, full_mask(g.n())))
}

/// `max_v α(G[N(v)])`; zero for edgeless graphs.
pub fn brute_beta(g: &Graph) -> Result<usize, GraphError> {
    let delta = g.max_degree() as usize;
    if delta > ALPHA_LIMIT {
        return Err(GraphError::OracleLimit {
            what: "maximum degree",
            value: delta,
            limit: ALPHA_LIMIT,
        });
    }
    let mut best = 0;
    for v in 0..g.n() as u32 {
        let nbrs: Vec<u32> = g.neighbors(v).collect();
        if nbrs.is_empty() {
            continue;
        }
        best = best.max(brute_alpha(&g.induced(&nbrs))?);
    }
    Ok(best)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// α of the graph given by neighbourhood masks, restricted to `cand`.
pub(crate) fn alpha_masks(adj: &[u64], cand: u64) -> usize {
    let mut best = 0;
    branch(adj, cand, 0, &mut best);
    best
}

fn branch(adj: &[u64], mut cand: u64, mut size: usize, best: &mut usize) {
    // Vertices with at most one candidate neighbour can always be taken.
    loop {
        let mut progressed = false;
        let mut scan = cand;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if cand >> v & 1 == 0 {
                continue;
            }
            if (adj[v] & cand).count_ones() <= 1 {
                size += 1;
                cand &= !(adj[v] | 1 << v);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover_bound(adj, cand) <= *best {
        return;
    }
    // branch on the candidate of maximum degree
    let mut pick = 0;
    let mut pick_deg = 0;
    let mut scan = cand;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = (adj[v] & cand).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    branch(adj, cand & !(adj[pick] | 1 << pick), size + 1, best);
    branch(adj, cand & !(1 << pick), size, best);
}

/// Number of cliques in a greedy clique cover of `cand`; an independent set
/// takes at most one vertex from each.
fn clique_cover_bound(adj: &[u64], mut cand: u64) -> usize {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        let mut common = adj[v] & cand;
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            cand &= !(1 << w);
            common &= adj[w] & !(1 << w);
        }
        cliques += 1;
    }
    cliques
}
