//! Lexicographically-first MIS and maximal matching.

use super::{Graph, GraphError, Matching, VertexSet};

/// Greedy MIS scanning vertices in `order`.
pub fn lfmis(g: &Graph, order: &[u32]) -> Result<VertexSet, GraphError> {
    check_permutation(order, g.n())?;
    Ok(lfmis_unchecked(g, order.iter().copied()))
}

/// Greedy MIS in ascending id order.
pub fn lfmis_ascending(g: &Graph) -> VertexSet {
    lfmis_unchecked(g, 0..g.n() as u32)
}

fn lfmis_unchecked(g: &Graph, order: impl Iterator<Item = u32>) -> VertexSet {
    let mut covered = vec![false; g.n()];
    let mut chosen = vec![false; g.n()];
    for v in order {
        if covered[v as usize] {
            continue;
        }
        chosen[v as usize] = true;
        covered[v as usize] = true;
        for u in g.neighbors(v) {
            covered[u as usize] = true;
        }
    }
    VertexSet::from_mask(&chosen)
}

/// Greedy matching over `edge_order`, which must list every edge of `g`
/// exactly once (either orientation).
pub fn lfmm(g: &Graph, edge_order: &[(u32, u32)]) -> Result<Matching, GraphError> {
    if edge_order.len() as u64 != g.m() {
        return Err(GraphError::InvalidParams(format!(
            "edge order has {} entries, graph has {} edges",
            edge_order.len(),
            g.m()
        )));
    }
    let mut seen: Vec<(u32, u32)> = edge_order
        .iter()
        .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::Duplicate(w[0].0, w[0].1));
    }
    if let Some(&(u, v)) = seen.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(GraphError::InvalidParams(format!("({u}, {v}) is not an edge")));
    }
    Ok(greedy_matching(g.n(), edge_order.iter().copied()))
}

/// Greedy matching in lexicographic edge order.
pub fn lfmm_lexicographic(g: &Graph) -> Matching {
    let mut mate = vec![false; g.n()];
    let mut pairs = Vec::new();
    for u in 0..g.n() as u32 {
        if mate[u as usize] {
            continue;
        }
        if let Some(v) = g.neighbors(u).find(|&v| v > u && !mate[v as usize]) {
            mate[u as usize] = true;
            mate[v as usize] = true;
            pairs.push((u, v));
        }
    }
    Matching::from_pairs_unchecked(pairs)
}

/// Greedy matching over an edge stream on `n` vertices; no validation.
pub(crate) fn greedy_matching(n: usize, edges: impl Iterator<Item = (u32, u32)>) -> Matching {
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for (u, v) in edges {
        if !used[u as usize] && !used[v as usize] {
            used[u as usize] = true;
            used[v as usize] = true;
            pairs.push((u, v));
        }
    }
    Matching::from_pairs_unchecked(pairs)
}

fn check_permutation(order: &[u32], n: usize) -> Result<(), GraphError> {
    if order.len() != n {
        return Err(GraphError::InvalidParams(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v as usize >= n {
            return Err(GraphError::OutOfRange(v, n));
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(GraphError::InvalidParams(format!("vertex {v} repeated in order")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, petersen};
    use crate::graph::oracle::{verify_maximal_matching, verify_mis};

    #[test]
    fn path_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(lfmis(&p3, &[0, 1, 2]).unwrap().members(), &[0, 2]);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = lfmm(&p4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(m.pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(lfmm(&p4, &[(1, 2), (0, 1), (2, 3)]).unwrap().pairs(), &[(1, 2)]);
    }

    #[test]
    fn clique_examples() {
        let k3 = complete(3);
        for v in 0..3 {
            let mut order = vec![v];
            order.extend((0..3).filter(|&u| u != v));
            assert_eq!(lfmis(&k3, &order).unwrap().members(), &[v]);
        }
        assert_eq!(lfmm_lexicographic(&complete(4)).pairs(), &[(0, 1), (2, 3)]);
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(lfmm_lexicographic(&single).pairs(), &[(0, 1)]);
    }

    #[test]
    fn petersen_identity_order() {
        let g = petersen();
        let s = lfmis_ascending(&g);
        assert_eq!(s.len(), 4);
        assert!(verify_mis(&g, &s));
        assert!(verify_maximal_matching(&g, &lfmm_lexicographic(&g)));
    }

    #[test]
    fn lexicographic_matches_explicit_order() {
        let g = petersen();
        let order: Vec<(u32, u32)> = g.edges().collect();
        assert_eq!(lfmm(&g, &order).unwrap(), lfmm_lexicographic(&g));
    }

    #[test]
    fn rejects_bad_orders() {
        let g = complete(3);
        assert!(lfmis(&g, &[0, 0, 1]).is_err());
        assert!(lfmis(&g, &[0, 1]).is_err());
        assert!(lfmm(&g, &[(0, 1), (1, 0), (1, 2)]).is_err());
    }
}
