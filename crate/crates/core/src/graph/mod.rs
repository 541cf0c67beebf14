//! Undirected simple graphs, result containers, generators and exact oracles.
//!
//! A [`Graph`] stores its edges in two layers: explicit sorted adjacency
//! lists, and an optional partition of the vertices into *clusters* whose
//! members are pairwise adjacent. Clusters are never expanded, which keeps
//! instances with very large cliques (the lower-bound constructions) in
//! memory proportional to their vertex count. Explicit edges never join two
//! vertices of the same cluster, so every edge is stored exactly once.

mod classes;
pub mod generators;
mod greedy;
mod io;
pub mod oracle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classes::{degree_classes, DegreeClassPartition};
pub use greedy::{lfmis, lfmis_ascending, lfmm, lfmm_lexicographic};
pub use io::{read_edge_list, write_edge_list};

pub type VertexId = u32;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for {1} vertices")]
    OutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(u32, u32),
    #[error("explicit edge ({0}, {1}) lies inside a cluster")]
    EdgeInsideCluster(u32, u32),
    #[error("too many vertices: {0}")]
    TooLarge(usize),
    #[error("edge list: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} {value} exceeds the oracle limit {limit}")]
    OracleLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> GraphError {
        GraphError::Io(e.to_string())
    }
}

#[derive(Clone, Debug, Default)]
struct Clusters {
    of: Vec<u32>,
    start: Vec<usize>,
    members: Vec<u32>,
}

impl Clusters {
    fn members(&self, c: u32) -> &[u32] {
        let c = c as usize;
        &self.members[self.start[c]..self.start[c + 1]]
    }

    fn count(&self) -> usize {
        self.start.len() - 1
    }

    /// Builds the member table from an assignment; members come out sorted.
    fn from_assignment(of: Vec<u32>, count: usize) -> Clusters {
        let mut start = vec![0usize; count + 1];
        for &c in &of {
            if c != NONE {
                start[c as usize + 1] += 1;
            }
        }
        for i in 0..count {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut members = vec![0u32; start[count]];
        for (v, &c) in of.iter().enumerate() {
            if c != NONE {
                members[fill[c as usize]] = v as u32;
                fill[c as usize] += 1;
            }
        }
        Clusters { of, start, members }
    }
}

/// Immutable undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
    degree: Vec<u32>,
    clusters: Option<Clusters>,
    edge_count: u64,
}

/// Summary statistics of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: u64,
    pub avg_degree: f64,
    pub max_degree: u32,
    pub min_degree: u32,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            adj: Vec::new(),
            degree: vec![0; n],
            clusters: None,
            edge_count: 0,
        }
    }

    /// Builds a graph from an arbitrary edge list, rejecting self-loops,
    /// duplicates (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n >= NONE as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::OutOfRange(x, n));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Duplicate(w[0].0, w[0].1));
        }
        Ok(Graph::from_sorted_pairs(n, &list))
    }

    /// `pairs` must be sorted, deduplicated, with `u < v < n`.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Graph {
        let mut row_start = vec![0usize; n + 1];
        for &(u, _) in pairs {
            row_start[u as usize + 1] += 1;
        }
        for i in 0..n {
            row_start[i + 1] += row_start[i];
        }
        let cols: Vec<u32> = pairs.iter().map(|&(_, v)| v).collect();
        Graph::from_upper_rows(n, &row_start, &cols)
    }

    /// Builds the symmetric adjacency from upper rows: row `u` lists the
    /// neighbours `v > u` in ascending order.
    pub(crate) fn from_upper_rows(n: usize, row_start: &[usize], cols: &[u32]) -> Graph {
        let mut degree = vec![0u32; n];
        for u in 0..n {
            degree[u] += (row_start[u + 1] - row_start[u]) as u32;
            for &v in &cols[row_start[u]..row_start[u + 1]] {
                degree[v as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for u in 0..n {
            offsets[u + 1] = offsets[u] + degree[u] as usize;
        }
        let mut adj = vec![0u32; offsets[n]];
        // Lower neighbours of v are the rows u < v that contain v. They are
        // scattered block by block over v so the write cursors stay in cache;
        // each row keeps a read cursor that only moves forward.
        const BLOCK: usize = 4096;
        let mut cursor = row_start[..n].to_vec();
        let mut fill = offsets[..n].to_vec();
        for lo in (0..n).step_by(BLOCK) {
            let hi = (lo + BLOCK).min(n);
            for u in 0..hi {
                let end = row_start[u + 1];
                let mut c = cursor[u];
                while c < end && (cols[c] as usize) < hi {
                    let v = cols[c] as usize;
                    adj[fill[v]] = u as u32;
                    fill[v] += 1;
                    c += 1;
                }
                cursor[u] = c;
            }
        }
        // upper neighbours follow, already sorted
        for u in 0..n {
            let row = &cols[row_start[u]..row_start[u + 1]];
            adj[fill[u]..fill[u] + row.len()].copy_from_slice(row);
        }
        Graph {
            offsets,
            adj,
            degree,
            clusters: None,
            edge_count: cols.len() as u64,
        }
    }

    /// A graph whose clusters (given as `cluster_of[v]`, `None` for no
    /// cluster) are cliques, plus the explicit `edges`.
    pub fn with_clusters<I>(
        cluster_of: Vec<Option<u32>>,
        edges: I,
    ) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let n = cluster_of.len();
        let base = Graph::from_edges(n, edges)?;
        let of: Vec<u32> = cluster_of.iter().map(|c| c.unwrap_or(NONE)).collect();
        if let Some((u, v)) = base
            .explicit_edges()
            .find(|&(u, v)| of[u as usize] != NONE && of[u as usize] == of[v as usize])
        {
            return Err(GraphError::EdgeInsideCluster(u, v));
        }
        // compact cluster ids to 0..count in first-appearance order
        let mut remap = std::collections::BTreeMap::new();
        let mut compact = Vec::with_capacity(n);
        for &c in &of {
            if c == NONE {
                compact.push(NONE);
            } else {
                let next = remap.len() as u32;
                compact.push(*remap.entry(c).or_insert(next));
            }
        }
        let count = remap.len();
        Ok(base.attach_clusters(Clusters::from_assignment(compact, count)))
    }

    /// Upper rows plus clusters given as `of[v]` in `0..count` or [`NONE`].
    /// Callers guarantee no row edge joins two members of one cluster.
    pub(crate) fn from_upper_rows_clustered(
        n: usize,
        row_start: &[usize],
        cols: &[u32],
        of: Vec<u32>,
        count: usize,
    ) -> Graph {
        debug_assert!((0..n).all(|u| cols[row_start[u]..row_start[u + 1]]
            .iter()
            .all(|&v| of[u] == NONE || of[u] != of[v as usize])));
        Graph::from_upper_rows(n, row_start, cols).attach_clusters(Clusters::from_assignment(of, count))
    }

    fn attach_clusters(mut self, clusters: Clusters) -> Graph {
        for c in 0..clusters.count() {
            let size = clusters.members(c as u32).len() as u64;
            self.edge_count += size * size.saturating_sub(1) / 2;
            for &v in clusters.members(c as u32) {
                self.degree[v as usize] += size as u32 - 1;
            }
        }
        self.clusters = Some(clusters);
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    pub fn m(&self) -> u64 {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> Neighbors<'_> {
        Neighbors {
            cluster: self.cluster_members(v),
            explicit: self.explicit_neighbors(v),
            skip: v,
        }
    }

    /// The `i`-th smallest neighbour of `v`; `i < degree(v)`.
    pub fn neighbor_at(&self, v: u32, i: usize) -> u32 {
        if self.cluster_members(v).is_empty() {
            self.explicit_neighbors(v)[i]
        } else {
            self.neighbors(v).nth(i).expect("index below degree")
        }
    }

    /// Explicit (non-cluster) neighbours of `v`, sorted.
    #[inline]
    pub fn explicit_neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Members of `v`'s cluster including `v`; empty when unclustered.
    #[inline]
    pub fn cluster_members(&self, v: u32) -> &[u32] {
        match &self.clusters {
            Some(c) if c.of[v as usize] != NONE => c.members(c.of[v as usize]),
            _ => &[],
        }
    }

    pub fn cluster_of(&self, v: u32) -> Option<u32> {
        self.clusters
            .as_ref()
            .map(|c| c.of[v as usize])
            .filter(|&c| c != NONE)
    }

    pub fn has_clusters(&self) -> bool {
        self.clusters.is_some()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v {
            return false;
        }
        if let Some(c) = &self.clusters {
            let cu = c.of[u as usize];
            if cu != NONE && cu == c.of[v as usize] {
                return true;
            }
        }
        let (a, b) = if self.explicit_neighbors(u).len() <= self.explicit_neighbors(v).len() {
            (u, v)
        } else {
            (v, u)
        };
        self.explicit_neighbors(a).binary_search(&b).is_ok()
    }

    /// Number of neighbours of `v` with a larger id.
    pub fn upper_degree(&self, v: u32) -> u32 {
        let ex = self.explicit_neighbors(v);
        let cl = self.cluster_members(v);
        let above_ex = ex.len() - ex.partition_point(|&u| u <= v);
        let above_cl = cl.len() - cl.partition_point(|&u| u <= v);
        (above_ex + above_cl) as u32
    }

    /// All edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .skip_while(move |&v| v < u)
                .map(move |v| (u, v))
        })
    }

    fn explicit_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.explicit_neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    /// `2m / n`, zero for the empty vertex set.
    pub fn avg_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n(),
            m: self.m(),
            avg_degree: self.avg_degree(),
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
        }
    }

    pub fn isolated(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n() as u32).filter(move |&v| self.degree(v) == 0)
    }

    /// The subgraph induced by `members` (strictly ascending), relabelled
    /// so that `members[i]` becomes vertex `i`.
    pub fn induced(&self, members: &[u32]) -> Graph {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut map = vec![NONE; self.n()];
        for (i, &v) in members.iter().enumerate() {
            map[v as usize] = i as u32;
        }
        self.induced_with_map(members, &map)
    }

    fn induced_with_map(&self, members: &[u32], map: &[u32]) -> Graph {
        let k = members.len();
        let mut offsets = Vec::with_capacity(k + 1);
        offsets.push(0usize);
        let mut adj = Vec::new();
        for &v in members {
            adj.extend(
                self.explicit_neighbors(v)
                    .iter()
                    .map(|&u| map[u as usize])
                    .filter(|&u| u != NONE),
            );
            offsets.push(adj.len());
        }
        let degree: Vec<u32> = offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        let edge_count = adj.len() as u64 / 2;
        let g = Graph {
            offsets,
            adj,
            degree,
            clusters: None,
            edge_count,
        };
        match &self.clusters {
            None => g,
            Some(c) => {
                let mut local = vec![NONE; c.count()];
                let mut next = 0u32;
                let of: Vec<u32> = members
                    .iter()
                    .map(|&v| {
                        let cv = c.of[v as usize];
                        if cv == NONE {
                            return NONE;
                        }
                        if local[cv as usize] == NONE {
                            local[cv as usize] = next;
                            next += 1;
                        }
                        local[cv as usize]
                    })
                    .collect();
                g.attach_clusters(Clusters::from_assignment(of, next as usize))
            }
        }
    }

    /// Splits the vertex set by `part_of` and returns the subgraph induced by
    /// each part, with ids mapped back into `self`.
    pub fn split_by_part(&self, part_of: &[u32], parts: usize) -> Vec<Induced> {
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); parts];
        let mut map = vec![NONE; self.n()];
        for v in 0..self.n() {
            let p = part_of[v] as usize;
            map[v] = members[p].len() as u32;
            members[p].push(v as u32);
        }
        // `map` holds the rank inside the vertex's own part; mask out the
        // other parts while building each piece.
        let mut out = Vec::with_capacity(parts);
        for (p, list) in members.into_iter().enumerate() {
            let graph = self.induced_part(&list, &map, part_of, p as u32);
            out.push(Induced { graph, origin: list });
        }
        out
    }

    fn induced_part(&self, members: &[u32], rank: &[u32], part_of: &[u32], p: u32) -> Graph {
        let mut offsets = Vec::with_capacity(members.len() + 1);
        offsets.push(0usize);
        let mut adj = Vec::new();
        for &v in members {
            adj.extend(
                self.explicit_neighbors(v)
                    .iter()
                    .filter(|&&u| part_of[u as usize] == p)
                    .map(|&u| rank[u as usize]),
            );
            offsets.push(adj.len());
        }
        let degree: Vec<u32> = offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        let edge_count = adj.len() as u64 / 2;
        let g = Graph {
            offsets,
            adj,
            degree,
            clusters: None,
            edge_count,
        };
        match &self.clusters {
            None => g,
            Some(c) => {
                let mut local = std::collections::BTreeMap::new();
                let of: Vec<u32> = members
                    .iter()
                    .map(|&v| {
                        let cv = c.of[v as usize];
                        if cv == NONE {
                            NONE
                        } else {
                            let next = local.len() as u32;
                            *local.entry(cv).or_insert(next)
                        }
                    })
                    .collect();
                let count = local.len();
                g.attach_clusters(Clusters::from_assignment(of, count))
            }
        }
    }
}

/// Ascending merge of a vertex's cluster members (minus itself) and its
/// explicit neighbours.
#[derive(Clone, Debug)]
pub struct Neighbors<'a> {
    cluster: &'a [u32],
    explicit: &'a [u32],
    skip: u32,
}

impl Iterator for Neighbors<'_> {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        loop {
            let take_cluster = match (self.cluster.first(), self.explicit.first()) {
                (Some(&a), Some(&b)) => a < b,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => return None,
            };
            if take_cluster {
                let a = self.cluster[0];
                self.cluster = &self.cluster[1..];
                if a != self.skip {
                    return Some(a);
                }
            } else {
                let b = self.explicit[0];
                self.explicit = &self.explicit[1..];
                return Some(b);
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let hi = self.cluster.len() + self.explicit.len();
        (hi.saturating_sub(1), Some(hi))
    }
}

/// A materialised induced subgraph together with the id of every vertex in
/// the host graph it was cut from.
#[derive(Clone, Debug, Default)]
pub struct Induced {
    pub graph: Graph,
    pub origin: Vec<u32>,
}

impl Induced {
    pub fn whole(graph: Graph) -> Induced {
        let origin = (0..graph.n() as u32).collect();
        Induced { graph, origin }
    }

    /// `G[members]` where `members` are local ids; origins compose.
    pub fn restrict(&self, members: &[u32]) -> Induced {
        Induced {
            graph: self.graph.induced(members),
            origin: members.iter().map(|&v| self.origin[v as usize]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// A set of vertices of a host graph on `host_n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSet {
    members: Vec<u32>,
    host_n: usize,
}

impl VertexSet {
    pub fn new(host_n: usize, mut members: Vec<u32>) -> Result<VertexSet, GraphError> {
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v as usize >= host_n) {
            return Err(GraphError::OutOfRange(v, host_n));
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::InvalidParams(format!("vertex {} listed twice", w[0])));
        }
        Ok(VertexSet { members, host_n })
    }

    pub fn from_mask(mask: &[bool]) -> VertexSet {
        VertexSet {
            members: (0..mask.len() as u32).filter(|&v| mask[v as usize]).collect(),
            host_n: mask.len(),
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.host_n];
        for &v in &self.members {
            m[v as usize] = true;
        }
        m
    }
}

/// A set of vertex-disjoint edges, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(u32, u32)>,
}

impl Matching {
    /// Checks disjointness and that every pair is an edge of `g`.
    pub fn new(g: &Graph, pairs: Vec<(u32, u32)>) -> Result<Matching, GraphError> {
        let m = Matching::from_pairs_unchecked(pairs);
        let mut used = vec![false; g.n()];
        for &(u, v) in &m.pairs {
            if v as usize >= g.n() {
                return Err(GraphError::OutOfRange(v, g.n()));
            }
            if !g.has_edge(u, v) {
                return Err(GraphError::InvalidParams(format!("({u}, {v}) is not an edge")));
            }
            for x in [u, v] {
                if std::mem::replace(&mut used[x as usize], true) {
                    return Err(GraphError::InvalidParams(format!("vertex {x} matched twice")));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn from_pairs_unchecked(pairs: Vec<(u32, u32)>) -> Matching {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.pairs.binary_search(&e).is_ok()
    }

    /// Matched vertices, ascending.
    pub fn vertices(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::Duplicate(0, 1)
        );
        assert_eq!(Graph::from_edges(3, [(0, 3)]).unwrap_err(), GraphError::OutOfRange(3, 3));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (2, 4), (4, 1)]).unwrap();
        for v in 0..5 {
            let ns: Vec<u32> = g.neighbors(v).collect();
            assert!(ns.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(ns.len() as u32, g.degree(v));
            for u in ns {
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(g.degrees().iter().map(|&d| d as u64).sum::<u64>(), 2 * g.m());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (1, 3), (1, 4), (2, 4)]);
    }

    #[test]
    fn clustered_graph_behaves_like_expanded() {
        // clusters {0,2,4} and {1,3}, plus explicit (0,1) and (4,5)
        let of = vec![Some(7), Some(9), Some(7), Some(9), Some(7), None];
        let g = Graph::with_clusters(of, [(0, 1), (4, 5)]).unwrap();
        let expanded =
            Graph::from_edges(6, [(0, 2), (0, 4), (2, 4), (1, 3), (0, 1), (4, 5)]).unwrap();
        assert_eq!(g.m(), expanded.m());
        for v in 0..6 {
            assert_eq!(
                g.neighbors(v).collect::<Vec<_>>(),
                expanded.neighbors(v).collect::<Vec<_>>()
            );
            assert_eq!(g.upper_degree(v), expanded.upper_degree(v));
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), expanded.edges().collect::<Vec<_>>());
        let sub = g.induced(&[0, 1, 3, 4]);
        let sub_ex = expanded.induced(&[0, 1, 3, 4]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), sub_ex.edges().collect::<Vec<_>>());
        assert_eq!(sub.m(), 3);
        assert!(Graph::with_clusters(vec![Some(0), Some(0)], [(0, 1)]).is_err());
    }

    #[test]
    fn induced_relabels_and_composes() {
        let g = Induced::whole(path(6));
        let h = g.restrict(&[1, 2, 3, 5]);
        assert_eq!(h.origin, vec![1, 2, 3, 5]);
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let k = h.restrict(&[1, 3]);
        assert_eq!(k.origin, vec![2, 5]);
        assert_eq!(k.graph.m(), 0);
    }

    #[test]
    fn split_by_part_keeps_only_internal_edges() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let parts = g.split_by_part(&[0, 0, 1, 1], 2);
        assert_eq!(parts[0].origin, vec![0, 1]);
        assert_eq!(parts[0].graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(parts[1].origin, vec![2, 3]);
        assert_eq!(parts[1].graph.m(), 1);
    }

    #[test]
    fn matching_validation() {
        let g = path(4);
        assert!(Matching::new(&g, vec![(1, 0), (2, 3)]).is_ok());
        assert!(Matching::new(&g, vec![(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(&g, vec![(0, 2)]).is_err());
    }
}
