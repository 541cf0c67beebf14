//! Random and structured test-bed graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};
use crate::rng::{Seed, Stream};

/// Erdős–Rényi `G(n, p)`.
///
/// Each row `u` draws its upper neighbours with geometric skips from its own
/// ChaCha stream, so the output depends only on `(n, p, seed)` and rows can
/// be generated in parallel.
pub fn gen_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParams("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParams(format!("p = {p} outside [0, 1]")));
    }
    if n >= u32::MAX as usize {
        return Err(GraphError::TooLarge(n));
    }
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(complete(n));
    }
    let log_q = libm::log1p(-p);
    let expected = p * n as f64;
    const CHUNK: u32 = 1024;
    let chunks: Vec<(Vec<usize>, Vec<u32>)> = (0..(n as u32).div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let rows = c * CHUNK..((c + 1) * CHUNK).min(n as u32);
            let mut lens = Vec::with_capacity(CHUNK as usize);
            let mut cols = Vec::with_capacity((expected * rows.len() as f64 * 0.55) as usize + 64);
            for u in rows {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.draw(Stream::Generator, 0, u as u64));
                let before = cols.len();
                let mut v = u as u64;
                loop {
                    v += 1 + geometric_skip(&mut rng, log_q);
                    if v >= n as u64 {
                        break;
                    }
                    cols.push(v as u32);
                }
                lens.push(cols.len() - before);
            }
            (lens, cols)
        })
        .collect();
    let total: usize = chunks.iter().map(|c| c.1.len()).sum();
    let mut row_start = Vec::with_capacity(n + 1);
    row_start.push(0usize);
    let mut cols = Vec::with_capacity(total);
    for (lens, part) in chunks {
        for len in lens {
            row_start.push(row_start.last().unwrap() + len);
        }
        cols.extend_from_slice(&part);
    }
    Ok(Graph::from_upper_rows(n, &row_start, &cols))
}

/// Number of failures before the first success, given `log(1 - p)`.
#[inline]
pub(crate) fn geometric_skip(rng: &mut ChaCha8Rng, log_q: f64) -> u64 {
    // uniform in (0, 1]
    let u = ((rng.gen::<u64>() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let k = libm::log(u) / log_q;
    if k >= u64::MAX as f64 {
        u64::MAX / 2
    } else {
        k as u64
    }
}

/// `K_n`, stored as a single cluster.
pub fn complete(n: usize) -> Graph {
    Graph::with_clusters(vec![Some(0); n], std::iter::empty()).expect("no explicit edges")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|v| (v - 1, v))).expect("valid path")
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParams(format!("cycle needs 3 vertices, got {n}")));
    }
    Graph::from_edges(n, (0..n as u32).map(|v| (v, (v + 1) % n as u32)))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as u32).map(|v| (0, v))).expect("valid star")
}

/// `pairs` disjoint edges `(2i, 2i+1)`.
pub fn perfect_matching_graph(pairs: usize) -> Graph {
    Graph::from_edges(2 * pairs, (0..pairs as u32).map(|i| (2 * i, 2 * i + 1)))
        .expect("valid matching")
}

/// Disjoint stars with `leaves` leaves each; centres come first in each
/// block.
pub fn star_forest(stars: usize, leaves: usize) -> Graph {
    let block = leaves as u32 + 1;
    let edges = (0..stars as u32).flat_map(|s| (1..block).map(move |l| (s * block, s * block + l)));
    Graph::from_edges(stars * (leaves + 1), edges).expect("valid forest")
}

/// Petersen graph as the Kneser graph `K(5, 2)`: vertices are the 2-subsets
/// of `{0..5}` in lexicographic order, adjacent iff disjoint.
pub fn petersen() -> Graph {
    let subsets: Vec<u32> = (0..5u32)
        .flat_map(|a| (a + 1..5).map(move |b| 1 << a | 1 << b))
        .collect();
    let mut edges = Vec::new();
    for i in 0..10 {
        for j in i + 1..10 {
            if subsets[i] & subsets[j] == 0 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(10, edges).expect("valid petersen")
}

/// Line graph; vertex `i` is the `i`-th edge of `g` in lexicographic order.
pub fn line_graph(g: &Graph) -> Graph {
    let n = g.n();
    let mut first_edge = vec![0usize; n + 1];
    for u in 0..n {
        first_edge[u + 1] = first_edge[u] + g.upper_degree(u as u32) as usize;
    }
    let edge_id = |u: u32, v: u32| -> u32 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let rank = g.neighbors(a).take_while(|&x| x < b).filter(|&x| x > a).count();
        (first_edge[a as usize] + rank) as u32
    };
    let mut pairs = Vec::new();
    for x in 0..n as u32 {
        let incident: Vec<u32> = g.neighbors(x).map(|y| edge_id(x, y)).collect();
        for (i, &e) in incident.iter().enumerate() {
            for &f in &incident[i + 1..] {
                pairs.push(if e < f { (e, f) } else { (f, e) });
            }
        }
    }
    pairs.sort_unstable();
    Graph::from_sorted_pairs(first_edge[n], &pairs)
}

/// Unit-interval graph: `count` intervals of length one with left ends
/// uniform in `[0, span)`, relabelled by left end. Adjacent iff the closed
/// intervals intersect.
pub fn unit_interval(count: usize, span: f64, seed: Seed) -> Result<Graph, GraphError> {
    if !(span > 0.0 && span.is_finite()) {
        return Err(GraphError::InvalidParams(format!("span = {span}")));
    }
    const UNIT: u64 = 1 << 32;
    let limit = (span * UNIT as f64) as u64;
    let mut rng = seed.rng(Stream::Generator);
    let mut starts: Vec<u64> = (0..count).map(|_| rng.gen_range(0..limit.max(1))).collect();
    starts.sort_unstable();
    let mut pairs = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            if starts[j] - starts[i] > UNIT {
                break;
            }
            pairs.push((i as u32, j as u32));
        }
    }
    Ok(Graph::from_sorted_pairs(count, &pairs))
}

/// Disjoint cliques of the given sizes plus independent inter-clique edges
/// with probability `cross_p`.
pub fn cluster_cliques(sizes: &[usize], cross_p: f64, seed: Seed) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&cross_p) {
        return Err(GraphError::InvalidParams(format!("p = {cross_p} outside [0, 1]")));
    }
    if sizes.contains(&0) {
        return Err(GraphError::InvalidParams("empty clique".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut of = Vec::with_capacity(n);
    for (c, &s) in sizes.iter().enumerate() {
        of.extend(std::iter::repeat_n(Some(c as u32), s));
    }
    let mut edges = Vec::new();
    if cross_p > 0.0 {
        let mut rng = seed.rng(Stream::Generator);
        for u in 0..n {
            for v in u + 1..n {
                if of[u] != of[v] && rng.gen_bool(cross_p) {
                    edges.push((u as u32, v as u32));
                }
            }
        }
    }
    Graph::with_clusters(of, edges)
}

/// Parameters for [`gen_structured`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structured {
    /// Line graph of `G(n, p)`.
    LineGraphOfGnp { n: usize, p: f64 },
    /// Line graph of the path on `n` vertices.
    LineGraphOfPath { n: usize },
    Interval { count: usize, span: f64 },
    ClusterCliques { sizes: Vec<usize>, cross_p: f64 },
}

pub fn gen_structured(kind: &Structured, seed: Seed) -> Result<Graph, GraphError> {
    match kind {
        Structured::LineGraphOfGnp { n, p } => Ok(line_graph(&gen_gnp(*n, *p, seed)?)),
        Structured::LineGraphOfPath { n } => Ok(line_graph(&path(*n))),
        Structured::Interval { count, span } => unit_interval(*count, *span, seed),
        Structured::ClusterCliques { sizes, cross_p } => cluster_cliques(sizes, *cross_p, seed),
    }
}
