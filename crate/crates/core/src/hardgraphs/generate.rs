use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::generators::geometric_skip;
use crate::graph::{Graph, GraphError, Matching, NONE};
use crate::rng::{Seed, Stream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Mis,
    Mm,
}

/// Layout of a generated hard instance. Level `i` occupies the contiguous
/// ids `level_start[i]..level_start[i + 1]`, and its clusters are contiguous
/// runs inside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardGraphSpec {
    pub k: u64,
    pub levels: u32,
    pub b: u32,
    pub variant: Variant,
    pub level_start: Vec<usize>,
    /// Nominal cluster size per level; the last cluster of a level may be
    /// smaller.
    pub cluster_size: Vec<usize>,
    /// Cross-edge probability per level.
    pub q: Vec<f64>,
    pub level_of: Vec<u8>,
    pub cluster_of: Vec<u32>,
}

impl HardGraphSpec {
    pub fn n(&self) -> usize {
        *self.level_start.last().expect("at least one level")
    }

    pub fn level_range(&self, i: usize) -> std::ops::Range<usize> {
        self.level_start[i]..self.level_start[i + 1]
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_of.iter().max().map_or(0, |&c| c as usize + 1)
    }

    /// Pairs consecutive members of every cluster. Only meaningful for the
    /// matching variant, where every cluster has even size.
    pub fn cluster_pairing(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::with_capacity(self.n() / 2);
        let mut v = 0usize;
        while v + 1 < self.n() {
            if self.cluster_of[v] == self.cluster_of[v + 1] {
                pairs.push((v as u32, v as u32 + 1));
                v += 2;
            } else {
                v += 1;
            }
        }
        pairs
    }
}

/// Largest `s` with `s^e <= x`.
pub fn integer_root(x: u64, e: u32) -> u64 {
    assert!(e > 0, "zeroth root");
    if x <= 1 {
        return x;
    }
    let fits = |s: u64| s.checked_pow(e).is_some_and(|p| p <= x);
    let mut s = libm::pow(x as f64, 1.0 / e as f64) as u64;
    while s > 0 && !fits(s) {
        s -= 1;
    }
    while fits(s + 1) {
        s += 1;
    }
    s
}

/// Generates a hard instance. Clusters are cliques; a vertex at level `i`
/// and a vertex at a level `j > i` are adjacent with probability `q_i`.
pub fn gen_hard(k: u64, levels: u32, b: u32, variant: Variant, seed: Seed) -> Result<(Graph, HardGraphSpec), GraphError> {
    if k < 2 || !k.is_power_of_two() {
        return Err(GraphError::InvalidParams(format!("k = {k} must be a power of two >= 2")));
    }
    if levels == 0 {
        return Err(GraphError::InvalidParams("at least one level".into()));
    }
    if b < 2 {
        return Err(GraphError::InvalidParams(format!("shrink base b = {b} must be >= 2")));
    }
    let mut level_start = vec![0usize];
    let mut cluster_size = Vec::new();
    for i in 0..levels {
        let size = match variant {
            Variant::Mis => k,
            Variant::Mm => 4u64
                .checked_pow(i)
                .and_then(|f| f.checked_mul(k))
                .ok_or(GraphError::TooLarge(usize::MAX))?,
        };
        let root = match b.checked_pow(i) {
            Some(e) => integer_root(k, e),
            None => 1,
        };
        let s = match variant {
            Variant::Mis => root.max(1),
            Variant::Mm => (2 * (root / 2)).max(2),
        };
        let end = *level_start.last().unwrap() as u64 + size;
        if end >= u32::MAX as u64 {
            return Err(GraphError::TooLarge(end as usize));
        }
        level_start.push(end as usize);
        cluster_size.push(s as usize);
    }
    let n = *level_start.last().unwrap();
    let log_n = (n as f64).log2();
    let q: Vec<f64> = (0..levels)
        .map(|i| {
            let e = 1.0 / libm::pow(b as f64, i as f64) - 1.0;
            (libm::pow(k as f64, e) / (log_n * log_n)).min(1.0)
        })
        .collect();

    let mut level_of = vec![0u8; n];
    let mut cluster_of = vec![0u32; n];
    let mut next = 0u32;
    for i in 0..levels as usize {
        let range = level_start[i]..level_start[i + 1];
        let s = cluster_size[i];
        for (j, v) in range.enumerate() {
            level_of[v] = i as u8;
            cluster_of[v] = next + (j / s) as u32;
        }
        next += (level_start[i + 1] - level_start[i]).div_ceil(s) as u32;
    }

    let (row_start, cols) = cross_edges(&level_start, &level_of, &q, seed);
    let of: Vec<u32> = (0..n)
        .map(|v| {
            let c = cluster_of[v];
            let singleton = (v == 0 || cluster_of[v - 1] != c) && (v + 1 == n || cluster_of[v + 1] != c);
            if singleton {
                NONE
            } else {
                c
            }
        })
        .collect();
    let (of, count) = compact(of);
    let g = Graph::from_upper_rows_clustered(n, &row_start, &cols, of, count);
    let spec = HardGraphSpec {
        k,
        levels,
        b,
        variant,
        level_start,
        cluster_size,
        q,
        level_of,
        cluster_of,
    };
    if variant == Variant::Mm {
        let pairs = spec.cluster_pairing();
        if pairs.len() * 2 != n || Matching::new(&g, pairs).is_err() {
            return Err(GraphError::InvalidParams("clusters do not admit a perfect matching".into()));
        }
    }
    Ok((g, spec))
}

/// Renumbers the remaining cluster ids to `0..count`.
fn compact(of: Vec<u32>) -> (Vec<u32>, usize) {
    let mut map = std::collections::HashMap::new();
    let out = of
        .into_iter()
        .map(|c| {
            if c == NONE {
                NONE
            } else {
                let next = map.len() as u32;
                *map.entry(c).or_insert(next)
            }
        })
        .collect();
    (out, map.len())
}

fn cross_edges(level_start: &[usize], level_of: &[u8], q: &[f64], seed: Seed) -> (Vec<usize>, Vec<u32>) {
    let n = level_of.len();
    const CHUNK: usize = 1024;
    let chunks: Vec<(Vec<usize>, Vec<u32>)> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut lens = Vec::with_capacity(CHUNK);
            let mut cols = Vec::new();
            let lo = c * CHUNK;
            for (j, &level) in level_of[lo..((c + 1) * CHUNK).min(n)].iter().enumerate() {
                let u = lo + j;
                let i = level as usize;
                let from = level_start[i + 1];
                let before = cols.len();
                if from < n && q[i] > 0.0 {
                    if q[i] >= 1.0 {
                        cols.extend(from as u32..n as u32);
                    } else {
                        let log_q = libm::log1p(-q[i]);
                        let mut rng = ChaCha8Rng::seed_from_u64(seed.draw(Stream::Generator, 1, u as u64));
                        let mut v = from as u64;
                        loop {
                            v += geometric_skip(&mut rng, log_q);
                            if v >= n as u64 {
                                break;
                            }
                            cols.push(v as u32);
                            v += 1;
                        }
                    }
                }
                lens.push(cols.len() - before);
            }
            (lens, cols)
        })
        .collect();
    let mut row_start = Vec::with_capacity(n + 1);
    row_start.push(0usize);
    let mut cols = Vec::new();
    for (lens, part) in chunks {
        for len in lens {
            row_start.push(row_start.last().unwrap() + len);
        }
        cols.extend_from_slice(&part);
    }
    (row_start, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(integer_root(16, 4), 2);
        assert_eq!(integer_root(65536, 16), 2);
        assert_eq!(integer_root(1024, 4), 5);
        assert_eq!(integer_root(1 << 16, 1), 1 << 16);
        assert_eq!(integer_root(1 << 16, 64), 1);
        assert_eq!(integer_root(80, 2), 8);
    }

    #[test]
    fn small_mis_instance() {
        let (g, spec) = gen_hard(16, 2, 4, Variant::Mis, Seed(1)).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(spec.cluster_size, vec![16, 2]);
        assert_eq!(spec.cluster_count(), 9);
        assert!((spec.q[0] - 1.0 / 25.0).abs() < 1e-12);
        assert!((spec.q[1] - 0.125 / 25.0).abs() < 1e-12);
        for u in 0..16 {
            for v in u + 1..16 {
                assert!(g.has_edge(u, v));
            }
        }
        for c in 0..8u32 {
            assert!(g.has_edge(16 + 2 * c, 17 + 2 * c));
        }
        // nothing joins two level-1 clusters
        for u in 16..32u32 {
            assert!(g.neighbors(u).all(|v| v < 16 || spec.cluster_of[v as usize] == spec.cluster_of[u as usize]));
        }
    }

    #[test]
    fn one_level_is_a_clique() {
        let (g, spec) = gen_hard(4, 1, 4, Variant::Mis, Seed(0)).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
        assert_eq!(spec.cluster_count(), 1);
    }

    #[test]
    fn small_mm_instance() {
        let (g, spec) = gen_hard(16, 2, 4, Variant::Mm, Seed(2)).unwrap();
        assert_eq!(g.n(), 80);
        assert_eq!(spec.cluster_size, vec![16, 2]);
        assert_eq!(spec.cluster_pairing().len(), 40);
        let (_, spec) = gen_hard(1024, 3, 4, Variant::Mm, Seed(2)).unwrap();
        assert_eq!(spec.cluster_size, vec![1024, 4, 2]);
        assert_eq!(spec.n(), 1024 * 21);
    }

    #[test]
    fn remainder_cluster() {
        // 1024^{1/4} = 5 with remainder 1024 mod 5 = 4
        let (g, spec) = gen_hard(1024, 2, 4, Variant::Mis, Seed(3)).unwrap();
        assert_eq!(spec.cluster_size[1], 5);
        assert_eq!(spec.cluster_count(), 1 + 205);
        let last = g.n() as u32 - 1;
        assert_eq!(g.cluster_members(last).len(), 4);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(gen_hard(12, 2, 4, Variant::Mis, Seed(0)).is_err());
        assert!(gen_hard(16, 0, 4, Variant::Mis, Seed(0)).is_err());
        assert!(gen_hard(16, 2, 1, Variant::Mis, Seed(0)).is_err());
    }

    #[test]
    fn deterministic() {
        let (a, _) = gen_hard(256, 3, 2, Variant::Mis, Seed(5)).unwrap();
        let (b, _) = gen_hard(256, 3, 2, Variant::Mis, Seed(5)).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
    }
}
