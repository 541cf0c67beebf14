//! A uniformly random graph with exactly `m` edges, too dense to store,
//! queried through a keyed permutation of the pair indices.

use rayon::prelude::*;

use super::reference::{level_counts, mis_iterations, ProbRule, ReferenceRun, SurvivalTrace};
use crate::graph::{lfmis_ascending, Graph, GraphError, Induced, VertexSet};
use crate::rng::{mix64, Prob, Seed, Stream};

/// Largest first-iteration residual the control will materialise.
pub const CONTROL_RESIDUAL_LIMIT: usize = 1 << 15;

const FEISTEL_ROUNDS: usize = 6;

/// `G(n, m)`: pair `{u, v}` is an edge iff its index maps below `m` under a
/// seeded permutation of `0..n(n-1)/2`.
#[derive(Clone, Debug)]
pub struct ImplicitGnm {
    n: u64,
    m: u64,
    pairs: u64,
    half_bits: u32,
    keys: [u64; FEISTEL_ROUNDS],
}

impl ImplicitGnm {
    pub fn new(n: usize, m: u64, seed: Seed) -> Result<ImplicitGnm, GraphError> {
        let n = n as u64;
        let pairs = n * n.saturating_sub(1) / 2;
        if m > pairs {
            return Err(GraphError::InvalidParams(format!("{m} edges exceed {pairs} pairs")));
        }
        let bits = 64 - pairs.max(1).leading_zeros();
        let half_bits = bits.div_ceil(2).max(1);
        let mut keys = [0u64; FEISTEL_ROUNDS];
        for (i, k) in keys.iter_mut().enumerate() {
            *k = seed.draw(Stream::Control, 0, i as u64);
        }
        Ok(ImplicitGnm {
            n,
            m,
            pairs,
            half_bits,
            keys,
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn avg_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n as f64
        }
    }

    fn feistel(&self, x: u64) -> u64 {
        let mask = (1u64 << self.half_bits) - 1;
        let (mut l, mut r) = (x >> self.half_bits, x & mask);
        for &k in &self.keys {
            let f = mix64(r ^ k) & mask;
            (l, r) = (r, l ^ f);
        }
        (l << self.half_bits) | r
    }

    /// A permutation of `0..pairs`, by cycle walking.
    fn permute(&self, mut x: u64) -> u64 {
        loop {
            x = self.feistel(x);
            if x < self.pairs {
                return x;
            }
        }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v {
            return false;
        }
        let (a, b) = (u.min(v) as u64, u.max(v) as u64);
        self.permute(b * (b - 1) / 2 + a) < self.m
    }

    /// Explicit subgraph induced by sorted `members`.
    pub fn induced(&self, members: &[u32]) -> Graph {
        let edges: Vec<(u32, u32)> = (0..members.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                (i + 1..members.len())
                    .filter(move |&j| self.has_edge(members[i], members[j]))
                    .map(move |j| (i as u32, j as u32))
            })
            .collect();
        Graph::from_edges(members.len(), edges).expect("pairs are distinct")
    }

    pub fn materialize(&self) -> Graph {
        let all: Vec<u32> = (0..self.n as u32).collect();
        self.induced(&all)
    }
}

/// The reference MIS framework with the uniform-average rule on an implicit
/// `G(n, m)`. The first iteration runs on the implicit graph; its residual is
/// materialised and the rest runs explicitly, exactly as
/// [`super::reduce_mis_reference`] would.
///
/// Isolated vertices are only detected from the second iteration on; at the
/// densities this is meant for, there are none.
pub fn reduce_mis_control(host: &ImplicitGnm, seed: Seed) -> Result<ReferenceRun<VertexSet>, GraphError> {
    let n = host.n();
    let mut trace = SurvivalTrace::default();
    trace.record(seed, 0, &[n as u64], None);
    let mut run = ReferenceRun {
        solution: Vec::new(),
        iterations: 0,
        trace,
        coverage: Vec::new(),
    };
    if host.m() == 0 {
        run.iterations = 1;
        run.solution = (0..n as u32).collect();
        run.trace.record(seed, 1, &[0], Some(Prob::ONE));
    } else {
        run.iterations = 1;
        let p = Prob::inv_sqrt(host.avg_degree());
        let sampled: Vec<u32> = (0..n as u32)
            .filter(|&v| p.accepts(seed.draw(Stream::VertexSample, 1, v as u64)))
            .collect();
        let f = host.induced(&sampled);
        let s: Vec<u32> = lfmis_ascending(&f)
            .members()
            .iter()
            .map(|&i| sampled[i as usize])
            .collect();
        let survivors: Vec<u32> = (0..n as u32)
            .into_par_iter()
            .filter(|&v| s.binary_search(&v).is_err() && !s.iter().any(|&x| host.has_edge(x, v)))
            .collect();
        if survivors.len() > CONTROL_RESIDUAL_LIMIT {
            return Err(GraphError::OracleLimit {
                what: "control residual",
                value: survivors.len(),
                limit: CONTROL_RESIDUAL_LIMIT,
            });
        }
        run.solution.extend_from_slice(&s);
        run.trace.record(seed, 1, &level_counts(&survivors, None), Some(p));
        let h = Induced {
            graph: host.induced(&survivors),
            origin: survivors,
        };
        mis_iterations(h, ProbRule::UniformAvg, seed, None, &mut run);
    }
    Ok(ReferenceRun {
        solution: VertexSet::new(n, run.solution).expect("distinct ids"),
        iterations: run.iterations,
        trace: run.trace,
        coverage: run.coverage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::oracle::verify_mis;
    use crate::hardgraphs::reduce_mis_reference;

    #[test]
    fn exact_edge_count() {
        for (n, m) in [(2, 1), (10, 0), (10, 45), (57, 400), (300, 12345)] {
            let h = ImplicitGnm::new(n, m, Seed(n as u64)).unwrap();
            assert_eq!(h.materialize().m(), m);
        }
        assert!(ImplicitGnm::new(10, 46, Seed(0)).is_err());
    }

    #[test]
    fn matches_explicit_run() {
        for s in 0..10 {
            let host = ImplicitGnm::new(400, 20_000, Seed(s)).unwrap();
            let g = host.materialize();
            assert!(g.min_degree() > 0);
            let implicit = reduce_mis_control(&host, Seed(100 + s)).unwrap();
            let explicit = reduce_mis_reference(&g, ProbRule::UniformAvg, Seed(100 + s), None);
            assert!(verify_mis(&g, &implicit.solution));
            assert_eq!(implicit.solution, explicit.solution);
            assert_eq!(implicit.iterations, explicit.iterations);
            assert_eq!(implicit.trace, explicit.trace);
        }
    }

    #[test]
    fn degrees_look_binomial() {
        let host = ImplicitGnm::new(2000, 100_000, Seed(3)).unwrap();
        let g = host.materialize();
        // mean 100; a uniform G(n, m) keeps every degree well inside 100 ± 60
        assert!(g.max_degree() < 160 && g.min_degree() > 40);
    }
}
