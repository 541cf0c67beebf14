use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::generate::HardGraphSpec;
use crate::graph::{lfmis_ascending, lfmm_lexicographic, Graph, GraphError, Induced, Matching, VertexSet};
use crate::rng::{below, Prob, Seed, Stream};

/// Per-vertex sampling probability in the reference MIS framework.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbRule {
    /// `1/sqrt(d(G_r))`
    UniformAvg,
    /// `1/sqrt(δ(G_r))`
    UniformMin,
    /// `1/sqrt(deg_{G_r}(v))`
    PerVertexDegree,
}

/// Active vertices of one level after `iteration` iterations; iteration 0
/// is the input. `p_r` is the probability used in that iteration (for the
/// per-vertex rule, the smallest one).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub seed: u64,
    pub iteration: u32,
    pub level: u32,
    pub active_count: u64,
    pub p_r: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SurvivalTrace {
    pub rows: Vec<TraceRow>,
}

impl SurvivalTrace {
    pub(crate) fn record(&mut self, seed: Seed, iteration: u32, levels: &[u64], p: Option<Prob>) {
        for (level, &active_count) in levels.iter().enumerate() {
            self.rows.push(TraceRow {
                seed: seed.0,
                iteration,
                level: level as u32,
                active_count,
                p_r: p.map(Prob::as_f64),
            });
        }
    }

    pub fn active(&self, iteration: u32, level: u32) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.iteration == iteration && r.level == level)
            .map(|r| r.active_count)
    }

    /// Active vertices over all levels after `iteration` iterations, or after
    /// the last one if the run was shorter.
    pub fn total_active(&self, iteration: u32) -> u64 {
        let last = self.rows.iter().map(|r| r.iteration).max().unwrap_or(0);
        let it = iteration.min(last);
        self.rows.iter().filter(|r| r.iteration == it).map(|r| r.active_count).sum()
    }

    /// Whether each level's active count never increases.
    pub fn is_monotone(&self) -> bool {
        let levels = self.rows.iter().map(|r| r.level).max().map_or(0, |l| l + 1);
        (0..levels).all(|l| {
            let counts: Vec<u64> = self.rows.iter().filter(|r| r.level == l).map(|r| r.active_count).collect();
            counts.windows(2).all(|w| w[1] <= w[0])
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GraphError> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| GraphError::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<SurvivalTrace, GraphError> {
        let mut r = csv::Reader::from_reader(input);
        let rows = r
            .deserialize()
            .collect::<Result<Vec<TraceRow>, _>>()
            .map_err(|e| GraphError::Parse(e.to_string()))?;
        Ok(SurvivalTrace { rows })
    }
}

/// Clusters hit by the sample of one iteration, and how many of those lost
/// every member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterCoverage {
    pub iteration: u32,
    pub sampled_clusters: u64,
    pub fully_covered: u64,
}

#[derive(Clone, Debug)]
pub struct ReferenceRun<S> {
    pub solution: S,
    pub iterations: u32,
    pub trace: SurvivalTrace,
    pub coverage: Vec<ClusterCoverage>,
}

pub(crate) fn level_counts(origin: &[u32], spec: Option<&HardGraphSpec>) -> Vec<u64> {
    match spec {
        None => vec![origin.len() as u64],
        Some(s) => {
            let mut counts = vec![0u64; s.levels as usize];
            for &v in origin {
                counts[s.level_of[v as usize] as usize] += 1;
            }
            counts
        }
    }
}

/// The reference MIS framework: sample `F_r`, add the LFMIS of `G[F_r]`,
/// remove the covered vertices, until nothing is left.
pub fn reduce_mis_reference(
    g: &Graph,
    rule: ProbRule,
    seed: Seed,
    spec: Option<&HardGraphSpec>,
) -> ReferenceRun<VertexSet> {
    let mut trace = SurvivalTrace::default();
    let h = Induced::whole(g.clone());
    trace.record(seed, 0, &level_counts(&h.origin, spec), None);
    let mut run = ReferenceRun {
        solution: Vec::new(),
        iterations: 0,
        trace,
        coverage: Vec::new(),
    };
    mis_iterations(h, rule, seed, spec, &mut run);
    ReferenceRun {
        solution: VertexSet::new(g.n(), run.solution).expect("distinct ids"),
        iterations: run.iterations,
        trace: run.trace,
        coverage: run.coverage,
    }
}

/// Continues the framework from residual `h` (ids into the input graph).
pub(crate) fn mis_iterations(
    mut h: Induced,
    rule: ProbRule,
    seed: Seed,
    spec: Option<&HardGraphSpec>,
    run: &mut ReferenceRun<Vec<u32>>,
) {
    while h.n() > 0 {
        run.iterations += 1;
        let r = run.iterations;
        // isolated vertices join directly; this is sampling them with p = 1
        let (isolated, rest): (Vec<u32>, Vec<u32>) = (0..h.n() as u32).partition(|&v| h.graph.degree(v) == 0);
        run.solution.extend(isolated.iter().map(|&v| h.origin[v as usize]));
        if !isolated.is_empty() {
            h = h.restrict(&rest);
        }
        if h.n() == 0 {
            run.trace.record(seed, r, &level_counts(&h.origin, spec), Some(Prob::ONE));
            break;
        }

        let min_deg = h.graph.min_degree() as f64;
        let cap = Prob::inv_sqrt(min_deg);
        let uniform = match rule {
            ProbRule::UniformAvg => Prob::inv_sqrt(h.graph.avg_degree()).min(cap),
            ProbRule::UniformMin => cap,
            ProbRule::PerVertexDegree => Prob::inv_sqrt(h.graph.max_degree() as f64),
        };
        let sampled: Vec<u32> = (0..h.n() as u32)
            .filter(|&v| {
                let p = match rule {
                    ProbRule::PerVertexDegree => Prob::inv_sqrt(h.graph.degree(v) as f64),
                    _ => uniform,
                };
                p.accepts(seed.draw(Stream::VertexSample, r as u64, h.origin[v as usize] as u64))
            })
            .collect();
        let f = h.graph.induced(&sampled);
        let s: Vec<u32> = lfmis_ascending(&f)
            .members()
            .iter()
            .map(|&i| sampled[i as usize])
            .collect();
        let mut covered = vec![false; h.n()];
        for &v in &s {
            covered[v as usize] = true;
            for u in h.graph.neighbors(v) {
                covered[u as usize] = true;
            }
        }
        assert!(sampled.iter().all(|&v| covered[v as usize]), "an MIS of G[F] dominates F");
        run.solution.extend(s.iter().map(|&v| h.origin[v as usize]));

        if let Some(spec) = spec {
            let mut hit = std::collections::BTreeSet::new();
            for &v in &sampled {
                hit.insert(spec.cluster_of[h.origin[v as usize] as usize]);
            }
            let mut alive = std::collections::BTreeSet::new();
            for (&c, &v) in covered.iter().zip(&h.origin) {
                if !c {
                    alive.insert(spec.cluster_of[v as usize]);
                }
            }
            run.coverage.push(ClusterCoverage {
                iteration: r,
                sampled_clusters: hit.len() as u64,
                fully_covered: hit.iter().filter(|c| !alive.contains(c)).count() as u64,
            });
        }

        let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| !covered[v as usize]).collect();
        h = h.restrict(&keep);
        run.trace.record(seed, r, &level_counts(&h.origin, spec), Some(uniform));
    }
}

/// Smallest `q` with `q^2 n >= 2m`, i.e. `ceil(sqrt(d))`.
fn parts_for(n: usize, m: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let target = 2 * m as u128;
    let mut q = ((2.0 * m as f64 / n as f64).sqrt() as u64).max(1);
    while (q as u128) * (q as u128) * (n as u128) < target {
        q += 1;
    }
    while q > 1 && ((q - 1) as u128) * ((q - 1) as u128) * (n as u128) >= target {
        q -= 1;
    }
    q
}

/// Clean-up threshold `ceil(Δ^{0.92})`.
fn cleanup_threshold(delta: u32) -> u32 {
    libm::ceil(libm::pow(delta as f64, 0.92)) as u32
}

/// The reference matching framework: random vertex partition into
/// `ceil(sqrt(d))` parts, LFMM inside each part, then greedy matching among
/// the vertices whose remaining degree is at least `Δ^{0.92}`.
pub fn reduce_mm_reference(g: &Graph, seed: Seed, spec: Option<&HardGraphSpec>) -> ReferenceRun<Matching> {
    let mut trace = SurvivalTrace::default();
    let mut h = Induced::whole(g.clone());
    trace.record(seed, 0, &level_counts(&h.origin, spec), None);
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut iterations = 0;
    while h.graph.m() > 0 {
        iterations += 1;
        let r = iterations;
        let parts = parts_for(h.n(), h.graph.m());
        let threshold = cleanup_threshold(h.graph.max_degree());
        let part_of: Vec<u32> = h
            .origin
            .iter()
            .map(|&v| below(seed.draw(Stream::Partition, r as u64, v as u64), parts) as u32)
            .collect();
        let mut matched = vec![false; h.n()];
        for piece in h.graph.split_by_part(&part_of, parts as usize) {
            for &(a, b) in lfmm_lexicographic(&piece.graph).pairs() {
                let (a, b) = (piece.origin[a as usize], piece.origin[b as usize]);
                matched[a as usize] = true;
                matched[b as usize] = true;
                pairs.push((h.origin[a as usize], h.origin[b as usize]));
            }
        }
        let free: Vec<u32> = (0..h.n() as u32).filter(|&v| !matched[v as usize]).collect();
        let rest = h.restrict(&free);
        let high: Vec<u32> = (0..rest.n() as u32)
            .filter(|&v| rest.graph.degree(v) >= threshold)
            .collect();
        let top = rest.restrict(&high);
        let mut cleaned = vec![false; rest.n()];
        for &(a, b) in lfmm_lexicographic(&top.graph).pairs() {
            cleaned[high[a as usize] as usize] = true;
            cleaned[high[b as usize] as usize] = true;
            pairs.push((top.origin[a as usize], top.origin[b as usize]));
        }
        let keep: Vec<u32> = (0..rest.n() as u32).filter(|&v| !cleaned[v as usize]).collect();
        h = rest.restrict(&keep);
        trace.record(seed, r, &level_counts(&h.origin, spec), Some(Prob::inv(parts as f64)));
    }
    ReferenceRun {
        solution: Matching::from_pairs_unchecked(pairs),
        iterations,
        trace,
        coverage: Vec::new(),
    }
}
