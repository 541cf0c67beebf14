use std::fs::File;
use std::io::BufReader;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Algorithm, ExperimentConfig, GeneratorSpec, CHECK_NAMES};
use super::record::{CheckOutcome, StepStat, TrialRecord};
use super::HarnessError;
use crate::graph::generators::{
    complete, cycle, gen_gnp, line_graph, path, perfect_matching_graph, petersen, star, star_forest,
    unit_interval, cluster_cliques,
};
use crate::graph::oracle::{verify_maximal_matching, verify_mis};
use crate::graph::{read_edge_list, Graph, GraphError, VertexSet};
use crate::hardgraphs::{gen_hard, reduce_mis_reference, reduce_mm_reference, HardGraphSpec, ReferenceRun};
use crate::rng::Seed;
use crate::solvers::{
    mis_by_avg_degree_with, mis_by_independence_with, mis_by_neighborhood_independence_with,
    mm_pipeline_with, MmMode, Outcome, SolveOptions,
};
use crate::sparsify::{SparsifyReport, StepKind};

const GRAPH_TAG: u64 = 1;
const ALGORITHM_TAG: u64 = 2;

fn gnp_p(n: usize, d: f64) -> f64 {
    if n < 2 {
        0.0
    } else {
        (d / (n - 1) as f64).clamp(0.0, 1.0)
    }
}

/// Builds the graph of a generator spec; hard instances also return their
/// layout.
pub fn generate(spec: &GeneratorSpec, seed: Seed) -> Result<(Graph, Option<HardGraphSpec>), GraphError> {
    use GeneratorSpec::*;
    let g = match spec {
        Empty { n } => Graph::empty(*n),
        Complete { n } => complete(*n),
        Path { n } => path(*n),
        Cycle { n } => cycle(*n)?,
        Star { leaves } => star(*leaves),
        Matching { pairs } => perfect_matching_graph(*pairs),
        StarForest { stars, leaves } => star_forest(*stars, *leaves),
        Petersen => petersen(),
        Gnp { n, d } => gen_gnp(*n, gnp_p(*n, *d), seed)?,
        LineGnp { n, d } => line_graph(&gen_gnp(*n, gnp_p(*n, *d), seed)?),
        Interval { count, span } => unit_interval(*count, *span, seed)?,
        Cliques { sizes, cross } => cluster_cliques(sizes, *cross, seed)?,
        Hard { k, levels, b, variant } => {
            let (g, layout) = gen_hard(*k, *levels, *b, *variant, seed)?;
            return Ok((g, Some(layout)));
        }
        File { path } => read_edge_list(BufReader::new(std::fs::File::open(path)?))?,
    };
    Ok((g, None))
}

fn step_label(kind: StepKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn steps_from_reports(reports: &[SparsifyReport]) -> Vec<StepStat> {
    reports
        .iter()
        .map(|r| StepStat {
            label: step_label(r.kind),
            residual_n: r.residual_n as u64,
            residual_m: r.residual_edge_count,
            residual_max_degree: r.residual_max_degree,
            rounds: r.rounds_charged as u64,
        })
        .collect()
}

fn endgame_degree<S>(g: &Graph, out: &Outcome<S>) -> u32 {
    out.reports
        .iter()
        .rev()
        .find(|r| !matches!(r.kind, StepKind::MisCentral | StepKind::MmCentral))
        .map_or(g.max_degree(), |r| r.residual_max_degree)
}

fn steps_from_trace<S>(run: &ReferenceRun<S>) -> Vec<StepStat> {
    (1..=run.iterations)
        .map(|i| StepStat {
            label: "iteration".into(),
            residual_n: run.trace.total_active(i),
            residual_m: 0,
            residual_max_degree: 0,
            rounds: 0,
        })
        .collect()
}

fn respects_clusters(s: &VertexSet, layout: &HardGraphSpec) -> bool {
    let mut seen = std::collections::HashSet::new();
    s.members().iter().all(|&v| seen.insert(layout.cluster_of[v as usize]))
}

/// Runs one trial of `cfg` with `seed`. Graph and algorithm randomness are
/// both derived from `seed`.
pub fn run_trial(cfg: &ExperimentConfig, seed: u64) -> Result<TrialRecord, HarnessError> {
    let start = Instant::now();
    let base = Seed(seed);
    let (g, layout) = generate(&cfg.generator, base.derive(GRAPH_TAG))?;
    let alg = base.derive(ALGORITHM_TAG);
    let opts = SolveOptions { c_l: cfg.c_l };

    struct Measured {
        valid: bool,
        solution_size: u64,
        iterations: u32,
        rounds: u64,
        violations: u64,
        final_degree: u32,
        steps: Vec<StepStat>,
        monotone: Option<bool>,
        in_clusters: Option<bool>,
    }
    let cluster_check = |s: &VertexSet| layout.as_ref().map(|l| respects_clusters(s, l));
    let mis = |out: Outcome<VertexSet>| Measured {
        valid: verify_mis(&g, &out.solution),
        solution_size: out.solution.len() as u64,
        iterations: out.iterations,
        rounds: out.ledger.round_count() as u64,
        violations: out.ledger.violations() as u64,
        final_degree: endgame_degree(&g, &out),
        steps: steps_from_reports(&out.reports),
        monotone: None,
        in_clusters: cluster_check(&out.solution),
    };
    let mm = |out: Outcome<crate::graph::Matching>| Measured {
        valid: verify_maximal_matching(&g, &out.solution),
        solution_size: out.solution.len() as u64,
        iterations: out.iterations,
        rounds: out.ledger.round_count() as u64,
        violations: out.ledger.violations() as u64,
        final_degree: endgame_degree(&g, &out),
        steps: steps_from_reports(&out.reports),
        monotone: None,
        in_clusters: None,
    };
    let m = match cfg.algorithm {
        Algorithm::MisAvgDegree => mis(mis_by_avg_degree_with(&g, alg, &opts)),
        Algorithm::MisIndependence => mis(mis_by_independence_with(&g, cfg.mu, alg, &opts)),
        Algorithm::MisNeighborhood => mis(mis_by_neighborhood_independence_with(&g, alg, &opts)),
        Algorithm::MmAvgDegree => mm(mm_pipeline_with(&g, MmMode::AvgDegree, alg, &opts)),
        Algorithm::MmIndependence => mm(mm_pipeline_with(&g, MmMode::Independence { mu: cfg.mu }, alg, &opts)),
        Algorithm::MmNeighborhood => mm(mm_pipeline_with(&g, MmMode::NeighborhoodIndependence, alg, &opts)),
        Algorithm::ReduceMis => {
            let run = reduce_mis_reference(&g, cfg.rule, alg, layout.as_ref());
            Measured {
                valid: verify_mis(&g, &run.solution),
                solution_size: run.solution.len() as u64,
                iterations: run.iterations,
                rounds: 0,
                violations: 0,
                final_degree: 0,
                steps: steps_from_trace(&run),
                monotone: Some(run.trace.is_monotone()),
                in_clusters: cluster_check(&run.solution),
            }
        }
        Algorithm::ReduceMm => {
            let run = reduce_mm_reference(&g, alg, layout.as_ref());
            Measured {
                valid: verify_maximal_matching(&g, &run.solution),
                solution_size: run.solution.len() as u64,
                iterations: run.iterations,
                rounds: 0,
                violations: 0,
                final_degree: 0,
                steps: steps_from_trace(&run),
                monotone: Some(run.trace.is_monotone()),
                in_clusters: None,
            }
        }
    };

    let mut checks = vec![CheckOutcome {
        name: "validity".into(),
        passed: m.valid,
    }];
    for name in &cfg.checks {
        let passed = match name.as_str() {
            "admissible" => Some(m.violations == 0),
            "trace-monotone" => m.monotone,
            "cluster-independence" => m.in_clusters,
            _ => None,
        };
        if let Some(passed) = passed {
            checks.push(CheckOutcome {
                name: name.clone(),
                passed,
            });
        }
    }
    let checks_failed = checks.iter().filter(|c| !c.passed).count() as u32;
    Ok(TrialRecord {
        config_hash: cfg.hash(),
        seed,
        algorithm: cfg.algorithm.to_string(),
        generator: cfg.generator.to_string(),
        n: g.n() as u64,
        m: g.m(),
        d_avg: g.avg_degree(),
        solution_size: m.solution_size,
        valid: m.valid,
        iterations: m.iterations,
        rounds: m.rounds,
        budget_violations: m.violations,
        max_residual_degree_final: m.final_degree,
        steps: m.steps,
        checks,
        checks_failed,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: u64,
    pub total: u64,
    pub fraction: f64,
    pub threshold: f64,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config_hash: String,
    pub trials: u64,
    pub median_iterations: f64,
    pub median_rounds: f64,
    pub median_solution_size: f64,
    pub checks: Vec<CheckSummary>,
    /// Trials whose output failed the validity oracle.
    pub hard_failures: u64,
    pub thresholds_met: bool,
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl Experiment {
    /// Whether every output passed its validity oracle.
    pub fn ok(&self) -> bool {
        self.summary.hard_failures == 0
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Summary {
    let column = |f: &dyn Fn(&TrialRecord) -> f64| -> f64 {
        let mut v: Vec<f64> = records.iter().map(f).collect();
        median(&mut v)
    };
    let mut checks = Vec::new();
    for name in std::iter::once("validity").chain(CHECK_NAMES) {
        let results: Vec<bool> = records.iter().filter_map(|r| r.check(name)).collect();
        if results.is_empty() {
            continue;
        }
        let passed = results.iter().filter(|&&p| p).count() as u64;
        let total = results.len() as u64;
        let fraction = passed as f64 / total as f64;
        let threshold = if name == "validity" { 1.0 } else { cfg.threshold(name) };
        checks.push(CheckSummary {
            name: name.to_string(),
            passed,
            total,
            fraction,
            threshold,
            met: fraction >= threshold,
        });
    }
    Summary {
        config_hash: cfg.hash(),
        trials: records.len() as u64,
        median_iterations: column(&|r| r.iterations as f64),
        median_rounds: column(&|r| r.rounds as f64),
        median_solution_size: column(&|r| r.solution_size as f64),
        hard_failures: records.iter().filter(|r| !r.valid).count() as u64,
        thresholds_met: checks.iter().all(|c| c.met),
        checks,
    }
}

/// Runs every seed of `cfg` on the rayon pool; records come back in seed
/// order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment, HarnessError> {
    cfg.validate()?;
    if let GeneratorSpec::File { path } = &cfg.generator {
        File::open(path)?;
    }
    let seeds: Vec<u64> = cfg.seeds().collect();
    let records = seeds
        .par_iter()
        .map(|&s| run_trial(cfg, s))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(cfg, &records);
    Ok(Experiment {
        config: cfg.clone(),
        records,
        summary,
    })
}
