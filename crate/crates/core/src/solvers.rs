//! End-to-end MIS and maximal matching pipelines with round accounting.

use serde::{Deserialize, Serialize};

use crate::graph::{degree_classes, Graph, Induced, Matching, VertexSet};
use crate::rng::Seed;
use crate::sim::ledger::{RoundLedger, Traffic, DEFAULT_C_L};
use crate::sim::local::{simulate_local, LubyMis, LubyStatus, ProposalMatching};
use crate::sparsify::{
    max_degree_at_most_cube_root, mis_avg_degree_step, mis_central_finish, mis_max_degree_step,
    mis_nonuniform_step, mm_avg_degree_step, mm_central_finish, mm_partition_step, MisState,
    MmState, Run, SparsifyReport,
};

/// Reduction steps the endgame may add before giving up on the LOCAL route
/// and gathering whatever is left.
const MAX_FALLBACK_STEPS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Lenzen budget constant `c_L`.
    pub c_l: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { c_l: DEFAULT_C_L }
    }
}

/// How the residual left after the reduction phase was finished.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Endgame {
    /// Edges gathered for the final central finish.
    pub central_edges: u64,
    /// LOCAL rounds simulated, 0 if the LOCAL route was not taken.
    pub local_rounds: u32,
    /// Reduction steps added because the LOCAL route was unavailable.
    pub fallback_steps: u32,
    /// Vertices still undecided after the LOCAL simulation.
    pub swept_vertices: usize,
}

#[derive(Clone, Debug)]
pub struct Outcome<S> {
    pub solution: S,
    pub ledger: RoundLedger,
    pub iterations: u32,
    pub reports: Vec<SparsifyReport>,
    pub endgame: Endgame,
}

/// JSON form of a pipeline result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineSummary {
    pub solution_size: usize,
    pub iterations: u32,
    pub rounds: usize,
    pub budget_violations: usize,
    pub steps: Vec<SparsifyReport>,
    pub endgame: Endgame,
}

impl<S> Outcome<S> {
    fn summary_with(&self, solution_size: usize) -> PipelineSummary {
        PipelineSummary {
            solution_size,
            iterations: self.iterations,
            rounds: self.ledger.round_count(),
            budget_violations: self.ledger.violations(),
            steps: self.reports.clone(),
            endgame: self.endgame.clone(),
        }
    }
}

impl Outcome<VertexSet> {
    pub fn summary(&self) -> PipelineSummary {
        self.summary_with(self.solution.len())
    }
}

impl Outcome<Matching> {
    pub fn summary(&self) -> PipelineSummary {
        self.summary_with(self.solution.len())
    }
}

/// Reduction steps for a graph with average degree `d` on `n` nodes:
/// `ceil(log2(max(1, log2 d / sqrt(log2 n)))) + 1`, with `log2 d` rounded
/// down to an integer so that a degree hovering around a power of two does
/// not flip the step count.
pub fn avg_degree_iterations(d: f64, n: usize) -> u32 {
    let log_n = (n.max(2) as f64).log2();
    let ratio = if d > 1.0 { d.log2().floor() / log_n.sqrt() } else { 0.0 };
    ratio.max(1.0).log2().ceil() as u32 + 1
}

/// Reduction steps for independence parameter `mu`: `ceil(log2(2/mu))`, at
/// least 1.
pub fn independence_iterations(mu: f64) -> u32 {
    assert!(mu > 0.0, "mu must be positive");
    ((2.0 / mu).log2().ceil() as u32).max(1)
}

fn avg_degree_of(h: &Induced) -> f64 {
    if h.n() == 0 {
        0.0
    } else {
        2.0 * h.graph.m() as f64 / h.n() as f64
    }
}

fn ceil_log2_rounds(delta: u32) -> u32 {
    ((4.0 * (delta.max(2) as f64).log2()).ceil() as u32).max(1)
}

/// The average-degree MIS pipeline from the current state: `r` reduction
/// steps chosen from the residual's average degree, then the endgame.
fn mis_avg_pipeline(run: &mut Run, state: &mut MisState, c_l: u64, iterations: &mut u32) -> Endgame {
    let d = avg_degree_of(&state.residual);
    state.absorb_isolated();
    if state.residual.graph.m() == 0 {
        return Endgame::default();
    }
    if d >= 1.0 {
        let r = avg_degree_iterations(d, run.host_n());
        for _ in 0..r {
            mis_avg_degree_step(run, state);
            *iterations += 1;
        }
    }
    mis_endgame(run, state, c_l, iterations)
}

fn mis_endgame(run: &mut Run, state: &mut MisState, c_l: u64, iterations: &mut u32) -> Endgame {
    let mut end = Endgame::default();
    let budget = c_l * run.host_n() as u64;
    loop {
        state.absorb_isolated();
        let h = &state.residual;
        if h.graph.m() <= budget || end.fallback_steps >= MAX_FALLBACK_STEPS {
            end.central_edges = h.graph.m();
            mis_central_finish(run, state);
            return end;
        }
        let rounds = ceil_log2_rounds(h.graph.max_degree());
        let mut sub = RoundLedger::new(h.n(), run.ledger.c_l);
        let algo = LubyMis {
            seed: run.seed.derive(0x6c75_6279),
        };
        match simulate_local(&h.graph, &algo, rounds, 1, run.seed, &mut sub) {
            Ok(out) => {
                run.ledger.append_relabeled(&sub, &h.origin);
                end.local_rounds = rounds;
                let joined: Vec<u32> = (0..h.n() as u32)
                    .filter(|&v| out.outputs[v as usize] == LubyStatus::InMis)
                    .collect();
                remove_covered(run, state, &joined);
                state.absorb_isolated();
                end.swept_vertices = state.residual.n();
                end.central_edges = state.residual.graph.m();
                mis_central_finish(run, state);
                return end;
            }
            Err(_) => {
                mis_avg_degree_step(run, state);
                *iterations += 1;
                end.fallback_steps += 1;
            }
        }
    }
}

/// Adds `joined` (residual ids) to the solution and removes their closed
/// neighbourhood, charging the notification round.
fn remove_covered(run: &mut Run, state: &mut MisState, joined: &[u32]) {
    let h = std::mem::take(&mut state.residual);
    let mut covered = vec![false; h.n()];
    let mut t = Traffic::new(run.host_n());
    for &v in joined {
        covered[v as usize] = true;
        for u in h.graph.neighbors(v) {
            covered[u as usize] = true;
            t.send(h.origin[v as usize], h.origin[u as usize], 1);
        }
    }
    run.ledger.charge("cover", t);
    state.solution.extend(joined.iter().map(|&v| h.origin[v as usize]));
    let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| !covered[v as usize]).collect();
    state.residual = h.restrict(&keep);
}

macro_rules! with_run {
    ($g:expr, $seed:expr, $opts:expr, |$run:ident| $body:block) => {{
        let mut ledger = RoundLedger::new($g.n(), $opts.c_l);
        let mut $run = Run::new($seed, &mut ledger);
        let (state, iterations, endgame) = $body;
        let reports = std::mem::take(&mut $run.reports);
        drop($run);
        (state, iterations, endgame, reports, ledger)
    }};
}

/// MIS in a number of reduction steps governed by the average degree.
pub fn mis_by_avg_degree(g: &Graph, seed: Seed) -> Outcome<VertexSet> {
    mis_by_avg_degree_with(g, seed, &SolveOptions::default())
}

pub fn mis_by_avg_degree_with(g: &Graph, seed: Seed, opts: &SolveOptions) -> Outcome<VertexSet> {
    let (state, iterations, endgame, reports, ledger) = with_run!(g, seed, opts, |run| {
        let mut state = MisState::new(g);
        let mut iterations = 0;
        let end = mis_avg_pipeline(&mut run, &mut state, opts.c_l, &mut iterations);
        (state, iterations, end)
    });
    mis_outcome(g, state, iterations, endgame, reports, ledger)
}

fn mis_outcome(
    g: &Graph,
    state: MisState,
    iterations: u32,
    endgame: Endgame,
    reports: Vec<SparsifyReport>,
    ledger: RoundLedger,
) -> Outcome<VertexSet> {
    debug_assert_eq!(state.residual.n(), 0);
    Outcome {
        solution: state.solution_set(g.n()),
        ledger,
        iterations,
        reports,
        endgame,
    }
}

/// MIS for graphs whose independence number is at most `n / d^mu`. The
/// bound on the independence number is the caller's claim; it only affects
/// the number of rounds, never correctness.
pub fn mis_by_independence(g: &Graph, mu: f64, seed: Seed) -> Outcome<VertexSet> {
    mis_by_independence_with(g, mu, seed, &SolveOptions::default())
}

pub fn mis_by_independence_with(g: &Graph, mu: f64, seed: Seed, opts: &SolveOptions) -> Outcome<VertexSet> {
    let r = independence_iterations(mu);
    let (state, iterations, endgame, reports, ledger) = with_run!(g, seed, opts, |run| {
        let mut state = MisState::new(g);
        state.absorb_isolated();
        let mut iterations = 0;
        for _ in 0..r {
            if state.residual.graph.m() == 0 {
                break;
            }
            mis_avg_degree_step(&mut run, &mut state);
            iterations += 1;
        }
        let end = mis_avg_pipeline(&mut run, &mut state, opts.c_l, &mut iterations);
        (state, iterations, end)
    });
    mis_outcome(g, state, iterations, endgame, reports, ledger)
}

/// MIS using the non-uniform sparsifier, suited to graphs with small
/// neighbourhood independence.
pub fn mis_by_neighborhood_independence(g: &Graph, seed: Seed) -> Outcome<VertexSet> {
    mis_by_neighborhood_independence_with(g, seed, &SolveOptions::default())
}

pub fn mis_by_neighborhood_independence_with(
    g: &Graph,
    seed: Seed,
    opts: &SolveOptions,
) -> Outcome<VertexSet> {
    let (state, iterations, endgame, reports, ledger) = with_run!(g, seed, opts, |run| {
        let mut state = MisState::new(g);
        state.absorb_isolated();
        let mut iterations = 0;
        if state.residual.graph.m() > 0 {
            reduce_until_cube_root(&mut run, &mut state);
            mis_nonuniform_step(&mut run, &mut state);
            iterations += 1;
        }
        let end = mis_avg_pipeline(&mut run, &mut state, opts.c_l, &mut iterations);
        (state, iterations, end)
    });
    mis_outcome(g, state, iterations, endgame, reports, ledger)
}

/// Two max-degree steps, continued while `Δ > n^{1/3}` so that the
/// non-uniform step's degree guard holds.
pub fn reduce_until_cube_root(run: &mut Run, state: &mut MisState) -> u32 {
    let mut steps = 0;
    while steps < 2 || !max_degree_at_most_cube_root(state.residual.graph.max_degree(), run.host_n()) {
        if state.residual.graph.m() == 0 {
            break;
        }
        mis_max_degree_step(run, state);
        steps += 1;
    }
    steps
}

/// Which parameter drives the matching pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum MmMode {
    AvgDegree,
    Independence { mu: f64 },
    NeighborhoodIndependence,
}

pub fn mm_pipeline(g: &Graph, mode: MmMode, seed: Seed) -> Outcome<Matching> {
    mm_pipeline_with(g, mode, seed, &SolveOptions::default())
}

pub fn mm_pipeline_with(g: &Graph, mode: MmMode, seed: Seed, opts: &SolveOptions) -> Outcome<Matching> {
    let mut ledger = RoundLedger::new(g.n(), opts.c_l);
    let mut iterations = 0;
    let mut reports = Vec::new();
    let mut solution = Vec::new();
    let endgame = match mode {
        MmMode::AvgDegree | MmMode::Independence { .. } => {
            let mut run = Run::new(seed, &mut ledger);
            let mut state = MmState::new(g);
            if let MmMode::Independence { mu } = mode {
                for _ in 0..independence_iterations(mu) {
                    if state.residual.graph.m() == 0 {
                        break;
                    }
                    mm_avg_degree_step(&mut run, &mut state);
                    iterations += 1;
                }
            }
            let end = mm_avg_pipeline(&mut run, &mut state, opts.c_l, &mut iterations);
            reports = std::mem::take(&mut run.reports);
            solution = state.solution;
            end
        }
        MmMode::NeighborhoodIndependence => {
            mm_by_degree_classes(g, seed, opts, &mut ledger, &mut iterations, &mut reports, &mut solution)
        }
    };
    Outcome {
        solution: Matching::from_pairs_unchecked(solution),
        ledger,
        iterations,
        reports,
        endgame,
    }
}

fn mm_avg_pipeline(run: &mut Run, state: &mut MmState, c_l: u64, iterations: &mut u32) -> Endgame {
    let d = avg_degree_of(&state.residual);
    state.drop_isolated();
    if state.residual.graph.m() == 0 {
        return Endgame::default();
    }
    if d >= 1.0 {
        let r = avg_degree_iterations(d, run.host_n());
        for _ in 0..r {
            if state.residual.graph.m() == 0 {
                break;
            }
            mm_avg_degree_step(run, state);
            *iterations += 1;
        }
    }
    mm_endgame(run, state, c_l, iterations)
}

fn mm_endgame(run: &mut Run, state: &mut MmState, c_l: u64, iterations: &mut u32) -> Endgame {
    let mut end = Endgame::default();
    let budget = c_l * run.host_n() as u64;
    loop {
        state.drop_isolated();
        let h = &state.residual;
        if h.graph.m() == 0 {
            return end;
        }
        if h.graph.m() <= budget || end.fallback_steps >= MAX_FALLBACK_STEPS {
            end.central_edges = h.graph.m();
            mm_central_finish(run, state);
            return end;
        }
        let rounds = ceil_log2_rounds(h.graph.max_degree());
        let mut sub = RoundLedger::new(h.n(), run.ledger.c_l);
        let algo = ProposalMatching {
            seed: run.seed.derive(0x7072_6f70),
        };
        match simulate_local(&h.graph, &algo, rounds, 1, run.seed, &mut sub) {
            Ok(out) => {
                run.ledger.append_relabeled(&sub, &h.origin);
                end.local_rounds = rounds;
                let h = std::mem::take(&mut state.residual);
                let mut matched = vec![false; h.n()];
                for v in 0..h.n() as u32 {
                    if let Some(u) = out.outputs[v as usize] {
                        if v < u && out.outputs[u as usize] == Some(v) {
                            matched[v as usize] = true;
                            matched[u as usize] = true;
                            state.solution.push((h.origin[v as usize], h.origin[u as usize]));
                        }
                    }
                }
                let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| !matched[v as usize]).collect();
                state.residual = h.restrict(&keep);
                state.drop_isolated();
                end.swept_vertices = state.residual.n();
                end.central_edges = state.residual.graph.m();
                if state.residual.graph.m() > 0 {
                    mm_central_finish(run, state);
                }
                return end;
            }
            Err(_) => {
                mm_avg_degree_step(run, state);
                *iterations += 1;
                end.fallback_steps += 1;
            }
        }
    }
}

/// Matching by degree classes: two partition steps inside every class in
/// parallel, the pooled in-class residual finished by the average-degree
/// pipeline, then the cross-class residual likewise.
fn mm_by_degree_classes(
    g: &Graph,
    seed: Seed,
    opts: &SolveOptions,
    ledger: &mut RoundLedger,
    iterations: &mut u32,
    reports: &mut Vec<SparsifyReport>,
    solution: &mut Vec<(u32, u32)>,
) -> Endgame {
    let classes = degree_classes(g);
    let whole = Induced::whole(g.clone());
    let mut class_ledgers = Vec::new();
    let mut in_class_edges: Vec<(u32, u32)> = Vec::new();
    let mut pooled: Vec<u32> = Vec::new();
    for (i, class) in classes.classes.iter().enumerate() {
        if class.is_empty() {
            continue;
        }
        let mut sub = RoundLedger::new(g.n(), opts.c_l);
        let mut run = Run::new(seed.derive(1 + i as u64), &mut sub);
        let mut state = MmState {
            residual: whole.restrict(class.members()),
            solution: Vec::new(),
        };
        state.drop_isolated();
        for _ in 0..2 {
            if state.residual.graph.m() == 0 {
                break;
            }
            mm_partition_step(&mut run, &mut state);
        }
        reports.append(&mut run.reports);
        let h = &state.residual;
        pooled.extend_from_slice(&h.origin);
        in_class_edges.extend(h.graph.edges().map(|(a, b)| (h.origin[a as usize], h.origin[b as usize])));
        solution.extend_from_slice(&state.solution);
        class_ledgers.push(sub);
    }
    ledger.append_parallel("classes", class_ledgers);
    *iterations += 1;

    pooled.sort_unstable();
    let mut run = Run::new(seed, ledger);
    let local_of = |v: u32| pooled.binary_search(&v).expect("pooled vertex") as u32;
    let pooled_graph = Graph::from_edges(
        pooled.len(),
        in_class_edges.iter().map(|&(a, b)| (local_of(a), local_of(b))),
    )
    .expect("in-class residual edges are simple");
    let mut state = MmState {
        residual: Induced {
            graph: pooled_graph,
            origin: pooled.clone(),
        },
        solution: Vec::new(),
    };
    let mut end = mm_avg_pipeline(&mut run, &mut state, opts.c_l, iterations);
    solution.append(&mut state.solution);

    let mut matched = vec![false; g.n()];
    for &(a, b) in solution.iter() {
        matched[a as usize] = true;
        matched[b as usize] = true;
    }
    let free: Vec<u32> = (0..g.n() as u32).filter(|&v| !matched[v as usize]).collect();
    let mut state = MmState {
        residual: whole.restrict(&free),
        solution: Vec::new(),
    };
    let cross = mm_avg_pipeline(&mut run, &mut state, opts.c_l, iterations);
    solution.append(&mut state.solution);
    reports.append(&mut run.reports);
    end.central_edges += cross.central_edges;
    end.fallback_steps += cross.fallback_steps;
    end.swept_vertices += cross.swept_vertices;
    end.local_rounds = end.local_rounds.max(cross.local_rounds);
    end
}
