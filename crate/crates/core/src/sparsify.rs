//! Sampling sparsifiers for MIS and maximal matching, and iterated degree
//! reduction built from them.
//!
//! Every step works on the current residual graph as an [`Induced`] view of
//! the input, draws its randomness by original vertex id, and charges its
//! rounds to the trial's ledger in original ids. Vertex 0 collects gathered
//! edges; in partition steps, part `i` is collected at vertex `i`.

use serde::{Deserialize, Serialize};

use crate::graph::{lfmis_ascending, lfmm_lexicographic, Graph, Induced, Matching, VertexSet};
use crate::rng::{below, pair_id, Prob, Seed, Stream};
use crate::sim::ledger::{gather_counts, RoundLedger, Traffic, DEFAULT_C_L};

/// Which sparsifier produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    MisMaxDegree,
    MisAvgDegree,
    MisNonUniform,
    MisCentral,
    MmEdgeSample,
    MmPartition,
    MmCentral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyReport {
    pub kind: StepKind,
    pub input_n: usize,
    pub input_m: u64,
    pub input_max_degree: u32,
    /// Sampling probability; for non-uniform sampling the smallest one used.
    pub p: f64,
    /// Sampled vertices (MIS) or sampled edges (MM).
    pub sampled: u64,
    /// Edges shipped to collectors.
    pub sampled_edges_in_f: u64,
    pub solution_added: u64,
    pub residual_n: usize,
    pub residual_max_degree: u32,
    pub residual_edge_count: u64,
    pub rounds_charged: usize,
}

/// Mutable state shared by the steps of one trial.
pub struct Run<'a> {
    pub seed: Seed,
    pub ledger: &'a mut RoundLedger,
    pub reports: Vec<SparsifyReport>,
    step: u64,
}

impl<'a> Run<'a> {
    pub fn new(seed: Seed, ledger: &'a mut RoundLedger) -> Run<'a> {
        Run {
            seed,
            ledger,
            reports: Vec::new(),
            step: 0,
        }
    }

    /// Fresh draw index for the next random step.
    fn next_step(&mut self) -> u64 {
        self.step += 1;
        self.step
    }

    pub fn host_n(&self) -> usize {
        self.ledger.n
    }
}

/// Residual graph plus partial solution in input ids.
#[derive(Clone, Debug)]
pub struct MisState {
    pub residual: Induced,
    pub solution: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct MmState {
    pub residual: Induced,
    pub solution: Vec<(u32, u32)>,
}

impl MisState {
    pub fn new(g: &Graph) -> MisState {
        MisState {
            residual: Induced::whole(g.clone()),
            solution: Vec::new(),
        }
    }

    /// Isolated residual vertices join the solution; each knows its own
    /// degree, so no communication is needed.
    pub fn absorb_isolated(&mut self) {
        let h = &self.residual;
        let isolated: Vec<u32> = h.graph.isolated().collect();
        if isolated.is_empty() {
            return;
        }
        self.solution.extend(isolated.iter().map(|&v| h.origin[v as usize]));
        let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| h.graph.degree(v) > 0).collect();
        self.residual = h.restrict(&keep);
    }

    pub fn solution_set(&self, host_n: usize) -> VertexSet {
        VertexSet::new(host_n, self.solution.clone()).expect("solution ids are distinct")
    }
}

impl MmState {
    pub fn new(g: &Graph) -> MmState {
        let mut s = MmState {
            residual: Induced::whole(g.clone()),
            solution: Vec::new(),
        };
        s.drop_isolated();
        s
    }

    /// Isolated residual vertices can never be matched.
    pub fn drop_isolated(&mut self) {
        let h = &self.residual;
        if h.graph.isolated().next().is_none() {
            return;
        }
        let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| h.graph.degree(v) > 0).collect();
        self.residual = h.restrict(&keep);
    }

    pub fn matching(&self) -> Matching {
        Matching::from_pairs_unchecked(self.solution.clone())
    }
}

/// `1 / sqrt(d(G))`.
pub fn avg_degree_prob(g: &Graph) -> Prob {
    Prob::inv_sqrt(g.avg_degree())
}

/// `1 / sqrt(Δ(G))`.
pub fn max_degree_prob(g: &Graph) -> Prob {
    Prob::inv_sqrt(g.max_degree() as f64)
}

/// Whether `Δ <= n^{1/4}` with exact integer arithmetic.
pub fn max_degree_at_most_quarter_root(delta: u32, n: usize) -> bool {
    (delta as u128).pow(4) <= n as u128
}

/// Whether `Δ <= n^{1/3}`.
pub fn max_degree_at_most_cube_root(delta: u32, n: usize) -> bool {
    (delta as u128).pow(3) <= n as u128
}

fn charge_stats(run: &mut Run, h: &Induced) {
    let mut t = Traffic::new(run.host_n());
    for &v in &h.origin {
        t.send(v, 0, 1);
    }
    run.ledger.charge("stats", t);
}

fn charge_param(run: &mut Run, h: &Induced) {
    let mut t = Traffic::new(run.host_n());
    for &v in &h.origin {
        t.send(0, v, 1);
    }
    run.ledger.charge("param", t);
}

/// Each listed vertex notifies all its neighbours in `h`.
fn charge_notify(run: &mut Run, label: &str, h: &Induced, who: &[u32]) {
    let mut t = Traffic::new(run.host_n());
    for &v in who {
        let src = h.origin[v as usize];
        for u in h.graph.neighbors(v) {
            t.send(src, h.origin[u as usize], 1);
        }
    }
    run.ledger.charge(label, t);
}

/// Collector 0 tells each listed vertex it was selected.
fn charge_result(run: &mut Run, label: &str, collectors: &[(u32, Vec<u32>)]) {
    let mut t = Traffic::new(run.host_n());
    for (c, vs) in collectors {
        for &v in vs {
            t.send(*c, v, 1);
        }
    }
    run.ledger.charge(label, t);
}

/// Edge counts per sender (the smaller endpoint, in input ids) for shipping
/// all edges of `f`, in sending order.
fn sender_counts(f: &Induced) -> Vec<(u32, u64)> {
    (0..f.n() as u32)
        .map(|v| (f.origin[v as usize], f.graph.upper_degree(v) as u64))
        .filter(|&(_, c)| c > 0)
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn report(
    kind: StepKind,
    input: &Induced,
    p: Prob,
    sampled: u64,
    shipped: u64,
    added: u64,
    residual: &Induced,
    rounds: usize,
) -> SparsifyReport {
    SparsifyReport {
        kind,
        input_n: input.n(),
        input_m: input.graph.m(),
        input_max_degree: input.graph.max_degree(),
        p: p.as_f64(),
        sampled,
        sampled_edges_in_f: shipped,
        solution_added: added,
        residual_n: residual.n(),
        residual_max_degree: residual.graph.max_degree(),
        residual_edge_count: residual.graph.m(),
        rounds_charged: rounds,
    }
}

/// Samples vertices (with per-vertex probabilities from `prob`), gathers
/// `G[V_F]` at vertex 0, adds its LFMIS to the solution and removes the
/// covered vertices.
fn one_shot_mis_with(
    run: &mut Run,
    state: &mut MisState,
    kind: StepKind,
    prob: impl Fn(&Graph, u32) -> Prob,
    needs_stats: bool,
) {
    let step = run.next_step();
    let before = run.ledger.round_count();
    let h = std::mem::take(&mut state.residual);
    if needs_stats {
        charge_stats(run, &h);
    }
    charge_param(run, &h);

    let mut min_p = Prob::ONE;
    let sampled: Vec<u32> = (0..h.n() as u32)
        .filter(|&v| {
            let p = prob(&h.graph, v);
            min_p = min_p.min(p);
            p.accepts(run.seed.draw(Stream::VertexSample, step, h.origin[v as usize] as u64))
        })
        .collect();
    let f = h.restrict(&sampled);
    let shipped = f.graph.m();
    gather_counts(&[(0, sender_counts(&f))], run.ledger, "gather");

    // LFMIS of F in ascending input id; local order agrees with input order
    let s_local: Vec<u32> = lfmis_ascending(&f.graph)
        .members()
        .iter()
        .map(|&i| sampled[i as usize])
        .collect();
    let s_host: Vec<u32> = s_local.iter().map(|&v| h.origin[v as usize]).collect();
    charge_result(run, "result", &[(0, s_host.clone())]);
    charge_notify(run, "cover", &h, &s_local);

    let mut covered = vec![false; h.n()];
    for &v in &s_local {
        covered[v as usize] = true;
        for u in h.graph.neighbors(v) {
            covered[u as usize] = true;
        }
    }
    let newly: Vec<u32> = (0..h.n() as u32).filter(|&v| covered[v as usize]).collect();
    charge_notify(run, "update", &h, &newly);
    let survivors: Vec<u32> = (0..h.n() as u32).filter(|&v| !covered[v as usize]).collect();
    let residual = h.restrict(&survivors);

    state.solution.extend_from_slice(&s_host);
    let rep = report(
        kind,
        &h,
        min_p,
        sampled.len() as u64,
        shipped,
        s_host.len() as u64,
        &residual,
        run.ledger.round_count() - before,
    );
    run.reports.push(rep);
    state.residual = residual;
    state.absorb_isolated();
}

/// One-shot MIS step with a uniform probability.
pub fn mis_uniform_step(run: &mut Run, state: &mut MisState, kind: StepKind, p: Prob) {
    one_shot_mis_with(run, state, kind, move |_, _| p, true);
}

/// One-shot MIS step with `p = 1/sqrt(Δ)` of the current residual.
pub fn mis_max_degree_step(run: &mut Run, state: &mut MisState) {
    let p = max_degree_prob(&state.residual.graph);
    mis_uniform_step(run, state, StepKind::MisMaxDegree, p);
}

/// Non-uniform one-shot: vertex `v` is sampled with `1/sqrt(deg(v))`.
pub fn mis_nonuniform_step(run: &mut Run, state: &mut MisState) {
    one_shot_mis_with(
        run,
        state,
        StepKind::MisNonUniform,
        |g, v| Prob::inv_sqrt(g.degree(v) as f64),
        false,
    );
}

/// Rounds of a max-degree step whose gather fits in one round.
const MIS_STEP_ROUNDS: usize = 6;

/// One average-degree reduction for MIS: two max-degree slots, each running
/// a max-degree step if `Δ > n^{1/4}` and idling otherwise, then a one-shot
/// step with `p = 1/sqrt(d)`. Idle slots keep the round schedule fixed.
pub fn mis_avg_degree_step(run: &mut Run, state: &mut MisState) {
    for _ in 0..2 {
        let delta = state.residual.graph.max_degree();
        if max_degree_at_most_quarter_root(delta, run.host_n()) {
            charge_stats(run, &state.residual);
            for _ in 1..MIS_STEP_ROUNDS {
                run.ledger.charge_silent("idle");
            }
        } else {
            mis_max_degree_step(run, state);
        }
    }
    let p = avg_degree_prob(&state.residual.graph);
    mis_uniform_step(run, state, StepKind::MisAvgDegree, p);
}

/// Gathers the whole residual at vertex 0 and finishes it with LFMIS.
pub fn mis_central_finish(run: &mut Run, state: &mut MisState) {
    state.absorb_isolated();
    let before = run.ledger.round_count();
    let h = std::mem::take(&mut state.residual);
    charge_stats(run, &h);
    charge_param(run, &h);
    gather_counts(&[(0, sender_counts(&h))], run.ledger, "gather");
    let s: Vec<u32> = lfmis_ascending(&h.graph)
        .members()
        .iter()
        .map(|&v| h.origin[v as usize])
        .collect();
    charge_result(run, "result", &[(0, s.clone())]);
    let empty = h.restrict(&[]);
    let rep = report(
        StepKind::MisCentral,
        &h,
        Prob::ONE,
        h.n() as u64,
        h.graph.m(),
        s.len() as u64,
        &empty,
        run.ledger.round_count() - before,
    );
    run.reports.push(rep);
    state.solution.extend(s);
    state.residual = empty;
}

/// Samples each edge with probability `p`, gathers the sample at vertex 0,
/// adds its lexicographically-first maximal matching and removes matched
/// vertices.
pub fn mm_edge_sample_step(run: &mut Run, state: &mut MmState, p: Prob) {
    let step = run.next_step();
    let before = run.ledger.round_count();
    let h = std::mem::take(&mut state.residual);
    charge_stats(run, &h);
    charge_param(run, &h);

    let mut counts: Vec<(u32, u64)> = Vec::new();
    let mut used = vec![false; h.n()];
    let mut pairs = Vec::new();
    let mut sampled = 0u64;
    // edges come in lexicographic order, so greedy here is LFMM of the sample
    for u in 0..h.n() as u32 {
        let hu = h.origin[u as usize];
        let mut own = 0u64;
        for v in h.graph.neighbors(u).filter(|&v| v > u) {
            let hv = h.origin[v as usize];
            if !p.accepts(run.seed.draw(Stream::EdgeSample, step, pair_id(hu, hv))) {
                continue;
            }
            own += 1;
            if !used[u as usize] && !used[v as usize] {
                used[u as usize] = true;
                used[v as usize] = true;
                pairs.push((u, v));
            }
        }
        if own > 0 {
            counts.push((hu, own));
        }
        sampled += own;
    }
    gather_counts(&[(0, counts)], run.ledger, "gather");
    finish_mm_step(run, state, h, StepKind::MmEdgeSample, p, sampled, sampled, &[(0, pairs)], before);
}

/// Partitions the residual's vertices into `ceil(sqrt(Δ))` random parts,
/// collects part `i` at vertex `i` and matches each part greedily.
pub fn mm_partition_step(run: &mut Run, state: &mut MmState) {
    let step = run.next_step();
    let before = run.ledger.round_count();
    let h = std::mem::take(&mut state.residual);
    let parts = ceil_sqrt(h.graph.max_degree() as u64).max(1);
    charge_stats(run, &h);
    charge_param(run, &h);

    let part_of: Vec<u32> = h
        .origin
        .iter()
        .map(|&v| below(run.seed.draw(Stream::Partition, step, v as u64), parts) as u32)
        .collect();
    let pieces = h.graph.split_by_part(&part_of, parts as usize);
    let host_n = run.host_n() as u32;
    let mut gathers = Vec::new();
    let mut matched = Vec::new();
    let mut shipped = 0;
    for (i, piece) in pieces.iter().enumerate() {
        // piece ids index into `h`
        let as_host = Induced {
            graph: piece.graph.clone(),
            origin: piece.origin.iter().map(|&v| h.origin[v as usize]).collect(),
        };
        shipped += piece.graph.m();
        let collector = i as u32 % host_n;
        gathers.push((collector, sender_counts(&as_host)));
        let local: Vec<(u32, u32)> = lfmm_lexicographic(&piece.graph)
            .pairs()
            .iter()
            .map(|&(a, b)| (piece.origin[a as usize], piece.origin[b as usize]))
            .collect();
        matched.push((collector, local));
    }
    gather_counts(&gathers, run.ledger, "gather");
    let p = Prob::from_f64(1.0 / parts as f64);
    finish_mm_step(run, state, h, StepKind::MmPartition, p, parts, shipped, &matched, before);
}

#[allow(clippy::too_many_arguments)]
fn finish_mm_step(
    run: &mut Run,
    state: &mut MmState,
    h: Induced,
    kind: StepKind,
    p: Prob,
    sampled: u64,
    shipped: u64,
    matched: &[(u32, Vec<(u32, u32)>)],
    before: usize,
) {
    let notify: Vec<(u32, Vec<u32>)> = matched
        .iter()
        .map(|(c, ps)| (*c, ps.iter().flat_map(|&(a, b)| [h.origin[a as usize], h.origin[b as usize]]).collect()))
        .collect();
    charge_result(run, "result", &notify);
    let mut gone = vec![false; h.n()];
    let mut added = 0;
    for (_, ps) in matched {
        for &(a, b) in ps {
            gone[a as usize] = true;
            gone[b as usize] = true;
            state.solution.push((h.origin[a as usize], h.origin[b as usize]));
            added += 1;
        }
    }
    let newly: Vec<u32> = (0..h.n() as u32).filter(|&v| gone[v as usize]).collect();
    charge_notify(run, "update", &h, &newly);
    let keep: Vec<u32> = (0..h.n() as u32).filter(|&v| !gone[v as usize]).collect();
    let residual = h.restrict(&keep);
    let rep = report(kind, &h, p, sampled, shipped, added, &residual, run.ledger.round_count() - before);
    run.reports.push(rep);
    state.residual = residual;
    state.drop_isolated();
}

/// One average-degree reduction for matching: edge sampling with
/// `p = 1/d`, then two partition steps.
pub fn mm_avg_degree_step(run: &mut Run, state: &mut MmState) {
    let p = Prob::inv(state.residual.graph.avg_degree());
    mm_edge_sample_step(run, state, p);
    for _ in 0..2 {
        if state.residual.graph.m() == 0 {
            break;
        }
        mm_partition_step(run, state);
    }
}

/// Gathers the residual at vertex 0 and finishes it with LFMM.
pub fn mm_central_finish(run: &mut Run, state: &mut MmState) {
    let before = run.ledger.round_count();
    let h = std::mem::take(&mut state.residual);
    charge_stats(run, &h);
    charge_param(run, &h);
    gather_counts(&[(0, sender_counts(&h))], run.ledger, "gather");
    let pairs = lfmm_lexicographic(&h.graph).pairs().to_vec();
    let m = h.graph.m();
    finish_mm_step(run, state, h, StepKind::MmCentral, Prob::ONE, m, m, &[(0, pairs)], before);
}

/// Smallest `q` with `q * q >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let mut q = (x as f64).sqrt() as u64;
    while q * q < x {
        q += 1;
    }
    while q > 0 && (q - 1) * (q - 1) >= x {
        q -= 1;
    }
    q
}

/// Result of a standalone sparsifier call.
#[derive(Clone, Debug)]
pub struct OneShot<S> {
    pub solution: S,
    pub residual: Induced,
    pub report: SparsifyReport,
    pub ledger: RoundLedger,
}

/// Standalone one-shot MIS with probability `p` on `g`.
pub fn one_shot_mis(g: &Graph, p: Prob, seed: Seed) -> OneShot<VertexSet> {
    let mut ledger = RoundLedger::new(g.n(), DEFAULT_C_L);
    let mut run = Run::new(seed, &mut ledger);
    let mut state = MisState {
        residual: Induced::whole(g.clone()),
        solution: Vec::new(),
    };
    one_shot_mis_with(&mut run, &mut state, StepKind::MisAvgDegree, move |_, _| p, true);
    finish_standalone(g, state.solution, state.residual, run.reports, ledger)
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SparsifyError {
    #[error("maximum degree {delta} exceeds n^(1/3) for n = {n}")]
    DegreeGuard { delta: u32, n: usize },
}

/// Standalone non-uniform one-shot MIS; refuses graphs with `Δ > n^{1/3}`.
pub fn one_shot_mis_nonuniform(g: &Graph, seed: Seed) -> Result<OneShot<VertexSet>, SparsifyError> {
    let delta = g.max_degree();
    if !max_degree_at_most_cube_root(delta, g.n()) {
        return Err(SparsifyError::DegreeGuard { delta, n: g.n() });
    }
    let mut ledger = RoundLedger::new(g.n(), DEFAULT_C_L);
    let mut run = Run::new(seed, &mut ledger);
    let mut state = MisState::new(g);
    state.absorb_isolated();
    mis_nonuniform_step(&mut run, &mut state);
    Ok(finish_standalone(g, state.solution, state.residual, run.reports, ledger))
}

fn finish_standalone(
    g: &Graph,
    solution: Vec<u32>,
    residual: Induced,
    mut reports: Vec<SparsifyReport>,
    ledger: RoundLedger,
) -> OneShot<VertexSet> {
    let report = reports.pop().expect("one step ran");
    OneShot {
        solution: VertexSet::new(g.n(), solution).expect("distinct ids"),
        residual,
        report,
        ledger,
    }
}

/// Standalone one-shot matching: edge sampling with probability `p`.
pub fn one_shot_mm(g: &Graph, p: Prob, seed: Seed) -> OneShot<Matching> {
    let mut ledger = RoundLedger::new(g.n(), DEFAULT_C_L);
    let mut run = Run::new(seed, &mut ledger);
    let mut state = MmState {
        residual: Induced::whole(g.clone()),
        solution: Vec::new(),
    };
    mm_edge_sample_step(&mut run, &mut state, p);
    let report = run.reports.pop().expect("one step ran");
    // keep isolated-but-unmatched vertices in the residual view
    let mut matched = vec![false; g.n()];
    for &(u, v) in &state.solution {
        matched[u as usize] = true;
        matched[v as usize] = true;
    }
    let keep: Vec<u32> = (0..g.n() as u32).filter(|&v| !matched[v as usize]).collect();
    OneShot {
        solution: state.matching(),
        residual: Induced::whole(g.clone()).restrict(&keep),
        report,
        ledger,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Mis,
    Mm,
}

#[derive(Clone, Debug)]
pub enum Partial {
    Mis(VertexSet),
    Mm(Matching),
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub partial: Partial,
    pub residual: Induced,
    pub reports: Vec<SparsifyReport>,
    pub ledger: RoundLedger,
}

/// `r` rounds of average-degree reduction.
pub fn reduce_degrees(g: &Graph, r: u32, mode: Mode, seed: Seed) -> Reduction {
    let mut ledger = RoundLedger::new(g.n(), DEFAULT_C_L);
    let mut run = Run::new(seed, &mut ledger);
    match mode {
        Mode::Mis => {
            let mut state = MisState::new(g);
            state.absorb_isolated();
            for _ in 0..r {
                if state.residual.graph.m() == 0 {
                    break;
                }
                mis_avg_degree_step(&mut run, &mut state);
            }
            let reports = std::mem::take(&mut run.reports);
            Reduction {
                partial: Partial::Mis(state.solution_set(g.n())),
                residual: state.residual,
                reports,
                ledger,
            }
        }
        Mode::Mm => {
            let mut state = MmState::new(g);
            for _ in 0..r {
                if state.residual.graph.m() == 0 {
                    break;
                }
                mm_avg_degree_step(&mut run, &mut state);
            }
            let reports = std::mem::take(&mut run.reports);
            Reduction {
                partial: Partial::Mm(state.matching()),
                residual: state.residual,
                reports,
                ledger,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cluster_cliques, complete, gen_gnp, path, perfect_matching_graph};
    use crate::graph::oracle::is_independent;

    fn assert_residual_exact_mis(g: &Graph, s: &VertexSet, residual: &Induced) {
        assert!(is_independent(g, s));
        let mut covered = s.mask();
        for &v in s.members() {
            for u in g.neighbors(v) {
                covered[u as usize] = true;
            }
        }
        let expect: Vec<u32> = (0..g.n() as u32).filter(|&v| !covered[v as usize]).collect();
        assert_eq!(residual.origin, expect);
    }

    #[test]
    fn p_one_examples() {
        let k4 = complete(4);
        let out = one_shot_mis(&k4, Prob::ONE, Seed(1));
        assert_eq!(out.solution.members(), &[0]);
        assert_eq!(out.residual.n(), 0);

        let p3 = path(3);
        let out = one_shot_mis(&p3, Prob::ONE, Seed(1));
        assert_eq!(out.solution.members(), &[0, 2]);
        assert_eq!(out.residual.n(), 0);

        let p4 = path(4);
        let out = one_shot_mm(&p4, Prob::ONE, Seed(1));
        assert_eq!(out.solution.pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(out.residual.n(), 0);

        let out = one_shot_mm(&complete(3), Prob::ONE, Seed(1));
        assert_eq!(out.solution.pairs(), &[(0, 1)]);
        assert_eq!(out.residual.origin, vec![2]);
        assert_eq!(out.residual.graph.m(), 0);
    }

    #[test]
    fn nonuniform_examples() {
        let g = perfect_matching_graph(50);
        let out = one_shot_mis_nonuniform(&g, Seed(3)).unwrap();
        assert_eq!(out.solution.len(), 50);
        assert_eq!(out.residual.n(), 0);
        assert_eq!(Prob::inv_sqrt(4.0), Prob::from_f64(0.5));
        let dense = complete(20);
        assert!(matches!(
            one_shot_mis_nonuniform(&dense, Seed(0)),
            Err(SparsifyError::DegreeGuard { delta: 19, .. })
        ));
    }

    #[test]
    fn sparsifiers_remove_exactly_the_covered_vertices() {
        for s in 0..20 {
            let g = gen_gnp(400, 0.03, Seed(s)).unwrap();
            let out = one_shot_mis(&g, avg_degree_prob(&g), Seed(s + 100));
            assert_residual_exact_mis(&g, &out.solution, &out.residual);
            assert!(out.report.residual_max_degree <= g.max_degree());

            let out = one_shot_mm(&g, Prob::inv(g.avg_degree()), Seed(s));
            let mut used = vec![false; g.n()];
            for &(u, v) in out.solution.pairs() {
                assert!(g.has_edge(u, v));
                assert!(!used[u as usize] && !used[v as usize]);
                used[u as usize] = true;
                used[v as usize] = true;
            }
            let expect: Vec<u32> = (0..g.n() as u32).filter(|&v| !used[v as usize]).collect();
            assert_eq!(out.residual.origin, expect);
            assert!(out.ledger.all_admissible());
            for r in &out.ledger.rounds {
                assert_eq!(r.total_sent(), r.total_received());
            }
        }
    }

    #[test]
    fn reduce_degrees_on_empty_graph() {
        let g = Graph::empty(10);
        let r = reduce_degrees(&g, 1, Mode::Mm, Seed(0));
        match r.partial {
            Partial::Mm(m) => assert!(m.is_empty()),
            _ => unreachable!(),
        }
        assert_eq!(r.residual.graph.m(), 0);
        let r = reduce_degrees(&g, 1, Mode::Mis, Seed(0));
        assert_eq!(r.residual.n(), 0);
    }

    #[test]
    fn reduce_degrees_two_cliques() {
        let g = cluster_cliques(&[100, 100], 0.0, Seed(0)).unwrap();
        for s in 0..10 {
            let r = reduce_degrees(&g, 1, Mode::Mis, Seed(s));
            let Partial::Mis(set) = r.partial else { unreachable!() };
            assert!(is_independent(&g, &set));
            assert!(set.members().iter().filter(|&&v| v < 100).count() <= 1);
            assert!(set.members().iter().filter(|&&v| v >= 100).count() <= 1);
            assert_residual_exact_mis(&g, &set, &r.residual);
        }
    }

    #[test]
    fn reduce_degrees_mm_is_valid() {
        for s in 0..5 {
            let g = gen_gnp(2000, 0.02, Seed(s)).unwrap();
            let r = reduce_degrees(&g, 2, Mode::Mm, Seed(s));
            let Partial::Mm(m) = r.partial else { unreachable!() };
            assert!(Matching::new(&g, m.pairs().to_vec()).is_ok());
            assert!(r.residual.graph.max_degree() < g.max_degree());
            assert!(r.ledger.all_admissible());
        }
    }

    #[test]
    fn ceil_sqrt_exact() {
        for x in 0..2000u64 {
            let q = ceil_sqrt(x);
            assert!(q * q >= x);
            assert!(q == 0 || (q - 1) * (q - 1) < x);
        }
    }
}
