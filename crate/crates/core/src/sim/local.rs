//! Synchronous LOCAL algorithms and their simulation from routed views.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use super::ledger::RoundLedger;
use super::route::{op_route, NeighborhoodView, RouteError};
use crate::graph::Graph;
use crate::rng::{pair_id, Seed, Stream};

/// A synchronous message-passing algorithm. In every round each vertex
/// broadcasts at most one message to all neighbours, then updates its state
/// from the messages it received (ordered by sender id).
///
/// When simulated from views, the neighbour list handed to `init` is
/// truncated for vertices on the boundary of a view, so the round-1 message
/// must not depend on it.
pub trait LocalAlgorithm: Sync {
    type State: Clone;
    type Msg: Clone;
    type Output: Clone + PartialEq + Debug;

    fn init(&self, v: u32, neighbors: &[u32]) -> Self::State;
    fn message(&self, round: u32, v: u32, state: &Self::State) -> Option<Self::Msg>;
    fn update(&self, round: u32, v: u32, state: &mut Self::State, inbox: &[(u32, Self::Msg)]);
    fn output(&self, v: u32, state: &Self::State) -> Self::Output;
}

/// Direct execution on the whole graph; the reference for
/// [`simulate_local`].
pub fn run_synchronous<A: LocalAlgorithm>(g: &Graph, algo: &A, rounds: u32) -> Vec<A::Output> {
    let adj: Vec<Vec<u32>> = (0..g.n() as u32).map(|v| g.neighbors(v).collect()).collect();
    let ids: Vec<u32> = (0..g.n() as u32).collect();
    let states = execute(&ids, &adj, algo, rounds);
    ids.iter().zip(&states).map(|(&v, s)| algo.output(v, s)).collect()
}

/// Runs `algo` on a graph given by original ids and local adjacency
/// (indices into `ids`), returning final states.
fn execute<A: LocalAlgorithm>(ids: &[u32], adj: &[Vec<u32>], algo: &A, rounds: u32) -> Vec<A::State> {
    let mut states: Vec<A::State> = ids
        .iter()
        .zip(adj)
        .map(|(&v, ns)| {
            let nbrs: Vec<u32> = ns.iter().map(|&i| ids[i as usize]).collect();
            algo.init(v, &nbrs)
        })
        .collect();
    for round in 1..=rounds {
        let msgs: Vec<Option<A::Msg>> = ids
            .iter()
            .zip(&states)
            .map(|(&v, s)| algo.message(round, v, s))
            .collect();
        for (i, &v) in ids.iter().enumerate() {
            let inbox: Vec<(u32, A::Msg)> = adj[i]
                .iter()
                .filter_map(|&j| msgs[j as usize].clone().map(|m| (ids[j as usize], m)))
                .collect();
            algo.update(round, v, &mut states[i], &inbox);
        }
    }
    states
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOutcome<O> {
    pub outputs: Vec<O>,
    pub incomplete_per_attempt: Vec<usize>,
    pub rounds_charged: usize,
}

/// Simulates `rounds` rounds of `algo`: routes every vertex its
/// `rounds`-hop view, then each vertex runs the algorithm on its view and
/// keeps its own output.
pub fn simulate_local<A: LocalAlgorithm>(
    g: &Graph,
    algo: &A,
    rounds: u32,
    c: u32,
    seed: Seed,
    ledger: &mut RoundLedger,
) -> Result<LocalOutcome<A::Output>, RouteError> {
    let before = ledger.round_count();
    let routed = op_route(g, rounds, c, seed, ledger)?;
    let outputs = routed
        .views
        .iter()
        .map(|view| run_on_view(view, algo, rounds))
        .collect();
    Ok(LocalOutcome {
        outputs,
        incomplete_per_attempt: routed.incomplete_per_attempt,
        rounds_charged: ledger.round_count() - before,
    })
}

fn run_on_view<A: LocalAlgorithm>(view: &NeighborhoodView, algo: &A, rounds: u32) -> A::Output {
    let mut index = BTreeMap::new();
    index.insert(view.center, 0u32);
    for &(a, b) in &view.edges {
        for v in [a, b] {
            let next = index.len() as u32;
            index.entry(v).or_insert(next);
        }
    }
    // ids ordered ascending so inboxes come out sorted by sender id
    let ids: Vec<u32> = index.keys().copied().collect();
    let pos: BTreeMap<u32, u32> = ids.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut adj = vec![Vec::new(); ids.len()];
    for &(a, b) in &view.edges {
        adj[pos[&a] as usize].push(pos[&b]);
        adj[pos[&b] as usize].push(pos[&a]);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let states = execute(&ids, &adj, algo, rounds);
    let c = pos[&view.center] as usize;
    algo.output(view.center, &states[c])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LubyStatus {
    Undecided,
    InMis,
    Out,
}

/// Luby's algorithm with one phase per round: a vertex joins when its
/// fresh random priority beats every undecided neighbour, and drops out one
/// round after a neighbour joins.
pub struct LubyMis {
    pub seed: Seed,
}

impl LubyMis {
    fn priority(&self, round: u32, v: u32) -> (u64, u32) {
        (self.seed.draw(Stream::Luby, round as u64, v as u64), v)
    }
}

impl LocalAlgorithm for LubyMis {
    type State = LubyStatus;
    type Msg = (LubyStatus, (u64, u32));
    type Output = LubyStatus;

    fn init(&self, _v: u32, _neighbors: &[u32]) -> LubyStatus {
        LubyStatus::Undecided
    }

    fn message(&self, round: u32, v: u32, state: &LubyStatus) -> Option<Self::Msg> {
        Some((*state, self.priority(round, v)))
    }

    fn update(&self, round: u32, v: u32, state: &mut LubyStatus, inbox: &[(u32, Self::Msg)]) {
        if *state != LubyStatus::Undecided {
            return;
        }
        if inbox.iter().any(|(_, (s, _))| *s == LubyStatus::InMis) {
            *state = LubyStatus::Out;
            return;
        }
        let mine = self.priority(round, v);
        if inbox
            .iter()
            .all(|(_, (s, p))| *s != LubyStatus::Undecided || mine < *p)
        {
            *state = LubyStatus::InMis;
        }
    }

    fn output(&self, _v: u32, state: &LubyStatus) -> LubyStatus {
        *state
    }
}

#[derive(Clone, Debug)]
pub struct ProposalState {
    neighbors: Vec<u32>,
    matched_neighbors: Vec<u32>,
    partner: Option<u32>,
    target: Option<u32>,
}

/// Randomised greedy matching: from round 2 on, every free vertex proposes
/// along its lowest-priority edge to a neighbour not known to be matched;
/// mutual proposals become matching edges.
pub struct ProposalMatching {
    pub seed: Seed,
}

impl LocalAlgorithm for ProposalMatching {
    type State = ProposalState;
    type Msg = (bool, Option<u32>);
    type Output = Option<u32>;

    fn init(&self, _v: u32, neighbors: &[u32]) -> ProposalState {
        ProposalState {
            neighbors: neighbors.to_vec(),
            matched_neighbors: Vec::new(),
            partner: None,
            target: None,
        }
    }

    fn message(&self, round: u32, v: u32, s: &ProposalState) -> Option<Self::Msg> {
        if round == 1 || s.partner.is_some() {
            return Some((s.partner.is_some(), None));
        }
        let target = s
            .neighbors
            .iter()
            .filter(|u| !s.matched_neighbors.contains(u))
            .min_by_key(|&&u| (self.seed.draw(Stream::EdgePriority, round as u64, pair_id(u, v)), u))
            .copied();
        Some((false, target))
    }

    fn update(&self, round: u32, v: u32, s: &mut ProposalState, inbox: &[(u32, Self::Msg)]) {
        // recompute own proposal exactly as sent
        s.target = match self.message(round, v, s) {
            Some((false, t)) => t,
            _ => None,
        };
        for &(u, (matched, target)) in inbox {
            if matched && !s.matched_neighbors.contains(&u) {
                s.matched_neighbors.push(u);
            }
            if s.partner.is_none() && s.target == Some(u) && target == Some(v) {
                s.partner = Some(u);
            }
        }
    }

    fn output(&self, _v: u32, s: &ProposalState) -> Option<u32> {
        s.partner
    }
}

/// One round: each vertex learns the smallest neighbour id.
pub struct MinNeighborId;

impl LocalAlgorithm for MinNeighborId {
    type State = Option<u32>;
    type Msg = u32;
    type Output = Option<u32>;

    fn init(&self, _v: u32, _neighbors: &[u32]) -> Option<u32> {
        None
    }

    fn message(&self, _round: u32, v: u32, _state: &Option<u32>) -> Option<u32> {
        Some(v)
    }

    fn update(&self, _round: u32, _v: u32, state: &mut Option<u32>, inbox: &[(u32, u32)]) {
        *state = inbox.iter().map(|&(_, m)| m).min().or(*state);
    }

    fn output(&self, _v: u32, state: &Option<u32>) -> Option<u32> {
        *state
    }
}

/// Zero rounds: each vertex outputs its degree.
pub struct OwnDegree;

impl LocalAlgorithm for OwnDegree {
    type State = u32;
    type Msg = ();
    type Output = u32;

    fn init(&self, _v: u32, neighbors: &[u32]) -> u32 {
        neighbors.len() as u32
    }

    fn message(&self, _round: u32, _v: u32, _state: &u32) -> Option<()> {
        None
    }

    fn update(&self, _round: u32, _v: u32, _state: &mut u32, _inbox: &[(u32, ())]) {}

    fn output(&self, _v: u32, state: &u32) -> u32 {
        *state
    }
}
