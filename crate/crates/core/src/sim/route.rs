//! Opportunistic routing: every vertex learns the edges of its `r`-hop ball
//! in two rounds when the maximum degree is small enough.


use serde::{Deserialize, Serialize};

use super::ledger::RoundLedger;
use crate::graph::{Graph, NONE};
use crate::rng::{below, Seed, Stream};

pub const MAX_ATTEMPTS: u32 = 3;

/// Edges a vertex knows about after routing. For `r >= 1` these are the
/// edges with both endpoints within distance `r` of `center`; for `r = 0` they
/// are the edges incident to `center`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodView {
    pub center: u32,
    pub radius: u32,
    pub edges: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RouteError {
    #[error("routing precondition fails: {lhs} > n = {n} (max degree {delta}, r = {r}, c = {c})")]
    Precondition {
        delta: u32,
        r: u32,
        c: u32,
        n: usize,
        lhs: f64,
    },
    #[error("{incomplete} incomplete views after {attempts} attempts")]
    Incomplete { attempts: u32, incomplete: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteOutcome {
    pub views: Vec<NeighborhoodView>,
    /// Incomplete views observed in each attempt, the last one being zero.
    pub incomplete_per_attempt: Vec<usize>,
    pub rounds: usize,
}

/// Left-hand side of `Δ^{2(r+1)} ((r+1) log Δ + c log n) <= n`, base-2 logs,
/// with `log Δ` read as 1 when `Δ = 1`.
pub fn precondition_lhs(n: usize, delta: u32, r: u32, c: u32) -> f64 {
    if delta == 0 {
        return 0.0;
    }
    let log_delta = if delta == 1 { 1.0 } else { (delta as f64).log2() };
    let log_n = (n.max(2) as f64).log2();
    (delta as f64).powi(2 * (r as i32 + 1)) * ((r + 1) as f64 * log_delta + c as f64 * log_n)
}

pub fn precondition_holds(n: usize, delta: u32, r: u32, c: u32) -> bool {
    precondition_lhs(n, delta, r, c) <= n as f64
}

/// Ground truth `E^r(center)` by breadth-first search, sorted.
pub fn ball_edges(g: &Graph, center: u32, r: u32) -> Vec<(u32, u32)> {
    let ball = bfs_ball(|v, f: &mut dyn FnMut(u32)| g.neighbors(v).for_each(f), center, r);
    let mut edges = Vec::new();
    for &(v, _) in &ball {
        for u in g.neighbors(v) {
            if v < u && ball.binary_search_by_key(&u, |&(w, _)| w).is_ok() {
                edges.push((v, u));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Vertices within distance `r` of `src` with their distances, sorted by id.
/// Balls are small under the routing precondition, so membership is a linear
/// scan.
fn bfs_ball<F>(mut neighbors: F, src: u32, r: u32) -> Vec<(u32, u32)>
where
    F: FnMut(u32, &mut dyn FnMut(u32)),
{
    let mut seen = vec![(src, 0u32)];
    let mut head = 0;
    while head < seen.len() {
        let (v, d) = seen[head];
        head += 1;
        if d == r {
            continue;
        }
        let mut next = Vec::new();
        neighbors(v, &mut |u| next.push(u));
        for u in next {
            if !seen.iter().any(|&(w, _)| w == u) {
                seen.push((u, d + 1));
            }
        }
    }
    seen.sort_unstable();
    seen
}

/// Runs the routing procedure, retrying with fresh randomness up to
/// [`MAX_ATTEMPTS`] times when some view misses an edge. Every attempt is
/// charged two rounds; `r = 0` needs no communication.
pub fn op_route(
    g: &Graph,
    r: u32,
    c: u32,
    seed: Seed,
    ledger: &mut RoundLedger,
) -> Result<RouteOutcome, RouteError> {
    let n = g.n();
    if r == 0 {
        let views = (0..n as u32)
            .map(|v| NeighborhoodView {
                center: v,
                radius: 0,
                edges: g.neighbors(v).map(|u| (v.min(u), v.max(u))).collect(),
            })
            .collect();
        return Ok(RouteOutcome {
            views,
            incomplete_per_attempt: vec![0],
            rounds: 0,
        });
    }
    let delta = g.max_degree();
    if !precondition_holds(n, delta, r, c) {
        return Err(RouteError::Precondition {
            delta,
            r,
            c,
            n,
            lhs: precondition_lhs(n, delta, r, c),
        });
    }
    let truth: Vec<Vec<(u32, u32)>> = (0..n as u32).map(|v| ball_edges(g, v, r)).collect();
    let mut incomplete_per_attempt = Vec::new();
    let mut rounds = 0;
    for attempt in 0..MAX_ATTEMPTS {
        let views = route_once(g, r, seed, attempt, ledger);
        rounds += 2;
        let incomplete = views
            .iter()
            .zip(&truth)
            .filter(|(v, t)| &v.edges != *t)
            .count();
        incomplete_per_attempt.push(incomplete);
        if incomplete == 0 {
            return Ok(RouteOutcome {
                views,
                incomplete_per_attempt,
                rounds,
            });
        }
    }
    Err(RouteError::Incomplete {
        attempts: MAX_ATTEMPTS,
        incomplete: *incomplete_per_attempt.last().expect("at least one attempt"),
    })
}

#[allow(clippy::needless_range_loop)]
fn route_once(
    g: &Graph,
    r: u32,
    seed: Seed,
    attempt: u32,
    ledger: &mut RoundLedger,
) -> Vec<NeighborhoodView> {
    let n = g.n();
    let delta = g.max_degree() as u128;
    let k = delta.pow(r + 1).clamp(1, n as u128) as usize;

    // Round 1: every non-isolated vertex sends one sampled incident edge to
    // every vertex.
    let active = (0..n as u32).filter(|&v| g.degree(v) > 0).count() as u64;
    let mut sent = vec![0u64; n];
    let mut received = vec![0u64; n];
    for v in 0..n as u32 {
        let own = (g.degree(v) > 0) as u64;
        sent[v as usize] = own * (n as u64 - 1);
        received[v as usize] = active - own;
    }
    ledger
        .charge_counts("route/scatter", &sent, &received)
        .expect("balanced by construction");

    // Round 2: inside each block, x forwards to y the part of its sample
    // near y.
    let mut sent = vec![0u64; n];
    let mut received = vec![0u64; n];
    let mut views = Vec::with_capacity(n);
    let mut chosen = vec![NONE; n];
    let mut start = 0usize;
    while start < n {
        let block = start / n.div_ceil(k).max(1);
        let end = block_end(block, n, k).max(start + 1);
        let mut got: Vec<Vec<(u32, u32)>> = vec![Vec::new(); end - start];
        for x in start..end {
            for a in 0..n as u32 {
                let d = g.degree(a);
                chosen[a as usize] = if d == 0 {
                    NONE
                } else {
                    let draw = seed.draw(Stream::Route, attempt as u64, a as u64 * n as u64 + x as u64);
                    g.neighbor_at(a, below(draw, d as u64) as usize)
                };
            }
            let in_sample = |a: u32, b: u32| chosen[a as usize] == b || chosen[b as usize] == a;
            for y in start..end {
                let ball = bfs_ball(
                    |a, f: &mut dyn FnMut(u32)| {
                        for b in g.neighbors(a) {
                            if in_sample(a, b) {
                                f(b);
                            }
                        }
                    },
                    y as u32,
                    r,
                );
                let before = got[y - start].len();
                for &(a, _) in &ball {
                    for b in g.neighbors(a) {
                        if in_sample(a, b) {
                            got[y - start].push((a.min(b), a.max(b)));
                        }
                    }
                }
                let count = (got[y - start].len() - before) as u64;
                if x != y {
                    sent[x] += count;
                    received[y] += count;
                }
            }
        }
        for (i, mut edges) in got.into_iter().enumerate() {
            edges.sort_unstable();
            edges.dedup();
            views.push(NeighborhoodView {
                center: (start + i) as u32,
                radius: r,
                edges: restrict_to_ball(&edges, (start + i) as u32, r),
            });
        }
        start = end;
    }
    ledger
        .charge_counts("route/forward", &sent, &received)
        .expect("balanced by construction");
    views
}

/// Exclusive end of block `i` when `0..n` is cut into `k` contiguous blocks.
fn block_end(i: usize, n: usize, k: usize) -> usize {
    let size = n.div_ceil(k);
    ((i + 1) * size).min(n)
}

/// Keeps the received edges whose endpoints are both within distance `r` of
/// `center` in the received graph.
fn restrict_to_ball(edges: &[(u32, u32)], center: u32, r: u32) -> Vec<(u32, u32)> {
    let mut adj: std::collections::HashMap<u32, Vec<u32>> = std::collections::HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let ball = bfs_ball(
        |v, f: &mut dyn FnMut(u32)| {
            if let Some(ns) = adj.get(&v) {
                ns.iter().for_each(|&u| f(u));
            }
        },
        center,
        r,
    );
    let inside = |v: u32| ball.binary_search_by_key(&v, |&(w, _)| w).is_ok();
    edges
        .iter()
        .copied()
        .filter(|&(a, b)| inside(a) && inside(b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, gen_gnp, star};

    #[test]
    fn precondition_arithmetic() {
        // 2^6 * (3 * 1 + 1 * 12) = 960
        assert_eq!(precondition_lhs(4096, 2, 2, 1), 960.0);
        assert!(precondition_holds(4096, 2, 2, 1));
        assert!(!precondition_holds(101, 100, 1, 1));
        assert!(precondition_holds(10, 0, 5, 1));
    }

    #[test]
    fn star_is_refused() {
        let mut l = RoundLedger::new(101, 64);
        let err = op_route(&star(100), 1, 1, Seed(0), &mut l).unwrap_err();
        assert!(matches!(err, RouteError::Precondition { delta: 100, .. }));
        assert_eq!(l.round_count(), 0);
    }

    #[test]
    fn radius_zero_is_incident_edges() {
        let g = gen_gnp(40, 0.2, Seed(2)).unwrap();
        let mut l = RoundLedger::new(40, 64);
        let out = op_route(&g, 0, 1, Seed(2), &mut l).unwrap();
        for v in 0..40u32 {
            assert_eq!(out.views[v as usize].edges.len() as u32, g.degree(v));
        }
        assert_eq!(out.rounds, 0);
    }

    #[test]
    fn cycle_views_match_bfs() {
        let g = cycle(4096).unwrap();
        let mut l = RoundLedger::new(4096, 64);
        let out = op_route(&g, 2, 1, Seed(11), &mut l).unwrap();
        assert_eq!(out.incomplete_per_attempt, vec![0]);
        assert_eq!(l.round_count(), 2);
        assert!(l.all_admissible());
        for r in &l.rounds {
            assert_eq!(r.total_sent(), r.total_received());
        }
        assert_eq!(out.views[0].edges, vec![(0, 1), (0, 4095), (1, 2), (4094, 4095)]);
    }

    #[test]
    fn ball_edges_of_path() {
        let g = crate::graph::generators::path(6);
        assert_eq!(ball_edges(&g, 2, 1), vec![(1, 2), (2, 3)]);
        assert_eq!(ball_edges(&g, 0, 2), vec![(0, 1), (1, 2)]);
    }
}
