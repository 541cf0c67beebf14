//! Per-round message accounting.

use serde::{Deserialize, Serialize};

pub const DEFAULT_C_L: u64 = 64;

/// Messages exchanged in one round, keyed by node. Only nodes with non-zero
/// traffic are stored, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub label: String,
    pub sent: Vec<(u32, u64)>,
    pub received: Vec<(u32, u64)>,
    pub admissible: bool,
}

impl RoundRecord {
    pub fn total_sent(&self) -> u64 {
        self.sent.iter().map(|&(_, c)| c).sum()
    }

    pub fn total_received(&self) -> u64 {
        self.received.iter().map(|&(_, c)| c).sum()
    }

    pub fn max_sent(&self) -> u64 {
        self.sent.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    pub fn max_received(&self) -> u64 {
        self.received.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }
}

/// Point-to-point traffic of a round under construction.
#[derive(Clone, Debug, Default)]
pub struct Traffic {
    sent: Vec<u64>,
    received: Vec<u64>,
}

impl Traffic {
    pub fn new(n: usize) -> Traffic {
        Traffic {
            sent: vec![0; n],
            received: vec![0; n],
        }
    }

    /// `count` messages from `src` to `dst`. A node talking to itself does
    /// not use the network and is not counted.
    #[inline]
    pub fn send(&mut self, src: u32, dst: u32, count: u64) {
        if src != dst {
            self.sent[src as usize] += count;
            self.received[dst as usize] += count;
        }
    }

    pub fn total(&self) -> u64 {
        self.sent.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LedgerError {
    #[error("round sends {sent} messages but receives {received}")]
    Unbalanced { sent: u64, received: u64 },
    #[error("count vector has {got} entries, ledger has {n} nodes")]
    WrongLength { got: usize, n: usize },
}

/// Record of every simulated round of one execution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLedger {
    pub n: usize,
    pub c_l: u64,
    pub rounds: Vec<RoundRecord>,
}

impl RoundLedger {
    pub fn new(n: usize, c_l: u64) -> RoundLedger {
        RoundLedger {
            n,
            c_l,
            rounds: Vec::new(),
        }
    }

    /// Per-node budget `c_L * n`.
    pub fn budget(&self) -> u64 {
        self.c_l * self.n as u64
    }

    pub fn charge(&mut self, label: &str, traffic: Traffic) {
        let sparse = |v: Vec<u64>| -> Vec<(u32, u64)> {
            v.into_iter()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .map(|(i, c)| (i as u32, c))
                .collect()
        };
        let sent = sparse(traffic.sent);
        let received = sparse(traffic.received);
        self.push(label, sent, received);
    }

    /// Appends a round from raw per-node counts, which must balance.
    pub fn charge_counts(
        &mut self,
        label: &str,
        sent: &[u64],
        received: &[u64],
    ) -> Result<(), LedgerError> {
        for v in [sent, received] {
            if v.len() != self.n {
                return Err(LedgerError::WrongLength { got: v.len(), n: self.n });
            }
        }
        let (s, r): (u64, u64) = (sent.iter().sum(), received.iter().sum());
        if s != r {
            return Err(LedgerError::Unbalanced { sent: s, received: r });
        }
        self.charge(
            label,
            Traffic {
                sent: sent.to_vec(),
                received: received.to_vec(),
            },
        );
        Ok(())
    }

    /// A round in which nothing is sent, e.g. purely local computation that
    /// must still be synchronised.
    pub fn charge_silent(&mut self, label: &str) {
        self.push(label, Vec::new(), Vec::new());
    }

    fn push(&mut self, label: &str, sent: Vec<(u32, u64)>, received: Vec<(u32, u64)>) {
        let budget = self.budget();
        let admissible = sent.iter().chain(&received).all(|&(_, c)| c <= budget);
        self.rounds.push(RoundRecord {
            label: label.to_string(),
            sent,
            received,
            admissible,
        });
    }

    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn violations(&self) -> usize {
        self.rounds.iter().filter(|r| !r.admissible).count()
    }

    pub fn all_admissible(&self) -> bool {
        self.violations() == 0
    }

    pub fn total_messages(&self) -> u64 {
        self.rounds.iter().map(RoundRecord::total_sent).sum()
    }

    /// Appends `other` after the rounds already recorded.
    pub fn append(&mut self, other: RoundLedger) {
        debug_assert_eq!(self.n, other.n);
        self.rounds.extend(other.rounds);
    }

    /// Appends ledgers of computations that ran side by side: their `i`-th
    /// rounds are merged into one round.
    pub fn append_parallel(&mut self, label: &str, others: Vec<RoundLedger>) {
        let len = others.iter().map(RoundLedger::round_count).max().unwrap_or(0);
        for i in 0..len {
            let mut traffic = Traffic::new(self.n);
            for o in &others {
                debug_assert_eq!(o.n, self.n);
                if let Some(r) = o.rounds.get(i) {
                    for &(v, c) in &r.sent {
                        traffic.sent[v as usize] += c;
                    }
                    for &(v, c) in &r.received {
                        traffic.received[v as usize] += c;
                    }
                }
            }
            self.charge(label, traffic);
        }
    }

    /// Appends the rounds of a computation that ran on a subset of the
    /// nodes, where node `i` of `other` is node `origin[i]` here.
    /// Admissibility is re-evaluated against this ledger's budget.
    pub fn append_relabeled(&mut self, other: &RoundLedger, origin: &[u32]) {
        debug_assert_eq!(other.n, origin.len());
        let map = |v: &[(u32, u64)]| -> Vec<(u32, u64)> {
            let mut out: Vec<(u32, u64)> = v.iter().map(|&(i, c)| (origin[i as usize], c)).collect();
            out.sort_unstable();
            out
        };
        for r in &other.rounds {
            self.push(&r.label, map(&r.sent), map(&r.received));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ledger serialises")
    }
}

/// Ships an edge list to `target`; each edge travels from its smaller
/// endpoint. Uses `max(1, ceil(|E| / (c_L n)))` rounds, each carrying at most
/// `c_L n` edges. Returns the number of rounds charged.
pub fn gather_to_node(
    edges: &[(u32, u32)],
    target: u32,
    ledger: &mut RoundLedger,
    label: &str,
) -> usize {
    let mut senders: Vec<u32> = edges.iter().map(|&(u, v)| u.min(v)).collect();
    senders.sort_unstable();
    let mut counts: Vec<(u32, u64)> = Vec::new();
    for s in senders {
        match counts.last_mut() {
            Some((last, c)) if *last == s => *c += 1,
            _ => counts.push((s, 1)),
        }
    }
    gather_counts(&[(target, counts)], ledger, label)
}

/// Several gathers running side by side: each `(target, senders)` entry lists
/// how many edges every sender ships to that target, in sending order. Each
/// target receives at most `c_L n` edges per round; the gather takes as many
/// rounds as the largest one needs, and at least one.
pub fn gather_counts(
    gathers: &[(u32, Vec<(u32, u64)>)],
    ledger: &mut RoundLedger,
    label: &str,
) -> usize {
    let per_round = ledger.budget().max(1);
    let rounds = gathers
        .iter()
        .map(|(_, s)| s.iter().map(|&(_, c)| c).sum::<u64>().div_ceil(per_round))
        .max()
        .unwrap_or(0)
        .max(1) as usize;
    let mut traffic: Vec<Traffic> = (0..rounds).map(|_| Traffic::new(ledger.n)).collect();
    for (target, senders) in gathers {
        // position in the stream decides the round
        let mut pos = 0u64;
        for &(src, count) in senders {
            let mut left = count;
            while left > 0 {
                let round = (pos / per_round) as usize;
                let room = per_round - pos % per_round;
                let take = left.min(room);
                traffic[round].send(src, *target, take);
                pos += take;
                left -= take;
            }
        }
    }
    for t in traffic {
        ledger.charge(label, t);
    }
    rounds
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_round_is_admissible() {
        let mut l = RoundLedger::new(10, DEFAULT_C_L);
        l.charge_counts("idle", &[0; 10], &[0; 10]).unwrap();
        assert!(l.all_admissible());
        assert_eq!(l.round_count(), 1);
    }

    #[test]
    fn over_budget_sender_flagged() {
        let n = 10;
        let mut l = RoundLedger::new(n, 4);
        let mut t = Traffic::new(n);
        t.send(0, 1, 2 * 4 * n as u64);
        l.charge("burst", t);
        assert!(!l.rounds[0].admissible);
        assert_eq!(l.violations(), 1);
    }

    #[test]
    fn unbalanced_counts_rejected() {
        let mut l = RoundLedger::new(2, 1);
        assert!(l.charge_counts("x", &[1, 0], &[0, 0]).is_err());
        assert!(l.charge_counts("x", &[1], &[1]).is_err());
    }

    #[test]
    fn gather_round_counts() {
        let n = 10_000u32;
        let edges: Vec<(u32, u32)> = (0..36 * n).map(|i| (1 + i % (n - 1), n - 1)).collect();
        let mut l = RoundLedger::new(n as usize, 64);
        assert_eq!(gather_to_node(&edges, 0, &mut l, "g"), 1);
        assert!(l.all_admissible());
        assert_eq!(l.rounds[0].received, vec![(0, 36 * n as u64)]);

        let mut l = RoundLedger::new(100, 64);
        assert_eq!(gather_to_node(&[], 0, &mut l, "g"), 1);
        assert_eq!(l.total_messages(), 0);

        let mut l = RoundLedger::new(100, 64);
        let edges: Vec<(u32, u32)> = (0..100 * 100).map(|i| (1 + i % 99, 99)).collect();
        assert_eq!(gather_to_node(&edges, 0, &mut l, "g"), 2);

        let mut l = RoundLedger::new(100, 10);
        let edges: Vec<(u32, u32)> = (0..10 * 100).map(|i| (1 + i % 99, 99)).collect();
        assert_eq!(gather_to_node(&edges, 0, &mut l, "g"), 1);
        assert!(l.all_admissible());
    }

    #[test]
    fn rounds_balance_and_parallel_merge() {
        let mut a = RoundLedger::new(4, 1);
        let mut t = Traffic::new(4);
        t.send(0, 1, 2);
        t.send(2, 2, 5);
        a.charge("a", t);
        let mut b = RoundLedger::new(4, 1);
        let mut t = Traffic::new(4);
        t.send(3, 1, 1);
        b.charge("b", t);
        b.charge_silent("b2");
        let mut all = RoundLedger::new(4, 1);
        all.append_parallel("par", vec![a, b]);
        assert_eq!(all.round_count(), 2);
        assert_eq!(all.rounds[0].received, vec![(1, 3)]);
        for r in &all.rounds {
            assert_eq!(r.total_sent(), r.total_received());
        }
        let json = all.to_json();
        let back: RoundLedger = serde_json::from_str(&json).unwrap();
        assert_eq!(back, all);
    }

    #[test]
    fn relabeled_rounds_use_host_budget() {
        let mut sub = RoundLedger::new(2, 1);
        let mut t = Traffic::new(2);
        t.send(0, 1, 5);
        sub.charge("sub", t);
        assert!(!sub.all_admissible());
        let mut host = RoundLedger::new(10, 1);
        host.append_relabeled(&sub, &[3, 7]);
        assert_eq!(host.rounds[0].sent, vec![(3, 5)]);
        assert_eq!(host.rounds[0].received, vec![(7, 5)]);
        assert!(host.all_admissible());
    }
}
