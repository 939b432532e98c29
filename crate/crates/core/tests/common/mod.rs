//! Test-only oracles. None of these call into the enumeration or LP code
//! they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use mtrsched::{Instance, Link, Network};
use rand::Rng;

/// Every labeled simple graph on `n` nodes.
pub fn all_networks(n: usize) -> Vec<Network> {
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| (a + 1..=n as u32).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            Network::new(n, edges).unwrap()
        })
        .collect()
}

/// Random topology on `n` nodes with edge probability 1/2.
pub fn random_network<R: Rng>(n: usize, rng: &mut R) -> Network {
    let mut edges = Vec::new();
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            if rng.random_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    Network::new(n, edges).unwrap()
}

/// Two links clash iff some node would both send and receive.
pub fn clash_by_roles(a: Link, b: Link) -> bool {
    let senders = [a.tx, b.tx];
    let receivers = [a.rx, b.rx];
    senders.iter().any(|s| receivers.contains(s))
}

/// Maximal matchings via node labelings: every maximal matching is the set
/// of all links from some transmit-labeled node to some receive-labeled
/// node, and keeping only the inclusion-maximal such sets gives all of them.
pub fn maximal_matchings_by_labeling(net: &Network) -> Vec<Vec<usize>> {
    let n = net.node_count();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..1 << n {
        let sends = |v: u32| mask >> (v - 1) & 1 == 1;
        let set: Vec<usize> = net
            .links()
            .iter()
            .enumerate()
            .filter(|(_, l)| sends(l.tx.0) && !sends(l.rx.0))
            .map(|(i, _)| i)
            .collect();
        sets.insert(set);
    }
    let all: Vec<Vec<usize>> = sets.into_iter().collect();
    all.iter()
        .filter(|s| {
            !all.iter()
                .any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x)))
        })
        .cloned()
        .collect()
}

/// Minimum number of slots, searched slot by slot: the lowest-indexed link
/// with remaining demand must be served by some slot, so branch over every
/// maximal matching containing it. Iterative deepening on the slot budget.
pub fn min_slots_exhaustive(instance: &Instance) -> u64 {
    let matchings = maximal_matchings_by_labeling(instance.network());
    let demand: Vec<u64> = instance.demands().as_slice().to_vec();
    let mut budget = demand.iter().copied().max().unwrap_or(0);
    loop {
        let mut failed = HashSet::new();
        if feasible(&matchings, &demand, budget, &mut failed) {
            return budget;
        }
        budget += 1;
    }
}

fn feasible(
    matchings: &[Vec<usize>],
    residual: &[u64],
    budget: u64,
    failed: &mut HashSet<(Vec<u64>, u64)>,
) -> bool {
    let Some(first) = residual.iter().position(|&r| r > 0) else {
        return true;
    };
    if residual.iter().copied().max().unwrap() > budget {
        return false;
    }
    let key = (residual.to_vec(), budget);
    if failed.contains(&key) {
        return false;
    }
    for m in matchings.iter().filter(|m| m.contains(&first)) {
        let mut next = residual.to_vec();
        for &l in m {
            next[l] = next[l].saturating_sub(1);
        }
        if feasible(matchings, &next, budget - 1, failed) {
            return true;
        }
    }
    failed.insert(key);
    false
}
