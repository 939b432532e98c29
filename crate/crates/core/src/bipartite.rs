//! Two-phase schedules for bipartite topologies.
//!
//! If the nodes split into sides A and B with every edge crossing, then all
//! A→B links can be active together, and likewise all B→A links. Serving the
//! first set for the largest A→B demand and the second for the largest B→A
//! demand covers everything. This is an upper bound on the optimum, not the
//! optimum in general.

use std::collections::VecDeque;

use crate::conflict::NodeSet;
use crate::network::{Instance, Network, NodeId};
use crate::schedule::{Matching, Schedule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: NodeSet,
    pub side_b: NodeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteCheck {
    Bipartite(Bipartition),
    /// Nodes of an odd cycle, in cycle order.
    OddCycle(Vec<NodeId>),
}

/// Two-colors the topology by breadth-first search, visiting components in
/// order of their smallest node and placing that node in side A. Isolated
/// nodes land in side A.
pub fn bipartition(network: &Network) -> BipartiteCheck {
    let n = network.node_count();
    let adj = network.adjacency();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();

    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for w in adj[v].iter().map(|w| w.index()) {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        parent[w] = Some(v);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => {
                        return BipartiteCheck::OddCycle(odd_cycle(&parent, v, w))
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let side = |c: bool| {
        color
            .iter()
            .enumerate()
            .filter(|(_, col)| **col == Some(c))
            .map(|(i, _)| NodeId::from_index(i))
            .collect()
    };
    BipartiteCheck::Bipartite(Bipartition {
        side_a: side(false),
        side_b: side(true),
    })
}

/// Closes the cycle formed by the BFS tree paths to `v` and `w` plus the
/// edge `v - w`, which joins two same-colored nodes.
fn odd_cycle(parent: &[Option<usize>], v: usize, w: usize) -> Vec<NodeId> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while let Some(q) = parent[x] {
            p.push(q);
            x = q;
        }
        p
    };
    let pv = path_to_root(v);
    let pw = path_to_root(w);
    // strip the shared tail above the lowest common ancestor
    let mut i = pv.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pv[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pv[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    cycle.into_iter().map(NodeId::from_index).collect()
}

/// Phase one: every A→B link with positive demand for the largest such
/// demand. Phase two: every B→A link with positive demand for the largest
/// such demand. Phases with no demand are omitted.
pub fn two_phase_schedule(instance: &Instance, parts: &Bipartition) -> Schedule {
    let net = instance.network();
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (i, l) in net.links().iter().enumerate() {
        if instance.demand(i) == 0 {
            continue;
        }
        if parts.side_a.contains(l.tx) {
            forward.push(i);
        } else {
            backward.push(i);
        }
    }
    let mut schedule = Schedule::new();
    for links in [forward, backward] {
        let slots = links.iter().map(|&i| instance.demand(i)).max().unwrap_or(0);
        if slots > 0 {
            schedule.push(Matching::from_indices(links), slots);
        }
    }
    schedule
}
