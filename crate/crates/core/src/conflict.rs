//! Conflict graph over directional links and exhaustive enumeration of
//! maximal matchings.
//!
//! Links `(i, j)` and `(k, l)` conflict iff `i == l` or `j == k`: one node
//! would have to transmit and receive in the same slot. Sharing only a
//! transmitter or only a receiver is allowed.

use crate::error::{Error, Result};
use crate::network::{Link, LinkIndex, Network, NodeId};
use crate::schedule::Matching;

pub fn links_conflict(a: Link, b: Link) -> bool {
    a.tx == b.rx || a.rx == b.tx
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    /// Sorted neighbor lists.
    neighbors: Vec<Vec<LinkIndex>>,
}

impl ConflictGraph {
    /// Built from node incidence: the neighbors of `(a, b)` are the links
    /// entering `a` and the links leaving `b`.
    pub fn build(network: &Network) -> Self {
        let links = network.links();
        let nodes = network.node_count();
        let mut into = vec![Vec::new(); nodes];
        let mut out = vec![Vec::new(); nodes];
        for (i, l) in links.iter().enumerate() {
            out[l.tx.index()].push(i);
            into[l.rx.index()].push(i);
        }
        let neighbors = links
            .iter()
            .map(|l| {
                let mut nb: Vec<LinkIndex> = into[l.tx.index()]
                    .iter()
                    .chain(&out[l.rx.index()])
                    .copied()
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        ConflictGraph { neighbors }
    }

    /// Number of vertices (links).
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn adjacent(&self, a: LinkIndex, b: LinkIndex) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, link: LinkIndex) -> &[LinkIndex] {
        &self.neighbors[link]
    }

    pub fn degree(&self, link: LinkIndex) -> usize {
        self.neighbors[link].len()
    }

    /// Degree counting only neighbors flagged in `active`.
    pub fn residual_degree(&self, link: LinkIndex, active: &[bool]) -> usize {
        self.neighbors[link].iter().filter(|&&n| active[n]).count()
    }

    pub fn is_matching(&self, links: &[LinkIndex]) -> bool {
        links.iter().enumerate().all(|(k, &a)| {
            links[k + 1..]
                .iter()
                .all(|&b| a != b && !self.adjacent(a, b))
        })
    }

    /// True iff no link of `eligible` outside `matching` can join it without
    /// conflict.
    pub fn is_maximal(&self, matching: &Matching, eligible: &[LinkIndex]) -> bool {
        eligible
            .iter()
            .all(|&l| matching.contains(l) || matching.iter().any(|m| self.adjacent(l, m)))
    }
}

/// Reverses every link of `matching`.
pub fn transpose(network: &Network, matching: &Matching) -> Matching {
    matching
        .iter()
        .map(|i| {
            network
                .link_index(network.link(i).reversed())
                .expect("reverse of a link is always a link")
        })
        .collect()
}

/// Size caps for the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_links: usize,
    pub max_nodes: usize,
}

/// Bitmask enumeration cannot exceed this many vertices, whatever the limits.
pub const HARD_VERTEX_LIMIT: usize = 128;

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_links: 30,
            max_nodes: 8,
        }
    }
}

impl EnumerationLimits {
    pub fn check_links(&self, links: usize) -> Result<()> {
        let limit = self.max_links.min(HARD_VERTEX_LIMIT);
        if links > limit {
            return Err(Error::SizeLimit {
                what: "link count",
                size: links,
                limit,
            });
        }
        Ok(())
    }

    pub fn check_nodes(&self, nodes: usize) -> Result<()> {
        let limit = self.max_nodes.min(HARD_VERTEX_LIMIT);
        if nodes > limit {
            return Err(Error::SizeLimit {
                what: "node count",
                size: nodes,
                limit,
            });
        }
        Ok(())
    }
}

/// All maximal independent sets of a graph given as neighbor bitmasks.
/// Bron–Kerbosch with Tomita pivoting, run on the complement graph.
fn maximal_independent_sets(neighbors: &[u128]) -> Vec<u128> {
    let n = neighbors.len();
    let all: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    // compatible[v]: vertices that may share an independent set with v
    let compatible: Vec<u128> = neighbors
        .iter()
        .enumerate()
        .map(|(v, &nb)| all & !nb & !(1u128 << v))
        .collect();
    let mut out = Vec::new();
    expand(&compatible, 0, all, 0, &mut out);
    out
}

fn expand(compatible: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & compatible[u]).count_ones())
        .expect("p is non-empty");
    let mut candidates = p & !compatible[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u128 << v;
        expand(
            compatible,
            r | bit,
            p & compatible[v],
            x & compatible[v],
            out,
        );
        p &= !bit;
        x |= bit;
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Every maximal matching of the network, i.e. every maximal independent
/// set of the conflict graph, in sorted order.
pub fn enumerate_maximal_matchings(
    cg: &ConflictGraph,
    limits: &EnumerationLimits,
) -> Result<Vec<Matching>> {
    limits.check_links(cg.len())?;
    let masks: Vec<u128> = (0..cg.len())
        .map(|v| cg.neighbors(v).iter().fold(0u128, |m, &u| m | (1u128 << u)))
        .collect();
    let mut sets: Vec<Matching> = maximal_independent_sets(&masks)
        .into_iter()
        .map(|m| bits(m).collect())
        .collect();
    sets.sort_unstable();
    Ok(sets)
}

/// A sorted set of nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(Vec<NodeId>);

impl NodeSet {
    pub fn new(mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        NodeSet(nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        NodeSet::new(iter.into_iter().collect())
    }
}

/// Every maximal independent set of the undirected topology, sorted.
pub fn enumerate_mis_nodes(network: &Network, limits: &EnumerationLimits) -> Result<Vec<NodeSet>> {
    limits.check_nodes(network.node_count())?;
    let masks: Vec<u128> = network
        .adjacency()
        .iter()
        .map(|nb| nb.iter().fold(0u128, |m, v| m | (1u128 << v.index())))
        .collect();
    let mut sets: Vec<NodeSet> = maximal_independent_sets(&masks)
        .into_iter()
        .map(|m| bits(m).map(NodeId::from_index).collect())
        .collect();
    sets.sort_unstable();
    Ok(sets)
}

/// The two matchings induced by an independent node set: every member
/// transmitting on all its outgoing links, and every member receiving on
/// all its incoming links.
pub fn induced_matchings(network: &Network, nodes: &NodeSet) -> (Matching, Matching) {
    let out = nodes
        .nodes()
        .iter()
        .flat_map(|&v| network.outgoing(v))
        .collect();
    let inc = nodes
        .nodes()
        .iter()
        .flat_map(|&v| network.incoming(v))
        .collect();
    (out, inc)
}
