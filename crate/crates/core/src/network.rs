//! Network topologies and per-link traffic demands.
//!
//! Nodes are numbered from 1. Every undirected edge `{a, b}` contributes the
//! two directional links `(a, b)` and `(b, a)`, and the full link list is kept
//! in lexicographic `(tx, rx)` order. A link's position in that list is its
//! index everywhere else in the crate (conflict graph vertices, demand
//! vectors, matchings).

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node identifier, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    /// Zero-based position, for indexing per-node arrays.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(index: usize) -> Self {
        NodeId(index as u32 + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

/// A directional link from `tx` to `rx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub tx: NodeId,
    pub rx: NodeId,
}

impl Link {
    pub fn new(tx: impl Into<NodeId>, rx: impl Into<NodeId>) -> Self {
        Link {
            tx: tx.into(),
            rx: rx.into(),
        }
    }

    pub fn reversed(self) -> Self {
        Link {
            tx: self.rx,
            rx: self.tx,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tx, self.rx)
    }
}

/// Index of a link in a network's canonical link list (0-based).
pub type LinkIndex = usize;

/// An undirected topology with its canonical directional link list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    links: Vec<Link>,
}

impl Network {
    /// Builds a network from undirected edges. Edge endpoints may be given in
    /// either order; self-loops, repeated edges and out-of-range nodes are
    /// rejected.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidSize(
                "a network needs at least one node".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v as usize > node_count {
                    return Err(Error::NodeOutOfRange {
                        node: v,
                        node_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(NodeId(a)));
            }
            let key = (NodeId(a.min(b)), NodeId(a.max(b)));
            if !set.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut links: Vec<Link> = edges
            .iter()
            .flat_map(|&(a, b)| [Link { tx: a, rx: b }, Link { tx: b, rx: a }])
            .collect();
        links.sort_unstable();
        Ok(Network {
            node_count,
            edges,
            links,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Undirected edges as `(low, high)` pairs, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Directional links in canonical order.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (1..=self.node_count as u32).map(NodeId)
    }

    pub fn link_index(&self, link: Link) -> Option<LinkIndex> {
        self.links.binary_search(&link).ok()
    }

    pub fn link(&self, index: LinkIndex) -> Link {
        self.links[index]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.link_index(Link { tx: a, rx: b }).is_some()
    }

    /// Neighbors of every node, indexed by `NodeId::index`, each list sorted.
    pub fn adjacency(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for l in &self.links {
            adj[l.tx.index()].push(l.rx);
        }
        adj
    }

    /// Undirected degree of `node`.
    pub fn node_degree(&self, node: NodeId) -> usize {
        self.links.iter().filter(|l| l.tx == node).count()
    }

    /// Indices of the links leaving `node`.
    pub fn outgoing(&self, node: NodeId) -> impl Iterator<Item = LinkIndex> + '_ {
        self.links
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.tx == node)
            .map(|(i, _)| i)
    }

    /// Indices of the links entering `node`.
    pub fn incoming(&self, node: NodeId) -> impl Iterator<Item = LinkIndex> + '_ {
        self.links
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.rx == node)
            .map(|(i, _)| i)
    }
}

/// Demand (in time slots) per link, aligned with the canonical link order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DemandVector(Vec<u64>);

impl DemandVector {
    pub fn new(values: Vec<u64>) -> Self {
        DemandVector(values)
    }

    pub fn zeros(len: usize) -> Self {
        DemandVector(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl std::ops::Index<LinkIndex> for DemandVector {
    type Output = u64;

    fn index(&self, i: LinkIndex) -> &u64 {
        &self.0[i]
    }
}

impl From<Vec<u64>> for DemandVector {
    fn from(v: Vec<u64>) -> Self {
        DemandVector(v)
    }
}

/// A scheduling problem: topology plus demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    network: Network,
    demands: DemandVector,
}

impl Instance {
    pub fn new(network: Network, demands: impl Into<DemandVector>) -> Result<Self> {
        let demands = demands.into();
        if demands.len() != network.link_count() {
            return Err(Error::DemandLength {
                expected: network.link_count(),
                found: demands.len(),
            });
        }
        Ok(Instance { network, demands })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn demands(&self) -> &DemandVector {
        &self.demands
    }

    pub fn demand(&self, link: LinkIndex) -> u64 {
        self.demands[link]
    }

    pub fn link_count(&self) -> usize {
        self.network.link_count()
    }
}

/// Path `1 - 2 - ... - n`.
pub fn gen_linear(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "linear network needs n >= 2, got {n}"
        )));
    }
    Network::new(n, (1..n as u32).map(|k| (k, k + 1)))
}

/// Cycle `1 - 2 - ... - n - 1`.
pub fn gen_ring(n: usize) -> Result<Network> {
    if n < 3 {
        return Err(Error::InvalidSize(format!(
            "ring network needs n >= 3, got {n}"
        )));
    }
    Network::new(
        n,
        (1..n as u32)
            .map(|k| (k, k + 1))
            .chain(std::iter::once((n as u32, 1))),
    )
}

/// `rows x cols` lattice with serpentine numbering: row 0 runs left to right
/// starting at node 1, row 1 runs right to left, and so on. For 3x3 this is
///
/// ```text
/// 1 2 3
/// 6 5 4
/// 7 8 9
/// ```
pub fn gen_grid(rows: usize, cols: usize) -> Result<Network> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::InvalidSize(format!(
            "grid needs rows, cols >= 1 and at least 2 nodes, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| -> u32 {
        let col = if r.is_multiple_of(2) { c } else { cols - 1 - c };
        (r * cols + col + 1) as u32
    };
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Network::new(rows * cols, edges)
}

/// Complete graph on `n` nodes.
pub fn gen_complete(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "complete network needs n >= 2, got {n}"
        )));
    }
    let n32 = n as u32;
    Network::new(
        n,
        (1..=n32).flat_map(|a| (a + 1..=n32).map(move |b| (a, b))),
    )
}

/// Seeded generator used for every randomized construction in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi topology: each unordered pair `{a, b}` with `a < b` (visited
/// in lexicographic order) is an edge with probability `p`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Network> {
    gen_random_with(n, p, &mut rng_from_seed(seed))
}

pub fn gen_random_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Network> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "random network needs n >= 2, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let n32 = n as u32;
    let mut edges = Vec::new();
    for a in 1..=n32 {
        for b in a + 1..=n32 {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Network::new(n, edges)
}

/// Uniform integer demands in `lo..=hi`. Symmetric demands draw one value per
/// undirected edge (in edge order) and assign it to both directions;
/// asymmetric demands draw one value per link in canonical order.
pub fn gen_demands(
    network: &Network,
    lo: u64,
    hi: u64,
    symmetric: bool,
    seed: u64,
) -> Result<DemandVector> {
    gen_demands_with(network, lo, hi, symmetric, &mut rng_from_seed(seed))
}

pub fn gen_demands_with<R: Rng + ?Sized>(
    network: &Network,
    lo: u64,
    hi: u64,
    symmetric: bool,
    rng: &mut R,
) -> Result<DemandVector> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let mut demands = vec![0; network.link_count()];
    if symmetric {
        for &(a, b) in network.edges() {
            let d = rng.random_range(lo..=hi);
            demands[network.link_index(Link { tx: a, rx: b }).unwrap()] = d;
            demands[network.link_index(Link { tx: b, rx: a }).unwrap()] = d;
        }
    } else {
        for d in demands.iter_mut() {
            *d = rng.random_range(lo..=hi);
        }
    }
    Ok(DemandVector(demands))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link_pairs(net: &Network) -> Vec<(u32, u32)> {
        net.links().iter().map(|l| (l.tx.0, l.rx.0)).collect()
    }

    #[test]
    fn linear_six_matches_published_link_set() {
        let net = gen_linear(6).unwrap();
        assert_eq!(net.edges().len(), 5);
        assert_eq!(
            link_pairs(&net),
            vec![
                (1, 2),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 3),
                (4, 5),
                (5, 4),
                (5, 6),
                (6, 5)
            ]
        );
        assert_eq!(link_pairs(&gen_linear(2).unwrap()), vec![(1, 2), (2, 1)]);
        assert_eq!(gen_linear(4).unwrap().edges().len(), 3);
        assert!(matches!(gen_linear(1), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn ring_six_matches_published_link_set() {
        let net = gen_ring(6).unwrap();
        assert_eq!(
            link_pairs(&net),
            vec![
                (1, 2),
                (1, 6),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 3),
                (4, 5),
                (5, 4),
                (5, 6),
                (6, 1),
                (6, 5)
            ]
        );
        assert!(net.nodes().all(|v| net.node_degree(v) == 2));
        assert_eq!(gen_ring(3).unwrap().edges().len(), 3);
        assert!(gen_ring(2).is_err());
    }

    #[test]
    fn grid_three_by_three_matches_published_link_set() {
        let net = gen_grid(3, 3).unwrap();
        assert_eq!(net.edges().len(), 12);
        assert_eq!(
            link_pairs(&net),
            vec![
                (1, 2),
                (1, 6),
                (2, 1),
                (2, 3),
                (2, 5),
                (3, 2),
                (3, 4),
                (4, 3),
                (4, 5),
                (4, 9),
                (5, 2),
                (5, 4),
                (5, 6),
                (5, 8),
                (6, 1),
                (6, 5),
                (6, 7),
                (7, 6),
                (7, 8),
                (8, 5),
                (8, 7),
                (8, 9),
                (9, 4),
                (9, 8)
            ]
        );
        assert_eq!(net.node_degree(NodeId(5)), 4);
        assert_eq!(gen_grid(1, 2).unwrap().edges().len(), 1);
        assert!(gen_grid(1, 1).is_err());
        assert!(gen_grid(0, 4).is_err());
    }

    #[test]
    fn complete_graphs() {
        let k4 = gen_complete(4).unwrap();
        assert_eq!((k4.edges().len(), k4.link_count()), (6, 12));
        assert_eq!(gen_complete(6).unwrap().link_count(), 30);
        assert_eq!(gen_complete(2).unwrap(), gen_linear(2).unwrap());
        assert!(gen_complete(1).is_err());
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(gen_random(6, 1.0, 3).unwrap(), gen_complete(6).unwrap());
        assert!(gen_random(6, 0.0, 3).unwrap().edges().is_empty());
        assert_eq!(
            gen_random(6, 0.5, 11).unwrap(),
            gen_random(6, 0.5, 11).unwrap()
        );
        assert!(matches!(
            gen_random(6, 1.5, 0),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn random_mean_degree() {
        let trials = 4000;
        let total: usize = (0..trials)
            .map(|s| gen_random(6, 0.5, s).unwrap().link_count())
            .sum();
        // link_count = sum of undirected degrees
        let mean = total as f64 / (trials as f64 * 6.0);
        assert!((mean - 2.5).abs() < 0.2, "mean degree {mean}");
    }

    #[test]
    fn demands_symmetric_fixed_and_mean() {
        let net = gen_grid(3, 3).unwrap();
        let d = gen_demands(&net, 1, 10, true, 5).unwrap();
        for (i, l) in net.links().iter().enumerate() {
            let j = net.link_index(l.reversed()).unwrap();
            assert_eq!(d[i], d[j]);
        }
        let lin = gen_linear(6).unwrap();
        let fixed = gen_demands(&lin, 5, 5, false, 0).unwrap();
        assert_eq!(fixed.as_slice(), &[5; 10]);
        assert!(matches!(
            gen_demands(&lin, 4, 3, false, 0),
            Err(Error::InvalidRange { .. })
        ));

        let big = gen_complete(6).unwrap();
        let mut rng = rng_from_seed(99);
        let mut sum = 0u64;
        let mut count = 0u64;
        while count < 100_000 {
            let d = gen_demands_with(&big, 1, 10, false, &mut rng).unwrap();
            sum += d.total();
            count += d.len() as u64;
        }
        let mean = sum as f64 / count as f64;
        assert!((mean - 5.5).abs() < 0.1, "mean demand {mean}");
    }

    #[test]
    fn network_rejects_bad_edges() {
        assert!(matches!(Network::new(3, [(1, 1)]), Err(Error::SelfLoop(_))));
        assert!(matches!(
            Network::new(3, [(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            Network::new(3, [(1, 4)]),
            Err(Error::NodeOutOfRange { .. })
        ));
    }
}
