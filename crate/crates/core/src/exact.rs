//! Optimal frame lengths over enumerated maximal matchings, and the
//! restricted schedule in which a transmitting node uses all of its outgoing
//! links at once.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::conflict::{
    enumerate_maximal_matchings, enumerate_mis_nodes, induced_matchings, ConflictGraph,
    EnumerationLimits, NodeSet,
};
use crate::error::Result;
use crate::lp::{solve_covering, Bound};
use crate::network::{Instance, Network};
use crate::schedule::{Matching, Schedule};

/// Link-by-matching incidence: column `j` lists the links of matching `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    columns: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    pub fn from_matchings(link_count: usize, matchings: &[Matching]) -> Self {
        IncidenceMatrix {
            rows: link_count,
            columns: matchings.iter().map(|m| m.links().to_vec()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, link: usize, matching: usize) -> bool {
        self.columns[matching].binary_search(&link).is_ok()
    }

    /// `Q u`, computed exactly.
    pub fn apply(&self, allocation: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rows];
        for (col, u) in self.columns.iter().zip(allocation) {
            for &i in col {
                out[i] += u;
            }
        }
        out
    }

    fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: BigRational,
    pub matchings: Vec<Matching>,
    pub allocation: Vec<BigRational>,
}

impl LpSolution {
    /// A valid integer schedule obtained by rounding every allocation up.
    pub fn rounded_schedule(&self) -> Schedule {
        rounded(&self.matchings, &self.allocation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub objective: u64,
    pub matchings: Vec<Matching>,
    pub allocation: Vec<u64>,
    pub schedule: Schedule,
    /// Optimum of the continuous relaxation at the root.
    pub relaxation: BigRational,
    /// Branch-and-bound nodes whose relaxation was solved.
    pub nodes: usize,
}

impl IlpSolution {
    /// True when the continuous relaxation is strictly below the optimum.
    pub fn has_integrality_gap(&self) -> bool {
        self.relaxation < BigRational::from_integer(self.objective.into())
    }
}

fn rounded(matchings: &[Matching], allocation: &[BigRational]) -> Schedule {
    let mut s = Schedule::new();
    for (m, u) in matchings.iter().zip(allocation) {
        let slots = ceil_u64(u);
        if slots > 0 {
            s.push(m.clone(), slots);
        }
    }
    s
}

fn ceil_u64(v: &BigRational) -> u64 {
    v.ceil()
        .to_integer()
        .to_u64()
        .expect("allocations are small and non-negative")
}

fn all_matchings(instance: &Instance, limits: &EnumerationLimits) -> Result<Vec<Matching>> {
    let cg = ConflictGraph::build(instance.network());
    enumerate_maximal_matchings(&cg, limits)
}

/// Incidence matrix of the instance's maximal matchings.
pub fn incidence_matrix(
    instance: &Instance,
    limits: &EnumerationLimits,
) -> Result<IncidenceMatrix> {
    Ok(IncidenceMatrix::from_matchings(
        instance.link_count(),
        &all_matchings(instance, limits)?,
    ))
}

/// Continuous optimum: `min sum(u)` subject to every link being covered by
/// its demand, over all maximal matchings.
pub fn solve_lp(instance: &Instance) -> Result<LpSolution> {
    solve_lp_with(instance, &EnumerationLimits::default())
}

pub fn solve_lp_with(instance: &Instance, limits: &EnumerationLimits) -> Result<LpSolution> {
    let matchings = all_matchings(instance, limits)?;
    let q = IncidenceMatrix::from_matchings(instance.link_count(), &matchings);
    let sol = solve_covering(q.columns(), instance.demands().as_slice(), &[])
        .expect("every link belongs to some maximal matching");
    Ok(LpSolution {
        objective: sol.objective,
        matchings,
        allocation: sol.allocation,
    })
}

/// Integer optimum (the minimum frame length) by branch and bound.
pub fn solve_ilp(instance: &Instance) -> Result<IlpSolution> {
    solve_ilp_with(instance, &EnumerationLimits::default())
}

pub fn solve_ilp_with(instance: &Instance, limits: &EnumerationLimits) -> Result<IlpSolution> {
    let matchings = all_matchings(instance, limits)?;
    let q = IncidenceMatrix::from_matchings(instance.link_count(), &matchings);
    let outcome = branch_and_bound(q.columns(), instance.demands().as_slice());
    let mut schedule = Schedule::new();
    for (m, &u) in matchings.iter().zip(&outcome.allocation) {
        if u > 0 {
            schedule.push(m.clone(), u);
        }
    }
    Ok(IlpSolution {
        objective: outcome.objective,
        matchings,
        allocation: outcome.allocation,
        schedule,
        relaxation: outcome.relaxation,
        nodes: outcome.nodes,
    })
}

struct BranchOutcome {
    objective: u64,
    allocation: Vec<u64>,
    relaxation: BigRational,
    nodes: usize,
}

/// Per-column integer bounds of one branch-and-bound node.
#[derive(Clone)]
struct NodeBounds {
    lower: Vec<u64>,
    upper: Vec<Option<u64>>,
}

impl NodeBounds {
    fn bounds(&self) -> Vec<Bound> {
        let mut out = Vec::new();
        for (column, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if lo > 0 {
                out.push(Bound::AtLeast { column, value: lo });
            }
            if let Some(value) = hi {
                out.push(Bound::AtMost { column, value });
            }
        }
        out
    }
}

/// Depth-first branch and bound. Each node solves the relaxation under its
/// bounds and is pruned when the rounded-up relaxation cannot beat the
/// incumbent. Rounding every allocation up gives a feasible integer point at
/// each node, which seeds and improves the incumbent. Branching is on the
/// variable with the largest fractional value (lowest index on ties), and
/// the round-up child is explored first.
fn branch_and_bound(columns: &[Vec<usize>], demand: &[u64]) -> BranchOutcome {
    let m = columns.len();
    let root = NodeBounds {
        lower: vec![0; m],
        upper: vec![None; m],
    };
    let mut stack = vec![root];
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut relaxation = None;
    let mut nodes = 0;

    while let Some(node) = stack.pop() {
        let Some(sol) = solve_covering(columns, demand, &node.bounds()) else {
            continue;
        };
        nodes += 1;
        if relaxation.is_none() {
            relaxation = Some(sol.objective.clone());
        }
        let lower_bound = ceil_u64(&sol.objective);
        if best.as_ref().is_some_and(|(b, _)| lower_bound >= *b) {
            continue;
        }

        let rounded: Vec<u64> = sol.allocation.iter().map(ceil_u64).collect();
        let rounded_total: u64 = rounded.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| rounded_total < *b) {
            best = Some((rounded_total, rounded));
        }
        if best.as_ref().is_some_and(|(b, _)| lower_bound >= *b) {
            continue;
        }

        let branch = sol
            .allocation
            .iter()
            .enumerate()
            .filter(|(_, u)| !u.is_integer())
            .fold(None::<(usize, &BigRational)>, |acc, (j, u)| match acc {
                Some((_, best_u)) if best_u >= u => acc,
                _ => Some((j, u)),
            });
        let Some((j, u)) = branch else {
            // Integral relaxation: the rounded point is this point and has
            // already been recorded.
            continue;
        };
        let floor = u.floor().to_integer().to_u64().expect("small");

        let mut down = node.clone();
        down.upper[j] = Some(floor);
        let mut up = node;
        up.lower[j] = floor + 1;
        stack.push(down);
        stack.push(up);
    }

    let (objective, allocation) = best.expect("the root relaxation is always feasible");
    BranchOutcome {
        objective,
        allocation,
        relaxation: relaxation.expect("root solved"),
        nodes,
    }
}

/// Per-node demand when a transmitting node serves all of its outgoing links
/// together: the largest demand among its outgoing links, 0 if it has none.
pub fn reduce_node_demands(instance: &Instance) -> Vec<u64> {
    let net = instance.network();
    net.nodes()
        .map(|v| {
            net.outgoing(v)
                .map(|l| instance.demand(l))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisSolution {
    pub objective: BigRational,
    pub node_demands: Vec<u64>,
    pub node_sets: Vec<NodeSet>,
    pub allocation: Vec<BigRational>,
}

impl MisSolution {
    /// Schedule activating, for each node set with positive allocation, all
    /// outgoing links of its members, for the allocation rounded up.
    pub fn schedule(&self, network: &Network) -> Schedule {
        let matchings: Vec<Matching> = self
            .node_sets
            .iter()
            .map(|s| induced_matchings(network, s).0)
            .collect();
        rounded(&matchings, &self.allocation)
    }
}

/// Continuous optimum when transmitting nodes must use all outgoing links at
/// once: cover the per-node demands with maximal independent node sets.
pub fn solve_mis_suboptimal(instance: &Instance) -> Result<MisSolution> {
    solve_mis_suboptimal_with(instance, &EnumerationLimits::default())
}

pub fn solve_mis_suboptimal_with(
    instance: &Instance,
    limits: &EnumerationLimits,
) -> Result<MisSolution> {
    let net = instance.network();
    let node_sets = enumerate_mis_nodes(net, limits)?;
    let node_demands = reduce_node_demands(instance);
    let columns: Vec<Vec<usize>> = node_sets
        .iter()
        .map(|s| s.nodes().iter().map(|v| v.index()).collect())
        .collect();
    let sol = solve_covering(&columns, &node_demands, &[])
        .expect("every node belongs to some maximal independent set");
    Ok(MisSolution {
        objective: sol.objective,
        node_demands,
        node_sets,
        allocation: sol.allocation,
    })
}
