//! Minimum-airtime TDMA link scheduling for multi-transmit-receive (MTR)
//! wireless networks.
//!
//! In an MTR network a node may transmit on several outgoing links at once,
//! or receive on several incoming links at once, but never both in the same
//! slot. Given per-link slot demands, the crate computes schedules with:
//!
//! - [`heuristic`]: Heavy-Weight-First, Max-Degree-First and a hybrid;
//! - [`exact`]: the continuous and integer optimum over all maximal
//!   matchings, and the restricted schedule where a transmitter serves all
//!   its outgoing links together;
//! - [`bipartite`]: the two-phase schedule for bipartite topologies.
//!
//! [`experiment`] runs randomized campaigns comparing heuristics against the
//! optimum.

pub mod bipartite;
pub mod conflict;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod fixtures;
pub mod heuristic;
pub mod io;
pub mod lp;
pub mod metrics;
pub mod network;
pub mod schedule;

pub use bipartite::{bipartition, two_phase_schedule, BipartiteCheck, Bipartition};
pub use conflict::{
    enumerate_maximal_matchings, enumerate_mis_nodes, induced_matchings, transpose, ConflictGraph,
    EnumerationLimits, NodeSet,
};
pub use error::{Error, Result};
pub use exact::{
    reduce_node_demands, solve_ilp, solve_lp, solve_mis_suboptimal, IlpSolution, IncidenceMatrix,
    LpSolution, MisSolution,
};
pub use heuristic::{hwf, hwf_tiebreak_mdf, mdf, Heuristic};
pub use metrics::{cost_penalty, lower_bounds, validate_schedule, LowerBounds, Violation};
pub use network::{
    gen_complete, gen_demands, gen_grid, gen_linear, gen_random, gen_ring, DemandVector, Instance,
    Link, LinkIndex, Network, NodeId,
};
pub use schedule::{Matching, Schedule, ScheduleEntry};
