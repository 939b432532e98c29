use std::fmt;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::conflict::links_conflict;
use crate::error::{Error, Result};
use crate::network::{Instance, Link, NodeId};
use crate::schedule::Schedule;

/// Relative excess airtime, in percent.
pub type Percent = Ratio<i64>;

/// `(total - optimum) / optimum * 100`, exactly. A zero optimum is only
/// meaningful against a zero total, which is defined as 0%.
pub fn cost_penalty(total: u64, optimum: u64) -> Result<Percent> {
    if optimum == 0 {
        return if total == 0 {
            Ok(Percent::from_integer(0))
        } else {
            Err(Error::UndefinedPenalty)
        };
    }
    Ok(Percent::new(
        (total as i64 - optimum as i64) * 100,
        optimum as i64,
    ))
}

pub fn percent_f64(p: &Percent) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenaltyReport {
    pub algorithm: String,
    pub total: u64,
    pub optimum: u64,
    pub penalty: Percent,
}

impl PenaltyReport {
    pub fn new(algorithm: impl Into<String>, total: u64, optimum: u64) -> Result<Self> {
        Ok(PenaltyReport {
            algorithm: algorithm.into(),
            total,
            optimum,
            penalty: cost_penalty(total, optimum)?,
        })
    }
}

impl fmt::Display for PenaltyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} slots vs optimum {} (P = {:.2}%)",
            self.algorithm,
            self.total,
            self.optimum,
            percent_f64(&self.penalty)
        )
    }
}

/// Lower bounds on any feasible frame length. The edge bound is the largest
/// `f(a,b) + f(b,a)` (the two directions always conflict); the node bound is
/// the largest `max incoming + max outgoing` at one node (a node cannot send
/// and receive in the same slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBounds {
    pub edge: u64,
    pub node: u64,
}

impl LowerBounds {
    pub fn max(&self) -> u64 {
        self.edge.max(self.node)
    }
}

pub fn lower_bounds(instance: &Instance) -> LowerBounds {
    let net = instance.network();
    let edge = net
        .edges()
        .iter()
        .map(|&(a, b)| {
            let fwd = net.link_index(Link { tx: a, rx: b }).unwrap();
            let bwd = net.link_index(Link { tx: b, rx: a }).unwrap();
            instance.demand(fwd) + instance.demand(bwd)
        })
        .max()
        .unwrap_or(0);
    let mut max_in = vec![0u64; net.node_count()];
    let mut max_out = vec![0u64; net.node_count()];
    for (i, l) in net.links().iter().enumerate() {
        let d = instance.demand(i);
        max_out[l.tx.index()] = max_out[l.tx.index()].max(d);
        max_in[l.rx.index()] = max_in[l.rx.index()].max(d);
    }
    let node = max_in
        .iter()
        .zip(&max_out)
        .map(|(a, b)| a + b)
        .max()
        .unwrap_or(0);
    LowerBounds { edge, node }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two links of one entry put `node` in transmit and receive mode at
    /// once.
    Conflict {
        entry: usize,
        first: Link,
        second: Link,
        node: NodeId,
    },
    /// A link received fewer slots than its demand.
    UnderCovered {
        link: Link,
        demand: u64,
        served: u64,
    },
    /// An entry refers to a link index the network does not have.
    UnknownLink { entry: usize, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Conflict {
                entry,
                first,
                second,
                node,
            } => write!(
                f,
                "entry {}: links {first} and {second} conflict at node {node}: it would transmit and receive in the same slot",
                entry + 1
            ),
            Violation::UnderCovered {
                link,
                demand,
                served,
            } => write!(f, "link {link} under-covered: demand {demand}, served {served}"),
            Violation::UnknownLink { entry, index } => {
                write!(f, "entry {}: unknown link index {index}", entry + 1)
            }
        }
    }
}

/// Every conflicting pair inside an entry and every link served below its
/// demand. An empty list means the schedule is valid.
pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> Vec<Violation> {
    let net = instance.network();
    let n = net.link_count();
    let mut out = Vec::new();
    for (k, entry) in schedule.entries().iter().enumerate() {
        let links = entry.matching.links();
        for &i in links.iter().filter(|&&i| i >= n) {
            out.push(Violation::UnknownLink { entry: k, index: i });
        }
        let known: Vec<Link> = links
            .iter()
            .filter(|&&i| i < n)
            .map(|&i| net.link(i))
            .collect();
        for (a, &la) in known.iter().enumerate() {
            for &lb in &known[a + 1..] {
                if links_conflict(la, lb) {
                    let node = if la.tx == lb.rx { la.tx } else { la.rx };
                    out.push(Violation::Conflict {
                        entry: k,
                        first: la,
                        second: lb,
                        node,
                    });
                }
            }
        }
    }
    let served = schedule.coverage(n);
    for (i, (&s, &d)) in served.iter().zip(instance.demands().as_slice()).enumerate() {
        if s < d {
            out.push(Violation::UnderCovered {
                link: net.link(i),
                demand: d,
                served: s,
            });
        }
    }
    out
}
