//! JSON documents for instances and schedules.
//!
//! Instance:
//! `{"nodes": 4, "edges": [[1,2],[1,3],[2,3],[3,4]], "demands": [{"tx":1,"rx":2,"d":1}, ...]}`
//!
//! Schedule:
//! `{"entries": [{"links": [[3,4],[1,2]], "slots": 1}, ...], "total": 3}`

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{Instance, Link, Network, NodeId};
use crate::schedule::{Matching, Schedule};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    nodes: usize,
    edges: Vec<[u32; 2]>,
    demands: Vec<DemandDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DemandDoc {
    tx: u32,
    rx: u32,
    d: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    entries: Vec<EntryDoc>,
    total: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    links: Vec<[u32; 2]>,
    slots: u64,
}

pub fn load_instance(bytes: &[u8]) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_slice(bytes)?;
    let network = Network::new(doc.nodes, doc.edges.iter().map(|e| (e[0], e[1])))?;
    let mut by_link = HashMap::with_capacity(doc.demands.len());
    for rec in &doc.demands {
        let link = Link::new(rec.tx, rec.rx);
        if network.link_index(link).is_none() {
            return Err(Error::UnknownLink(link));
        }
        if by_link.insert(link, rec.d).is_some() {
            return Err(Error::DuplicateDemand(link));
        }
    }
    let demands = network
        .links()
        .iter()
        .map(|l| by_link.get(l).copied().ok_or(Error::MissingDemand(*l)))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(network, demands)
}

pub fn save_instance(instance: &Instance) -> Vec<u8> {
    let net = instance.network();
    let doc = InstanceDoc {
        nodes: net.node_count(),
        edges: net.edges().iter().map(|&(a, b)| [a.0, b.0]).collect(),
        demands: net
            .links()
            .iter()
            .zip(instance.demands().as_slice())
            .map(|(l, &d)| DemandDoc {
                tx: l.tx.0,
                rx: l.rx.0,
                d,
            })
            .collect(),
    };
    serde_json::to_vec_pretty(&doc).expect("instance serializes")
}

/// Parses a schedule against `network`. The `total` field is informational;
/// it is recomputed from the entries.
pub fn load_schedule(network: &Network, bytes: &[u8]) -> Result<Schedule> {
    let doc: ScheduleDoc = serde_json::from_slice(bytes)?;
    let mut schedule = Schedule::new();
    for entry in doc.entries {
        let mut links = Vec::with_capacity(entry.links.len());
        for [tx, rx] in entry.links {
            let link = Link {
                tx: NodeId(tx),
                rx: NodeId(rx),
            };
            links.push(network.link_index(link).ok_or(Error::UnknownLink(link))?);
        }
        schedule.push(Matching::from_indices(links), entry.slots);
    }
    Ok(schedule)
}

pub fn save_schedule(network: &Network, schedule: &Schedule) -> Vec<u8> {
    let doc = ScheduleDoc {
        entries: schedule
            .entries()
            .iter()
            .map(|e| EntryDoc {
                links: e
                    .matching
                    .iter()
                    .map(|i| {
                        let l = network.link(i);
                        [l.tx.0, l.rx.0]
                    })
                    .collect(),
                slots: e.slots,
            })
            .collect(),
        total: schedule.total_slots(),
    };
    serde_json::to_vec_pretty(&doc).expect("schedule serializes")
}
