//! Greedy schedulers: Heavy-Weight-First, Max-Degree-First and the hybrid
//! that breaks demand ties by degree.
//!
//! All three share one loop. Each round sorts the links that still have
//! residual demand, scans the sorted list once adding every link that does
//! not conflict with the links already picked, serves the picked set for as
//! many slots as its smallest residual, and retires links that reach zero.
//! Each round retires at least one link, so there are at most `N` rounds, and
//! no link is ever served beyond its demand.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use crate::network::{Instance, LinkIndex, Network};
use crate::schedule::{Matching, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    /// Residual demand descending, then previous-round position.
    HeavyWeightFirst,
    /// Residual conflict degree descending, then residual demand descending,
    /// then previous-round position.
    MaxDegreeFirst,
    /// Residual demand descending, then residual conflict degree descending,
    /// then previous-round position.
    HeavyWeightDegreeTieBreak,
}

impl Heuristic {
    pub const ALL: [Heuristic; 3] = [
        Heuristic::HeavyWeightFirst,
        Heuristic::MaxDegreeFirst,
        Heuristic::HeavyWeightDegreeTieBreak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::HeavyWeightFirst => "hwf",
            Heuristic::MaxDegreeFirst => "mdf",
            Heuristic::HeavyWeightDegreeTieBreak => "hwf-mdf",
        }
    }

    pub fn run(self, instance: &Instance) -> Schedule {
        greedy(instance, self)
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or_else(|| format!("unknown heuristic `{s}` (expected hwf, mdf or hwf-mdf)"))
    }
}

pub fn hwf(instance: &Instance) -> Schedule {
    greedy(instance, Heuristic::HeavyWeightFirst)
}

pub fn mdf(instance: &Instance) -> Schedule {
    greedy(instance, Heuristic::MaxDegreeFirst)
}

pub fn hwf_tiebreak_mdf(instance: &Instance) -> Schedule {
    greedy(instance, Heuristic::HeavyWeightDegreeTieBreak)
}

/// Conflict neighborhoods as flat bitsets, `words` u64s per link. The
/// neighborhood of `(a, b)` is the links entering `a` or leaving `b`.
struct Neighborhoods {
    words: usize,
    bits: Vec<u64>,
}

impl Neighborhoods {
    fn build(network: &Network) -> Self {
        let links = network.links();
        let words = links.len().div_ceil(64).max(1);
        let nodes = network.node_count();
        let mut into = vec![0u64; nodes * words];
        let mut out = vec![0u64; nodes * words];
        for (i, l) in links.iter().enumerate() {
            into[l.rx.index() * words + i / 64] |= 1 << (i % 64);
            out[l.tx.index() * words + i / 64] |= 1 << (i % 64);
        }
        let mut bits = vec![0u64; links.len() * words];
        for (i, l) in links.iter().enumerate() {
            let (a, b) = (l.tx.index() * words, l.rx.index() * words);
            for w in 0..words {
                bits[i * words + w] = into[a + w] | out[b + w];
            }
        }
        Neighborhoods { words, bits }
    }

    fn of(&self, link: LinkIndex) -> &[u64] {
        &self.bits[link * self.words..(link + 1) * self.words]
    }

    fn members(&self, link: LinkIndex) -> impl Iterator<Item = LinkIndex> + '_ {
        self.of(link).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + bit
                })
            })
        })
    }
}

fn greedy(instance: &Instance, rule: Heuristic) -> Schedule {
    let nb = Neighborhoods::build(instance.network());
    let mut residual = instance.demands().as_slice().to_vec();
    // The working list lives across rounds and is re-sorted stably, so ties
    // keep the order they had in the previous round (link index initially).
    let mut order: Vec<LinkIndex> = (0..residual.len()).filter(|&l| residual[l] > 0).collect();
    let mut degree: Vec<u32> = (0..residual.len())
        .map(|l| nb.members(l).filter(|&m| residual[m] > 0).count() as u32)
        .collect();
    let mut blocked = vec![0u64; nb.words];
    let mut schedule = Schedule::new();

    while !order.is_empty() {
        match rule {
            Heuristic::HeavyWeightFirst => order.sort_by_key(|&l| Reverse(residual[l])),
            Heuristic::MaxDegreeFirst => {
                order.sort_by_key(|&l| (Reverse(degree[l]), Reverse(residual[l])))
            }
            Heuristic::HeavyWeightDegreeTieBreak => {
                order.sort_by_key(|&l| (Reverse(residual[l]), Reverse(degree[l])))
            }
        }

        blocked.fill(0);
        let mut picked = Vec::new();
        for &l in &order {
            if blocked[l / 64] >> (l % 64) & 1 == 0 {
                picked.push(l);
                for (b, &w) in blocked.iter_mut().zip(nb.of(l)) {
                    *b |= w;
                }
            }
        }

        let slots = picked
            .iter()
            .map(|&l| residual[l])
            .min()
            .expect("non-empty");
        for &l in &picked {
            residual[l] -= slots;
            if residual[l] == 0 {
                for m in nb.members(l) {
                    degree[m] -= 1;
                }
            }
        }
        order.retain(|&l| residual[l] > 0);
        schedule.push(Matching::from_indices(picked), slots);
    }
    schedule
}
