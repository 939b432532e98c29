use std::fmt;

use crate::network::{LinkIndex, Network};

/// A set of link indices intended for simultaneous activation, stored sorted
/// and without repeats. Whether it is conflict-free is a property checked
/// against a [`ConflictGraph`](crate::conflict::ConflictGraph), not an
/// invariant of the type, so that invalid schedules can still be represented
/// and reported on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Matching(Vec<LinkIndex>);

impl Matching {
    pub fn new() -> Self {
        Matching(Vec::new())
    }

    pub fn from_indices(mut links: Vec<LinkIndex>) -> Self {
        links.sort_unstable();
        links.dedup();
        Matching(links)
    }

    pub fn links(&self) -> &[LinkIndex] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = LinkIndex> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, link: LinkIndex) -> bool {
        self.0.binary_search(&link).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn display<'a>(&'a self, network: &'a Network) -> impl fmt::Display + 'a {
        DisplayMatching {
            matching: self,
            network,
        }
    }
}

impl FromIterator<LinkIndex> for Matching {
    fn from_iter<I: IntoIterator<Item = LinkIndex>>(iter: I) -> Self {
        Matching::from_indices(iter.into_iter().collect())
    }
}

struct DisplayMatching<'a> {
    matching: &'a Matching,
    network: &'a Network,
}

impl fmt::Display for DisplayMatching<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.matching.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.network.link(i))?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub matching: Matching,
    pub slots: u64,
}

/// An ordered TDMA frame: each entry activates its matching for `slots`
/// consecutive slots.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
}

impl Schedule {
    pub fn new() -> Self {
        Schedule::default()
    }

    pub fn push(&mut self, matching: Matching, slots: u64) {
        self.entries.push(ScheduleEntry { matching, slots });
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_slots(&self) -> u64 {
        self.entries.iter().map(|e| e.slots).sum()
    }

    /// Slots served per link over the whole frame.
    pub fn coverage(&self, link_count: usize) -> Vec<u64> {
        let mut cov = vec![0; link_count];
        for e in &self.entries {
            for l in e.matching.iter() {
                if l < link_count {
                    cov[l] += e.slots;
                }
            }
        }
        cov
    }

    pub fn display<'a>(&'a self, network: &'a Network) -> impl fmt::Display + 'a {
        DisplaySchedule {
            schedule: self,
            network,
        }
    }
}

struct DisplaySchedule<'a> {
    schedule: &'a Schedule,
    network: &'a Network,
}

impl fmt::Display for DisplaySchedule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.schedule.entries.iter().enumerate() {
            writeln!(
                f,
                "{:>3}  slots={:<4} {}",
                k + 1,
                e.slots,
                e.matching.display(self.network)
            )?;
        }
        write!(f, "total slots: {}", self.schedule.total_slots())
    }
}
