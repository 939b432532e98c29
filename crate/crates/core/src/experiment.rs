//! Randomized campaigns comparing the heuristics with the integer optimum.
//!
//! Trial `k` draws everything from a ChaCha8 generator seeded with
//! [`trial_seed`]`(master_seed, k)`, so any single trial can be replayed
//! from the `seed` column of its record, and results do not depend on the
//! order in which trials run.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::conflict::EnumerationLimits;
use crate::error::{Error, Result};
use crate::exact::{solve_ilp_with, solve_lp_with};
use crate::heuristic::Heuristic;
use crate::metrics::{cost_penalty, percent_f64};
use crate::network::{
    gen_complete, gen_demands_with, gen_grid, gen_linear, gen_random_with, gen_ring, rng_from_seed,
    Instance, Network,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TopologySpec {
    Random { n: usize, p: f64 },
    Linear { n: usize },
    Ring { n: usize },
    Grid { rows: usize, cols: usize },
    Complete { n: usize },
}

impl TopologySpec {
    /// Largest link count this topology can produce.
    fn max_links(&self) -> Result<usize> {
        Ok(match *self {
            TopologySpec::Random { n, .. } => n * n.saturating_sub(1),
            fixed => fixed.fixed_network()?.link_count(),
        })
    }

    fn fixed_network(&self) -> Result<Network> {
        match *self {
            TopologySpec::Linear { n } => gen_linear(n),
            TopologySpec::Ring { n } => gen_ring(n),
            TopologySpec::Grid { rows, cols } => gen_grid(rows, cols),
            TopologySpec::Complete { n } => gen_complete(n),
            TopologySpec::Random { .. } => unreachable!("random topologies are drawn per trial"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DemandSpec {
    pub lo: u64,
    pub hi: u64,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub topology: TopologySpec,
    pub demand: DemandSpec,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(serialize_with = "serialize_names")]
    pub algorithms: Vec<Heuristic>,
    #[serde(skip)]
    pub limits: EnumerationLimits,
    /// Worker threads; 0 or 1 runs sequentially.
    #[serde(skip)]
    pub jobs: usize,
}

fn serialize_names<S: serde::Serializer>(algs: &[Heuristic], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(algs.iter().map(|a| a.name()))
}

impl ExperimentConfig {
    /// Random `n`-node networks with edge probability `p` and uniform
    /// demands in `1..=hi`, running HWF and MDF.
    pub fn random(n: usize, p: f64, hi: u64, symmetric: bool, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            topology: TopologySpec::Random { n, p },
            demand: DemandSpec {
                lo: 1,
                hi,
                symmetric,
            },
            trials,
            master_seed: seed,
            algorithms: vec![Heuristic::HeavyWeightFirst, Heuristic::MaxDegreeFirst],
            limits: EnumerationLimits::default(),
            jobs: 1,
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be positive".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithms selected".into()));
        }
        if self.demand.lo < 1 || self.demand.lo > self.demand.hi {
            return Err(Error::InvalidRange {
                lo: self.demand.lo,
                hi: self.demand.hi,
            });
        }
        if let TopologySpec::Random { n, p } = self.topology {
            if n < 2 {
                return Err(Error::InvalidSize(format!(
                    "random network needs n >= 2, got {n}"
                )));
            }
            if !(0.0..=1.0).contains(&p) || p == 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "edge probability must be in (0, 1], got {p}"
                )));
            }
        }
        self.limits.check_links(self.topology.max_links()?)
    }
}

/// Seed of trial `k`'s generator (splitmix64 of the master seed and `k`).
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    let mut z = master_seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmRun {
    pub algorithm: &'static str,
    pub total: u64,
    pub penalty: f64,
    pub runtime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub links: usize,
    /// Mean conflict-graph degree over links.
    pub mean_link_degree: f64,
    /// Continuous optimum, exact (`"31/2"`) and as a float.
    pub lp: String,
    pub lp_value: f64,
    pub ilp: u64,
    pub ilp_runtime: f64,
    pub runs: Vec<AlgorithmRun>,
}

impl TrialRecord {
    pub fn run(&self, h: Heuristic) -> Option<&AlgorithmRun> {
        self.runs.iter().find(|r| r.algorithm == h.name())
    }

    pub fn has_integrality_gap(&self) -> bool {
        self.lp_value < self.ilp as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub algorithm: &'static str,
    pub optimal: usize,
    pub within_10_percent: usize,
    pub mean_penalty: f64,
    pub mean_runtime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: usize,
    pub mean_ilp_runtime: f64,
    /// Trials whose continuous optimum is below the integer optimum.
    pub integrality_gap_trials: Vec<usize>,
    pub summaries: Vec<AlgorithmSummary>,
    pub records: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn summary(&self, h: Heuristic) -> Option<&AlgorithmSummary> {
        self.summaries.iter().find(|s| s.algorithm == h.name())
    }
}

fn draw_instance(config: &ExperimentConfig, seed: u64) -> Result<Instance> {
    let mut rng = rng_from_seed(seed);
    let network = match config.topology {
        TopologySpec::Random { n, p } => loop {
            // Edgeless draws carry nothing to schedule; keep drawing from the
            // same trial stream.
            let net = gen_random_with(n, p, &mut rng)?;
            if net.link_count() > 0 {
                break net;
            }
        },
        fixed => fixed.fixed_network()?,
    };
    let d = config.demand;
    let demands = gen_demands_with(&network, d.lo, d.hi, d.symmetric, &mut rng)?;
    Instance::new(network, demands)
}

fn run_trial(config: &ExperimentConfig, trial: usize) -> Result<TrialRecord> {
    let seed = trial_seed(config.master_seed, trial as u64);
    let instance = draw_instance(config, seed)?;

    let start = Instant::now();
    let ilp = solve_ilp_with(&instance, &config.limits)?;
    let ilp_runtime = start.elapsed().as_secs_f64();
    let lp = solve_lp_with(&instance, &config.limits)?;

    let mut runs = Vec::with_capacity(config.algorithms.len());
    for &h in &config.algorithms {
        let start = Instant::now();
        let schedule = h.run(&instance);
        let runtime = start.elapsed().as_secs_f64();
        let total = schedule.total_slots();
        runs.push(AlgorithmRun {
            algorithm: h.name(),
            total,
            penalty: percent_f64(&cost_penalty(total, ilp.objective)?),
            runtime,
        });
    }

    let cg = crate::conflict::ConflictGraph::build(instance.network());
    let links = instance.link_count();
    let degree_sum: usize = (0..links).map(|l| cg.degree(l)).sum();
    Ok(TrialRecord {
        trial,
        seed,
        nodes: instance.network().node_count(),
        edges: instance.network().edges().len(),
        links,
        mean_link_degree: if links == 0 {
            0.0
        } else {
            degree_sum as f64 / links as f64
        },
        lp: lp.objective.to_string(),
        lp_value: lp.objective.to_f64().unwrap_or(f64::NAN),
        ilp: ilp.objective,
        ilp_runtime,
        runs,
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.check()?;
    let records: Vec<TrialRecord> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|k| run_trial(config, k))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        (0..config.trials)
            .map(|k| run_trial(config, k))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(aggregate(config.clone(), records))
}

/// Summary statistics as a pure function of the per-trial records.
pub fn aggregate(config: ExperimentConfig, records: Vec<TrialRecord>) -> ExperimentReport {
    let trials = records.len();
    let denom = trials.max(1) as f64;
    let summaries = config
        .algorithms
        .iter()
        .map(|&h| {
            let runs: Vec<&AlgorithmRun> = records.iter().filter_map(|r| r.run(h)).collect();
            let optimal = records
                .iter()
                .filter(|r| r.run(h).is_some_and(|a| a.total == r.ilp))
                .count();
            let within_10_percent = records
                .iter()
                .filter(|r| {
                    r.run(h)
                        .is_some_and(|a| cost_penalty(a.total, r.ilp).is_ok_and(|p| p <= 10.into()))
                })
                .count();
            AlgorithmSummary {
                algorithm: h.name(),
                optimal,
                within_10_percent,
                mean_penalty: runs.iter().map(|a| a.penalty).sum::<f64>() / denom,
                mean_runtime: runs.iter().map(|a| a.runtime).sum::<f64>() / denom,
            }
        })
        .collect();
    ExperimentReport {
        trials,
        mean_ilp_runtime: records.iter().map(|r| r.ilp_runtime).sum::<f64>() / denom,
        integrality_gap_trials: records
            .iter()
            .filter(|r| r.has_integrality_gap())
            .map(|r| r.trial)
            .collect(),
        summaries,
        records,
        config,
    }
}

pub const CSV_HEADER: &str = "trial,seed,links,lp,ilp,hwf,mdf,p_hwf,p_mdf,rt_hwf,rt_mdf,rt_ilp";

/// One row per trial. Columns for an algorithm that was not run are empty.
pub fn to_csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        let hwf = r.run(Heuristic::HeavyWeightFirst);
        let mdf = r.run(Heuristic::MaxDegreeFirst);
        let total = |a: Option<&AlgorithmRun>| a.map(|a| a.total.to_string()).unwrap_or_default();
        let pen =
            |a: Option<&AlgorithmRun>| a.map(|a| format!("{:.6}", a.penalty)).unwrap_or_default();
        let rt =
            |a: Option<&AlgorithmRun>| a.map(|a| format!("{:.9}", a.runtime)).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{:.9}",
            r.trial,
            r.seed,
            r.links,
            r.lp_value,
            r.ilp,
            total(hwf),
            total(mdf),
            pen(hwf),
            pen(mdf),
            rt(hwf),
            rt(mdf),
            r.ilp_runtime
        );
    }
    out
}

pub fn to_json(report: &ExperimentReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

/// Human-readable table in the layout of the usual optimality summary.
pub fn summary_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<18} {:>10} {:>12} {:>10} {:>14}",
        "", "optimal", "P <= 10%", "mean P", "mean runtime"
    );
    let _ = writeln!(
        out,
        "{:<18} {:>10} {:>12} {:>9.2}% {:>13.6}s",
        "Exact (B&B)", report.trials, report.trials, 0.0, report.mean_ilp_runtime
    );
    for s in &report.summaries {
        let _ = writeln!(
            out,
            "{:<18} {:>10} {:>12} {:>9.2}% {:>13.6}s",
            s.algorithm.to_uppercase(),
            s.optimal,
            s.within_10_percent,
            s.mean_penalty,
            s.mean_runtime
        );
    }
    out
}

/// Runs `base` once per demand upper bound in `ranges` (demands `1..=hi`).
/// Each range uses the same master seed.
pub fn demand_sweep(
    base: &ExperimentConfig,
    ranges: &[u64],
) -> Result<Vec<(u64, ExperimentReport)>> {
    ranges
        .iter()
        .map(|&hi| {
            let mut cfg = base.clone();
            cfg.demand.lo = 1;
            cfg.demand.hi = hi;
            run_experiment(&cfg).map(|r| (hi, r))
        })
        .collect()
}

#[derive(Serialize)]
struct SweepPoint<'a> {
    range: String,
    report: &'a ExperimentReport,
}

pub fn sweep_to_json(sweep: &[(u64, ExperimentReport)]) -> String {
    let points: Vec<SweepPoint> = sweep
        .iter()
        .map(|(hi, report)| SweepPoint {
            range: format!("1..{hi}"),
            report,
        })
        .collect();
    serde_json::to_string_pretty(&points).expect("report serializes")
}

pub const SWEEP_CSV_HEADER: &str = "range,trials,mean_p_hwf,mean_p_mdf,within10_hwf,within10_mdf";

pub fn sweep_to_csv(sweep: &[(u64, ExperimentReport)]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for (hi, r) in sweep {
        let mean = |h| {
            r.summary(h)
                .map(|s| format!("{:.6}", s.mean_penalty))
                .unwrap_or_default()
        };
        let within = |h| {
            r.summary(h)
                .map(|s| s.within_10_percent.to_string())
                .unwrap_or_default()
        };
        let _ = writeln!(
            out,
            "1..{},{},{},{},{},{}",
            hi,
            r.trials,
            mean(Heuristic::HeavyWeightFirst),
            mean(Heuristic::MaxDegreeFirst),
            within(Heuristic::HeavyWeightFirst),
            within(Heuristic::MaxDegreeFirst)
        );
    }
    out
}
