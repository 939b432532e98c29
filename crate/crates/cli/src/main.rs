//! `mtrsched`: generate instances, schedule them, validate schedules and run
//! randomized campaigns.
//!
//! Exit status: 0 success, 1 invalid schedule, 2 usage or input error,
//! 3 capability error (exact-solver size caps, non-bipartite topology).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtrsched::experiment::{
    demand_sweep, run_experiment, summary_table, sweep_to_csv, sweep_to_json, to_csv, to_json,
    DemandSpec, ExperimentConfig, ExperimentReport, TopologySpec,
};
use mtrsched::io::{load_instance, load_schedule, save_instance, save_schedule};
use mtrsched::metrics::PenaltyReport;
use mtrsched::network::{gen_demands, DemandVector};
use mtrsched::{
    bipartition, fixtures, gen_complete, gen_grid, gen_linear, gen_random, gen_ring, solve_ilp,
    solve_lp, solve_mis_suboptimal, two_phase_schedule, validate_schedule, BipartiteCheck, Error,
    Heuristic, Instance, Schedule,
};

#[derive(Parser)]
#[command(
    name = "mtrsched",
    version,
    about = "Minimum-airtime link scheduling for MTR wireless networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance (topology plus per-link demands) as JSON.
    Gen(GenArgs),
    /// Schedule an instance and print the frame.
    Solve(SolveArgs),
    /// Run a randomized campaign comparing heuristics with the optimum.
    Experiment(ExperimentArgs),
    /// Check a schedule against an instance.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Topology {
    Linear,
    Ring,
    Grid,
    Complete,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    FourNode,
    #[value(name = "linear-1")]
    Linear1,
    #[value(name = "linear-2")]
    Linear2,
    #[value(name = "linear-3")]
    Linear3,
    GridSym,
    GridAsym,
    RingSym,
    RingAsym,
    Tree,
}

/// `fixed:V` or `uniform:LO:HI`.
#[derive(Clone, Copy, Debug)]
enum Demand {
    Fixed(u64),
    Uniform(u64, u64),
}

impl FromStr for Demand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        match parts.as_slice() {
            ["fixed", v] => Ok(Demand::Fixed(num(v)?)),
            ["uniform", lo, hi] => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo < 1 || lo > hi {
                    return Err(format!("need 1 <= lo <= hi, got {lo}..{hi}"));
                }
                Ok(Demand::Uniform(lo, hi))
            }
            _ => Err("expected fixed:V or uniform:LO:HI".into()),
        }
    }
}

#[derive(Args)]
struct TopologyArgs {
    /// Topology family.
    #[arg(long, value_enum)]
    topology: Option<Topology>,
    /// Node count (linear, ring, complete, random).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Edge probability for random topologies.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Args)]
struct DemandArgs {
    /// fixed:V or uniform:LO:HI.
    #[arg(long, default_value = "fixed:1")]
    demand: Demand,
    /// Same demand in both directions of an edge (default).
    #[arg(long, conflicts_with = "asymmetric")]
    symmetric: bool,
    /// Independent demand per direction.
    #[arg(long)]
    asymmetric: bool,
}

impl DemandArgs {
    fn symmetric(&self) -> bool {
        self.symmetric || !self.asymmetric
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    topology: TopologyArgs,
    #[command(flatten)]
    demand: DemandArgs,
    /// A published example instance instead of a generated one.
    #[arg(long, value_enum, conflicts_with = "topology")]
    fixture: Option<Fixture>,
    /// Seed; required whenever anything is drawn at random.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; JSON goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Hwf,
    Mdf,
    HwfMdf,
    Exact,
    Lp,
    Mis2p,
    Bipartite,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    alg: Algorithm,
    /// Also compute the optimum and print the cost penalty.
    #[arg(long)]
    penalty: bool,
    /// Write the schedule JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    instance: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[command(flatten)]
    topology: TopologyArgs,
    #[command(flatten)]
    demand: DemandArgs,
    #[arg(long)]
    seed: Option<u64>,
    /// Heuristics to compare.
    #[arg(long, value_delimiter = ',', default_values = ["hwf", "mdf"])]
    algorithms: Vec<String>,
    /// Sweep mode: one campaign per upper demand bound (demands 1..=HI).
    #[arg(long, value_delimiter = ',')]
    demand_ranges: Vec<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    instance: PathBuf,
    schedule: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } | Error::NotBipartite(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Validate(a) => cmd_validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let io = |e: std::io::Error| usage(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    load_instance(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn need(value: Option<usize>, flag: &str, topology: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("--topology {topology} needs --{flag}")))
}

fn topology_spec(t: &TopologyArgs) -> Result<TopologySpec, Failure> {
    let topology = t.topology.unwrap_or(Topology::Random);
    Ok(match topology {
        Topology::Linear => TopologySpec::Linear {
            n: need(t.n, "n", "linear")?,
        },
        Topology::Ring => TopologySpec::Ring {
            n: need(t.n, "n", "ring")?,
        },
        Topology::Complete => TopologySpec::Complete {
            n: need(t.n, "n", "complete")?,
        },
        Topology::Grid => TopologySpec::Grid {
            rows: need(t.rows, "rows", "grid")?,
            cols: need(t.cols, "cols", "grid")?,
        },
        Topology::Random => TopologySpec::Random {
            n: need(t.n, "n", "random")?,
            p: t.p,
        },
    })
}

fn fixture(f: Fixture) -> Instance {
    match f {
        Fixture::FourNode => fixtures::four_node(),
        Fixture::Linear1 => fixtures::linear(0),
        Fixture::Linear2 => fixtures::linear(1),
        Fixture::Linear3 => fixtures::linear(2),
        Fixture::GridSym => fixtures::grid(0),
        Fixture::GridAsym => fixtures::grid(1),
        Fixture::RingSym => fixtures::ring(0),
        Fixture::RingAsym => fixtures::ring(1),
        Fixture::Tree => fixtures::tree(),
    }
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let instance = match a.fixture {
        Some(f) => fixture(f),
        None => {
            if a.topology.topology.is_none() {
                return Err(usage("gen needs --topology or --fixture"));
            }
            let spec = topology_spec(&a.topology)?;
            let randomized = matches!(spec, TopologySpec::Random { .. })
                || matches!(a.demand.demand, Demand::Uniform(..));
            let seed = match (a.seed, randomized) {
                (Some(s), _) => s,
                (None, false) => 0,
                (None, true) => {
                    return Err(usage("--seed is required for random topologies or demands"))
                }
            };
            // Topology and demands use separate streams so that changing the
            // demand model keeps the same network.
            let network = match spec {
                TopologySpec::Random { n, p } => gen_random(n, p, seed)?,
                TopologySpec::Linear { n } => gen_linear(n)?,
                TopologySpec::Ring { n } => gen_ring(n)?,
                TopologySpec::Grid { rows, cols } => gen_grid(rows, cols)?,
                TopologySpec::Complete { n } => gen_complete(n)?,
            };
            let demands = match a.demand.demand {
                Demand::Fixed(v) => DemandVector::new(vec![v; network.link_count()]),
                Demand::Uniform(lo, hi) => {
                    gen_demands(&network, lo, hi, a.demand.symmetric(), seed.wrapping_add(1))?
                }
            };
            Instance::new(network, demands)?
        }
    };
    let json = save_instance(&instance);
    let counts = format!(
        "nodes: {}, links: {}",
        instance.network().node_count(),
        instance.link_count()
    );
    match a.out {
        Some(path) => {
            write_atomic(&path, &json)?;
            println!("{counts}");
        }
        None => {
            println!("{}", String::from_utf8_lossy(&json));
            eprintln!("{counts}");
        }
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let instance = read_instance(&a.instance)?;
    let net = instance.network();
    let mut known_optimum = None;
    let schedule: Schedule = match a.alg {
        Algorithm::Hwf => Heuristic::HeavyWeightFirst.run(&instance),
        Algorithm::Mdf => Heuristic::MaxDegreeFirst.run(&instance),
        Algorithm::HwfMdf => Heuristic::HeavyWeightDegreeTieBreak.run(&instance),
        Algorithm::Exact => {
            let sol = solve_ilp(&instance)?;
            if sol.has_integrality_gap() {
                eprintln!(
                    "note: continuous optimum {} is below the integer optimum {}",
                    sol.relaxation, sol.objective
                );
            }
            known_optimum = Some(sol.objective);
            sol.schedule
        }
        Algorithm::Lp => {
            let sol = solve_lp(&instance)?;
            println!("continuous optimum: {}", sol.objective);
            sol.rounded_schedule()
        }
        Algorithm::Mis2p => {
            let sol = solve_mis_suboptimal(&instance)?;
            println!("restricted optimum: {}", sol.objective);
            sol.schedule(net)
        }
        Algorithm::Bipartite => match bipartition(net) {
            BipartiteCheck::Bipartite(parts) => two_phase_schedule(&instance, &parts),
            BipartiteCheck::OddCycle(cycle) => {
                return Err(Error::NotBipartite(cycle.iter().map(|v| v.0).collect()).into())
            }
        },
    };
    println!("{}", schedule.display(net));
    if a.penalty {
        let optimum = match known_optimum {
            Some(o) => o,
            None => solve_ilp(&instance)?.objective,
        };
        let name = a.alg.to_possible_value().expect("no skipped variants");
        println!(
            "{}",
            PenaltyReport::new(name.get_name(), schedule.total_slots(), optimum)?
        );
    }
    if let Some(path) = a.out {
        write_atomic(&path, &save_schedule(net, &schedule))?;
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Outcome {
    let seed = a
        .seed
        .ok_or_else(|| usage("--seed is required for experiments"))?;
    let algorithms = a
        .algorithms
        .iter()
        .map(|s| s.parse::<Heuristic>().map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let (lo, hi) = match a.demand.demand {
        Demand::Fixed(v) if v >= 1 => (v, v),
        Demand::Fixed(_) => return Err(usage("experiment demands must be at least 1")),
        Demand::Uniform(lo, hi) => (lo, hi),
    };
    let mut topology = a.topology;
    if topology.topology.is_none() && topology.n.is_none() {
        topology.n = Some(6);
    }
    let config = ExperimentConfig {
        topology: topology_spec(&topology)?,
        demand: DemandSpec {
            lo,
            hi,
            symmetric: a.demand.symmetric(),
        },
        trials: a.trials as usize,
        master_seed: seed,
        algorithms,
        limits: Default::default(),
        jobs: a.jobs,
    };

    if a.demand_ranges.is_empty() {
        let report = run_experiment(&config)?;
        print!("{}", summary_table(&report));
        note_gaps(&report, None);
        if let Some(path) = &a.out_json {
            write_atomic(path, to_json(&report).as_bytes())?;
        }
        if let Some(path) = &a.out_csv {
            write_atomic(path, to_csv(&report).as_bytes())?;
        }
    } else {
        let sweep = demand_sweep(&config, &a.demand_ranges)?;
        let csv = sweep_to_csv(&sweep);
        print!("{csv}");
        for (hi, report) in &sweep {
            note_gaps(report, Some(*hi));
        }
        if let Some(path) = &a.out_json {
            write_atomic(path, sweep_to_json(&sweep).as_bytes())?;
        }
        if let Some(path) = &a.out_csv {
            write_atomic(path, csv.as_bytes())?;
        }
    }
    Ok(())
}

fn note_gaps(report: &ExperimentReport, range: Option<u64>) {
    let gaps = &report.integrality_gap_trials;
    if gaps.is_empty() {
        return;
    }
    let label = range
        .map(|hi| format!(" (range 1..{hi})"))
        .unwrap_or_default();
    eprintln!(
        "note{label}: continuous optimum below integer optimum in {} trials: {:?}",
        gaps.len(),
        gaps
    );
}

fn cmd_validate(a: ValidateArgs) -> Outcome {
    let instance = read_instance(&a.instance)?;
    let bytes =
        fs::read(&a.schedule).map_err(|e| usage(format!("{}: {e}", a.schedule.display())))?;
    let schedule = load_schedule(instance.network(), &bytes)
        .map_err(|e| usage(format!("{}: {e}", a.schedule.display())))?;
    let violations = validate_schedule(&instance, &schedule);
    if violations.is_empty() {
        println!(
            "valid: {} entries, {} slots",
            schedule.len(),
            schedule.total_slots()
        );
        return Ok(());
    }
    for v in &violations {
        println!("{v}");
    }
    Err(Failure {
        code: 1,
        message: format!("{} violation(s)", violations.len()),
    })
}
