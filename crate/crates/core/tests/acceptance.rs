//! Acceptance suite. Runs every criterion and prints one PASS/FAIL line each
//! plus a tally. Set `ACCEPTANCE_STRICT=1` to exit non-zero on any failure.
//!
//! `cargo test -p mtrsched-core --test acceptance -- --nocapture`

mod common;

use std::time::Instant;

use mtrsched::experiment::{demand_sweep, run_experiment, ExperimentConfig, ExperimentReport};
use mtrsched::{
    bipartition, enumerate_maximal_matchings, enumerate_mis_nodes, fixtures, hwf, hwf_tiebreak_mdf,
    induced_matchings, lower_bounds, mdf, solve_ilp, solve_lp, solve_mis_suboptimal, transpose,
    two_phase_schedule, validate_schedule, BipartiteCheck, ConflictGraph, Heuristic, Instance,
    Link, Matching, NodeId, NodeSet,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PROPERTY_CASES: usize = 10_000;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".to_string()),
    };
    let detail = format!("{detail} [{:.2}s]", start.elapsed().as_secs_f64());
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    Outcome { name, pass, detail }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn fixed_row(inst: &Instance, expect: u64) -> Result<String, String> {
    let (h, m) = (hwf(inst).total_slots(), mdf(inst).total_slots());
    let opt = solve_ilp(inst).map_err(|e| e.to_string())?.objective;
    ensure(h == expect && m == expect && opt == expect, || {
        format!("hwf={h} mdf={m} exact={opt}, expected {expect}")
    })?;
    Ok(format!("hwf=mdf=exact={expect}"))
}

fn four_node_fixture() -> Result<String, String> {
    let inst = fixtures::four_node();
    let ilp = solve_ilp(&inst).map_err(|e| e.to_string())?.objective;
    let mis = solve_mis_suboptimal(&inst)
        .map_err(|e| e.to_string())?
        .objective;
    ensure(ilp == 3 && mis == int(4), || format!("ilp={ilp} mis={mis}"))?;
    Ok("ilp=3, restricted=4".into())
}

fn linear_table() -> Result<String, String> {
    for row in 0..3 {
        fixed_row(&fixtures::linear(row), fixtures::LINEAR_OPTIMA[row])
            .map_err(|e| format!("row {}: {e}", row + 1))?;
    }
    Ok("10, 16, 16".into())
}

fn grid_table() -> Result<String, String> {
    fixed_row(&fixtures::grid(0), 10).map_err(|e| format!("symmetric: {e}"))?;
    let inst = fixtures::grid(1);
    let opt = solve_ilp(&inst).map_err(|e| e.to_string())?.objective;
    let (h, m) = (hwf(&inst).total_slots(), mdf(&inst).total_slots());
    ensure(opt == 18, || format!("exact={opt}, expected 18"))?;
    ensure((18..=20).contains(&m), || {
        format!("mdf={m} outside [18, 20]")
    })?;
    ensure((18..=20).contains(&h), || {
        format!("hwf={h} outside [18, 20]")
    })?;
    Ok(format!("symmetric 10; asymmetric exact=18 mdf={m} hwf={h}"))
}

fn ring_table() -> Result<String, String> {
    for row in 0..2 {
        fixed_row(&fixtures::ring(row), fixtures::RING_OPTIMA[row])
            .map_err(|e| format!("row {}: {e}", row + 1))?;
    }
    Ok("10, 23".into())
}

fn bipartite_fixture() -> Result<String, String> {
    let inst = fixtures::tree();
    let BipartiteCheck::Bipartite(parts) = bipartition(inst.network()) else {
        return Err("tree reported as not bipartite".into());
    };
    let two = two_phase_schedule(&inst, &parts).total_slots();
    let opt = solve_ilp(&inst).map_err(|e| e.to_string())?.objective;
    ensure(two == 18 && opt == 18, || {
        format!("two-phase={two} exact={opt}")
    })?;
    Ok("two-phase=18, exact=18".into())
}

fn matching_structure() -> Result<String, String> {
    let net = fixtures::four_node_network();
    let cg = ConflictGraph::build(&net);
    let count = enumerate_maximal_matchings(&cg, &Default::default())
        .map_err(|e| e.to_string())?
        .len();
    ensure(count == 6, || format!("{count} maximal matchings"))?;
    let ns = |v: &[u32]| v.iter().map(|&x| NodeId(x)).collect::<NodeSet>();
    let mis = enumerate_mis_nodes(&net, &Default::default()).map_err(|e| e.to_string())?;
    ensure(mis == vec![ns(&[1, 4]), ns(&[2, 4]), ns(&[3])], || {
        format!("MIS {mis:?}")
    })?;

    let five = fixtures::five_node_network();
    let cg5 = ConflictGraph::build(&five);
    let target: Matching = [(1, 3), (2, 3), (5, 4)]
        .iter()
        .map(|&(a, b)| five.link_index(Link::new(a, b)).unwrap())
        .collect();
    let all: Vec<usize> = (0..five.link_count()).collect();
    ensure(cg5.is_matching(target.links()), || {
        "five-node matching invalid".into()
    })?;
    ensure(cg5.is_maximal(&target, &all), || {
        "five-node matching not maximal".into()
    })?;
    let induced = enumerate_mis_nodes(&five, &Default::default())
        .map_err(|e| e.to_string())?
        .iter()
        .any(|s| {
            let (a, b) = induced_matchings(&five, s);
            a == target || b == target
        });
    ensure(!induced, || "five-node matching is MIS-induced".into())?;
    Ok("6 maximal matchings; MIS {1,4},{2,4},{3}; {(1,3),(2,3),(5,4)} not induced".into())
}

fn penalties(r: &ExperimentReport) -> (f64, f64, f64, f64) {
    let h = r.summary(Heuristic::HeavyWeightFirst).unwrap();
    let m = r.summary(Heuristic::MaxDegreeFirst).unwrap();
    let t = r.trials as f64;
    (
        h.mean_penalty,
        m.mean_penalty,
        h.within_10_percent as f64 / t,
        m.within_10_percent as f64 / t,
    )
}

fn campaign(symmetric: bool, seed: u64) -> Result<ExperimentReport, String> {
    let mut cfg = ExperimentConfig::random(6, 0.5, 10, symmetric, 1000, seed);
    cfg.jobs = jobs();
    run_experiment(&cfg).map_err(|e| e.to_string())
}

fn symmetric_campaign(r: &ExperimentReport) -> Result<String, String> {
    let (ph, pm, fh, fm) = penalties(r);
    let detail = format!(
        "mean P hwf={ph:.2}% mdf={pm:.2}%, within 10%: hwf={fh:.3} mdf={fm:.3}, lp<ilp in {} trials",
        r.integrality_gap_trials.len()
    );
    ensure((3.0..=10.0).contains(&ph), || {
        format!("hwf out of [3,10]: {detail}")
    })?;
    ensure((2.5..=9.0).contains(&pm), || {
        format!("mdf out of [2.5,9]: {detail}")
    })?;
    ensure(fh >= 0.70 && fm >= 0.70, || {
        format!("within-10% fraction low: {detail}")
    })?;
    Ok(detail)
}

fn asymmetric_campaign(r: &ExperimentReport) -> Result<String, String> {
    let (ph, pm, fh, fm) = penalties(r);
    let detail = format!(
        "mean P hwf={ph:.2}% mdf={pm:.2}%, within 10%: hwf={fh:.3} mdf={fm:.3}, lp<ilp in {} trials",
        r.integrality_gap_trials.len()
    );
    ensure((1.5..=6.5).contains(&ph), || {
        format!("hwf out of [1.5,6.5]: {detail}")
    })?;
    ensure((2.5..=9.0).contains(&pm), || {
        format!("mdf out of [2.5,9]: {detail}")
    })?;
    ensure(ph < pm, || format!("hwf not below mdf: {detail}"))?;
    Ok(detail)
}

fn sweep(seed: u64) -> Result<String, String> {
    let mut cfg = ExperimentConfig::random(6, 0.5, 10, false, 100, seed);
    cfg.jobs = jobs();
    let ranges = [10, 20, 30, 40, 50];
    let results = demand_sweep(&cfg, &ranges).map_err(|e| e.to_string())?;
    let series = |h| -> Vec<f64> {
        results
            .iter()
            .map(|(_, r)| r.summary(h).unwrap().mean_penalty)
            .collect()
    };
    let ph = series(Heuristic::HeavyWeightFirst);
    let pm = series(Heuristic::MaxDegreeFirst);
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.2}"))
            .collect::<Vec<_>>()
            .join("/")
    };
    let detail = format!("P hwf {} ; P mdf {}", fmt(&ph), fmt(&pm));
    ensure(pm[4] > pm[0], || format!("mdf does not grow: {detail}"))?;
    ensure(spread(&ph) < spread(&pm), || {
        format!("hwf varies more than mdf: {detail}")
    })?;
    Ok(detail)
}

fn runtime_ratio(reports: &[&ExperimentReport]) -> Result<String, String> {
    let mut parts = Vec::new();
    let mut worst = f64::INFINITY;
    for r in reports {
        for h in [Heuristic::HeavyWeightFirst, Heuristic::MaxDegreeFirst] {
            let rt = r.summary(h).unwrap().mean_runtime;
            let ratio = r.mean_ilp_runtime / rt;
            worst = worst.min(ratio);
            parts.push(format!(
                "{h} {rt:.2e}s vs ilp {:.2e}s (x{ratio:.1})",
                r.mean_ilp_runtime
            ));
        }
    }
    let detail = parts.join(", ");
    ensure(worst >= 50.0, || format!("below x50: {detail}"))?;
    Ok(detail)
}

fn random_instance(rng: &mut ChaCha8Rng, max_nodes: usize, max_demand: u64) -> Instance {
    let n = rng.random_range(2..=max_nodes);
    let net = common::random_network(n, rng);
    let demands = (0..net.link_count())
        .map(|_| rng.random_range(0..=max_demand))
        .collect::<Vec<_>>();
    Instance::new(net, demands).unwrap()
}

fn sandwich() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a17);
    let mut gaps = 0;
    for case in 0..PROPERTY_CASES {
        let inst = random_instance(&mut rng, 6, 10);
        let lb = lower_bounds(&inst);
        let lp = solve_lp(&inst).map_err(|e| e.to_string())?.objective;
        let ilp = solve_ilp(&inst).map_err(|e| e.to_string())?.objective;
        if lp < int(ilp as i64) {
            gaps += 1;
        }
        let heur = [hwf(&inst), mdf(&inst), hwf_tiebreak_mdf(&inst)].map(|s| s.total_slots());
        ensure(
            int(lb.edge as i64) <= lp
                && int(lb.node as i64) <= lp
                && lp <= int(ilp as i64)
                && heur.iter().all(|&h| h >= ilp),
            || format!("case {case}: bounds {lb:?} lp {lp} ilp {ilp} heuristics {heur:?}"),
        )?;
    }
    Ok(format!("{PROPERTY_CASES} instances, lp<ilp in {gaps}"))
}

fn transpose_closure() -> Result<String, String> {
    let mut checked = 0;
    for n in 2..=5 {
        for net in common::all_networks(n) {
            let cg = ConflictGraph::build(&net);
            let all: Vec<usize> = (0..net.link_count()).collect();
            let maximal =
                enumerate_maximal_matchings(&cg, &Default::default()).map_err(|e| e.to_string())?;
            for m in &maximal {
                let t = transpose(&net, m);
                ensure(cg.is_matching(t.links()) && cg.is_maximal(&t, &all), || {
                    format!("transpose of {} invalid", m.display(&net))
                })?;
                ensure(transpose(&net, &t) == *m, || {
                    "transpose is not an involution".into()
                })?;
                checked += 1;
            }
        }
    }
    ensure(checked >= PROPERTY_CASES, || {
        format!("only {checked} matchings")
    })?;
    Ok(format!(
        "{checked} maximal matchings on all graphs with 2..=5 nodes"
    ))
}

fn heuristic_validity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    for case in 0..PROPERTY_CASES {
        let inst = random_instance(&mut rng, 8, 20);
        let cg = ConflictGraph::build(inst.network());
        for h in Heuristic::ALL {
            let s = h.run(&inst);
            let v = validate_schedule(&inst, &s);
            ensure(v.is_empty(), || format!("case {case} {h}: {v:?}"))?;
            ensure(
                s.coverage(inst.link_count()) == inst.demands().as_slice(),
                || format!("case {case} {h}: coverage differs from demand"),
            )?;
            ensure(s.len() <= inst.link_count(), || {
                format!("case {case} {h}: too many rounds")
            })?;
            ensure(
                s.entries()
                    .iter()
                    .all(|e| cg.is_matching(e.matching.links())),
                || format!("case {case} {h}: invalid matching"),
            )?;
        }
    }
    Ok(format!("{PROPERTY_CASES} instances x 3 heuristics"))
}

fn tiny_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    for case in 0..PROPERTY_CASES {
        let inst = random_instance(&mut rng, 4, 3);
        let ilp = solve_ilp(&inst).map_err(|e| e.to_string())?.objective;
        let brute = common::min_slots_exhaustive(&inst);
        ensure(ilp == brute, || {
            format!("case {case}: ilp {ilp} vs exhaustive {brute}")
        })?;
    }
    Ok(format!(
        "{PROPERTY_CASES} instances with <= 4 nodes, demands <= 3"
    ))
}

fn conflict_rule() -> Result<String, String> {
    let mut pairs = 0usize;
    for n in 2..=5 {
        for net in common::all_networks(n) {
            let cg = ConflictGraph::build(&net);
            let links = net.links();
            for a in 0..links.len() {
                for b in 0..links.len() {
                    if a == b {
                        continue;
                    }
                    let expected = common::clash_by_roles(links[a], links[b]);
                    ensure(cg.adjacent(a, b) == expected, || {
                        format!("{} vs {} on {:?}", links[a], links[b], net.edges())
                    })?;
                    pairs += 1;
                }
            }
            let by_labeling = common::maximal_matchings_by_labeling(&net);
            let enumerated: Vec<Vec<usize>> = enumerate_maximal_matchings(&cg, &Default::default())
                .map_err(|e| e.to_string())?
                .iter()
                .map(|m| m.links().to_vec())
                .collect();
            ensure(enumerated == by_labeling, || {
                format!(
                    "enumeration differs from labeling oracle on {:?}",
                    net.edges()
                )
            })?;
        }
    }
    Ok(format!(
        "{pairs} ordered link pairs; enumeration matches labeling oracle"
    ))
}

fn main() {
    let mut results = vec![
        check("four-node fixture", four_node_fixture),
        check("linear table", linear_table),
        check("grid table", grid_table),
        check("ring table", ring_table),
        check("bipartite fixture", bipartite_fixture),
        check("matching structure", matching_structure),
    ];

    let sym = campaign(true, 20_240_601);
    let asym = campaign(false, 20_240_602);
    results.push(check("symmetric campaign", || {
        symmetric_campaign(sym.as_ref().map_err(Clone::clone)?)
    }));
    results.push(check("asymmetric campaign", || {
        asymmetric_campaign(asym.as_ref().map_err(Clone::clone)?)
    }));
    results.push(check("demand-range sweep", || sweep(20_240_603)));
    results.push(check("runtime ratio", || {
        runtime_ratio(&[
            sym.as_ref().map_err(Clone::clone)?,
            asym.as_ref().map_err(Clone::clone)?,
        ])
    }));

    results.push(check("sandwich property", sandwich));
    results.push(check("transpose closure", transpose_closure));
    results.push(check("heuristic validity", heuristic_validity));
    results.push(check("tiny-instance oracle", tiny_oracle));
    results.push(check("conflict rule", conflict_rule));

    let failed: Vec<&Outcome> = results.iter().filter(|o| !o.pass).collect();
    println!(
        "\nacceptance: {} passed, {} failed",
        results.len() - failed.len(),
        failed.len()
    );
    for o in &failed {
        println!("  failed: {} ({})", o.name, o.detail);
    }
    // Failures are always reported above. The exit status only reflects them
    // when asked, so the rest of the workspace test run is not masked.
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1");
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
