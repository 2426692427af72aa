//! Command-line front end: apply update streams to graph files, verify runs
//! against the brute-force oracle, and benchmark dynamic updates against
//! from-scratch recomputation.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dynspt::decremental::decrease_weight_traced;
use dynspt::generator::{generate, generate_update, GeneratedGraph, UpdateDirection};
use dynspt::incremental::increase_weight_traced;
use dynspt::io::{parse_graph, parse_updates, VertexNames};
use dynspt::oracle;
use dynspt::sssp::{bellman_ford, detect_zero_cycle, SsspResult};
use dynspt::tree::ShortestPathTree;
use dynspt::update::{MergeMode, RunTrace, UpdateOptions, UpdateOutcome};
use dynspt::{Graph, Result, VertexId, WeightUpdate};

#[derive(Parser)]
#[command(
    name = "dynspt",
    about = "Maintain a shortest-path tree under single-edge weight updates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an update stream to a graph and report per-update statistics.
    Run(RunArgs),
    /// Cross-check dynamic updates against from-scratch recomputation.
    Verify(VerifyArgs),
    /// Benchmark dynamic updates against recomputation on generated graphs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Graph file (DIMACS-style, `p sp` / `a` records).
    graph: PathBuf,
    /// Update stream file, one `<tail> <head> <new_weight>` per line.
    updates: PathBuf,
    /// 1-based source vertex.
    #[arg(long, default_value_t = 1)]
    source: usize,
    /// Produce trees with minimal edge changes (auto-disabled, with a
    /// warning, if the graph has a 0-cycle).
    #[arg(long)]
    merge: bool,
    /// Print the final tree as `t <vertex> <parent> <dist>` lines.
    #[arg(long)]
    emit_tree: bool,
    /// Emit per-update statistics as line-delimited JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file; omit to verify generated instances instead.
    graph: Option<PathBuf>,
    /// Update stream file (required with a graph file).
    updates: Option<PathBuf>,
    /// 1-based source vertex (file mode).
    #[arg(long, default_value_t = 1)]
    source: usize,
    /// Verify with minimal-change merging where available.
    #[arg(long)]
    merge: bool,
    /// Seed for generated-instance mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of generated (graph, update) pairs to verify.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Enumeration cap for minimality checks.
    #[arg(long, default_value_t = 200_000)]
    cap: u128,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertex count of the generated graph.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Edge count of the generated graph.
    #[arg(long, default_value_t = 50_000)]
    m: usize,
    /// Number of random updates to time.
    #[arg(long, default_value_t = 100)]
    updates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Produce trees with minimal edge changes as well.
    #[arg(long)]
    merge: bool,
}

#[derive(Serialize)]
struct StatRecord<'a> {
    update: usize,
    outcome: &'a str,
    affected: usize,
    strongly_affected: usize,
    edges_examined: usize,
    enqueues: usize,
    removals: usize,
    merges: usize,
    edge_changes: usize,
    wall_time_us: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<&'a str>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match cmd_run(&args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Verify(args) => match cmd_verify(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Bench(args) => match cmd_bench(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
    }
}

/// Dispatches one update to the matching direction; equal weights are a
/// no-op.
fn apply_update(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    options: &UpdateOptions,
) -> Result<(UpdateOutcome, RunTrace)> {
    let current = graph
        .weight(update.tail, update.head)
        .ok_or(dynspt::Error::NoSuchEdge(update.tail, update.head))?;
    if update.new_weight > current {
        increase_weight_traced(graph, tree, update, options)
    } else if update.new_weight < current {
        decrease_weight_traced(graph, tree, update, options)
    } else {
        Ok((UpdateOutcome::Unchanged, RunTrace::default()))
    }
}

fn emit_record(json: bool, record: &StatRecord) {
    if json {
        println!("{}", serde_json::to_string(record).expect("serializable record"));
    } else {
        let mut line = format!(
            "update {} outcome={} n0={} ns={} edges_examined={} enqueues={} removals={} merges={} edge_changes={} wall_time_us={:.1}",
            record.update,
            record.outcome,
            record.affected,
            record.strongly_affected,
            record.edges_examined,
            record.enqueues,
            record.removals,
            record.merges,
            record.edge_changes,
            record.wall_time_us,
        );
        if let Some(w) = record.warning {
            line.push_str(&format!(" warning={w}"));
        }
        println!("{line}");
    }
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let graph_text = std::fs::read_to_string(&args.graph)
        .map_err(|e| dynspt::Error::SyntaxError(format!("{}: {e}", args.graph.display())))?;
    let updates_text = std::fs::read_to_string(&args.updates)
        .map_err(|e| dynspt::Error::SyntaxError(format!("{}: {e}", args.updates.display())))?;
    let (mut graph, names) = parse_graph(&graph_text, args.source)?;
    let updates = parse_updates(&updates_text, graph.vertex_count(), &names)?;

    let mut tree = match bellman_ford(&graph)? {
        SsspResult::Tree(t) => t,
        SsspResult::NegativeCycle(cycle) => {
            print_witness(&cycle, &names);
            return Ok(ExitCode::from(2));
        }
    };

    // The minimality guarantee is void under 0-cycles: check once up front
    // and fall back to plain updates with a warning.
    let mut warning = None;
    let merge_mode = if args.merge {
        if detect_zero_cycle(&graph)?.is_some() {
            warning = Some("merge disabled: graph has a 0-cycle");
            MergeMode::Off
        } else {
            MergeMode::Certified
        }
    } else {
        MergeMode::Off
    };
    let options = UpdateOptions::merged(merge_mode);

    for (i, update) in updates.iter().enumerate() {
        let start = Instant::now();
        let (outcome, _) = apply_update(&mut graph, &mut tree, update, &options)?;
        let wall_time_us = start.elapsed().as_secs_f64() * 1e6;
        let default_stats = Default::default();
        let (tag, stats) = match &outcome {
            UpdateOutcome::Unchanged => ("unchanged", &default_stats),
            UpdateOutcome::Updated(s) => ("updated", s),
            UpdateOutcome::NegativeCycle(_) => ("negative-cycle", &default_stats),
        };
        emit_record(
            args.json,
            &StatRecord {
                update: i + 1,
                outcome: tag,
                affected: stats.affected,
                strongly_affected: stats.strongly_affected,
                edges_examined: stats.edges_examined,
                enqueues: stats.enqueues,
                removals: stats.removals,
                merges: stats.merges,
                edge_changes: stats.edge_changes,
                wall_time_us,
                warning: warning.take(),
            },
        );
        if let UpdateOutcome::NegativeCycle(cycle) = outcome {
            print_witness(&cycle, &names);
            return Ok(ExitCode::from(2));
        }
    }

    if args.emit_tree {
        for v in 0..graph.vertex_count() as VertexId {
            let parent = tree
                .parent(v)
                .map(|p| names.display(p))
                .unwrap_or_else(|| "-".into());
            println!("t {} {} {}", names.display(v), parent, tree.dist(v));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_witness(cycle: &[VertexId], names: &VertexNames) {
    let labels: Vec<String> = cycle.iter().map(|&v| names.display(v)).collect();
    println!("negative cycle: {}", labels.join(" -> "));
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    match (&args.graph, &args.updates) {
        (Some(graph_file), Some(updates_file)) => {
            let graph_text = std::fs::read_to_string(graph_file)
                .map_err(|e| dynspt::Error::SyntaxError(format!("{}: {e}", graph_file.display())))?;
            let updates_text = std::fs::read_to_string(updates_file).map_err(|e| {
                dynspt::Error::SyntaxError(format!("{}: {e}", updates_file.display()))
            })?;
            let (graph, names) = parse_graph(&graph_text, args.source)?;
            let updates = parse_updates(&updates_text, graph.vertex_count(), &names)?;
            verify_stream(graph, &updates, args)
        }
        (None, None) => verify_generated(args),
        _ => Err(dynspt::Error::SyntaxError(
            "verify needs both a graph file and an updates file, or neither".into(),
        )),
    }
}

/// Applies the updates in order, checking each result against the oracle.
fn verify_stream(mut graph: Graph, updates: &[WeightUpdate], args: &VerifyArgs) -> Result<bool> {
    let mut tree = match bellman_ford(&graph)? {
        SsspResult::Tree(t) => t,
        SsspResult::NegativeCycle(_) => {
            println!("FAIL initial graph has a negative cycle");
            return Ok(false);
        }
    };
    let mut all_ok = true;
    for (i, update) in updates.iter().enumerate() {
        let label = format!("update {}", i + 1);
        match check_one(&mut graph, &mut tree, update, args.merge, args.cap)? {
            None => println!("PASS {label}"),
            Some(reason) => {
                all_ok = false;
                println!("FAIL {label}: {reason}");
            }
        }
        if bellman_ford(&graph)?.is_negative_cycle() {
            // Store is inconsistent from here on; later updates are undefined.
            break;
        }
    }
    Ok(all_ok)
}

/// Runs one update and cross-checks against recomputation; returns a failure
/// description if any check does not hold.
fn check_one(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    merge: bool,
    cap: u128,
) -> Result<Option<String>> {
    let old_tree = tree.clone();
    let merge_ok = merge && detect_zero_cycle(graph)?.is_none();
    let options = UpdateOptions::merged(if merge_ok {
        MergeMode::Certified
    } else {
        MergeMode::Off
    });
    let (outcome, _) = apply_update(graph, tree, update, &options)?;
    let oracle_result = oracle::recompute(graph)?;
    match (&outcome, &oracle_result) {
        (UpdateOutcome::NegativeCycle(witness), SsspResult::NegativeCycle(_)) => {
            let total = graph.path_length(witness)?;
            if total >= 0 {
                return Ok(Some(format!("witness sums to {total}, expected < 0")));
            }
            if *tree != old_tree {
                return Ok(Some("tree modified on a negative-cycle outcome".into()));
            }
            Ok(None)
        }
        (UpdateOutcome::NegativeCycle(_), SsspResult::Tree(_)) => {
            Ok(Some("reported a negative cycle the oracle does not see".into()))
        }
        (_, SsspResult::NegativeCycle(_)) => {
            Ok(Some("missed a negative cycle the oracle sees".into()))
        }
        (_, SsspResult::Tree(fresh)) => {
            for v in 0..graph.vertex_count() as VertexId {
                if tree.dist(v) != fresh.dist(v) {
                    return Ok(Some(format!(
                        "dist mismatch at vertex {v}: got {}, oracle {}",
                        tree.dist(v),
                        fresh.dist(v)
                    )));
                }
            }
            tree.validate(graph)?;
            if merge_ok {
                match oracle::min_edge_changes(graph, &old_tree, update, cap) {
                    Ok(best) => {
                        let got =
                            dynspt::count_edge_changes(&old_tree, tree, update);
                        if got != best {
                            return Ok(Some(format!(
                                "edge changes {got}, oracle minimum {best}"
                            )));
                        }
                    }
                    Err(dynspt::Error::CapExceeded(_)) => {} // too large to certify
                    Err(e) => return Err(e),
                }
            }
            Ok(None)
        }
    }
}

fn verify_generated(args: &VerifyArgs) -> Result<bool> {
    let mut all_ok = true;
    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i as u64);
        let n = 5 + (seed as usize * 7 % 60);
        let m = (n - 1) + (seed as usize * 13 % (2 * n));
        let gen = generate(n, m, seed, 10, 25, args.merge)?;
        let update = generate_update(&gen, seed ^ 0x9e37_79b9, UpdateDirection::Either, true)?;
        let mut graph = gen.graph;
        let mut tree = bellman_ford(&graph)?.expect_tree();
        let label = format!("instance {i} (seed {seed}, n={n}, m={m})");
        match check_one(&mut graph, &mut tree, &update, args.merge, args.cap)? {
            None => println!("PASS {label}"),
            Some(reason) => {
                all_ok = false;
                println!("FAIL {label}: {reason}");
            }
        }
    }
    Ok(all_ok)
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let gen = generate(args.n, args.m, args.seed, 1000, 1000, true)?;
    let GeneratedGraph { graph: mut g, .. } = gen.clone();
    let mut tree = bellman_ford(&g)?.expect_tree();
    let options = UpdateOptions::merged(if args.merge {
        MergeMode::Certified
    } else {
        MergeMode::Off
    });
    println!(
        "n,m,update,direction,n0,ns,m0,edges_examined,extracts,enqueues,removals,dynamic_us,scratch_us"
    );
    let mut dynamic_total = 0.0f64;
    let mut scratch_total = 0.0f64;
    for i in 0..args.updates {
        let update = generate_update(
            &gen,
            args.seed.wrapping_add(1 + i as u64),
            UpdateDirection::Either,
            false,
        )?;
        let current = g.weight(update.tail, update.head).expect("generated edge");
        let direction = if update.new_weight > current { "increase" } else { "decrease" };
        let start = Instant::now();
        let (outcome, trace) = apply_update(&mut g, &mut tree, &update, &options)?;
        let dynamic_us = start.elapsed().as_secs_f64() * 1e6;
        let start = Instant::now();
        let fresh = bellman_ford(&g)?;
        let scratch_us = start.elapsed().as_secs_f64() * 1e6;
        assert!(!fresh.is_negative_cycle(), "consistent updates cannot break the graph");
        dynamic_total += dynamic_us;
        scratch_total += scratch_us;

        let default_stats = Default::default();
        let stats = match &outcome {
            UpdateOutcome::Updated(s) => s,
            _ => &default_stats,
        };
        let m0 = direction_m0(&g, &trace, direction == "increase");
        assert!(stats.edges_examined <= m0 || matches!(outcome, UpdateOutcome::Unchanged));
        assert!(stats.strongly_affected <= stats.affected.max(1));
        println!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.1},{:.1}",
            args.n,
            args.m,
            i + 1,
            direction,
            stats.affected,
            stats.strongly_affected,
            m0,
            stats.edges_examined,
            stats.strongly_affected,
            stats.enqueues,
            stats.removals,
            dynamic_us,
            scratch_us,
        );
    }
    eprintln!(
        "total dynamic {:.1} us vs from-scratch {:.1} us over {} updates",
        dynamic_total, scratch_total, args.updates
    );
    Ok(())
}

/// Direction-appropriate m0: edges whose heads (increases) or tails
/// (decreases) lie in the affected set.
fn direction_m0(graph: &Graph, trace: &RunTrace, increase: bool) -> usize {
    let mut affected = vec![false; graph.vertex_count()];
    for &v in &trace.affected {
        affected[v as usize] = true;
    }
    graph
        .edges()
        .iter()
        .filter(|e| {
            let probe = if increase { e.head } else { e.tail };
            affected[probe as usize]
        })
        .count()
}
