use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use archbench::bench::{self, compile, RouterKind, RunConfig};
use archbench::circuit::serialize;
use archbench::graphgen::{GraphFamily, ProblemGraph};
use archbench::qaoa::{build_qaoa, QaoaParams};
use archbench::routing::sabre::RouterParams;
use archbench::routing::shuffle::{full_connectivity_layers, strategy_for};
use archbench::schedule::{dump, schedule, GateDurations};
use archbench::{CouplingMap, Topology};

#[derive(Parser)]
#[command(
    name = "archbench",
    version,
    about = "QAOA routing and scheduling benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Experiment runs.
    Bench {
        #[command(subcommand)]
        action: BenchAction,
    },
    /// Coupling maps.
    Topo {
        #[command(subcommand)]
        action: TopoAction,
    },
    /// Swap strategies.
    Strategy {
        #[command(subcommand)]
        action: StrategyAction,
    },
    /// Problem graphs.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Compile one graph's QAOA circuit onto a topology.
    Compile(CompileArgs),
}

#[derive(Subcommand)]
enum BenchAction {
    /// Run a TOML config and write per-instance CSV rows.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; overrides ARCHBENCH_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
        /// Print per-size mean ± std to stdout.
        #[arg(long)]
        summary: bool,
    },
}

#[derive(Subcommand)]
enum TopoAction {
    /// Print a coupling map in its text format.
    Dump {
        topology: Topology,
        /// Width used to size line, grid, busnnn and complete maps (default 16).
        #[arg(long)]
        width: Option<usize>,
    },
}

#[derive(Subcommand)]
enum StrategyAction {
    /// Print swap layers, by default up to full connectivity.
    Dump {
        topology: Topology,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        layers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GraphAction {
    /// Print a generated graph as an edge list.
    Gen {
        #[arg(long)]
        family: GraphFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct CompileArgs {
    /// Edge-list file: `n m` header then one `a b` line per edge.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    topo: Topology,
    #[arg(long)]
    router: RouterKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_optimize: bool,
    #[arg(long, default_value_t = 20)]
    lookahead_size: usize,
    #[arg(long, default_value_t = 0.5)]
    lookahead_weight: f64,
    #[arg(long, default_value_t = 0.001)]
    decay_increment: f64,
    #[arg(long, default_value_t = 5)]
    decay_reset_interval: usize,
    /// Write the lowered circuit here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the schedule instead of the circuit.
    #[arg(long)]
    schedule: bool,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Bench {
            action:
                BenchAction::Run {
                    config,
                    out,
                    workers,
                    summary,
                },
        } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg = RunConfig::from_toml(&text)?;
            let record = bench::run_with_workers(&cfg, workers.or_else(bench::worker_limit))?;
            let file =
                fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            bench::write_csv(&record.rows, io::BufWriter::new(file))?;
            if summary {
                print!("{}", bench::summary_table(&record.summary));
            }
            eprintln!("wrote {} rows to {}", record.rows.len(), out.display());
        }
        Command::Topo {
            action: TopoAction::Dump { topology, width },
        } => {
            let map = build_map(&topology, width)?;
            eprintln!(
                "{topology}: {} qubits, {} couplings, avg connectivity {:.4}",
                map.n(),
                map.coupled_pair_count(),
                map.avg_connectivity()
            );
            print!("{}", map.to_text());
        }
        Command::Strategy {
            action:
                StrategyAction::Dump {
                    topology,
                    width,
                    layers,
                },
        } => {
            let map = build_map(&topology, width)?;
            let strategy = strategy_for(&map)?;
            let count = match layers {
                Some(k) => k,
                None => full_connectivity_layers(&strategy)?,
            };
            print!("{}", strategy.dump(count));
        }
        Command::Graph {
            action: GraphAction::Gen { family, n, seed },
        } => {
            print!("{}", family.generate(n, seed)?.to_edge_list());
        }
        Command::Compile(args) => run_compile(args)?,
    }
    Ok(())
}

/// Auto-sized families default to 16 qubits; fixed devices use their own size.
fn build_map(topology: &Topology, width: Option<usize>) -> Result<CouplingMap> {
    let auto = matches!(
        topology,
        Topology::Line(None)
            | Topology::Grid(None)
            | Topology::BusNnn { buses: None, .. }
            | Topology::Complete(None)
    );
    let width = width.unwrap_or(if auto { 16 } else { 0 });
    Ok(topology.build(width)?)
}

fn run_compile(args: CompileArgs) -> Result<()> {
    let text = fs::read_to_string(&args.graph)
        .with_context(|| format!("reading {}", args.graph.display()))?;
    let graph = ProblemGraph::from_edge_list(&text)?;
    if args.router == RouterKind::Shuffle && !args.topo.supports_shuffle() {
        bail!("no swap strategy for topology {}", args.topo);
    }
    let circuit = build_qaoa(&graph, QaoaParams::default());
    let sabre = RouterParams {
        lookahead_size: args.lookahead_size,
        lookahead_weight: args.lookahead_weight,
        decay_increment: args.decay_increment,
        decay_reset_interval: args.decay_reset_interval,
        seed: args.seed,
    };
    let durations = GateDurations::default();
    let c = compile(
        &circuit,
        &args.topo,
        args.router,
        &sabre,
        durations,
        !args.no_optimize,
    )?;
    eprintln!(
        "qubits {} two_q_count {} two_q_depth {} scaled_time {} swaps {}",
        c.map.n(),
        c.lowered.count_2q(),
        c.lowered.depth_2q(),
        c.scaled_time,
        c.routed.as_ref().map_or(0, |r| r.swap_count())
    );
    let body = if args.schedule {
        dump(&c.lowered, &schedule(&c.lowered, &c.map, durations)?)
    } else {
        serialize(&c.lowered)
    };
    match args.out {
        Some(path) => {
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}
