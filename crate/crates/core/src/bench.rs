//! Seeded experiment runs and CSV output.
//!
//! A run generates `instances` graphs per size, compiles each one through
//! route → peephole → lower → peephole → schedule and records the metrics.
//! Instance `i` uses seed `base_seed + i`. Instances run on a rayon pool whose
//! size can be capped with `ARCHBENCH_WORKERS`; rows are sorted before they
//! are returned, so the output does not depend on the worker count.
//!
//! Config files are TOML:
//!
//! ```toml
//! family = "er:0.3"        # er:<density>, <d>reg, ws, ba, sk
//! sizes = [8, 12, 16]
//! topology = "line"        # see `Topology`
//! router = "shuffle"       # shuffle, sabre, baseline
//! instances = 100
//! base_seed = 0
//! optimize = true
//! record_timing = false    # router_ms is 0 unless set
//!
//! [durations]
//! t_1q = 1
//! t_2q = 10
//!
//! [sabre]
//! lookahead_size = 20
//! lookahead_weight = 0.5
//! decay_increment = 0.001
//! decay_reset_interval = 5
//! ```

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::circuit::Circuit;
use crate::graphgen::{GraphError, GraphFamily};
use crate::optimize::peephole;
use crate::qaoa::{build_qaoa, lower, QaoaParams};
use crate::routing::sabre::{route_sabre, RouterParams};
use crate::routing::shuffle::{route_shuffle, strategy_for};
use crate::routing::{verify_routing, RoutedCircuit, RoutingError};
use crate::schedule::{schedule, verify_schedule, GateDurations, ScheduleError};
use crate::topology::{build_complete, CouplingMap, Topology, TopologyError};

/// Environment variable capping the worker pool size.
pub const WORKERS_ENV: &str = "ARCHBENCH_WORKERS";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("size {size} instance {instance}: {msg}")]
    Invariant {
        size: usize,
        instance: usize,
        msg: String,
    },
    #[error("config parse error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouterKind {
    Shuffle,
    Sabre,
    /// No routing: the circuit is lowered and scheduled on a complete map.
    #[serde(alias = "none")]
    Baseline,
}

impl fmt::Display for RouterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouterKind::Shuffle => "shuffle",
            RouterKind::Sabre => "sabre",
            RouterKind::Baseline => "baseline",
        })
    }
}

impl FromStr for RouterKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shuffle" => Ok(RouterKind::Shuffle),
            "sabre" => Ok(RouterKind::Sabre),
            "baseline" | "none" => Ok(RouterKind::Baseline),
            other => Err(BenchError::Config(format!("unknown router {other:?}"))),
        }
    }
}

fn family_from_str<'de, D: Deserializer<'de>>(d: D) -> Result<GraphFamily, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn family_to_str<S: Serializer>(f: &GraphFamily, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn default_instances() -> usize {
    100
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(deserialize_with = "family_from_str", serialize_with = "family_to_str")]
    pub family: GraphFamily,
    pub sizes: Vec<usize>,
    pub topology: Topology,
    pub router: RouterKind,
    #[serde(default = "default_instances")]
    pub instances: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub durations: GateDurations,
    /// SABRE settings; the seed is replaced by each instance seed.
    #[serde(default)]
    pub sabre: RouterParams,
    #[serde(default)]
    pub qaoa: QaoaParams,
    #[serde(default = "default_true")]
    pub optimize: bool,
    #[serde(default)]
    pub record_timing: bool,
}

impl RunConfig {
    pub fn new(
        family: GraphFamily,
        sizes: Vec<usize>,
        topology: Topology,
        router: RouterKind,
    ) -> Self {
        Self {
            family,
            sizes,
            topology,
            router,
            instances: default_instances(),
            base_seed: 0,
            durations: GateDurations::default(),
            sabre: RouterParams::default(),
            qaoa: QaoaParams::default(),
            optimize: true,
            record_timing: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        Ok(toml::from_str(text)?)
    }

    /// Rejects configs that cannot run before any instance is generated.
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.sizes.is_empty() {
            return Err(BenchError::Config("sizes is empty".into()));
        }
        if self.instances == 0 {
            return Err(BenchError::Config("instances must be positive".into()));
        }
        self.durations.validate()?;
        self.sabre.validate()?;
        if self.router == RouterKind::Shuffle && !self.topology.supports_shuffle() {
            return Err(BenchError::Config(format!(
                "no swap strategy for topology {}",
                self.topology
            )));
        }
        if self.router != RouterKind::Baseline {
            for &size in &self.sizes {
                let map = self.topology.build(self.family.vertex_count(size))?;
                if self.router == RouterKind::Shuffle {
                    strategy_for(&map)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub size: usize,
    pub graph_n: usize,
    pub topology: String,
    pub physical_qubits: usize,
    pub router: String,
    pub seed: u64,
    pub instance: usize,
    pub two_q_count: usize,
    pub two_q_depth: usize,
    pub scaled_time: u64,
    pub router_ms: f64,
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub mean: f64,
    pub std: f64,
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} ± {:.2}", self.mean, self.std)
    }
}

/// Population mean and standard deviation; `None` for no values.
pub fn aggregate(values: &[f64]) -> Option<Aggregate> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Some(Aggregate {
        mean,
        std: var.sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary {
    pub size: usize,
    pub instances: usize,
    pub two_q_count: Aggregate,
    pub two_q_depth: Aggregate,
    pub scaled_time: Aggregate,
    pub router_ms: Aggregate,
}

/// Per-size aggregates over `rows`, sizes ascending.
pub fn summarize(rows: &[BenchRow]) -> Vec<SizeSummary> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|size| {
            let sel: Vec<&BenchRow> = rows.iter().filter(|r| r.size == size).collect();
            let agg = |f: &dyn Fn(&BenchRow) -> f64| {
                aggregate(&sel.iter().map(|r| f(r)).collect::<Vec<_>>()).expect("size has rows")
            };
            SizeSummary {
                size,
                instances: sel.len(),
                two_q_count: agg(&|r| r.two_q_count as f64),
                two_q_depth: agg(&|r| r.two_q_depth as f64),
                scaled_time: agg(&|r| r.scaled_time as f64),
                router_ms: agg(&|r| r.router_ms),
            }
        })
        .collect()
}

pub fn summary_table(summary: &[SizeSummary]) -> String {
    let mut out =
        String::from("size  instances  two_q_count  two_q_depth  scaled_time  router_ms\n");
    for s in summary {
        out.push_str(&format!(
            "{}  {}  {}  {}  {}  {}\n",
            s.size, s.instances, s.two_q_count, s.two_q_depth, s.scaled_time, s.router_ms
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub config: RunConfig,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SizeSummary>,
}

/// Compiled form of one circuit with its metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Compiled {
    pub map: CouplingMap,
    pub routed: Option<RoutedCircuit>,
    pub lowered: Circuit,
    pub scaled_time: u64,
    pub router_ms: f64,
}

/// Routes, optimizes, lowers and schedules `c`, checking routing and schedule
/// invariants along the way.
pub fn compile(
    c: &Circuit,
    topology: &Topology,
    router: RouterKind,
    sabre: &RouterParams,
    durations: GateDurations,
    optimize: bool,
) -> Result<Compiled, BenchError> {
    let invariant = |msg: String| BenchError::Invariant {
        size: c.width(),
        instance: 0,
        msg,
    };
    let (map, routed, router_ms) = match router {
        RouterKind::Baseline => (build_complete(c.width()), None, 0.0),
        RouterKind::Shuffle | RouterKind::Sabre => {
            let map = topology.build(c.width())?;
            let t0 = Instant::now();
            let routed = if router == RouterKind::Shuffle {
                route_shuffle(c, &strategy_for(&map)?)?
            } else {
                route_sabre(c, &map, sabre)?
            };
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            verify_routing(c, &routed, &map)?;
            (map, Some(routed), ms)
        }
    };
    let body = routed.as_ref().map_or(c, |r| &r.circuit);
    let lowered = if optimize && routed.is_some() {
        peephole(&lower(&peephole(body)))
    } else {
        lower(body)
    };
    let sched = schedule(&lowered, &map, durations)?;
    verify_schedule(&lowered, &sched).map_err(invariant)?;
    Ok(Compiled {
        map,
        routed,
        lowered,
        scaled_time: sched.makespan,
        router_ms,
    })
}

fn run_instance(cfg: &RunConfig, size: usize, instance: usize) -> Result<BenchRow, BenchError> {
    let seed = cfg.base_seed.wrapping_add(instance as u64);
    let graph = cfg.family.generate(size, seed)?;
    let circuit = build_qaoa(&graph, cfg.qaoa);
    let sabre = RouterParams { seed, ..cfg.sabre };
    let compiled = compile(
        &circuit,
        &cfg.topology,
        cfg.router,
        &sabre,
        cfg.durations,
        cfg.optimize,
    )
    .map_err(|e| match e {
        BenchError::Invariant { msg, .. } => BenchError::Invariant {
            size,
            instance,
            msg,
        },
        other => other,
    })?;
    Ok(BenchRow {
        family: cfg.family.to_string(),
        size,
        graph_n: graph.n(),
        topology: match cfg.router {
            RouterKind::Baseline => "complete".to_string(),
            _ => cfg.topology.to_string(),
        },
        physical_qubits: compiled.map.n(),
        router: cfg.router.to_string(),
        seed,
        instance,
        two_q_count: compiled.lowered.count_2q(),
        two_q_depth: compiled.lowered.depth_2q(),
        scaled_time: compiled.scaled_time,
        router_ms: if cfg.record_timing {
            compiled.router_ms
        } else {
            0.0
        },
    })
}

/// Worker cap from `ARCHBENCH_WORKERS`; `None` means rayon's default.
pub fn worker_limit() -> Option<usize> {
    std::env::var(WORKERS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Runs every instance of `cfg` on `workers` threads (rayon default if `None`).
pub fn run_with_workers(
    cfg: &RunConfig,
    workers: Option<usize>,
) -> Result<BenchRecord, BenchError> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&s| (0..cfg.instances).map(move |i| (s, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    let mut rows = pool.install(|| {
        jobs.par_iter()
            .map(|&(s, i)| run_instance(cfg, s, i))
            .collect::<Result<Vec<_>, _>>()
    })?;
    rows.sort_by_key(|r| (r.size, r.instance));
    let summary = summarize(&rows);
    Ok(BenchRecord {
        config: cfg.clone(),
        rows,
        summary,
    })
}

pub fn run(cfg: &RunConfig) -> Result<BenchRecord, BenchError> {
    run_with_workers(cfg, worker_limit())
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[BenchRow]) -> Result<String, BenchError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(router: RouterKind, topology: &str) -> RunConfig {
        let mut cfg = RunConfig::new(GraphFamily::Sk, vec![6], topology.parse().unwrap(), router);
        cfg.instances = 3;
        cfg
    }

    #[test]
    fn aggregate_examples() {
        let a = aggregate(&[10.0, 20.0]).unwrap();
        assert_eq!((a.mean, a.std), (15.0, 5.0));
        assert_eq!(aggregate(&[7.0]).unwrap().std, 0.0);
        assert_eq!(aggregate(&[3.0; 100]).unwrap().std, 0.0);
        assert!(aggregate(&[]).is_none());
    }

    #[test]
    fn baseline_on_complete_graph() {
        let rec = run_with_workers(&small(RouterKind::Baseline, "line"), Some(1)).unwrap();
        assert!(rec.rows.iter().all(|r| r.two_q_count == 6 * 5));
    }

    #[test]
    fn shuffle_sk6_on_line_within_bound() {
        let mut cfg = small(RouterKind::Shuffle, "line");
        cfg.optimize = false;
        let rec = run_with_workers(&cfg, Some(2)).unwrap();
        assert!(rec.rows.iter().all(|r| r.two_q_count <= 2 * 15 + 3 * 10));
    }

    #[test]
    fn rejects_infeasible() {
        let cfg = small(RouterKind::Shuffle, "heavyhex");
        assert!(matches!(cfg.validate(), Err(BenchError::Config(_))));
        let cfg = small(RouterKind::Sabre, "line:4");
        assert!(matches!(cfg.validate(), Err(BenchError::Topology(_))));
        let mut cfg = small(RouterKind::Sabre, "line");
        cfg.instances = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            family = "er:0.5"
            sizes = [6, 8]
            topology = "grid"
            router = "sabre"
            instances = 2

            [sabre]
            lookahead_size = 10
        "#;
        let cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.family, GraphFamily::Er { density: 0.5 });
        assert_eq!(cfg.sabre.lookahead_size, 10);
        assert_eq!(cfg.sabre.lookahead_weight, 0.5);
        assert_eq!(cfg.durations, GateDurations::default());
        let back = RunConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn csv_is_worker_independent() {
        let cfg = small(RouterKind::Sabre, "grid");
        let a = csv_string(&run_with_workers(&cfg, Some(1)).unwrap().rows).unwrap();
        let b = csv_string(&run_with_workers(&cfg, Some(3)).unwrap().rows).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("family,size,graph_n,topology,physical_qubits,router,seed,instance,"));
    }
}
