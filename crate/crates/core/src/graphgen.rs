//! Seeded generators for the problem-instance graph families.
//!
//! Every generator is a pure function of its parameters and a 64-bit seed.
//! Randomness comes from [`crate::rng::seeded`], a ChaCha8 stream, so the
//! same `(params, seed)` always yields the same edge set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng;

/// Upper bound on regular-graph construction attempts.
pub const REGULAR_MAX_ATTEMPTS: usize = 1000;

/// Rewiring probability for Watts-Strogatz graphs.
pub const WS_REWIRE_PROBABILITY: f64 = 0.5;

/// Ring-lattice degree for Watts-Strogatz graphs.
pub const WS_RING_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph parameters: {0}")]
    Parameter(String),
    #[error("graph generation failed: {0}")]
    Generation(String),
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Undirected simple graph describing a 2-local Hamiltonian instance.
///
/// Edges are stored as `(i, j)` with `i < j`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProblemGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl ProblemGraph {
    /// Builds a graph from an arbitrary edge iterator, normalizing orientation
    /// and removing duplicates. Self loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Parameter(format!("self loop on vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(GraphError::Parameter(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// True when BFS from vertex 0 reaches every vertex. The empty graph on
    /// zero or one vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// Serializes to the edge-list text format: `n m` then one `i j` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let [n, m] = parse_pair(header, hline + 1)?;
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let [a, b] = parse_pair(line, idx + 1)?;
            if a >= b {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    msg: format!("expected i < j, got {a} {b}"),
                });
            }
            if b >= n {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    msg: format!("vertex {b} out of range"),
                });
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline + 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        let g = Self::new(n, edges)?;
        if g.edge_count() != m {
            return Err(GraphError::Parse {
                line: hline + 1,
                msg: "duplicate edges".into(),
            });
        }
        Ok(g)
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<[usize; 2], GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(GraphError::Parse {
            line: lineno,
            msg: format!("expected two integers, got {line:?}"),
        });
    }
    let mut out = [0; 2];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| GraphError::Parse {
            line: lineno,
            msg: format!("not an integer: {p:?}"),
        })?;
    }
    Ok(out)
}

/// Erdős-Rényi G(n, m): exactly `m` edges drawn uniformly without replacement.
pub fn gen_er(n: usize, m: usize, seed: u64) -> Result<ProblemGraph, GraphError> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(GraphError::Parameter(format!(
            "{m} edges requested but only {total} pairs exist on {n} vertices"
        )));
    }
    let mut rng = rng::seeded(seed);
    let picked = index::sample(&mut rng, total, m);
    let edges = picked.into_iter().map(|k| pair_from_index(n, k));
    ProblemGraph::new(n, edges)
}

/// Inverse of the row-major enumeration of pairs `(i, j)`, `i < j`.
fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
        i += 1;
    }
}

/// Random connected `d`-regular graph.
///
/// Uses the pairing model with per-pair rejection: stubs are shuffled and paired,
/// pairs that would form a self loop or multi-edge are returned to the pool and
/// re-paired. Attempts that get stuck, or that produce a disconnected graph, are
/// discarded and retried, up to [`REGULAR_MAX_ATTEMPTS`].
pub fn gen_regular(n: usize, d: usize, seed: u64) -> Result<ProblemGraph, GraphError> {
    if d >= n {
        return Err(GraphError::Parameter(format!(
            "degree {d} must be smaller than vertex count {n}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(GraphError::Parameter(format!(
            "n*d must be even (n={n}, d={d})"
        )));
    }
    if d == 0 {
        if n <= 1 {
            return Ok(ProblemGraph::empty(n));
        }
        return Err(GraphError::Parameter(
            "a 0-regular graph on more than one vertex is disconnected".into(),
        ));
    }
    let mut rng = rng::seeded(seed);
    for _ in 0..REGULAR_MAX_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            let g = ProblemGraph::new(n, edges).expect("pairing yields valid edges");
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(GraphError::Generation(format!(
        "no connected {d}-regular graph on {n} vertices after {REGULAR_MAX_ATTEMPTS} attempts"
    )))
}

fn try_pairing<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<BTreeSet<(usize, usize)>> {
    let mut edges = BTreeSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && !edges.contains(&(a, b)) {
                edges.insert((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        if !leftover.is_empty() && !can_still_pair(&edges, &leftover) {
            return None;
        }
        stubs = leftover
            .iter()
            .flat_map(|(&v, &k)| std::iter::repeat_n(v, k))
            .collect();
    }
    Some(edges)
}

/// Some pair of distinct leftover vertices can still be joined.
fn can_still_pair(edges: &BTreeSet<(usize, usize)>, leftover: &BTreeMap<usize, usize>) -> bool {
    let verts: Vec<usize> = leftover.keys().copied().collect();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if !edges.contains(&(a, b)) {
                return true;
            }
        }
    }
    false
}

/// Watts-Strogatz small-world graph: ring lattice with `k = 4` nearest
/// neighbours, each edge rewired once with probability 1/2.
///
/// Edges are visited in a fixed order (offset 1 for every vertex, then offset 2).
/// A rewired edge `(u, v)` becomes `(u, w)` with `w` uniform over vertices that are
/// neither `u` nor already adjacent to `u`; when no such `w` exists the edge stays.
pub fn gen_ws(n: usize, seed: u64) -> Result<ProblemGraph, GraphError> {
    if n <= WS_RING_DEGREE {
        return Err(GraphError::Parameter(format!(
            "Watts-Strogatz needs n > {WS_RING_DEGREE}, got {n}"
        )));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for off in 1..=WS_RING_DEGREE / 2 {
            let v = (u + off) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut rng = rng::seeded(seed);
    for off in 1..=WS_RING_DEGREE / 2 {
        for u in 0..n {
            let v = (u + off) % n;
            if !rng.gen_bool(WS_REWIRE_PROBABILITY) {
                continue;
            }
            if !adj[u].contains(&v) {
                // already rewired away by an earlier step
                continue;
            }
            let targets: Vec<usize> = (0..n).filter(|&w| w != u && !adj[u].contains(&w)).collect();
            if targets.is_empty() {
                continue;
            }
            let w = targets[rng.gen_range(0..targets.len())];
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&w| w > u).map(move |&w| (u, w)));
    ProblemGraph::new(n, edges)
}

/// Sizes used by [`gen_ba`]: `(star nodes, attached nodes, edges per attached node)`.
///
/// `⌈n/4 + 1⌉`, `⌈3n/4 − 1⌉`, `⌈n/4⌉`. When `n` is not a multiple of 4 the
/// total node count exceeds `n`.
pub fn ba_sizes(n: usize) -> (usize, usize, usize) {
    let quarter = n.div_ceil(4);
    let three_quarters = (3 * n).div_ceil(4);
    (quarter + 1, three_quarters - 1, quarter)
}

/// Barabási-Albert graph grown from a star by preferential attachment.
///
/// Each attached node picks its targets among the existing nodes with
/// probability proportional to their current degree, without repeats.
pub fn gen_ba(n: usize, seed: u64) -> Result<ProblemGraph, GraphError> {
    if n < 4 {
        return Err(GraphError::Parameter(format!(
            "Barabási-Albert needs n >= 4, got {n}"
        )));
    }
    let (star, added, per_node) = ba_sizes(n);
    let total = star + added;
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; total];
    for leaf in 1..star {
        edges.push((0, leaf));
        degree[0] += 1;
        degree[leaf] += 1;
    }
    for new in star..total {
        let mut chosen: BTreeSet<usize> = BTreeSet::new();
        while chosen.len() < per_node {
            let weight: usize = (0..new)
                .filter(|v| !chosen.contains(v))
                .map(|v| degree[v])
                .sum();
            let mut ticket = rng.gen_range(0..weight);
            let pick = (0..new)
                .filter(|v| !chosen.contains(v))
                .find(|&v| {
                    if ticket < degree[v] {
                        true
                    } else {
                        ticket -= degree[v];
                        false
                    }
                })
                .expect("ticket within total weight");
            chosen.insert(pick);
        }
        for &t in &chosen {
            edges.push((t, new));
            degree[t] += 1;
            degree[new] += 1;
        }
    }
    ProblemGraph::new(total, edges)
}

/// Sherrington-Kirkpatrick instance: the complete graph `K_n`.
pub fn gen_sk(n: usize) -> Result<ProblemGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::Parameter(format!("SK needs n >= 2, got {n}")));
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    ProblemGraph::new(n, edges)
}

/// Edge density `2M / (N (N - 1))`; complete graphs report exactly 1.
pub fn density(g: &ProblemGraph) -> Result<f64, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::Parameter(
            "density needs at least two vertices".into(),
        ));
    }
    let n = g.n() as f64;
    Ok(2.0 * g.edge_count() as f64 / (n * (n - 1.0)))
}

/// One of the six benchmark families, parameterised so that only the size and
/// seed remain free.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphFamily {
    /// Erdős-Rényi with `m = round(density * n(n-1)/2)` edges.
    Er {
        density: f64,
    },
    /// Connected random regular graph.
    Regular {
        degree: usize,
    },
    Ws,
    Ba,
    Sk,
}

impl GraphFamily {
    pub fn generate(&self, n: usize, seed: u64) -> Result<ProblemGraph, GraphError> {
        match *self {
            GraphFamily::Er { density } => {
                if !(0.0..=1.0).contains(&density) {
                    return Err(GraphError::Parameter(format!(
                        "ER density {density} outside [0, 1]"
                    )));
                }
                let pairs = n * n.saturating_sub(1) / 2;
                let m = (density * pairs as f64).round() as usize;
                gen_er(n, m, seed)
            }
            GraphFamily::Regular { degree } => gen_regular(n, degree, seed),
            GraphFamily::Ws => gen_ws(n, seed),
            GraphFamily::Ba => gen_ba(n, seed),
            GraphFamily::Sk => gen_sk(n),
        }
    }

    /// Vertex count of the graph `generate(n, _)` produces.
    pub fn vertex_count(&self, n: usize) -> usize {
        match self {
            GraphFamily::Ba if n >= 4 => {
                let (s, a, _) = ba_sizes(n);
                s + a
            }
            _ => n,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Er { density } => write!(f, "er:{density}"),
            GraphFamily::Regular { degree } => write!(f, "{degree}reg"),
            GraphFamily::Ws => f.write_str("ws"),
            GraphFamily::Ba => f.write_str("ba"),
            GraphFamily::Sk => f.write_str("sk"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GraphError;

    /// Accepts `er:<density>`, `<d>reg` (e.g. `3reg`), `ws`, `ba`, `sk`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || GraphError::Parameter(format!("unknown graph family {s:?}"));
        match lower.as_str() {
            "ws" => Ok(GraphFamily::Ws),
            "ba" => Ok(GraphFamily::Ba),
            "sk" => Ok(GraphFamily::Sk),
            other => {
                if let Some(d) = other.strip_prefix("er:") {
                    let density = d.parse().map_err(|_| bad())?;
                    Ok(GraphFamily::Er { density })
                } else if let Some(d) = other.strip_suffix("reg") {
                    let degree = d.parse().map_err(|_| bad())?;
                    Ok(GraphFamily::Regular { degree })
                } else {
                    Err(bad())
                }
            }
        }
    }
}
