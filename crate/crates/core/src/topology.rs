//! Coupling maps for the architectures under study.
//!
//! A [`CouplingMap`] has point-to-point couplers (`edges`) and shared buses.
//! Every pair of qubits on the same bus is coupled, but a bus executes one
//! two-qubit gate at a time; the scheduler enforces that, while distances
//! treat a bus as a clique.
//!
//! Layouts used by the builders:
//!
//! * **line** `n`: edges `(i, i+1)`.
//! * **grid** `N`: `N×N`, qubit `q = r·N + c`, horizontal and vertical neighbours.
//! * **heavy-hex** `(rows, cols)`: `rows + 1` horizontal qubit lines joined by
//!   bridge qubits. Between lines `l` and `l+1` bridges sit at positions
//!   `off + 4k`, `k = 0..=cols`, with `off = 0` for even `l` and `2` for odd `l`.
//!   Lines hold `4·cols + 1` qubits when `rows = 1`, else `4·cols + 3` with the
//!   unbridged end qubit of the first and last line removed. `(6, 3)` is the
//!   127-qubit Eagle layout; `(1, 1)` is a single 12-qubit ring.
//! * **Sycamore** `(rows, cols)`: diagonal square lattice. Row `r` holds qubits at
//!   horizontal offsets `2c + (r mod 2)`; a qubit couples to the qubits one row
//!   up or down at offset `±1`. `(12, 6)` is the 72-qubit chip.
//! * **Aspen** `(rows, cols)`: grid of 8-qubit rings. Ring position `k` runs
//!   clockwise from the top-left corner. Horizontally adjacent rings are joined
//!   by `2↔7` and `3↔6`; vertically adjacent rings are joined by `4↔1` and `5↔0`
//!   in the first and last ring column only. `(2, 5)` gives 80 qubits and 100
//!   couplers.
//! * **layered**: two 72-qubit Sycamore lattices plus `(i, i + 72)` for every `i`.
//! * **busNNN** `(B, s)`: bus `k` owns qubits `[k·s, (k+1)·s)`, split into two
//!   half columns of `s/2`. The second half column of bus `k` is joined
//!   position-by-position to the first half column of bus `k + 1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("invalid topology parameters: {0}")]
    Parameter(String),
    #[error("{topology} has {available} qubits, {required} required")]
    TooSmall {
        topology: String,
        available: usize,
        required: usize,
    },
    #[error("coupling map line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Structural family of a map; strategies are only defined for some of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Line { n: usize },
    Grid { side: usize },
    HeavyHex { rows: usize, cols: usize },
    Sycamore { rows: usize, cols: usize },
    Aspen { rows: usize, cols: usize },
    Layered,
    BusNnn { buses: usize, bus_size: usize },
    Complete { n: usize },
    Custom,
}

/// How a coupled pair is connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    Edge,
    Bus(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    n: usize,
    edges: Vec<(usize, usize)>,
    buses: Vec<Vec<usize>>,
    shape: Shape,
    edge_set: HashSet<(usize, usize)>,
    bus_of: Vec<Option<usize>>,
    neighbors: Vec<Vec<usize>>,
}

impl CouplingMap {
    /// Validates and indexes a map. Edges are normalized to `(min, max)` and
    /// deduplicated; buses must be disjoint and no pair may be coupled by both
    /// an edge and a bus.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        buses: Vec<Vec<usize>>,
        shape: Shape,
    ) -> Result<Self, TopologyError> {
        let mut edge_set = HashSet::new();
        let mut edge_list = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(TopologyError::Parameter(format!("invalid edge ({a}, {b})")));
            }
            let e = (a.min(b), a.max(b));
            if edge_set.insert(e) {
                edge_list.push(e);
            }
        }
        edge_list.sort_unstable();
        let mut bus_of = vec![None; n];
        let mut bus_list = Vec::with_capacity(buses.len());
        for (k, bus) in buses.into_iter().enumerate() {
            let mut bus = bus;
            bus.sort_unstable();
            bus.dedup();
            for &q in &bus {
                if q >= n {
                    return Err(TopologyError::Parameter(format!(
                        "bus {k} qubit {q} out of range"
                    )));
                }
                if bus_of[q].replace(k).is_some() {
                    return Err(TopologyError::Parameter(format!("qubit {q} on two buses")));
                }
            }
            bus_list.push(bus);
        }
        for &(a, b) in &edge_list {
            if bus_of[a].is_some() && bus_of[a] == bus_of[b] {
                return Err(TopologyError::Parameter(format!(
                    "pair ({a}, {b}) coupled by both an edge and a bus"
                )));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &edge_list {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for bus in &bus_list {
            for &a in bus {
                neighbors[a].extend(bus.iter().copied().filter(|&b| b != a));
            }
        }
        for ns in &mut neighbors {
            ns.sort_unstable();
        }
        Ok(Self {
            n,
            edges: edge_list,
            buses: bus_list,
            shape,
            edge_set,
            bus_of,
            neighbors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn buses(&self) -> &[Vec<usize>] {
        &self.buses
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn bus_of(&self, q: usize) -> Option<usize> {
        self.bus_of[q]
    }

    /// Coupled partners of `q` through edges or its bus, sorted.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.neighbors[q]
    }

    /// Point-to-point edges take precedence over bus membership.
    pub fn link(&self, a: usize, b: usize) -> Option<Link> {
        if a == b || a >= self.n || b >= self.n {
            return None;
        }
        if self.edge_set.contains(&(a.min(b), a.max(b))) {
            return Some(Link::Edge);
        }
        match (self.bus_of[a], self.bus_of[b]) {
            (Some(x), Some(y)) if x == y => Some(Link::Bus(x)),
            _ => None,
        }
    }

    pub fn coupled(&self, a: usize, b: usize) -> bool {
        self.link(a, b).is_some()
    }

    /// Every coupled unordered pair, edges first then bus pairs.
    pub fn coupled_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = self.edges.clone();
        for bus in &self.buses {
            for (i, &a) in bus.iter().enumerate() {
                pairs.extend(bus[i + 1..].iter().map(|&b| (a, b)));
            }
        }
        pairs
    }

    pub fn coupled_pair_count(&self) -> usize {
        self.edges.len()
            + self
                .buses
                .iter()
                .map(|b| b.len() * b.len().saturating_sub(1) / 2)
                .sum::<usize>()
    }

    /// Average number of couplings per qubit, `2·|coupled pairs| / n`.
    pub fn avg_connectivity(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        2.0 * self.coupled_pair_count() as f64 / self.n as f64
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![DistanceMatrix::UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = row[v];
                for &w in &self.neighbors[v] {
                    if row[w] == DistanceMatrix::UNREACHABLE {
                        row[w] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1
            || self
                .distances()
                .row(0)
                .iter()
                .all(|&x| x != DistanceMatrix::UNREACHABLE)
    }

    /// `n <count>`, then `edge i j` lines, then `bus i1 i2 ...` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            out.push_str(&format!("edge {a} {b}\n"));
        }
        for bus in &self.buses {
            out.push_str("bus");
            for q in bus {
                out.push_str(&format!(" {q}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TopologyError> {
        let mut n = None;
        let mut edges = Vec::new();
        let mut buses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| TopologyError::Parse { line, msg };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let Some((&head, rest)) = toks.split_first() else {
                continue;
            };
            let nums: Vec<usize> = rest
                .iter()
                .map(|t| t.parse().map_err(|_| err(format!("not an integer: {t:?}"))))
                .collect::<Result<_, _>>()?;
            match (head, n.is_some()) {
                ("n", false) if nums.len() == 1 => n = Some(nums[0]),
                ("n", _) => return Err(err("malformed or repeated `n` line".into())),
                (_, false) => return Err(err("expected `n <count>` first".into())),
                ("edge", true) if nums.len() == 2 => edges.push((nums[0], nums[1])),
                ("bus", true) if nums.len() >= 2 => buses.push(nums),
                _ => return Err(err(format!("unrecognized line {raw:?}"))),
            }
        }
        let n = n.ok_or(TopologyError::Parse {
            line: 1,
            msg: "missing `n <count>`".into(),
        })?;
        Self::new(n, edges, buses, Shape::Custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.d[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.d[a * self.n..(a + 1) * self.n]
    }
}

pub fn build_line(n: usize) -> CouplingMap {
    let edges = (1..n).map(|i| (i - 1, i));
    CouplingMap::new(n, edges, Vec::new(), Shape::Line { n }).expect("line is valid")
}

pub fn build_grid(side: usize) -> CouplingMap {
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let q = r * side + c;
            if c + 1 < side {
                edges.push((q, q + 1));
            }
            if r + 1 < side {
                edges.push((q, q + side));
            }
        }
    }
    CouplingMap::new(side * side, edges, Vec::new(), Shape::Grid { side }).expect("grid is valid")
}

pub fn build_complete(n: usize) -> CouplingMap {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    CouplingMap::new(n, edges, Vec::new(), Shape::Complete { n }).expect("complete is valid")
}

pub fn build_heavy_hex(rows: usize, cols: usize) -> Result<CouplingMap, TopologyError> {
    if rows == 0 || cols == 0 {
        return Err(TopologyError::Parameter(
            "heavy-hex needs rows, cols >= 1".into(),
        ));
    }
    let len = if rows == 1 {
        4 * cols + 1
    } else {
        4 * cols + 3
    };
    let offset = |gap: usize| if gap.is_multiple_of(2) { 0 } else { 2 };
    // line_index[l][p] = qubit id of position p on line l, if present
    let mut line_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(rows + 1);
    let mut next = 0;
    let mut bridges: Vec<Vec<(usize, usize)>> = Vec::new(); // (position, qubit)
    for l in 0..=rows {
        let mut slots = vec![None; len];
        for (p, slot) in slots.iter_mut().enumerate() {
            let trimmed = rows > 1
                && ((l == 0 && p == len - 1)
                    || (l == rows
                        && ((offset(rows - 1) == 2 && p == 0)
                            || (offset(rows - 1) == 0 && p == len - 1))));
            if !trimmed {
                *slot = Some(next);
                next += 1;
            }
        }
        line_index.push(slots);
        if l < rows {
            let gap: Vec<(usize, usize)> = (0..=cols)
                .map(|k| {
                    let q = next;
                    next += 1;
                    (offset(l) + 4 * k, q)
                })
                .collect();
            bridges.push(gap);
        }
    }
    let mut edges = Vec::new();
    for line in &line_index {
        for w in line.windows(2) {
            if let (Some(a), Some(b)) = (w[0], w[1]) {
                edges.push((a, b));
            }
        }
    }
    for (gap, bs) in bridges.iter().enumerate() {
        for &(p, q) in bs {
            let above = line_index[gap][p].expect("bridge endpoints are never trimmed");
            let below = line_index[gap + 1][p].expect("bridge endpoints are never trimmed");
            edges.push((above, q));
            edges.push((q, below));
        }
    }
    CouplingMap::new(next, edges, Vec::new(), Shape::HeavyHex { rows, cols })
}

/// Diagonal lattice over explicit `(row, offset)` sites, numbered in the given order.
fn diagonal_lattice(sites: &[(usize, usize)], shape: Shape) -> CouplingMap {
    let index: std::collections::HashMap<(usize, usize), usize> =
        sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, &(r, x)) in sites.iter().enumerate() {
        for nx in [x.wrapping_sub(1), x + 1] {
            if let Some(&j) = index.get(&(r + 1, nx)) {
                edges.push((i, j));
            }
        }
    }
    CouplingMap::new(sites.len(), edges, Vec::new(), shape).expect("lattice is valid")
}

pub fn build_sycamore_lattice(rows: usize, cols: usize) -> Result<CouplingMap, TopologyError> {
    if rows == 0 || cols == 0 {
        return Err(TopologyError::Parameter(
            "Sycamore needs rows, cols >= 1".into(),
        ));
    }
    let sites: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, 2 * c + r % 2)))
        .collect();
    Ok(diagonal_lattice(&sites, Shape::Sycamore { rows, cols }))
}

/// Sycamore-style chip of a supported size: 18, 23, 36, 54 or 72 qubits.
///
/// 23 is the small illustrative crop: 9 rows of 3, with the last qubit of every
/// odd row removed (32 couplers). The others are full `rows × 6` lattices.
pub fn build_sycamore(qubits: usize) -> Result<CouplingMap, TopologyError> {
    match qubits {
        18 | 36 | 54 | 72 => build_sycamore_lattice(qubits / 6, 6),
        23 => {
            let sites: Vec<(usize, usize)> = (0..9)
                .flat_map(|r| {
                    let width = if r % 2 == 0 { 3 } else { 2 };
                    (0..width).map(move |c| (r, 2 * c + r % 2))
                })
                .collect();
            Ok(diagonal_lattice(
                &sites,
                Shape::Sycamore { rows: 9, cols: 3 },
            ))
        }
        _ => Err(TopologyError::Parameter(format!(
            "unsupported Sycamore size {qubits} (use 18, 23, 36, 54, 72 or an explicit lattice)"
        ))),
    }
}

pub fn build_aspen(rows: usize, cols: usize) -> Result<CouplingMap, TopologyError> {
    if rows == 0 || cols == 0 {
        return Err(TopologyError::Parameter(
            "Aspen needs rows, cols >= 1".into(),
        ));
    }
    let q = |r: usize, c: usize, k: usize| (r * cols + c) * 8 + k;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            for k in 0..8 {
                edges.push((q(r, c, k), q(r, c, (k + 1) % 8)));
            }
            if c + 1 < cols {
                edges.push((q(r, c, 2), q(r, c + 1, 7)));
                edges.push((q(r, c, 3), q(r, c + 1, 6)));
            }
            if r + 1 < rows && (c == 0 || c + 1 == cols) {
                edges.push((q(r, c, 4), q(r + 1, c, 1)));
                edges.push((q(r, c, 5), q(r + 1, c, 0)));
            }
        }
    }
    CouplingMap::new(
        rows * cols * 8,
        edges,
        Vec::new(),
        Shape::Aspen { rows, cols },
    )
}

pub fn build_layered_sycamore() -> CouplingMap {
    let layer = build_sycamore(72).expect("72 is supported");
    let n = layer.n();
    let mut edges: Vec<(usize, usize)> = layer.edges().to_vec();
    edges.extend(layer.edges().iter().map(|&(a, b)| (a + n, b + n)));
    edges.extend((0..n).map(|i| (i, i + n)));
    CouplingMap::new(2 * n, edges, Vec::new(), Shape::Layered).expect("layered is valid")
}

pub fn build_busnnn(buses: usize, bus_size: usize) -> Result<CouplingMap, TopologyError> {
    if buses == 0 {
        return Err(TopologyError::Parameter(
            "busNNN needs at least one bus".into(),
        ));
    }
    if bus_size < 2 || !bus_size.is_multiple_of(2) {
        return Err(TopologyError::Parameter(format!(
            "bus size must be even and >= 2, got {bus_size}"
        )));
    }
    let half = bus_size / 2;
    let bus_list: Vec<Vec<usize>> = (0..buses)
        .map(|k| (k * bus_size..(k + 1) * bus_size).collect())
        .collect();
    let edges = (0..buses - 1)
        .flat_map(|k| (0..half).map(move |j| (k * bus_size + half + j, (k + 1) * bus_size + j)));
    CouplingMap::new(
        buses * bus_size,
        edges,
        bus_list,
        Shape::BusNnn { buses, bus_size },
    )
}

/// Default bus size for busNNN maps.
pub const DEFAULT_BUS_SIZE: usize = 8;

/// Topology selector used by configs and the CLI.
///
/// Text forms: `line`, `line:<n>`, `grid`, `grid:<side>`, `busnnn`,
/// `busnnn:<bus_size>`, `busnnn:<buses>x<bus_size>`, `heavyhex`,
/// `heavyhex:<rows>x<cols>`, `sycamore`, `sycamore:<qubits>`,
/// `sycamore:<rows>x<cols>`, `aspen`, `aspen:<rows>x<cols>`, `layered`,
/// `complete`, `complete:<n>`. Forms without a size are fitted to the
/// circuit width where that makes sense (line, grid, busnnn, complete) and
/// otherwise default to the full-size device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Topology {
    Line(Option<usize>),
    Grid(Option<usize>),
    BusNnn {
        buses: Option<usize>,
        bus_size: usize,
    },
    HeavyHex {
        rows: usize,
        cols: usize,
    },
    Sycamore(SycamoreSize),
    Aspen {
        rows: usize,
        cols: usize,
    },
    Layered,
    Complete(Option<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SycamoreSize {
    Qubits(usize),
    Lattice { rows: usize, cols: usize },
}

impl Topology {
    /// Builds the map, fitting auto-sized families to `width` qubits and
    /// checking that fixed ones are large enough.
    pub fn build(&self, width: usize) -> Result<CouplingMap, TopologyError> {
        let map = match *self {
            Topology::Line(n) => build_line(n.unwrap_or(width.max(1))),
            Topology::Grid(side) => build_grid(side.unwrap_or_else(|| ceil_sqrt(width).max(1))),
            Topology::BusNnn { buses, bus_size } => build_busnnn(
                buses.unwrap_or_else(|| width.div_ceil(bus_size).max(1)),
                bus_size,
            )?,
            Topology::HeavyHex { rows, cols } => build_heavy_hex(rows, cols)?,
            Topology::Sycamore(SycamoreSize::Qubits(q)) => build_sycamore(q)?,
            Topology::Sycamore(SycamoreSize::Lattice { rows, cols }) => {
                build_sycamore_lattice(rows, cols)?
            }
            Topology::Aspen { rows, cols } => build_aspen(rows, cols)?,
            Topology::Layered => build_layered_sycamore(),
            Topology::Complete(n) => build_complete(n.unwrap_or(width)),
        };
        if map.n() < width {
            return Err(TopologyError::TooSmall {
                topology: self.to_string(),
                available: map.n(),
                required: width,
            });
        }
        Ok(map)
    }

    /// Families with a full-shuffle swap strategy.
    pub fn supports_shuffle(&self) -> bool {
        matches!(
            self,
            Topology::Line(_) | Topology::Grid(_) | Topology::BusNnn { .. } | Topology::Complete(_)
        )
    }
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Topology::Line(None) => f.write_str("line"),
            Topology::Line(Some(n)) => write!(f, "line:{n}"),
            Topology::Grid(None) => f.write_str("grid"),
            Topology::Grid(Some(s)) => write!(f, "grid:{s}"),
            Topology::BusNnn {
                buses: None,
                bus_size,
            } => write!(f, "busnnn:{bus_size}"),
            Topology::BusNnn {
                buses: Some(b),
                bus_size,
            } => write!(f, "busnnn:{b}x{bus_size}"),
            Topology::HeavyHex { rows, cols } => write!(f, "heavyhex:{rows}x{cols}"),
            Topology::Sycamore(SycamoreSize::Qubits(q)) => write!(f, "sycamore:{q}"),
            Topology::Sycamore(SycamoreSize::Lattice { rows, cols }) => {
                write!(f, "sycamore:{rows}x{cols}")
            }
            Topology::Aspen { rows, cols } => write!(f, "aspen:{rows}x{cols}"),
            Topology::Layered => f.write_str("layered"),
            Topology::Complete(None) => f.write_str("complete"),
            Topology::Complete(Some(n)) => write!(f, "complete:{n}"),
        }
    }
}

impl FromStr for Topology {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (kind, arg) = match lower.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (lower.as_str(), None),
        };
        let bad = || TopologyError::Parameter(format!("cannot parse topology {s:?}"));
        let num = |a: &str| a.parse::<usize>().map_err(|_| bad());
        let dims = |a: &str| -> Result<(usize, usize), TopologyError> {
            let (x, y) = a.split_once('x').ok_or_else(bad)?;
            Ok((num(x)?, num(y)?))
        };
        Ok(match (kind, arg) {
            ("line", a) => Topology::Line(a.map(num).transpose()?),
            ("grid", a) => Topology::Grid(a.map(num).transpose()?),
            ("busnnn", None) => Topology::BusNnn {
                buses: None,
                bus_size: DEFAULT_BUS_SIZE,
            },
            ("busnnn", Some(a)) if a.contains('x') => {
                let (b, sz) = dims(a)?;
                Topology::BusNnn {
                    buses: Some(b),
                    bus_size: sz,
                }
            }
            ("busnnn", Some(a)) => Topology::BusNnn {
                buses: None,
                bus_size: num(a)?,
            },
            ("heavyhex" | "heavy-hex" | "eagle", None) => Topology::HeavyHex { rows: 6, cols: 3 },
            ("heavyhex" | "heavy-hex", Some(a)) => {
                let (rows, cols) = dims(a)?;
                Topology::HeavyHex { rows, cols }
            }
            ("sycamore", None) => Topology::Sycamore(SycamoreSize::Qubits(72)),
            ("sycamore", Some(a)) if a.contains('x') => {
                let (rows, cols) = dims(a)?;
                Topology::Sycamore(SycamoreSize::Lattice { rows, cols })
            }
            ("sycamore", Some(a)) => Topology::Sycamore(SycamoreSize::Qubits(num(a)?)),
            ("aspen", None) => Topology::Aspen { rows: 2, cols: 5 },
            ("aspen", Some(a)) => {
                let (rows, cols) = dims(a)?;
                Topology::Aspen { rows, cols }
            }
            ("layered", None) => Topology::Layered,
            ("complete", a) => Topology::Complete(a.map(num).transpose()?),
            _ => return Err(bad()),
        })
    }
}

impl TryFrom<String> for Topology {
    type Error = TopologyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Topology> for String {
    fn from(t: Topology) -> String {
        t.to_string()
    }
}
