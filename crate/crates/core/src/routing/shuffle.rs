//! Full-shuffle swap strategies and the commutation-aware router built on them.
//!
//! A [`SwapStrategy`] is a periodic sequence of swap layers on a fixed coupling
//! map. Applying layers from the identity placement eventually brings every
//! pair of logical qubits onto a coupled pair of physical qubits ("full
//! connectivity"). [`route_shuffle`] walks that sequence and, at every
//! configuration, emits all not-yet-applied ZZ terms whose operands happen to be
//! coupled. Because the ZZ terms of a QAOA layer commute, the order they are
//! emitted in is free.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate};
use crate::topology::{build_busnnn, build_grid, build_line, CouplingMap, Shape};

use super::{Mapping, RoutedCircuit, RoutingError};

/// Disjoint physical pairs swapped simultaneously.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwapLayer(pub Vec<(usize, usize)>);

impl SwapLayer {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwapStrategy {
    map: CouplingMap,
    period: Vec<SwapLayer>,
    horizon: usize,
}

impl SwapStrategy {
    /// Validates that every layer is internally disjoint and uses coupled pairs.
    /// `horizon` caps how many layers routing and simulation may apply.
    pub fn new(
        map: CouplingMap,
        period: Vec<SwapLayer>,
        horizon: usize,
    ) -> Result<Self, RoutingError> {
        for (layer, l) in period.iter().enumerate() {
            let mut used = vec![false; map.n()];
            for &(a, b) in l.pairs() {
                if a >= map.n() || b >= map.n() || !map.coupled(a, b) {
                    return Err(RoutingError::InvalidStrategy {
                        layer,
                        msg: format!("pair ({a}, {b}) is not coupled"),
                    });
                }
                for q in [a, b] {
                    if std::mem::replace(&mut used[q], true) {
                        return Err(RoutingError::InvalidStrategy {
                            layer,
                            msg: format!("qubit {q} swapped twice"),
                        });
                    }
                }
            }
        }
        Ok(Self {
            map,
            period,
            horizon,
        })
    }

    pub fn map(&self) -> &CouplingMap {
        &self.map
    }

    /// One cycle of layers; layer `k` of the strategy is `period[k % len]`.
    pub fn period(&self) -> &[SwapLayer] {
        &self.period
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn layer(&self, k: usize) -> Option<&SwapLayer> {
        if self.period.is_empty() {
            None
        } else {
            Some(&self.period[k % self.period.len()])
        }
    }

    /// First `count` layers as numbered text lines, e.g. `3: 0-1 2-3`.
    pub fn dump(&self, count: usize) -> String {
        let mut out = String::new();
        for k in 0..count {
            let Some(layer) = self.layer(k) else { break };
            let _ = write!(out, "{k}:");
            for &(a, b) in layer.pairs() {
                let _ = write!(out, " {a}-{b}");
            }
            out.push('\n');
        }
        out
    }
}

fn non_empty(layers: Vec<Vec<(usize, usize)>>) -> Vec<SwapLayer> {
    layers
        .into_iter()
        .filter(|l| !l.is_empty())
        .map(SwapLayer)
        .collect()
}

/// Odd-even transposition on a line: edges `(i, i+1)` with `i` even, then `i` odd.
pub fn strategy_line(n: usize) -> SwapStrategy {
    let even = (0..n.saturating_sub(1))
        .step_by(2)
        .map(|i| (i, i + 1))
        .collect();
    let odd = (1..n.saturating_sub(1))
        .step_by(2)
        .map(|i| (i, i + 1))
        .collect();
    let horizon = 4 * n.saturating_sub(2).max(1);
    SwapStrategy::new(build_line(n), non_empty(vec![even, odd]), horizon)
        .expect("line strategy is valid")
}

/// Macro-rounds the grid strategy is guaranteed to need at most,
/// `⌈(N − 2)(N + 1) / 2⌉`.
pub fn grid_round_bound(side: usize) -> usize {
    (side.saturating_sub(2) * (side + 1)).div_ceil(2)
}

/// Grid strategy on an `N×N` grid.
///
/// One macro-round is `N − 1` row layers followed by two column layers. The row
/// layers alternate between two phases; in each phase even rows swap their
/// even-indexed horizontal edges while odd rows swap their odd-indexed ones (and
/// the reverse in the other phase), so neighbouring rows drift past each other.
/// The column layers swap rows `(r, r+1)` for even `r`, then for odd `r`.
pub fn strategy_grid(side: usize) -> SwapStrategy {
    let mut row_phase = [Vec::new(), Vec::new()];
    for r in 0..side {
        for c in 0..side.saturating_sub(1) {
            let q = r * side + c;
            row_phase[(c + r) % 2].push((q, q + 1));
        }
    }
    let mut col_phase = [Vec::new(), Vec::new()];
    for c in 0..side {
        for r in 0..side.saturating_sub(1) {
            let q = r * side + c;
            col_phase[r % 2].push((q, q + side));
        }
    }
    let mut round = Vec::new();
    for k in 0..side.saturating_sub(1) {
        round.push(row_phase[k % 2].clone());
    }
    round.extend(col_phase);
    let period = non_empty(round);
    let horizon = 4 * grid_round_bound(side).max(1) * period.len().max(1);
    SwapStrategy::new(build_grid(side), period, horizon).expect("grid strategy is valid")
}

/// Layers the busNNN strategy needs, `(4B − 5)·⌈B/(B+1)⌉`.
pub fn busnnn_layer_bound(buses: usize) -> usize {
    if buses <= 1 {
        0
    } else {
        4 * buses - 5
    }
}

/// busNNN strategy: alternate all inter-bus couplers with half-column swaps
/// inside every bus except the last one.
pub fn strategy_busnnn(buses: usize, bus_size: usize) -> Result<SwapStrategy, RoutingError> {
    let map = build_busnnn(buses, bus_size)?;
    let half = bus_size / 2;
    let inter = map.edges().to_vec();
    let within = (0..buses.saturating_sub(1))
        .flat_map(|k| (0..half).map(move |j| (k * bus_size + j, k * bus_size + half + j)))
        .collect();
    let horizon = 4 * busnnn_layer_bound(buses).max(1);
    SwapStrategy::new(map, non_empty(vec![inter, within]), horizon)
}

/// Strategy matching the map's shape, if one is defined.
pub fn strategy_for(map: &CouplingMap) -> Result<SwapStrategy, RoutingError> {
    match map.shape() {
        Shape::Line { n } => Ok(strategy_line(n)),
        Shape::Grid { side } => Ok(strategy_grid(side)),
        Shape::BusNnn { buses, bus_size } => strategy_busnnn(buses, bus_size),
        Shape::Complete { .. } => SwapStrategy::new(map.clone(), Vec::new(), 0),
        other => Err(RoutingError::NoStrategy(format!("{other:?}"))),
    }
}

/// Simulates the strategy from the identity placement and returns how many
/// layers it takes until every logical pair has been coupled at least once.
pub fn full_connectivity_layers(s: &SwapStrategy) -> Result<usize, RoutingError> {
    let n = s.map().n();
    let pairs = s.map().coupled_pairs();
    let mut met = vec![false; n * n];
    let mut remaining = n * n.saturating_sub(1) / 2;
    let mut mapping = Mapping::identity(n);
    let mut record = |mapping: &Mapping, remaining: &mut usize| {
        for &(a, b) in &pairs {
            let (x, y) = (mapping.logical(a), mapping.logical(b));
            let idx = x.min(y) * n + x.max(y);
            if !met[idx] {
                met[idx] = true;
                *remaining -= 1;
            }
        }
    };
    record(&mapping, &mut remaining);
    let mut layers = 0;
    while remaining > 0 {
        if layers >= s.horizon() {
            return Err(RoutingError::HorizonExceeded { remaining, layers });
        }
        let layer = s
            .layer(layers)
            .ok_or(RoutingError::HorizonExceeded { remaining, layers })?;
        for &(a, b) in layer.pairs() {
            mapping.swap_physical(a, b);
        }
        layers += 1;
        record(&mapping, &mut remaining);
    }
    Ok(layers)
}

/// Total swaps in the first `layers` layers of the strategy.
pub fn swaps_in_layers(s: &SwapStrategy, layers: usize) -> usize {
    (0..layers)
        .filter_map(|k| s.layer(k))
        .map(SwapLayer::len)
        .sum()
}

/// Closed-form swap total of the line strategy, `(n − 1)(n − 2) / 2`.
pub fn l_swap(n: usize) -> usize {
    n.saturating_sub(1) * n.saturating_sub(2) / 2
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Closed-form grid swap count, with `s = ⌈√qubits⌉`:
///
/// * `s` odd: `s(s+1)⌈s/2⌉⌈(2s−3)/4⌉`
/// * `s` even: `(s/2·(s+1)² + 2s⌈(2s−3)/4⌉)⌈s/2⌉`
///
/// Pass `N²` to evaluate it for an `N×N` grid.
pub fn g_swap(qubits: usize) -> usize {
    let s = crate::topology::ceil_sqrt(qubits) as i64;
    let tail = ceil_div(2 * s - 3, 4).max(0);
    let half = ceil_div(s, 2);
    let v = if s % 2 == 1 {
        s * (s + 1) * half * tail
    } else {
        (s / 2 * (s + 1) * (s + 1) + 2 * s * tail) * half
    };
    v as usize
}

/// Closed-form busNNN swap total for `n` qubits on buses of `bus_size`.
pub fn b_swap(n: usize, bus_size: usize) -> usize {
    let cols = (bus_size / 2) * n.saturating_sub(bus_size).div_ceil(bus_size);
    cols * cols.saturating_sub(1)
}

struct Term {
    a: usize,
    b: usize,
    theta: f64,
}

type QaoaParts = (Vec<Gate>, Vec<Term>, Vec<Gate>);

/// Splits a QAOA-form circuit into (leading 1q gates, ZZ terms, trailing 1q gates).
fn split_qaoa(c: &Circuit) -> Result<QaoaParts, RoutingError> {
    let gates = c.gates();
    let first = gates.iter().position(Gate::is_two_qubit);
    let Some(first) = first else {
        return Ok((gates.to_vec(), Vec::new(), Vec::new()));
    };
    let last = gates
        .iter()
        .rposition(Gate::is_two_qubit)
        .expect("has a 2q gate");
    let mut terms = Vec::new();
    for (i, g) in gates[first..=last].iter().enumerate() {
        match *g {
            Gate::Zz(theta, a, b) => terms.push(Term { a, b, theta }),
            other => {
                return Err(RoutingError::NotQaoaForm(format!(
                    "gate {} ({other}) inside the ZZ block",
                    first + i
                )))
            }
        }
    }
    Ok((gates[..first].to_vec(), terms, gates[last + 1..].to_vec()))
}

/// Routes a QAOA-form circuit (1q prefix, commuting ZZ block, 1q suffix) with a
/// swap strategy, starting from the identity placement.
///
/// At each configuration every pending ZZ whose operands are coupled is emitted.
/// Emission is grouped into qubit-disjoint sub-layers, picking terms whose
/// operands have the most pending work first, which keeps ZZ depth low. The
/// next swap layer is then applied, except for swaps between two qubits that
/// have no pending terms; skipping those leaves every other qubit's trajectory
/// unchanged. Routing stops as soon as the last term is emitted.
pub fn route_shuffle(c: &Circuit, s: &SwapStrategy) -> Result<RoutedCircuit, RoutingError> {
    let map = s.map();
    if c.width() > map.n() {
        return Err(RoutingError::TooWide {
            needed: c.width(),
            available: map.n(),
        });
    }
    let n = map.n();
    let (prefix, terms, suffix) = split_qaoa(c)?;
    let mut pending_per_qubit = vec![0usize; n];
    for t in &terms {
        pending_per_qubit[t.a] += 1;
        pending_per_qubit[t.b] += 1;
    }
    let mut mapping = Mapping::identity(n);
    let mut out = Circuit::new(n);
    for g in &prefix {
        out.push(g.map_qubits(|q| mapping.phys(q)))?;
    }
    let mut pending: Vec<usize> = (0..terms.len()).collect();
    let mut step = 0;
    loop {
        let (mut ready, rest): (Vec<usize>, Vec<usize>) = pending
            .iter()
            .partition(|&&i| map.coupled(mapping.phys(terms[i].a), mapping.phys(terms[i].b)));
        pending = rest;
        while !ready.is_empty() {
            ready.sort_by_key(|&i| {
                std::cmp::Reverse(pending_per_qubit[terms[i].a] + pending_per_qubit[terms[i].b])
            });
            let mut busy = vec![false; n];
            let mut deferred = Vec::new();
            let mut chosen = Vec::new();
            for i in ready {
                let t = &terms[i];
                if busy[t.a] || busy[t.b] {
                    deferred.push(i);
                } else {
                    busy[t.a] = true;
                    busy[t.b] = true;
                    chosen.push(i);
                }
            }
            for i in chosen {
                let t = &terms[i];
                out.push(Gate::Zz(t.theta, mapping.phys(t.a), mapping.phys(t.b)))?;
                pending_per_qubit[t.a] -= 1;
                pending_per_qubit[t.b] -= 1;
            }
            ready = deferred;
        }
        if pending.is_empty() {
            break;
        }
        if step >= s.horizon() {
            return Err(RoutingError::HorizonExceeded {
                remaining: pending.len(),
                layers: step,
            });
        }
        let layer = s.layer(step).ok_or(RoutingError::HorizonExceeded {
            remaining: pending.len(),
            layers: step,
        })?;
        for &(p, q) in layer.pairs() {
            if pending_per_qubit[mapping.logical(p)] == 0
                && pending_per_qubit[mapping.logical(q)] == 0
            {
                continue;
            }
            out.push(Gate::Swap(p, q))?;
            mapping.swap_physical(p, q);
        }
        step += 1;
    }
    for g in &suffix {
        out.push(g.map_qubits(|q| mapping.phys(q)))?;
    }
    Ok(RoutedCircuit {
        circuit: out,
        initial: Mapping::identity(n),
        final_mapping: mapping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{gen_er, gen_sk};
    use crate::qaoa::{build_qaoa, QaoaParams};
    use crate::routing::verify_routing;
    use crate::topology::{build_busnnn, build_complete};

    #[test]
    fn line_layers() {
        let s = strategy_line(4);
        assert_eq!(s.period()[0].pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(s.period()[1].pairs(), &[(1, 2)]);
        assert_eq!(full_connectivity_layers(&s).unwrap(), 2);
        let s6 = strategy_line(6);
        assert_eq!(full_connectivity_layers(&s6).unwrap(), 4);
        assert_eq!(swaps_in_layers(&s6, 4), 10);
        assert_eq!(full_connectivity_layers(&strategy_line(2)).unwrap(), 0);
    }

    #[test]
    fn busnnn_layers() {
        assert_eq!(
            full_connectivity_layers(&strategy_busnnn(1, 8).unwrap()).unwrap(),
            0
        );
        let s = strategy_busnnn(2, 8).unwrap();
        assert_eq!(full_connectivity_layers(&s).unwrap(), 3);
        assert_eq!(swaps_in_layers(&s, 3), 12);
        assert_eq!(
            full_connectivity_layers(&strategy_busnnn(3, 8).unwrap()).unwrap(),
            7
        );
    }

    #[test]
    fn grid_small() {
        let s2 = strategy_grid(2);
        assert_eq!(full_connectivity_layers(&s2).unwrap(), 1);
        let s3 = strategy_grid(3);
        let layers = full_connectivity_layers(&s3).unwrap();
        assert!(layers.div_ceil(s3.period().len()) <= grid_round_bound(3));
    }

    #[test]
    fn complete_map_needs_no_layers() {
        let s = strategy_for(&build_complete(5)).unwrap();
        assert_eq!(full_connectivity_layers(&s).unwrap(), 0);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(l_swap(6), 10);
        assert_eq!(l_swap(2), 0);
        assert_eq!(b_swap(16, 8), 12);
        assert_eq!(b_swap(8, 8), 0);
        assert_eq!(g_swap(9), 24);
        assert_eq!(g_swap(16), 132);
    }

    #[test]
    fn invalid_layers_rejected() {
        let map = build_line(3);
        let bad = SwapStrategy::new(map.clone(), vec![SwapLayer(vec![(0, 2)])], 4);
        assert!(matches!(
            bad,
            Err(RoutingError::InvalidStrategy { layer: 0, .. })
        ));
        let overlap = SwapStrategy::new(map, vec![SwapLayer(vec![(0, 1), (1, 2)])], 4);
        assert!(matches!(overlap, Err(RoutingError::InvalidStrategy { .. })));
    }

    #[test]
    fn sk6_on_line() {
        let c = build_qaoa(&gen_sk(6).unwrap(), QaoaParams::default());
        let s = strategy_line(6);
        let r = route_shuffle(&c, &s).unwrap();
        verify_routing(&c, &r, s.map()).unwrap();
        assert!(r.swap_count() <= 10);
        assert_eq!(r.circuit.count_2q() - r.swap_count(), 15);
    }

    #[test]
    fn single_bus_needs_no_swaps() {
        let g = gen_er(8, 14, 3).unwrap();
        let c = build_qaoa(&g, QaoaParams::default());
        let s = strategy_busnnn(1, 8).unwrap();
        let r = route_shuffle(&c, &s).unwrap();
        assert_eq!(r.swap_count(), 0);
        let _ = build_busnnn(1, 8).unwrap();
    }

    #[test]
    fn rejects_non_qaoa_block() {
        let c =
            Circuit::from_gates(3, [Gate::Zz(0.1, 0, 1), Gate::H(2), Gate::Zz(0.1, 1, 2)]).unwrap();
        assert!(matches!(
            route_shuffle(&c, &strategy_line(3)),
            Err(RoutingError::NotQaoaForm(_))
        ));
    }

    #[test]
    fn dump_format() {
        let text = strategy_line(4).dump(3);
        assert_eq!(text, "0: 0-1 2-3\n1: 1-2\n2: 0-1 2-3\n");
    }
}
