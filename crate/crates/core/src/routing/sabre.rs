//! SABRE-style swap insertion over the gate dependency DAG.
//!
//! The router keeps a front layer of gates whose predecessors have all run.
//! Front gates on coupled pairs are emitted; when none are, it inserts the SWAP
//! adjacent to a front operand that minimizes
//! `max(decay) · (Σ_front d + W/|E| · Σ_extended d)`, where the extended set is
//! the next `lookahead_size` two-qubit gates past the front. Ties are broken
//! by the seeded RNG. If a long run of SWAPs executes nothing, the closest
//! front gate is forced along a shortest path.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::rng::{seeded, SeededRng};
use crate::topology::{CouplingMap, DistanceMatrix};

use super::{Mapping, RoutedCircuit, RoutingError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RouterParams {
    pub lookahead_size: usize,
    pub lookahead_weight: f64,
    pub decay_increment: f64,
    pub decay_reset_interval: usize,
    pub seed: u64,
}

impl Default for RouterParams {
    fn default() -> Self {
        Self {
            lookahead_size: 20,
            lookahead_weight: 0.5,
            decay_increment: 0.001,
            decay_reset_interval: 5,
            seed: 0,
        }
    }
}

impl RouterParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), RoutingError> {
        if self.lookahead_size == 0 {
            return Err(RoutingError::Parameter(
                "lookahead_size must be positive".into(),
            ));
        }
        if !(self.lookahead_weight > 0.0 && self.lookahead_weight <= 1.0) {
            return Err(RoutingError::Parameter(format!(
                "lookahead_weight {} outside (0, 1]",
                self.lookahead_weight
            )));
        }
        if !(self.decay_increment > 0.0 && self.decay_increment.is_finite()) {
            return Err(RoutingError::Parameter(format!(
                "decay_increment {} must be positive",
                self.decay_increment
            )));
        }
        if self.decay_reset_interval == 0 {
            return Err(RoutingError::Parameter(
                "decay_reset_interval must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn check_width(c: &Circuit, m: &CouplingMap) -> Result<(), RoutingError> {
    if c.width() > m.n() {
        return Err(RoutingError::TooWide {
            needed: c.width(),
            available: m.n(),
        });
    }
    Ok(())
}

/// One forward pass from the identity placement and one pass over the reversed
/// circuit; the placement left by the reverse pass is returned.
pub fn initial_mapping(
    c: &Circuit,
    m: &CouplingMap,
    p: &RouterParams,
) -> Result<Mapping, RoutingError> {
    p.validate()?;
    check_width(c, m)?;
    let mut rng = seeded(p.seed);
    initial_mapping_with(c, m, p, &mut rng)
}

fn initial_mapping_with(
    c: &Circuit,
    m: &CouplingMap,
    p: &RouterParams,
    rng: &mut SeededRng,
) -> Result<Mapping, RoutingError> {
    let dist = m.distances();
    let forward = Pass::new(c, m, &dist, p).run(Mapping::identity(m.n()), rng)?;
    let backward = Pass::new(&c.reversed(), m, &dist, p).run(forward.final_mapping, rng)?;
    Ok(backward.final_mapping)
}

/// Initial placement by [`initial_mapping`], then a final routing pass.
pub fn route_sabre(
    c: &Circuit,
    m: &CouplingMap,
    p: &RouterParams,
) -> Result<RoutedCircuit, RoutingError> {
    p.validate()?;
    check_width(c, m)?;
    let mut rng = seeded(p.seed);
    let start = initial_mapping_with(c, m, p, &mut rng)?;
    let dist = m.distances();
    Pass::new(c, m, &dist, p).run(start, &mut rng)
}

/// A single routing pass from an explicit placement.
pub fn route_from(
    c: &Circuit,
    m: &CouplingMap,
    p: &RouterParams,
    start: Mapping,
) -> Result<RoutedCircuit, RoutingError> {
    p.validate()?;
    check_width(c, m)?;
    if start.len() != m.n() {
        return Err(RoutingError::Parameter(format!(
            "mapping has {} qubits, map has {}",
            start.len(),
            m.n()
        )));
    }
    let mut rng = seeded(p.seed);
    let dist = m.distances();
    Pass::new(c, m, &dist, p).run(start, &mut rng)
}

struct Pass<'a> {
    gates: &'a [Gate],
    map: &'a CouplingMap,
    dist: &'a DistanceMatrix,
    params: &'a RouterParams,
    succs: Vec<Vec<usize>>,
    pending: Vec<usize>,
}

impl<'a> Pass<'a> {
    fn new(
        c: &'a Circuit,
        map: &'a CouplingMap,
        dist: &'a DistanceMatrix,
        params: &'a RouterParams,
    ) -> Self {
        let dag = c.to_dag();
        let succs = (0..dag.len()).map(|i| dag.successors(i).to_vec()).collect();
        let pending = (0..dag.len()).map(|i| dag.predecessors(i).len()).collect();
        Self {
            gates: c.gates(),
            map,
            dist,
            params,
            succs,
            pending,
        }
    }

    fn d(&self, a: usize, b: usize) -> f64 {
        match self.dist.get(a, b) {
            DistanceMatrix::UNREACHABLE => f64::INFINITY,
            x => f64::from(x),
        }
    }

    fn run(mut self, start: Mapping, rng: &mut SeededRng) -> Result<RoutedCircuit, RoutingError> {
        let n = self.map.n();
        let mut mapping = start.clone();
        let mut out = Vec::with_capacity(self.gates.len());
        let mut front: Vec<usize> = (0..self.gates.len())
            .filter(|&i| self.pending[i] == 0)
            .collect();
        let mut decay = vec![1.0f64; n];
        let mut steps = 0usize;
        let mut stalled = 0usize;
        let hard_limit = (n * n).max(1);
        let valve = (10 * n).min(hard_limit / 2).max(1);

        loop {
            if self.execute_ready(&mut front, &mapping, &mut out) {
                decay.fill(1.0);
                steps = 0;
                stalled = 0;
            }
            if front.is_empty() {
                break;
            }
            if stalled >= hard_limit {
                return Err(RoutingError::NoProgress { swaps: stalled });
            }
            if stalled >= valve {
                stalled += self.force_closest(&front, &mut mapping, &mut out)?;
                continue;
            }
            let (a, b) = self.choose_swap(&front, &mapping, &decay, rng);
            out.push(Gate::Swap(a, b));
            mapping.swap_physical(a, b);
            decay[a] += self.params.decay_increment;
            decay[b] += self.params.decay_increment;
            stalled += 1;
            steps += 1;
            if steps.is_multiple_of(self.params.decay_reset_interval) {
                decay.fill(1.0);
            }
        }

        let circuit = Circuit::from_gates(n, out)?;
        Ok(RoutedCircuit {
            circuit,
            initial: start,
            final_mapping: mapping,
        })
    }

    /// Emits front gates until none is executable; true if anything ran.
    fn execute_ready(
        &mut self,
        front: &mut Vec<usize>,
        mapping: &Mapping,
        out: &mut Vec<Gate>,
    ) -> bool {
        let mut any = false;
        loop {
            let mut progressed = false;
            let mut next = Vec::with_capacity(front.len());
            for &g in front.iter() {
                let gate = self.gates[g];
                let ready = match gate.pair() {
                    Some((a, b)) => self.map.coupled(mapping.phys(a), mapping.phys(b)),
                    None => true,
                };
                if ready {
                    out.push(gate.map_qubits(|q| mapping.phys(q)));
                    progressed = true;
                    for &s in &self.succs[g] {
                        self.pending[s] -= 1;
                        if self.pending[s] == 0 {
                            next.push(s);
                        }
                    }
                } else {
                    next.push(g);
                }
            }
            next.sort_unstable();
            *front = next;
            if !progressed {
                return any;
            }
            any = true;
        }
    }

    fn extended_set(&self, front: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.gates.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in front {
            seen[g] = true;
            queue.push_back(g);
        }
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            for &s in &self.succs[g] {
                if seen[s] {
                    continue;
                }
                seen[s] = true;
                if self.gates[s].is_two_qubit() {
                    out.push(s);
                    if out.len() >= self.params.lookahead_size {
                        return out;
                    }
                }
                queue.push_back(s);
            }
        }
        out
    }

    fn choose_swap(
        &self,
        front: &[usize],
        mapping: &Mapping,
        decay: &[f64],
        rng: &mut SeededRng,
    ) -> (usize, usize) {
        let mut candidates = BTreeSet::new();
        for &g in front {
            if let Some((a, b)) = self.gates[g].pair() {
                for p in [mapping.phys(a), mapping.phys(b)] {
                    for &r in self.map.neighbors(p) {
                        candidates.insert((p.min(r), p.max(r)));
                    }
                }
            }
        }
        let extended = self.extended_set(front);
        let pairs_of = |set: &[usize]| -> Vec<(usize, usize)> {
            set.iter()
                .filter_map(|&g| self.gates[g].pair())
                .map(|(a, b)| (mapping.phys(a), mapping.phys(b)))
                .collect()
        };
        let front_pairs = pairs_of(front);
        let ext_pairs = pairs_of(&extended);
        let w = if ext_pairs.is_empty() {
            0.0
        } else {
            self.params.lookahead_weight / ext_pairs.len() as f64
        };

        let mut best = f64::INFINITY;
        let mut ties: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in &candidates {
            let moved = |q: usize| {
                if q == x {
                    y
                } else if q == y {
                    x
                } else {
                    q
                }
            };
            let sum = |pairs: &[(usize, usize)]| {
                pairs
                    .iter()
                    .map(|&(a, b)| self.d(moved(a), moved(b)))
                    .sum::<f64>()
            };
            let score = decay[x].max(decay[y]) * (sum(&front_pairs) + w * sum(&ext_pairs));
            let tol = if best.is_finite() {
                1e-10 * best.abs().max(1.0)
            } else {
                0.0
            };
            if score < best - tol {
                best = score;
                ties.clear();
                ties.push((x, y));
            } else if (score - best).abs() <= tol {
                ties.push((x, y));
            }
        }
        if ties.is_empty() {
            return *candidates
                .iter()
                .next()
                .expect("front gate has a coupled neighbour");
        }
        ties[rng.gen_range(0..ties.len())]
    }

    /// Walks the operands of the closest front gate together along a shortest
    /// path and returns the number of SWAPs inserted.
    fn force_closest(
        &self,
        front: &[usize],
        mapping: &mut Mapping,
        out: &mut Vec<Gate>,
    ) -> Result<usize, RoutingError> {
        let target = front
            .iter()
            .filter_map(|&g| self.gates[g].pair())
            .map(|(a, b)| (mapping.phys(a), mapping.phys(b)))
            .min_by_key(|&(a, b)| self.dist.get(a, b))
            .expect("stalled front holds a two-qubit gate");
        let path = self
            .shortest_path(target.0, target.1)
            .ok_or(RoutingError::NoProgress { swaps: 0 })?;
        let mut inserted = 0;
        for w in path.windows(2).take(path.len().saturating_sub(2)) {
            out.push(Gate::Swap(w[0], w[1]));
            mapping.swap_physical(w[0], w[1]);
            inserted += 1;
        }
        Ok(inserted)
    }

    fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.map.n();
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in self.map.neighbors(u) {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::graphgen::gen_sk;
    use crate::qaoa::{build_qaoa, QaoaParams};
    use crate::routing::verify_routing;
    use crate::topology::{build_complete, build_line};

    fn min_swaps_brute(map: &CouplingMap, a: usize, b: usize) -> usize {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let start = Mapping::identity(map.n());
        seen.insert(start.log_to_phys().to_vec(), 0);
        let mut queue = VecDeque::from([(start, 0)]);
        while let Some((m, k)) = queue.pop_front() {
            if map.coupled(m.phys(a), m.phys(b)) {
                return k;
            }
            for &(x, y) in map.edges() {
                let mut next = m.clone();
                next.swap_physical(x, y);
                if !seen.contains_key(next.log_to_phys()) {
                    seen.insert(next.log_to_phys().to_vec(), k + 1);
                    queue.push_back((next, k + 1));
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn defaults_validate() {
        assert!(RouterParams::default().validate().is_ok());
        let bad = RouterParams {
            lookahead_weight: 1.5,
            ..RouterParams::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn cnot_across_line_needs_two_swaps() {
        let map = build_line(4);
        let c = Circuit::from_gates(4, [Gate::Cnot(0, 3)]).unwrap();
        let r = route_from(&c, &map, &RouterParams::default(), Mapping::identity(4)).unwrap();
        assert_eq!(min_swaps_brute(&map, 0, 3), 2);
        assert_eq!(r.swap_count(), 2);
        let last = *r.circuit.gates().last().unwrap();
        assert!(map.coupled(last.pair().unwrap().0, last.pair().unwrap().1));
    }

    #[test]
    fn initial_mapping_places_operands_adjacent() {
        let map = build_line(6);
        let c = Circuit::from_gates(6, [Gate::Cnot(0, 5)]).unwrap();
        let p = RouterParams::default();
        let m = initial_mapping(&c, &map, &p).unwrap();
        assert!(map.coupled(m.phys(0), m.phys(5)));
        assert_eq!(m, initial_mapping(&c, &map, &p).unwrap());
        let none = Circuit::from_gates(6, [Gate::H(0)]).unwrap();
        assert_eq!(
            initial_mapping(&none, &map, &p).unwrap(),
            Mapping::identity(6)
        );
    }

    #[test]
    fn complete_map_is_untouched() {
        let c = build_qaoa(&gen_sk(5).unwrap(), QaoaParams::default());
        let map = build_complete(5);
        let r = route_sabre(&c, &map, &RouterParams::default()).unwrap();
        assert_eq!(r.swap_count(), 0);
        assert_eq!(r.circuit.count_2q(), c.count_2q());
    }

    #[test]
    fn sk_on_line_is_sound_and_deterministic() {
        let c = build_qaoa(&gen_sk(8).unwrap(), QaoaParams::default());
        let map = build_line(8);
        let p = RouterParams::with_seed(3);
        let r = route_sabre(&c, &map, &p).unwrap();
        verify_routing(&c, &r, &map).unwrap();
        assert_eq!(r, route_sabre(&c, &map, &p).unwrap());
    }

    #[test]
    fn disconnected_map_fails() {
        let map = CouplingMap::new(
            4,
            [(0, 1), (2, 3)],
            Vec::new(),
            crate::topology::Shape::Custom,
        )
        .unwrap();
        let c = Circuit::from_gates(4, [Gate::Cnot(0, 3)]).unwrap();
        let err = route_from(&c, &map, &RouterParams::default(), Mapping::identity(4)).unwrap_err();
        assert!(matches!(err, RoutingError::NoProgress { .. }));
    }
}
