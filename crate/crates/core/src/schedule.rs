//! Greedy list scheduling of lowered circuits.
//!
//! Gates are placed in list order, each at the earliest time its qubits are
//! free. A gate on a pair coupled only through a bus also waits for the bus,
//! which runs one two-qubit gate at a time.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::Circuit;
use crate::topology::{CouplingMap, Link};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("gate {index} ({gate}) is not in the lowered gateset")]
    NotLowered { index: usize, gate: String },
    #[error("gate {index} ({gate}) acts on an uncoupled pair")]
    Uncoupled { index: usize, gate: String },
    #[error("circuit needs {needed} qubits but the coupling map has {available}")]
    TooWide { needed: usize, available: usize },
    #[error("gate durations must be positive")]
    Durations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GateDurations {
    pub t_1q: u64,
    pub t_2q: u64,
}

impl Default for GateDurations {
    fn default() -> Self {
        Self { t_1q: 1, t_2q: 10 }
    }
}

impl GateDurations {
    pub fn validate(&self) -> Result<(), ScheduleError> {
        if self.t_1q == 0 || self.t_2q == 0 {
            return Err(ScheduleError::Durations);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleResult {
    pub start: Vec<u64>,
    pub end: Vec<u64>,
    /// Bus claimed by each gate, if any.
    pub bus: Vec<Option<usize>>,
    pub makespan: u64,
    pub two_q_count: usize,
    pub two_q_depth: usize,
}

pub fn schedule(
    c: &Circuit,
    m: &CouplingMap,
    d: GateDurations,
) -> Result<ScheduleResult, ScheduleError> {
    d.validate()?;
    if c.width() > m.n() {
        return Err(ScheduleError::TooWide {
            needed: c.width(),
            available: m.n(),
        });
    }
    let mut qubit_free = vec![0u64; c.width()];
    let mut bus_free = vec![0u64; m.buses().len()];
    let len = c.len();
    let (mut start, mut end, mut bus) = (
        Vec::with_capacity(len),
        Vec::with_capacity(len),
        Vec::with_capacity(len),
    );
    let mut makespan = 0;
    for (index, g) in c.gates().iter().enumerate() {
        if !g.is_lowered() {
            return Err(ScheduleError::NotLowered {
                index,
                gate: g.to_string(),
            });
        }
        let qubits = g.qubits();
        let mut t = qubits.iter().map(|q| qubit_free[q]).max().unwrap_or(0);
        let mut claimed = None;
        let dur = match g.pair() {
            Some((a, b)) => {
                match m.link(a, b) {
                    Some(Link::Edge) => {}
                    Some(Link::Bus(k)) => {
                        t = t.max(bus_free[k]);
                        claimed = Some(k);
                    }
                    None => {
                        return Err(ScheduleError::Uncoupled {
                            index,
                            gate: g.to_string(),
                        })
                    }
                }
                d.t_2q
            }
            None => d.t_1q,
        };
        let e = t + dur;
        for q in qubits.iter() {
            qubit_free[q] = e;
        }
        if let Some(k) = claimed {
            bus_free[k] = e;
        }
        makespan = makespan.max(e);
        start.push(t);
        end.push(e);
        bus.push(claimed);
    }
    Ok(ScheduleResult {
        start,
        end,
        bus,
        makespan,
        two_q_count: c.count_2q(),
        two_q_depth: c.depth_2q(),
    })
}

/// Makespan with one time unit per single-qubit gate and ten per CNOT.
pub fn scaled_time(c: &Circuit, m: &CouplingMap) -> Result<u64, ScheduleError> {
    Ok(schedule(c, m, GateDurations::default())?.makespan)
}

/// `gate_index start end resources` lines, resources as `q3,q4,bus1`.
pub fn dump(c: &Circuit, r: &ScheduleResult) -> String {
    let mut out = String::new();
    for (i, g) in c.gates().iter().enumerate() {
        let mut res: Vec<String> = g.qubits().iter().map(|q| format!("q{q}")).collect();
        if let Some(k) = r.bus[i] {
            res.push(format!("bus{k}"));
        }
        let _ = writeln!(out, "{i} {} {} {}", r.start[i], r.end[i], res.join(","));
    }
    out
}

/// Checks qubit and bus exclusivity, precedence and the makespan of `r`.
pub fn verify_schedule(c: &Circuit, r: &ScheduleResult) -> Result<(), String> {
    let dag = c.to_dag();
    for i in 0..c.len() {
        for &p in dag.predecessors(i) {
            if r.start[i] < r.end[p] {
                return Err(format!("gate {i} starts before predecessor {p} ends"));
            }
        }
    }
    let mut per_qubit: Vec<Vec<(u64, u64)>> = vec![Vec::new(); c.width()];
    let mut per_bus: Vec<Vec<(u64, u64)>> = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        for q in g.qubits().iter() {
            per_qubit[q].push((r.start[i], r.end[i]));
        }
        if let Some(k) = r.bus[i] {
            if per_bus.len() <= k {
                per_bus.resize(k + 1, Vec::new());
            }
            per_bus[k].push((r.start[i], r.end[i]));
        }
    }
    for (what, lists) in [("qubit", &mut per_qubit), ("bus", &mut per_bus)] {
        for (k, spans) in lists.iter_mut().enumerate() {
            spans.sort_unstable();
            if spans.windows(2).any(|w| w[1].0 < w[0].1) {
                return Err(format!("overlapping gates on {what} {k}"));
            }
        }
    }
    let max_end = r.end.iter().copied().max().unwrap_or(0);
    if max_end != r.makespan {
        return Err(format!(
            "makespan {} but last gate ends at {max_end}",
            r.makespan
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::graphgen::gen_sk;
    use crate::qaoa::{build_qaoa, lower, QaoaParams};
    use crate::topology::{build_busnnn, build_complete, build_line};

    #[test]
    fn single_cnot() {
        let c = Circuit::from_gates(2, [Gate::Cnot(0, 1)]).unwrap();
        assert_eq!(scaled_time(&c, &build_line(2)).unwrap(), 10);
        assert_eq!(scaled_time(&Circuit::new(2), &build_line(2)).unwrap(), 0);
    }

    #[test]
    fn lowered_h_then_cnot() {
        let c = lower(&Circuit::from_gates(2, [Gate::H(0), Gate::Cnot(0, 1)]).unwrap());
        assert_eq!(scaled_time(&c, &build_line(2)).unwrap(), 13);
    }

    #[test]
    fn k2_qaoa_hand_schedule() {
        // H (3) + CNOT (10) + RZ (1) + CNOT (10) + RX (1)
        let c = lower(&build_qaoa(&gen_sk(2).unwrap(), QaoaParams::default()));
        assert_eq!(scaled_time(&c, &build_complete(2)).unwrap(), 25);
    }

    #[test]
    fn bus_serializes() {
        let bus = build_busnnn(1, 4).unwrap();
        let c = Circuit::from_gates(4, [Gate::Cnot(0, 1), Gate::Cnot(2, 3)]).unwrap();
        let r = schedule(&c, &bus, GateDurations::default()).unwrap();
        assert_eq!(r.makespan, 20);
        verify_schedule(&c, &r).unwrap();
        assert_eq!(scaled_time(&c, &build_line(4)).unwrap(), 10);
        assert!(dump(&c, &r).contains("1 10 20 q2,q3,bus0"));
    }

    #[test]
    fn rejects_bad_input() {
        let c = Circuit::from_gates(3, [Gate::Cnot(0, 2)]).unwrap();
        assert!(matches!(
            scaled_time(&c, &build_line(3)),
            Err(ScheduleError::Uncoupled { .. })
        ));
        let c = Circuit::from_gates(2, [Gate::H(0)]).unwrap();
        assert!(matches!(
            scaled_time(&c, &build_line(2)),
            Err(ScheduleError::NotLowered { .. })
        ));
    }
}
