//! Peephole cleanup over per-qubit adjacency.
//!
//! Rules, applied until nothing changes:
//!
//! * two identical adjacent CNOTs cancel;
//! * adjacent `RZ`/`RZ` or `RX`/`RX` on a qubit merge, and a merged angle of
//!   zero (mod 2π) drops the gate;
//! * a SWAP adjacent to a CNOT or ZZ on the same pair is expanded into CNOTs
//!   oriented so that one CNOT of the SWAP cancels;
//! * two adjacent SWAPs on the same pair cancel.
//!
//! Two gates are adjacent when nothing touches any of their qubits in between.
//! Every rule strictly lowers the CNOT count after lowering, or keeps it and
//! lowers the gate count.

use std::f64::consts::{PI, TAU};

use crate::circuit::{Circuit, Gate};

const ANGLE_EPS: f64 = 1e-12;

/// Wraps an angle into `(-π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

fn is_zero_angle(theta: f64) -> bool {
    normalize_angle(theta).abs() < ANGLE_EPS
}

struct Stack {
    gates: Vec<Option<Gate>>,
    per_qubit: Vec<Vec<usize>>,
}

impl Stack {
    fn new(width: usize) -> Self {
        Self {
            gates: Vec::new(),
            per_qubit: vec![Vec::new(); width],
        }
    }

    fn top(&self, q: usize) -> Option<usize> {
        self.per_qubit[q].last().copied()
    }

    /// Index of the last gate if it is the last one on both `a` and `b`.
    fn shared_top(&self, a: usize, b: usize) -> Option<(usize, Gate)> {
        let i = self.top(a)?;
        if self.top(b) != Some(i) {
            return None;
        }
        self.gates[i].map(|g| (i, g))
    }

    fn pop(&mut self, i: usize) {
        let g = self.gates[i].take().expect("popped gate is live");
        for q in g.qubits().iter() {
            let top = self.per_qubit[q].pop();
            debug_assert_eq!(top, Some(i));
        }
    }

    fn push_raw(&mut self, g: Gate) {
        let i = self.gates.len();
        for q in g.qubits().iter() {
            self.per_qubit[q].push(i);
        }
        self.gates.push(Some(g));
    }

    fn merge_rotation(&mut self, g: Gate, q: usize, theta: f64) {
        if let Some(i) = self.top(q) {
            let merged = match (self.gates[i], g) {
                (Some(Gate::Rz(a, _)), Gate::Rz(..)) => {
                    Some(Gate::Rz(normalize_angle(a + theta), q))
                }
                (Some(Gate::Rx(a, _)), Gate::Rx(..)) => {
                    Some(Gate::Rx(normalize_angle(a + theta), q))
                }
                _ => None,
            };
            if let Some(m) = merged {
                self.pop(i);
                let angle = match m {
                    Gate::Rz(t, _) | Gate::Rx(t, _) => t,
                    _ => unreachable!(),
                };
                if !is_zero_angle(angle) {
                    self.push_raw(m);
                }
                return;
            }
        }
        if !is_zero_angle(theta) {
            self.push_raw(g);
        }
    }

    fn add(&mut self, g: Gate) {
        match g {
            Gate::Rz(theta, q) | Gate::Rx(theta, q) => self.merge_rotation(g, q, theta),
            Gate::Cnot(c, t) => match self.shared_top(c, t) {
                Some((i, prev)) if prev == g => self.pop(i),
                Some((i, Gate::Swap(..))) => {
                    // SWAP · CX(c,t) = CX(c,t) CX(t,c)
                    self.pop(i);
                    self.add(Gate::Cnot(c, t));
                    self.add(Gate::Cnot(t, c));
                }
                _ => self.push_raw(g),
            },
            Gate::Swap(a, b) => match self.shared_top(a, b) {
                Some((i, Gate::Swap(..))) => self.pop(i),
                Some((i, Gate::Cnot(c, t))) => {
                    // CX(c,t) · SWAP = CX(t,c) CX(c,t)
                    self.pop(i);
                    self.add(Gate::Cnot(t, c));
                    self.add(Gate::Cnot(c, t));
                }
                Some((i, Gate::Zz(theta, x, y))) => {
                    // ZZ · SWAP = CX(x,y) RZ(y) CX(y,x) CX(x,y)
                    self.pop(i);
                    for h in [
                        Gate::Cnot(x, y),
                        Gate::Rz(theta, y),
                        Gate::Cnot(y, x),
                        Gate::Cnot(x, y),
                    ] {
                        self.add(h);
                    }
                }
                _ => self.push_raw(g),
            },
            Gate::Zz(theta, x, y) => match self.shared_top(x, y) {
                Some((i, Gate::Swap(..))) => {
                    // SWAP · ZZ = CX(x,y) CX(y,x) RZ(y) CX(x,y)
                    self.pop(i);
                    for h in [
                        Gate::Cnot(x, y),
                        Gate::Cnot(y, x),
                        Gate::Rz(theta, y),
                        Gate::Cnot(x, y),
                    ] {
                        self.add(h);
                    }
                }
                _ => self.push_raw(g),
            },
            Gate::H(_) => self.push_raw(g),
        }
    }

    fn into_gates(self) -> Vec<Gate> {
        self.gates.into_iter().flatten().collect()
    }
}

fn single_pass(c: &Circuit) -> Vec<Gate> {
    let mut s = Stack::new(c.width());
    for &g in c.gates() {
        s.add(g);
    }
    s.into_gates()
}

/// Applies the rewrite rules to a fixed point.
pub fn peephole(c: &Circuit) -> Circuit {
    let mut cur = c.clone();
    loop {
        let next = single_pass(&cur);
        if next.as_slice() == cur.gates() {
            return cur;
        }
        cur = Circuit::from_gates(c.width(), next).expect("rewrites keep operands valid");
    }
}
