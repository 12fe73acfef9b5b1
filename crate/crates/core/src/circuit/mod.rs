//! Gate-level IR.
//!
//! Circuits exist at two levels. *Abstract* circuits may contain `H`, `SWAP`
//! and `ZZ(θ)` and are what the routers work on; *lowered* circuits contain
//! only `CNOT`, `RX` and `RZ` and are what metrics and scheduling see.

mod dag;
mod text;

pub use dag::DepDag;
pub use text::{parse, serialize};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("gate {gate} touches qubit {qubit} but the circuit has {width} qubits")]
    QubitOutOfRange {
        gate: String,
        qubit: usize,
        width: usize,
    },
    #[error("two-qubit gate {0} needs distinct operands")]
    RepeatedOperand(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    Rx(f64, usize),
    Rz(f64, usize),
    /// Control first, target second.
    Cnot(usize, usize),
    Swap(usize, usize),
    /// `exp(-i θ/2 Z⊗Z)`, which lowers to `CNOT · RZ(θ) · CNOT`.
    Zz(f64, usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> GateQubits {
        match *self {
            Gate::H(q) | Gate::Rx(_, q) | Gate::Rz(_, q) => GateQubits::One(q),
            Gate::Cnot(a, b) | Gate::Swap(a, b) | Gate::Zz(_, a, b) => GateQubits::Two(a, b),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.qubits(), GateQubits::Two(..))
    }

    /// Unordered operand pair of a two-qubit gate.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.qubits() {
            GateQubits::Two(a, b) => Some((a.min(b), a.max(b))),
            GateQubits::One(_) => None,
        }
    }

    /// Whether the gate belongs to the lowered gateset.
    pub fn is_lowered(&self) -> bool {
        matches!(self, Gate::Cnot(..) | Gate::Rx(..) | Gate::Rz(..))
    }

    /// Number of CNOTs this gate costs once lowered.
    pub fn lowered_cnot_cost(&self) -> usize {
        match self {
            Gate::Cnot(..) => 1,
            Gate::Zz(..) => 2,
            Gate::Swap(..) => 3,
            _ => 0,
        }
    }

    /// Relabels every operand through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::Rx(t, q) => Gate::Rx(t, f(q)),
            Gate::Rz(t, q) => Gate::Rz(t, f(q)),
            Gate::Cnot(a, b) => Gate::Cnot(f(a), f(b)),
            Gate::Swap(a, b) => Gate::Swap(f(a), f(b)),
            Gate::Zz(t, a, b) => Gate::Zz(t, f(a), f(b)),
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::Rx(..) => "rx",
            Gate::Rz(..) => "rz",
            Gate::Cnot(..) => "cnot",
            Gate::Swap(..) => "swap",
            Gate::Zz(..) => "zz",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.mnemonic();
        match *self {
            Gate::H(q) => write!(f, "{m} {q}"),
            Gate::Rx(t, q) | Gate::Rz(t, q) => write!(f, "{m} {t} {q}"),
            Gate::Cnot(a, b) | Gate::Swap(a, b) => write!(f, "{m} {a} {b}"),
            Gate::Zz(t, a, b) => write!(f, "{m} {t} {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateQubits {
    One(usize),
    Two(usize, usize),
}

impl GateQubits {
    pub fn iter(&self) -> QubitIter {
        match *self {
            GateQubits::One(q) => QubitIter {
                buf: [q, 0],
                len: 1,
                pos: 0,
            },
            GateQubits::Two(a, b) => QubitIter {
                buf: [a, b],
                len: 2,
                pos: 0,
            },
        }
    }
}

impl IntoIterator for GateQubits {
    type Item = usize;
    type IntoIter = QubitIter;

    fn into_iter(self) -> QubitIter {
        self.iter()
    }
}

pub struct QubitIter {
    buf: [usize; 2],
    len: usize,
    pos: usize,
}

impl Iterator for QubitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.pos < self.len {
            self.pos += 1;
            Some(self.buf[self.pos - 1])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Abstract,
    Lowered,
}

/// Ordered gate list over `width` qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(
        width: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self, CircuitError> {
        let mut c = Self::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// Appends a gate after validating its operands.
    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let GateQubits::Two(a, b) = gate.qubits() {
            if a == b {
                return Err(CircuitError::RepeatedOperand(gate.to_string()));
            }
        }
        for q in gate.qubits() {
            if q >= self.width {
                return Err(CircuitError::QubitOutOfRange {
                    gate: gate.to_string(),
                    qubit: q,
                    width: self.width,
                });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn level(&self) -> Level {
        if self.gates.iter().all(Gate::is_lowered) {
            Level::Lowered
        } else {
            Level::Abstract
        }
    }

    /// Two-qubit operations as they appear (a SWAP or ZZ counts once).
    pub fn count_2q(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// CNOT count after lowering: SWAP costs 3, ZZ costs 2.
    pub fn count_2q_lowered(&self) -> usize {
        self.gates.iter().map(Gate::lowered_cnot_cost).sum()
    }

    pub fn to_dag(&self) -> DepDag {
        DepDag::from_circuit(self)
    }

    /// Longest chain of two-qubit gates through the dependency DAG.
    pub fn depth_2q(&self) -> usize {
        self.to_dag()
            .longest_path(|i| usize::from(self.gates[i].is_two_qubit()))
    }

    /// Same circuit with the gate order reversed.
    pub fn reversed(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }
}
