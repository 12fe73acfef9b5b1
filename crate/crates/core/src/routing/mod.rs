//! Qubit routing: shared mapping type, soundness checks, and the two routers.

pub mod sabre;
pub mod shuffle;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate};
use crate::topology::{CouplingMap, TopologyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RoutingError {
    #[error("circuit needs {needed} qubits but the coupling map has {available}")]
    TooWide { needed: usize, available: usize },
    #[error("circuit is not in QAOA form: {0}")]
    NotQaoaForm(String),
    #[error("swap layer {layer}: {msg}")]
    InvalidStrategy { layer: usize, msg: String },
    #[error("no swap strategy for {0}")]
    NoStrategy(String),
    #[error("{remaining} interactions left after {layers} swap layers")]
    HorizonExceeded { remaining: usize, layers: usize },
    #[error("routing made no progress after {swaps} swaps")]
    NoProgress { swaps: usize },
    #[error("invalid router parameters: {0}")]
    Parameter(String),
    #[error("gate {index} ({gate}) acts on uncoupled physical pair")]
    Uncoupled { index: usize, gate: String },
    #[error("interaction ledger mismatch: {0}")]
    LedgerMismatch(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Bijection between logical and physical qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    log_to_phys: Vec<usize>,
    phys_to_log: Vec<usize>,
}

impl Mapping {
    pub fn identity(n: usize) -> Self {
        Self {
            log_to_phys: (0..n).collect(),
            phys_to_log: (0..n).collect(),
        }
    }

    /// Builds a mapping from `log_to_phys`; `None` if it is not a permutation.
    pub fn from_log_to_phys(log_to_phys: Vec<usize>) -> Option<Self> {
        let n = log_to_phys.len();
        let mut phys_to_log = vec![usize::MAX; n];
        for (l, &p) in log_to_phys.iter().enumerate() {
            if p >= n || phys_to_log[p] != usize::MAX {
                return None;
            }
            phys_to_log[p] = l;
        }
        Some(Self {
            log_to_phys,
            phys_to_log,
        })
    }

    pub fn len(&self) -> usize {
        self.log_to_phys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_to_phys.is_empty()
    }

    pub fn phys(&self, logical: usize) -> usize {
        self.log_to_phys[logical]
    }

    pub fn logical(&self, physical: usize) -> usize {
        self.phys_to_log[physical]
    }

    pub fn log_to_phys(&self) -> &[usize] {
        &self.log_to_phys
    }

    /// Exchanges the logical occupants of two physical qubits.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.phys_to_log[a], self.phys_to_log[b]);
        self.phys_to_log.swap(a, b);
        self.log_to_phys[la] = b;
        self.log_to_phys[lb] = a;
    }
}

/// Output of a router: a physical circuit plus the mappings it starts and ends in.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    pub initial: Mapping,
    pub final_mapping: Mapping,
}

impl RoutedCircuit {
    pub fn swap_count(&self) -> usize {
        self.circuit
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Swap(..)))
            .count()
    }
}

/// One interaction: logical pair (sorted) and the angle bits, so entries can be
/// compared exactly and sorted.
pub type LedgerEntry = (usize, usize, u64);

/// Multiset of ZZ interactions of an unrouted circuit, sorted.
pub fn logical_ledger(c: &Circuit) -> Vec<LedgerEntry> {
    let mut out: Vec<LedgerEntry> = c
        .gates()
        .iter()
        .filter_map(|g| match *g {
            Gate::Zz(t, a, b) => Some((a.min(b), a.max(b), t.to_bits())),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out
}

/// Replays SWAPs from `initial` and records each ZZ in logical labels.
/// CNOTs are rejected because they do not carry interaction identity.
pub fn routed_ledger(c: &Circuit, initial: &Mapping) -> Result<Vec<LedgerEntry>, RoutingError> {
    let mut mapping = initial.clone();
    let mut out = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        match *g {
            Gate::Swap(a, b) => mapping.swap_physical(a, b),
            Gate::Zz(t, a, b) => {
                let (x, y) = (mapping.logical(a), mapping.logical(b));
                out.push((x.min(y), x.max(y), t.to_bits()));
            }
            Gate::Cnot(..) => {
                return Err(RoutingError::LedgerMismatch(format!(
                    "gate {i} is a CNOT; ledger replay needs the abstract circuit"
                )))
            }
            _ => {}
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every two-qubit gate acts on a coupled pair of `map`.
pub fn check_coupled(c: &Circuit, map: &CouplingMap) -> Result<(), RoutingError> {
    for (index, g) in c.gates().iter().enumerate() {
        if let Some((a, b)) = g.pair() {
            if !map.coupled(a, b) {
                return Err(RoutingError::Uncoupled {
                    index,
                    gate: g.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Full soundness check of a routed circuit against the logical input: coupling,
/// ZZ ledger, and final mapping consistent with the SWAPs.
pub fn verify_routing(
    logical: &Circuit,
    routed: &RoutedCircuit,
    map: &CouplingMap,
) -> Result<(), RoutingError> {
    check_coupled(&routed.circuit, map)?;
    let want = logical_ledger(logical);
    let got = routed_ledger(&routed.circuit, &routed.initial)?;
    if want != got {
        return Err(RoutingError::LedgerMismatch(format!(
            "expected {} interactions, routed circuit has {}",
            want.len(),
            got.len()
        )));
    }
    let mut m = routed.initial.clone();
    for g in routed.circuit.gates() {
        if let Gate::Swap(a, b) = *g {
            m.swap_physical(a, b);
        }
    }
    if m != routed.final_mapping {
        return Err(RoutingError::LedgerMismatch(
            "final mapping disagrees with SWAP replay".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_swaps() {
        let mut m = Mapping::identity(3);
        m.swap_physical(0, 2);
        assert_eq!(m.phys(0), 2);
        assert_eq!(m.logical(0), 2);
        assert_eq!(m.log_to_phys(), &[2, 1, 0]);
        assert!(Mapping::from_log_to_phys(vec![0, 0]).is_none());
        assert_eq!(Mapping::from_log_to_phys(vec![2, 1, 0]).unwrap(), m);
    }

    #[test]
    fn ledger_follows_swaps() {
        let c = Circuit::from_gates(3, [Gate::Swap(0, 1), Gate::Zz(0.5, 1, 2)]).unwrap();
        let ledger = routed_ledger(&c, &Mapping::identity(3)).unwrap();
        assert_eq!(ledger, vec![(0, 2, 0.5f64.to_bits())]);
    }
}
