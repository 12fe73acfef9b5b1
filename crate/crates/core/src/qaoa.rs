//! p=1 QAOA max-cut circuits and lowering to the CNOT/RX/RZ gateset.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::graphgen::ProblemGraph;

/// Default cost angle used by the benchmarks.
pub const DEFAULT_GAMMA: f64 = 0.4;
/// Default mixer angle used by the benchmarks.
pub const DEFAULT_BETA: f64 = 0.7;

/// Angles of a single QAOA layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    pub gamma: f64,
    pub beta: f64,
}

impl QaoaParams {
    pub fn new(gamma: f64, beta: f64) -> Self {
        Self { gamma, beta }
    }

    /// Layer count; only single-layer circuits are built.
    pub fn p(&self) -> usize {
        1
    }
}

impl Default for QaoaParams {
    fn default() -> Self {
        Self::new(DEFAULT_GAMMA, DEFAULT_BETA)
    }
}

/// `H` on every qubit, one `ZZ(2γ)` per edge in sorted edge order, then
/// `RX(2β)` on every qubit.
pub fn build_qaoa(g: &ProblemGraph, params: QaoaParams) -> Circuit {
    let zz = g
        .edges()
        .iter()
        .map(|&(a, b)| Gate::Zz(2.0 * params.gamma, a, b));
    build_layered(g.n(), zz, params.beta)
}

/// QAOA-form circuit over an explicit ZZ sequence, keeping its order.
pub fn build_layered(width: usize, zz: impl IntoIterator<Item = Gate>, beta: f64) -> Circuit {
    let mut c = Circuit::new(width);
    for q in 0..width {
        c.push(Gate::H(q)).expect("qubit in range");
    }
    for g in zz {
        c.push(g).expect("ZZ operands validated by caller");
    }
    for q in 0..width {
        c.push(Gate::Rx(2.0 * beta, q)).expect("qubit in range");
    }
    c
}

/// Appends the lowered form of `gate` to `out`.
pub fn lower_gate(gate: &Gate, out: &mut Vec<Gate>) {
    match *gate {
        Gate::Zz(theta, a, b) => {
            out.extend([Gate::Cnot(a, b), Gate::Rz(theta, b), Gate::Cnot(a, b)]);
        }
        Gate::Swap(a, b) => {
            out.extend([Gate::Cnot(a, b), Gate::Cnot(b, a), Gate::Cnot(a, b)]);
        }
        Gate::H(q) => {
            out.extend([
                Gate::Rz(FRAC_PI_2, q),
                Gate::Rx(FRAC_PI_2, q),
                Gate::Rz(FRAC_PI_2, q),
            ]);
        }
        g => out.push(g),
    }
}

/// Rewrites every `ZZ`, `SWAP` and `H` into CNOT/RX/RZ.
pub fn lower(c: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(c.len() * 2);
    for g in c.gates() {
        lower_gate(g, &mut gates);
    }
    Circuit::from_gates(c.width(), gates).expect("lowering preserves operands")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Level;
    use crate::graphgen::gen_sk;

    #[test]
    fn single_edge_layout() {
        let g = gen_sk(2).unwrap();
        let p = QaoaParams::new(0.3, 0.2);
        let c = build_qaoa(&g, p);
        assert_eq!(
            c.gates(),
            &[
                Gate::H(0),
                Gate::H(1),
                Gate::Zz(0.6, 0, 1),
                Gate::Rx(0.4, 0),
                Gate::Rx(0.4, 1)
            ]
        );
        assert_eq!(c.count_2q(), 1);
    }

    #[test]
    fn k5_has_ten_terms_and_twenty_cnots() {
        let c = build_qaoa(&gen_sk(5).unwrap(), QaoaParams::default());
        assert_eq!(c.count_2q(), 10);
        let low = lower(&c);
        assert_eq!(low.level(), Level::Lowered);
        assert_eq!(low.count_2q(), 20);
    }

    #[test]
    fn lowering_shapes() {
        let zz = Circuit::from_gates(2, [Gate::Zz(0.5, 0, 1)]).unwrap();
        let l = lower(&zz);
        assert_eq!(
            l.gates(),
            &[Gate::Cnot(0, 1), Gate::Rz(0.5, 1), Gate::Cnot(0, 1)]
        );
        let sw = Circuit::from_gates(2, [Gate::Swap(0, 1)]).unwrap();
        assert_eq!(lower(&sw).count_2q(), 3);
        let h = Circuit::from_gates(1, [Gate::H(0)]).unwrap();
        assert_eq!(lower(&h).len(), 3);
    }
}
