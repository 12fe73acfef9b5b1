mod common;

use archbench::circuit::{parse, serialize};
use archbench::qaoa::lower;
use archbench::{Circuit, Gate, Level};
use common::{circuit_strategy, equivalent_up_to_phase, simulate};
use proptest::prelude::*;

proptest! {
    #[test]
    fn text_round_trip(c in circuit_strategy(6, 40)) {
        let text = serialize(&c);
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn dag_edges_point_forward_and_share_a_qubit(c in circuit_strategy(6, 40)) {
        let dag = c.to_dag();
        prop_assert_eq!(dag.len(), c.len());
        for (u, v) in dag.edges() {
            prop_assert!(u < v);
            let gu: Vec<usize> = c.gates()[u].qubits().iter().collect();
            prop_assert!(c.gates()[v].qubits().iter().any(|q| gu.contains(&q)));
        }
        prop_assert!(c.depth_2q() <= c.count_2q());
        prop_assert_eq!(c.reversed().depth_2q(), c.depth_2q());
    }

    #[test]
    fn every_gate_waits_for_each_qubit_predecessor(c in circuit_strategy(5, 30)) {
        let dag = c.to_dag();
        let mut last: Vec<Option<usize>> = vec![None; c.width()];
        for (i, g) in c.gates().iter().enumerate() {
            for q in g.qubits().iter() {
                if let Some(p) = last[q] {
                    prop_assert!(dag.predecessors(i).contains(&p));
                }
                last[q] = Some(i);
            }
        }
    }

    #[test]
    fn lowering_preserves_state(c in circuit_strategy(5, 25)) {
        let low = lower(&c);
        prop_assert_eq!(low.level(), Level::Lowered);
        prop_assert_eq!(low.count_2q(), c.count_2q_lowered());
        prop_assert!(equivalent_up_to_phase(&c, &low, 1e-9));
    }
}

#[test]
fn simulator_sanity() {
    let bell = Circuit::from_gates(2, [Gate::H(0), Gate::Cnot(0, 1)]).unwrap();
    let s = simulate(&bell);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s[0].re - h).abs() < 1e-12 && (s[3].re - h).abs() < 1e-12);
    assert!(s[1].norm() < 1e-12 && s[2].norm() < 1e-12);
    let swapped = Circuit::from_gates(2, [Gate::Rx(1.0, 0), Gate::Swap(0, 1)]).unwrap();
    let direct = Circuit::from_gates(2, [Gate::Rx(1.0, 1)]).unwrap();
    assert!(equivalent_up_to_phase(&swapped, &direct, 1e-12));
}

#[test]
fn parse_rejects_garbage() {
    assert!(parse("qubits 2\ncnot 0 0\n").is_err());
    assert!(parse("qubits 2\nrz nan 0\n").is_err());
    assert!(parse("qubits 2\nfoo 1\n").is_err());
    assert!(parse("qubits 2\ncnot 0 5\n").is_err());
}
