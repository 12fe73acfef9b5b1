mod common;

use archbench::schedule::{schedule, verify_schedule, GateDurations};
use archbench::topology::{build_busnnn, build_complete};
use archbench::{Circuit, Gate};
use proptest::prelude::*;

fn coupled_lowered(width: usize) -> impl Strategy<Value = Gate> {
    let pair = (0..width, 0..width).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        (0..width).prop_map(|q| Gate::Rz(0.1, q)),
        (0..width).prop_map(|q| Gate::Rx(0.2, q)),
        pair.prop_map(|(a, b)| Gate::Cnot(a, b)),
    ]
}

/// Weighted longest path through the DAG, computed directly.
fn critical_path(c: &Circuit, d: GateDurations) -> u64 {
    let dag = c.to_dag();
    let mut finish = vec![0u64; c.len()];
    for i in 0..c.len() {
        let w = if c.gates()[i].is_two_qubit() {
            d.t_2q
        } else {
            d.t_1q
        };
        let ready = dag
            .predecessors(i)
            .iter()
            .map(|&p| finish[p])
            .max()
            .unwrap_or(0);
        finish[i] = ready + w;
    }
    finish.into_iter().max().unwrap_or(0)
}

proptest! {
    #[test]
    fn complete_map_matches_critical_path(gates in prop::collection::vec(coupled_lowered(6), 0..60)) {
        let c = Circuit::from_gates(6, gates).unwrap();
        let d = GateDurations::default();
        let r = schedule(&c, &build_complete(6), d).unwrap();
        verify_schedule(&c, &r).unwrap();
        prop_assert_eq!(r.makespan, critical_path(&c, d));
        prop_assert!(r.makespan >= d.t_2q * r.two_q_depth as u64);
    }

    #[test]
    fn bus_makespan_dominates(gates in prop::collection::vec(coupled_lowered(4), 0..40)) {
        let c = Circuit::from_gates(4, gates).unwrap();
        let d = GateDurations::default();
        let bus = schedule(&c, &build_busnnn(1, 4).unwrap(), d).unwrap();
        let edge = schedule(&c, &build_complete(4), d).unwrap();
        verify_schedule(&c, &bus).unwrap();
        prop_assert!(bus.makespan >= edge.makespan);
        let busy = (0..4).map(|q| c.gates().iter().filter(|g| g.qubits().iter().any(|x| x == q))
            .map(|g| if g.is_two_qubit() { d.t_2q } else { d.t_1q }).sum::<u64>()).max().unwrap();
        prop_assert!(bus.makespan >= busy);
    }
}

#[test]
fn chains_schedule_to_longest_path() {
    let c = Circuit::from_gates(
        4,
        [
            Gate::Rz(0.1, 0),
            Gate::Cnot(0, 1),
            Gate::Rx(0.3, 1),
            Gate::Cnot(2, 3),
            Gate::Rz(0.2, 3),
        ],
    )
    .unwrap();
    let d = GateDurations { t_1q: 2, t_2q: 7 };
    let r = schedule(&c, &build_complete(4), d).unwrap();
    assert_eq!(r.makespan, 2 + 7 + 2);
    assert_eq!(r.makespan, critical_path(&c, d));
}
