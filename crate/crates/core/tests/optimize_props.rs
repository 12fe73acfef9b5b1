mod common;

use archbench::optimize::peephole;
use archbench::qaoa::lower;
use archbench::{Circuit, Gate};
use common::{
    circuit_strategy, dense_circuit_strategy, equivalent_up_to_phase, lowered_circuit_strategy,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn lowered_input_is_monotone_and_idempotent(c in lowered_circuit_strategy(5, 40)) {
        let p = peephole(&c);
        prop_assert!(p.count_2q() <= c.count_2q());
        prop_assert!(p.len() <= c.len());
        prop_assert_eq!(peephole(&p), p.clone());
        prop_assert!(equivalent_up_to_phase(&c, &p, 1e-9));
    }

    #[test]
    fn abstract_input_never_costs_more_cnots(c in circuit_strategy(5, 30)) {
        let p = peephole(&c);
        prop_assert!(p.count_2q_lowered() <= c.count_2q_lowered());
        prop_assert!(lower(&p).len() <= lower(&c).len());
        prop_assert_eq!(peephole(&p), p.clone());
        prop_assert!(equivalent_up_to_phase(&c, &p, 1e-9));
    }

    #[test]
    fn dense_patterns(c in dense_circuit_strategy(30)) {
        let p = peephole(&c);
        prop_assert!(p.count_2q_lowered() <= c.count_2q_lowered());
        prop_assert_eq!(peephole(&p), p.clone());
        prop_assert!(equivalent_up_to_phase(&c, &p, 1e-9));
        let lp = peephole(&lower(&p));
        prop_assert!(equivalent_up_to_phase(&c, &lp, 1e-9));
    }
}

#[test]
fn swap_cnot_merge_both_sides() {
    for gates in [
        vec![Gate::Swap(0, 1), Gate::Cnot(0, 1)],
        vec![Gate::Cnot(1, 0), Gate::Swap(0, 1)],
    ] {
        let c = Circuit::from_gates(2, gates).unwrap();
        let p = peephole(&c);
        assert_eq!(lower(&p).count_2q(), 2);
        assert!(equivalent_up_to_phase(&c, &p, 1e-12));
    }
}
