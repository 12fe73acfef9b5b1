//! Dense statevector simulator used as a semantic oracle, plus shared
//! generators for property tests.
#![allow(dead_code)]

use archbench::{Circuit, Gate, Mapping};
use num_complex::Complex64;
use proptest::prelude::*;

pub type State = Vec<Complex64>;

pub fn zero_state(width: usize) -> State {
    let mut s = vec![Complex64::new(0.0, 0.0); 1 << width];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

fn apply_1q(s: &mut State, q: usize, m: [[Complex64; 2]; 2]) {
    let bit = 1 << q;
    for i in 0..s.len() {
        if i & bit == 0 {
            let (a, b) = (s[i], s[i | bit]);
            s[i] = m[0][0] * a + m[0][1] * b;
            s[i | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

pub fn apply(s: &mut State, g: &Gate) {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match *g {
        Gate::H(q) => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            apply_1q(s, q, [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]);
        }
        Gate::Rx(t, q) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            apply_1q(s, q, [[c(co, 0.0), c(0.0, -si)], [c(0.0, -si), c(co, 0.0)]]);
        }
        Gate::Rz(t, q) => {
            apply_1q(
                s,
                q,
                [
                    [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
                    [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
                ],
            );
        }
        Gate::Cnot(ctl, tgt) => {
            let (cb, tb) = (1 << ctl, 1 << tgt);
            for i in 0..s.len() {
                if i & cb != 0 && i & tb == 0 {
                    s.swap(i, i | tb);
                }
            }
        }
        Gate::Swap(a, b) => {
            let (ab, bb) = (1 << a, 1 << b);
            for i in 0..s.len() {
                if i & ab != 0 && i & bb == 0 {
                    s.swap(i, (i & !ab) | bb);
                }
            }
        }
        Gate::Zz(t, a, b) => {
            for (i, amp) in s.iter_mut().enumerate() {
                let parity = ((i >> a) ^ (i >> b)) & 1;
                let phase = if parity == 0 { -t / 2.0 } else { t / 2.0 };
                *amp *= Complex64::from_polar(1.0, phase);
            }
        }
    }
}

pub fn simulate(c: &Circuit) -> State {
    let mut s = zero_state(c.width());
    for g in c.gates() {
        apply(&mut s, g);
    }
    s
}

/// Largest deviation between `a` and `b` after removing a global phase.
pub fn phase_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let k = (0..a.len())
        .max_by(|&i, &j| a[i].norm().total_cmp(&a[j].norm()))
        .expect("non-empty state");
    let phase = if b[k].norm() > 1e-12 {
        a[k] / b[k]
    } else {
        Complex64::new(1.0, 0.0)
    };
    let phase = phase / phase.norm();
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

/// Reorders a physical state into logical order using `final_mapping`, for
/// the first `width` logical qubits. Physical qubits holding logical indices
/// at or above `width` must be in |0>.
pub fn to_logical(phys: &[Complex64], final_mapping: &Mapping, width: usize) -> State {
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << width];
    for (x, amp) in out.iter_mut().enumerate() {
        let mut y = 0usize;
        for l in 0..width {
            if (x >> l) & 1 == 1 {
                y |= 1 << final_mapping.phys(l);
            }
        }
        *amp = phys[y];
    }
    out
}

pub fn equivalent_up_to_phase(a: &Circuit, b: &Circuit, tol: f64) -> bool {
    phase_distance(&simulate(a), &simulate(b)) <= tol
}

pub fn gate_strategy(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    let pair = (0..width, 0..width).prop_filter("distinct", |(a, b)| a != b);
    let angle = -7.0f64..7.0;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        (angle.clone(), q.clone()).prop_map(|(t, q)| Gate::Rx(t, q)),
        (angle.clone(), q.clone()).prop_map(|(t, q)| Gate::Rz(t, q)),
        pair.clone().prop_map(|(a, b)| Gate::Cnot(a, b)),
        pair.clone().prop_map(|(a, b)| Gate::Swap(a, b)),
        (angle, pair).prop_map(|(t, (a, b))| Gate::Zz(t, a, b)),
    ]
}

pub fn lowered_gate_strategy(width: usize) -> impl Strategy<Value = Gate> {
    let pair = (0..width, 0..width).prop_filter("distinct", |(a, b)| a != b);
    let angle = prop_oneof![
        -7.0f64..7.0,
        Just(std::f64::consts::PI),
        Just(-std::f64::consts::FRAC_PI_2)
    ];
    prop_oneof![
        (angle.clone(), 0..width).prop_map(|(t, q)| Gate::Rx(t, q)),
        (angle, 0..width).prop_map(|(t, q)| Gate::Rz(t, q)),
        pair.prop_map(|(a, b)| Gate::Cnot(a, b)),
    ]
}

pub fn circuit_strategy(max_width: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_width).prop_flat_map(move |w| {
        prop::collection::vec(gate_strategy(w), 0..max_len)
            .prop_map(move |gs| Circuit::from_gates(w, gs).expect("generated gates are valid"))
    })
}

/// Circuits built from a small alphabet on few qubits, so that cancellable
/// neighbours are common.
pub fn dense_circuit_strategy(max_len: usize) -> impl Strategy<Value = Circuit> {
    (2..=3usize).prop_flat_map(move |w| {
        let g = prop_oneof![
            (0..w, 0..w)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(a, b)| Gate::Cnot(a, b)),
            (0..w, 0..w)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(a, b)| Gate::Swap(a, b)),
            (0..w, 0..w)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(a, b)| Gate::Zz(0.9, a, b)),
            (0..w).prop_map(|q| Gate::Rz(0.5, q)),
            (0..w).prop_map(|q| Gate::Rz(-0.5, q)),
            (0..w).prop_map(|q| Gate::Rx(std::f64::consts::PI, q)),
        ];
        prop::collection::vec(g, 0..max_len).prop_map(move |gs| Circuit::from_gates(w, gs).unwrap())
    })
}

pub fn lowered_circuit_strategy(
    max_width: usize,
    max_len: usize,
) -> impl Strategy<Value = Circuit> {
    (2..=max_width).prop_flat_map(move |w| {
        prop::collection::vec(lowered_gate_strategy(w), 0..max_len)
            .prop_map(move |gs| Circuit::from_gates(w, gs).unwrap())
    })
}
