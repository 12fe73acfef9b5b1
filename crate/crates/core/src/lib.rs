//! Benchmarking toolkit for routing 2-local Hamiltonian circuits onto
//! superconducting coupling maps.
//!
//! The pipeline mirrors a small compiler:
//!
//! ```text
//! graphgen ──► qaoa ──► routing::{shuffle, sabre} ──► optimize ──► lower ──► schedule
//!                              ▲
//!                           topology
//! ```
//!
//! * [`graphgen`] draws seeded problem graphs (ER, regular, WS, BA, SK).
//! * [`qaoa`] turns a graph into a p=1 QAOA circuit and lowers it to CNOT/RX/RZ.
//! * [`topology`] builds line, grid, heavy-hex, Sycamore, Aspen, layered and
//!   bus-based coupling maps.
//! * [`routing`] holds the deterministic full-shuffle swap strategies and a
//!   SABRE-style lookahead router.
//! * [`optimize`] is the peephole cleanup pass.
//! * [`schedule`] computes scheduled time with qubit and bus resource limits.
//! * [`bench`] runs seeded experiments and writes CSV.

pub mod bench;
pub mod circuit;
pub mod graphgen;
pub mod optimize;
pub mod qaoa;
pub mod rng;
pub mod routing;
pub mod schedule;
pub mod topology;

pub use circuit::{Circuit, CircuitError, DepDag, Gate, Level};
pub use graphgen::{GraphError, GraphFamily, ProblemGraph};
pub use qaoa::QaoaParams;
pub use routing::{Mapping, RoutedCircuit, RoutingError};
pub use schedule::{GateDurations, ScheduleResult};
pub use topology::{CouplingMap, Topology, TopologyError};
