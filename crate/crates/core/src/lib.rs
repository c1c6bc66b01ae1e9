//! Supervisory control of discrete-event systems.
//!
//! The crate models plants and specifications as deterministic finite
//! generators, synthesizes the supremal controllable nonblocking supervisor,
//! flattens hierarchical statecharts into plain automata, and drives the
//! closed loop in a deterministic simulator. The `elevator` module generates
//! the multi-car elevator case study used as the end-to-end demonstration.

pub mod elevator;
pub mod fsa;
pub mod simulator;
pub mod statechart;
pub mod synthesis;
