// SPDX-License-Identifier: Apache-2.0

//! Mapping and routing of CNOT+T circuits onto surface-code grid architectures.
//!
//! A circuit is a sequence of CNOT and T gates. An [`Architecture`] is a grid of
//! logical-qubit patches, some of which are reserved for magic states. Compiling
//! a circuit means choosing a [`QubitMap`] (which patch holds which circuit
//! qubit) and a [`GateRoute`] that assigns every gate a time step and an ancilla
//! path, such that paths in the same step are vertex-disjoint and lattice
//! surgery orientation rules hold: a CNOT path leaves its control through a
//! vertical neighbor and enters its target through a horizontal neighbor, and a
//! T path does the same towards a magic-state patch.
//!
//! Two families of solvers are provided:
//!
//! * [`sat`]: an exact encoding into CNF, plus the incremental search for the
//!   minimal number of steps. The SAT solver itself is pluggable through
//!   [`sat::SatBackend`].
//! * [`mapping`] + [`routing`]: random and structural placement, followed by
//!   layer-by-layer greedy routing built on shortest-first disjoint paths.
//!
//! [`bench`] holds instance generators, including circuits with a known optimum
//! and the gadget constructions used by hardness reductions.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, SAT backends and
//! the command line live in the companion `scmr` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arch;
pub mod bench;
pub mod circuit;
pub mod mapping;
pub mod routing;
pub mod sat;
pub mod validate;

pub use arch::{Architecture, Vertex};
pub use circuit::{Circuit, Gate, GateKind, QubitId};
pub use mapping::QubitMap;
pub use routing::{GateRoute, Path};
pub use validate::{validate, Violation, ViolationKind};
