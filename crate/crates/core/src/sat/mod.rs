// SPDX-License-Identifier: Apache-2.0

//! Exact mapping and routing through a SAT encoding.
//!
//! [`encode`] builds a formula that is satisfiable iff the circuit fits in a
//! given number of steps, [`decode`] turns a model back into a map and a
//! route, and [`solve_optimal`] searches for the smallest feasible horizon
//! with any [`SatBackend`].

mod card;
mod decode;
mod encode;

use alloc::string::String;
use alloc::vec::Vec;

pub use card::{encode_amo, encode_eo, CnfBuilder, PAIRWISE_LIMIT};
pub use decode::{decode, solution_literals, DecodeError, Model};
pub use encode::{encode, CnfInstance, EncodeOptions, TReach, UnsatReason, VarRecord, VarTable};

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::mapping::QubitMap;
use crate::routing::GateRoute;

/// Result of one solver call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Model),
    Unsat,
    /// The solver gave up, typically on a time limit.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("SAT backend failed: {0}")]
pub struct BackendError(pub String);

/// Anything that can decide a CNF instance.
pub trait SatBackend {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SatOutcome, BackendError>;
}

impl<B: SatBackend + ?Sized> SatBackend for &mut B {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SatOutcome, BackendError> {
        (**self).solve(cnf)
    }
}

impl<B: SatBackend + ?Sized> SatBackend for alloc::boxed::Box<B> {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SatOutcome, BackendError> {
        (**self).solve(cnf)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

/// One horizon tried by [`solve_optimal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub steps: usize,
    pub verdict: Verdict,
    pub num_vars: u32,
    pub num_clauses: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimalOptions {
    /// Largest horizon to try.
    pub t_max: usize,
    pub encode: EncodeOptions,
    /// After an inconclusive call, keep trying larger horizons. A solution
    /// found that way is not known to be minimal.
    pub keep_going: bool,
}

impl OptimalOptions {
    pub fn with_cap(t_max: usize) -> Self {
        Self { t_max, encode: EncodeOptions::default(), keep_going: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalSolution {
    pub map: QubitMap,
    pub route: GateRoute,
    /// Every smaller horizon down to the circuit depth was refuted.
    pub proven_optimal: bool,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OptimalError {
    #[error("step cap {t_max} is below the circuit depth {depth}")]
    CapBelowDepth { t_max: usize, depth: usize },
    #[error("infeasible: {0}")]
    Infeasible(UnsatReason),
    #[error("no solution within {t_max} steps")]
    CapExhausted { t_max: usize, probes: Vec<Probe> },
    #[error("solver gave up at {steps} steps")]
    Timeout { steps: usize, probes: Vec<Probe> },
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("decoding failed: {0}")]
    Decode(#[from] DecodeError),
}

/// Tries horizons from the circuit depth upwards and returns the first
/// satisfiable one, decoded. With `map`, only routing is optimized.
pub fn solve_optimal<B: SatBackend + ?Sized>(
    backend: &mut B,
    arch: &Architecture,
    circuit: &Circuit,
    map: Option<&QubitMap>,
    opts: &OptimalOptions,
) -> Result<OptimalSolution, OptimalError> {
    let depth = circuit.depth();
    if opts.t_max < depth {
        return Err(OptimalError::CapBelowDepth { t_max: opts.t_max, depth });
    }
    let mut probes = Vec::new();
    let mut gave_up_at = None;
    for t in depth..=opts.t_max {
        let cnf = encode(arch, circuit, map, t, &opts.encode);
        if let Some(reason @ (UnsatReason::TooManyQubits { .. } | UnsatReason::InvalidFixedMap)) = cnf.unsat_reason {
            return Err(OptimalError::Infeasible(reason));
        }
        let outcome = backend.solve(&cnf)?;
        let verdict = match outcome {
            SatOutcome::Sat(_) => Verdict::Sat,
            SatOutcome::Unsat => Verdict::Unsat,
            SatOutcome::Unknown => Verdict::Unknown,
        };
        probes.push(Probe { steps: t, verdict, num_vars: cnf.num_vars(), num_clauses: cnf.num_clauses() });
        match outcome {
            SatOutcome::Sat(model) => {
                let (map, route) = decode(&model, &cnf.table, circuit, arch)?;
                return Ok(OptimalSolution { map, route, proven_optimal: gave_up_at.is_none(), probes });
            }
            SatOutcome::Unsat => {}
            SatOutcome::Unknown => {
                gave_up_at.get_or_insert(t);
                if !opts.keep_going {
                    return Err(OptimalError::Timeout { steps: t, probes });
                }
            }
        }
    }
    match gave_up_at {
        Some(steps) => Err(OptimalError::Timeout { steps, probes }),
        None => Err(OptimalError::CapExhausted { t_max: opts.t_max, probes }),
    }
}
