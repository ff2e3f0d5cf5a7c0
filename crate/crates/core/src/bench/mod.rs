// SPDX-License-Identifier: Apache-2.0

//! Benchmark and reduction instance generators.

mod ndp;
mod psp;

use alloc::format;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, QubitId};

pub use ndp::{ndp_to_scr, NdpInstance, GADGET_SIZE};
pub use psp::{cycle_circuit, dependency_circuit, job_gadget, psp_to_scmr, psp_horizon, JobPoset, PspInstance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("job dependencies contain a cycle")]
    CyclicJobs,
    #[error("job {0} out of range")]
    UnknownJob(usize),
    #[error("vertex ({0},{1}) appears in more than one pair")]
    RepeatedVertex(u32, u32),
    #[error("vertex ({0},{1}) lies outside the grid")]
    VertexOutOfRange(u32, u32),
}

/// A layered circuit whose optimal step count equals its depth `d`.
///
/// The `2k` qubits are split at random into ordered lists `Left` and `Right`
/// of length `k`. Every layer applies `CNOT Left[i] Right[i]` to `ceil(rho*k)`
/// of the pairs. When some pairs are dropped, pair 0 is always kept so that
/// the depth stays `d`.
pub fn known_optimal(d: usize, k: usize, rho: f64, seed: u64) -> Result<Circuit, BenchError> {
    if d == 0 || k == 0 {
        return Err(BenchError::InvalidParameter("d and k must be positive"));
    }
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(BenchError::InvalidParameter("rho must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::with_qubits(2 * k);
    let mut order: Vec<u32> = (0..2 * k as u32).collect();
    order.shuffle(&mut rng);
    let (left, right) = order.split_at(k);
    let per_layer = ceil(rho * k as f64 - 1e-9).clamp(1, k);
    for _ in 0..d {
        let mut pairs: Vec<usize> = if per_layer == k {
            (0..k).collect()
        } else {
            let mut chosen: Vec<usize> = index::sample(&mut rng, k - 1, per_layer - 1).into_iter().map(|i| i + 1).collect();
            chosen.push(0);
            chosen
        };
        pairs.sort_unstable();
        for i in pairs {
            c.push_cnot(QubitId(left[i]), QubitId(right[i])).expect("distinct qubits");
        }
    }
    Ok(c)
}

/// A random circuit with exactly `num_qubits` qubits and depth `depth`.
///
/// Each layer visits the qubits in random order. At every slot a T gate is
/// placed with probability `t_fraction`, otherwise a CNOT on the next two
/// qubits (a T gate when only one is left). Every qubit is thus touched once
/// per layer, which pins the depth.
pub fn random_circuit(num_qubits: usize, depth: usize, t_fraction: f64, seed: u64) -> Result<Circuit, BenchError> {
    if depth > 0 && num_qubits == 0 {
        return Err(BenchError::InvalidParameter("a circuit with depth needs qubits"));
    }
    if !(0.0..=1.0).contains(&t_fraction) {
        return Err(BenchError::InvalidParameter("t_fraction must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::with_qubits(num_qubits);
    let mut order: Vec<u32> = (0..num_qubits as u32).collect();
    for _ in 0..depth {
        order.shuffle(&mut rng);
        let mut i = 0;
        while i < order.len() {
            if i + 1 == order.len() || rng.gen_bool(t_fraction) {
                c.push_t(QubitId(order[i])).expect("known qubit");
                i += 1;
            } else {
                c.push_cnot(QubitId(order[i]), QubitId(order[i + 1])).expect("distinct qubits");
                i += 2;
            }
        }
    }
    Ok(c)
}

fn ceil(x: f64) -> usize {
    let floor = x as usize;
    if (floor as f64) < x {
        floor + 1
    } else {
        floor
    }
}

fn name(prefix: &str, a: usize, b: usize) -> alloc::string::String {
    format!("{prefix}{a}_{b}")
}
