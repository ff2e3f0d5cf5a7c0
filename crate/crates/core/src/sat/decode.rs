// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use super::encode::VarTable;
use crate::arch::Architecture;
use crate::circuit::{Circuit, GateKind};
use crate::mapping::QubitMap;
use crate::routing::{GateRoute, Path};

/// Truth values indexed by variable number; index 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(num_vars: u32) -> Self {
        Self { values: vec![false; num_vars as usize + 1] }
    }

    /// Builds a model from signed literals; unmentioned variables are false.
    pub fn from_literals(num_vars: u32, lits: impl IntoIterator<Item = i32>) -> Self {
        let mut m = Self::new(num_vars);
        for l in lits {
            if l > 0 {
                m.set(l as u32, true);
            }
        }
        m
    }

    pub fn value(&self, var: u32) -> bool {
        self.values.get(var as usize).copied().unwrap_or(false)
    }

    pub fn set(&mut self, var: u32, value: bool) {
        let i = var as usize;
        if i >= self.values.len() {
            self.values.resize(i + 1, false);
        }
        self.values[i] = value;
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    fn lit(&self, l: i32) -> bool {
        self.value(l as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("qubit {0} is mapped to {1} vertices")]
    Map(u32, usize),
    #[error("gate {0} runs at {1} steps")]
    Exec(usize, usize),
    #[error("path of gate {0} is broken")]
    Path(usize),
}

/// Reads the map, the schedule and each gate's path off a model.
///
/// Paths are followed edge by edge from the source at the gate's own step, so
/// stray true path variables elsewhere do not matter.
pub fn decode(
    model: &Model,
    table: &VarTable,
    circuit: &Circuit,
    arch: &Architecture,
) -> Result<(QubitMap, GateRoute), DecodeError> {
    let mut slots = Vec::with_capacity(circuit.num_qubits());
    for q in circuit.qubits() {
        let on: Vec<usize> = (0..arch.num_vertices())
            .filter(|&v| table.map_var(q, v).is_some_and(|x| model.lit(x)))
            .collect();
        if on.len() != 1 {
            return Err(DecodeError::Map(q.0, on.len()));
        }
        slots.push(arch.vertex(on[0]));
    }
    let map = QubitMap::from_vertices(slots);

    let mut out_edges = vec![Vec::new(); arch.num_vertices()];
    for (e, &(u, _)) in table.edges().iter().enumerate() {
        out_edges[u].push(e);
    }

    let mut time = Vec::with_capacity(circuit.len());
    let mut space = Vec::with_capacity(circuit.len());
    for gate in circuit.gates() {
        let g = gate.index;
        let steps: Vec<usize> =
            table.window(g).filter(|&t| table.exec_var(g, t).is_some_and(|x| model.lit(x))).collect();
        if steps.len() != 1 {
            return Err(DecodeError::Exec(g, steps.len()));
        }
        let t = steps[0];
        let done = |v: usize| match gate.kind {
            GateKind::Cnot { target, .. } => v == arch.index(map.get(target)),
            GateKind::T { .. } => arch.is_magic_index(v),
        };
        let mut cur = arch.index(map.get(gate.source()));
        let mut path = vec![arch.vertex(cur)];
        loop {
            let next = out_edges[cur]
                .iter()
                .find(|&&e| table.path_var(g, t, e).is_some_and(|x| model.lit(x)))
                .map(|&e| table.edges()[e].1)
                .ok_or(DecodeError::Path(g))?;
            path.push(arch.vertex(next));
            if done(next) {
                break;
            }
            if path.len() > arch.num_vertices() {
                return Err(DecodeError::Path(g));
            }
            cur = next;
        }
        time.push(t);
        space.push(Path(path));
    }
    Ok((map, GateRoute { steps: table.horizon(), time, space }))
}

/// Literals over the map, exec and path variables describing a given
/// solution: its own variables true, every other one false. Auxiliary
/// variables are left open.
pub fn solution_literals(
    table: &VarTable,
    circuit: &Circuit,
    arch: &Architecture,
    map: &QubitMap,
    route: &GateRoute,
) -> Option<Vec<i32>> {
    let mut model = Model::new(table.num_main_vars());
    for (q, v) in map.iter() {
        model.set(table.map_var(q, arch.index(v))? as u32, true);
    }
    let mut edge_id = alloc::collections::BTreeMap::new();
    for (e, &uv) in table.edges().iter().enumerate() {
        edge_id.insert(uv, e);
    }
    for gate in circuit.gates() {
        let g = gate.index;
        let t = route.time[g];
        model.set(table.exec_var(g, t)? as u32, true);
        for w in route.space[g].vertices().windows(2) {
            let e = *edge_id.get(&(arch.index(w[0]), arch.index(w[1])))?;
            model.set(table.path_var(g, t, e)? as u32, true);
        }
    }
    Some((1..=table.num_main_vars()).map(|v| if model.value(v) { v as i32 } else { -(v as i32) }).collect())
}
