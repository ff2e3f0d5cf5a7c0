// SPDX-License-Identifier: Apache-2.0

//! Circuit representation: CNOT and T gates over named qubits, plus the
//! dependency structure (depth, topological layers) derived from gate order.

mod interaction;
mod parse;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use interaction::{Chain, ChainNode, InteractionChainSet, InteractionGraph};
pub use parse::{parse_circuit, parse_circuit_with, ParseError, ParseErrorKind, ParseMode};

/// Index of a qubit within its [`Circuit`]. Ids are handed out in order of
/// first appearance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(pub u32);

impl QubitId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Cnot { control: QubitId, target: QubitId },
    T { operand: QubitId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    /// Position in the circuit, 0-based.
    pub index: usize,
    pub kind: GateKind,
}

impl Gate {
    /// The qubit the routed path starts from: the control of a CNOT, the
    /// operand of a T gate.
    pub fn source(&self) -> QubitId {
        match self.kind {
            GateKind::Cnot { control, .. } => control,
            GateKind::T { operand } => operand,
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self.kind, GateKind::Cnot { .. })
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitId> {
        let (a, b) = match self.kind {
            GateKind::Cnot { control, target } => (control, Some(target)),
            GateKind::T { operand } => (operand, None),
        };
        core::iter::once(a).chain(b)
    }

    pub fn acts_on(&self, q: QubitId) -> bool {
        self.qubits().any(|x| x == q)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits().any(|q| other.acts_on(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("CNOT needs two distinct qubits, got `{0}` twice")]
    IdenticalOperands(String),
    #[error("unknown qubit id {0}")]
    UnknownQubit(u32),
}

/// An ordered list of CNOT and T gates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    names: Vec<String>,
    lookup: BTreeMap<String, QubitId>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// A circuit with `n` qubits named `q0..q{n-1}` and no gates.
    pub fn with_qubits(n: usize) -> Self {
        let mut c = Self::new();
        for i in 0..n {
            c.qubit(&alloc::format!("q{i}"));
        }
        c
    }

    /// Returns the id for `name`, registering it if unseen.
    pub fn qubit(&mut self, name: &str) -> QubitId {
        if let Some(&id) = self.lookup.get(name) {
            return id;
        }
        let id = QubitId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        id
    }

    pub fn qubit_id(&self, name: &str) -> Option<QubitId> {
        self.lookup.get(name).copied()
    }

    pub fn qubit_name(&self, q: QubitId) -> &str {
        &self.names[q.index()]
    }

    pub fn qubit_names(&self) -> &[String] {
        &self.names
    }

    pub fn num_qubits(&self) -> usize {
        self.names.len()
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitId> {
        (0..self.names.len() as u32).map(QubitId)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn check(&self, q: QubitId) -> Result<(), CircuitError> {
        if q.index() < self.names.len() {
            Ok(())
        } else {
            Err(CircuitError::UnknownQubit(q.0))
        }
    }

    pub fn push_cnot(&mut self, control: QubitId, target: QubitId) -> Result<usize, CircuitError> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(CircuitError::IdenticalOperands(self.names[control.index()].clone()));
        }
        Ok(self.push(GateKind::Cnot { control, target }))
    }

    pub fn push_t(&mut self, operand: QubitId) -> Result<usize, CircuitError> {
        self.check(operand)?;
        Ok(self.push(GateKind::T { operand }))
    }

    /// Name-based convenience used by generators and tests.
    pub fn cnot(&mut self, control: &str, target: &str) -> Result<usize, CircuitError> {
        let c = self.qubit(control);
        let t = self.qubit(target);
        self.push_cnot(c, t)
    }

    pub fn t(&mut self, operand: &str) -> Result<usize, CircuitError> {
        let q = self.qubit(operand);
        self.push_t(q)
    }

    fn push(&mut self, kind: GateKind) -> usize {
        let index = self.gates.len();
        self.gates.push(Gate { index, kind });
        index
    }

    /// Appends all gates of `other`, translating its qubits by name.
    pub fn extend_from(&mut self, other: &Circuit) {
        let ids: Vec<QubitId> = other.names.iter().map(|n| self.qubit(n)).collect();
        for g in &other.gates {
            let kind = match g.kind {
                GateKind::Cnot { control, target } => GateKind::Cnot {
                    control: ids[control.index()],
                    target: ids[target.index()],
                },
                GateKind::T { operand } => GateKind::T { operand: ids[operand.index()] },
            };
            self.push(kind);
        }
    }

    /// True iff gate `j` depends on gate `i`: `i < j` and they share a qubit.
    pub fn depends_on(&self, j: usize, i: usize) -> bool {
        i < j && self.gates[i].shares_qubit(&self.gates[j])
    }

    pub fn dependencies(&self) -> Dependencies {
        Dependencies::new(self)
    }

    pub fn depth(&self) -> usize {
        self.dependencies().depth()
    }

    pub fn layering(&self) -> Layering {
        self.dependencies().layering()
    }

    pub fn interaction_graph(&self) -> InteractionGraph {
        InteractionGraph::new(self)
    }

    pub fn interaction_chain_set(&self) -> InteractionChainSet {
        InteractionChainSet::new(self)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match g.kind {
                GateKind::Cnot { control, target } => {
                    writeln!(f, "CNOT {} {};", self.qubit_name(control), self.qubit_name(target))?
                }
                GateKind::T { operand } => writeln!(f, "T {};", self.qubit_name(operand))?,
            }
        }
        Ok(())
    }
}

/// Immediate dependencies of each gate and its position in the dependency DAG.
///
/// Only the previous gate on each qubit is recorded; the full relation is the
/// transitive closure of these edges.
#[derive(Clone, Debug)]
pub struct Dependencies {
    preds: Vec<[Option<usize>; 2]>,
    /// 1-based length of the longest chain ending at the gate.
    layer: Vec<usize>,
    /// Number of gates on the longest chain strictly after the gate.
    tail: Vec<usize>,
}

impl Dependencies {
    fn new(c: &Circuit) -> Self {
        let n = c.gates.len();
        let mut last: Vec<Option<usize>> = vec![None; c.num_qubits()];
        let mut preds = Vec::with_capacity(n);
        let mut layer = Vec::with_capacity(n);
        for g in &c.gates {
            let mut p = [None, None];
            let mut l = 1;
            for (slot, q) in g.qubits().enumerate() {
                if let Some(prev) = last[q.index()] {
                    p[slot] = Some(prev);
                    l = l.max(layer[prev] + 1);
                }
                last[q.index()] = Some(g.index);
            }
            preds.push(p);
            layer.push(l);
        }
        let mut tail = vec![0usize; n];
        for j in (0..n).rev() {
            for i in preds[j].iter().flatten() {
                tail[*i] = tail[*i].max(tail[j] + 1);
            }
        }
        Self { preds, layer, tail }
    }

    pub fn predecessors(&self, gate: usize) -> impl Iterator<Item = usize> + '_ {
        self.preds[gate].iter().flatten().copied()
    }

    pub fn layer(&self, gate: usize) -> usize {
        self.layer[gate]
    }

    pub fn tail(&self, gate: usize) -> usize {
        self.tail[gate]
    }

    pub fn depth(&self) -> usize {
        self.layer.iter().copied().max().unwrap_or(0)
    }

    pub fn layering(&self) -> Layering {
        let mut layers = vec![Vec::new(); self.depth()];
        for (g, &l) in self.layer.iter().enumerate() {
            layers[l - 1].push(g);
        }
        Layering { layers }
    }
}

/// Gates grouped by dependency depth. Layer `i` (0-based) holds exactly the
/// gates whose longest dependency chain has `i + 1` gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub layers: Vec<Vec<usize>>,
}

impl Layering {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.layers.iter().map(Vec::as_slice)
    }
}
