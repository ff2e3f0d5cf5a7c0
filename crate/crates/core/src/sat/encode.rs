// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::card::{encode_amo, encode_eo, CnfBuilder};
use crate::arch::{Architecture, Vertex};
use crate::circuit::{Circuit, GateKind, QubitId};
use crate::mapping::QubitMap;

/// What a variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRecord {
    /// Qubit `qubit` sits on `vertex`.
    Map { qubit: QubitId, vertex: Vertex },
    /// Gate `gate` runs at step `step`.
    Exec { gate: usize, step: usize },
    /// The path of `gate` at `step` uses the directed edge `from -> to`.
    Path { from: Vertex, to: Vertex, gate: usize, step: usize },
    /// Auxiliary variable of a cardinality or occupancy encoding.
    Aux,
}

/// Bijection between the problem variables and DIMACS variable numbers.
///
/// Map variables come first (qubit-major over non-magic vertices), then exec
/// variables gate by gate over each gate's step window, then path variables
/// gate by gate, step by step, edge by edge. Auxiliary variables follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    t_s: usize,
    num_qubits: usize,
    /// Vertex index to non-magic slot.
    slot_of: Vec<Option<u32>>,
    /// Non-magic slot to vertex index.
    slots: Vec<usize>,
    /// Inclusive step window per gate; empty when `lo > hi`.
    windows: Vec<(usize, usize)>,
    exec_base: Vec<u32>,
    path_base: Vec<u32>,
    edges: Vec<(usize, usize)>,
    vertices: Vec<Vertex>,
    num_main: u32,
}

impl VarTable {
    fn new(arch: &Architecture, circuit: &Circuit, t_s: usize, prune: bool) -> Self {
        let mut slot_of = vec![None; arch.num_vertices()];
        let mut slots = Vec::new();
        for i in 0..arch.num_vertices() {
            if !arch.is_magic_index(i) {
                slot_of[i] = Some(slots.len() as u32);
                slots.push(i);
            }
        }
        let deps = circuit.dependencies();
        let windows: Vec<(usize, usize)> = (0..circuit.len())
            .map(|g| {
                if prune {
                    (deps.layer(g), t_s.saturating_sub(deps.tail(g)))
                } else {
                    (1, t_s)
                }
            })
            .collect();
        let edges = arch.directed_edges();
        let mut next = 1 + (circuit.num_qubits() * slots.len()) as u32;
        let mut exec_base = Vec::with_capacity(windows.len());
        for &(lo, hi) in &windows {
            exec_base.push(next);
            next += if lo > hi { 0 } else { (hi - lo + 1) as u32 };
        }
        let mut path_base = Vec::with_capacity(windows.len());
        for &(lo, hi) in &windows {
            path_base.push(next);
            let w = if lo > hi { 0 } else { hi - lo + 1 };
            next += (w * edges.len()) as u32;
        }
        Self {
            t_s,
            num_qubits: circuit.num_qubits(),
            slot_of,
            slots,
            windows,
            exec_base,
            path_base,
            edges,
            vertices: arch.vertices().collect(),
            num_main: next - 1,
        }
    }

    pub fn horizon(&self) -> usize {
        self.t_s
    }

    /// Number of map, exec and path variables.
    pub fn num_main_vars(&self) -> u32 {
        self.num_main
    }

    pub fn num_gates(&self) -> usize {
        self.windows.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Steps gate `g` may run at.
    pub fn window(&self, g: usize) -> core::ops::RangeInclusive<usize> {
        let (lo, hi) = self.windows[g];
        lo..=hi
    }

    pub fn map_var(&self, q: QubitId, vertex: usize) -> Option<i32> {
        let s = self.slot_of[vertex]?;
        Some((1 + q.index() * self.slots.len() + s as usize) as i32)
    }

    pub fn exec_var(&self, g: usize, t: usize) -> Option<i32> {
        let (lo, hi) = self.windows[g];
        (lo <= t && t <= hi).then(|| (self.exec_base[g] as usize + t - lo) as i32)
    }

    /// Path variable for the directed edge with position `edge` in
    /// [`VarTable::edges`].
    pub fn path_var(&self, g: usize, t: usize, edge: usize) -> Option<i32> {
        let (lo, hi) = self.windows[g];
        (lo <= t && t <= hi).then(|| (self.path_base[g] as usize + (t - lo) * self.edges.len() + edge) as i32)
    }

    /// Directed grid edges as dense vertex index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn describe(&self, var: u32) -> Option<VarRecord> {
        if var == 0 {
            return None;
        }
        if var > self.num_main {
            return Some(VarRecord::Aux);
        }
        let n_slots = self.slots.len() as u32;
        let map_end = 1 + self.num_qubits as u32 * n_slots;
        if var < map_end {
            let k = var - 1;
            let qubit = QubitId(k / n_slots);
            let vertex = self.vertices[self.slots[(k % n_slots) as usize]];
            return Some(VarRecord::Map { qubit, vertex });
        }
        let path_start = self.path_base.first().copied().unwrap_or(self.num_main + 1);
        if var < path_start {
            let g = self.exec_base.partition_point(|&b| b <= var) - 1;
            let step = self.windows[g].0 + (var - self.exec_base[g]) as usize;
            return Some(VarRecord::Exec { gate: g, step });
        }
        let g = self.path_base.partition_point(|&b| b <= var) - 1;
        let k = (var - self.path_base[g]) as usize;
        let step = self.windows[g].0 + k / self.edges.len();
        let (u, v) = self.edges[k % self.edges.len()];
        Some(VarRecord::Path { from: self.vertices[u], to: self.vertices[v], gate: g, step })
    }
}

/// Which form of the T-gate target constraint to emit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TReach {
    /// When the gate runs, exactly one edge enters a magic vertex.
    #[default]
    Guarded,
    /// Exactly one edge enters a magic vertex at every step of the window,
    /// whether the gate runs or not.
    Unguarded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Restrict each gate to the steps its dependencies leave open.
    pub prune: bool,
    pub t_reach: TReach,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self { prune: true, t_reach: TReach::Guarded }
    }
}

/// Why an instance was emitted as trivially unsatisfiable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnsatReason {
    TooManyQubits { qubits: usize, vertices: usize },
    HorizonTooShort { gate: usize },
    InvalidFixedMap,
}

impl fmt::Display for UnsatReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnsatReason::TooManyQubits { qubits, vertices } => {
                write!(f, "{qubits} qubits but only {vertices} non-magic vertices")
            }
            UnsatReason::HorizonTooShort { gate } => write!(f, "gate {gate} cannot fit below the step horizon"),
            UnsatReason::InvalidFixedMap => write!(f, "the fixed map is not valid for this architecture"),
        }
    }
}

/// A CNF formula together with the meaning of its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: u32,
    lits: Vec<i32>,
    ends: Vec<usize>,
    pub table: VarTable,
    pub unsat_reason: Option<UnsatReason>,
}

impl CnfInstance {
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.ends.len()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> + '_ {
        let mut start = 0;
        self.ends.iter().map(move |&end| {
            let c = &self.lits[start..end];
            start = end;
            c
        })
    }

    /// DIMACS CNF: a `p cnf` header and one zero-terminated clause per line.
    pub fn write_dimacs<W: fmt::Write>(&self, w: &mut W) -> fmt::Result {
        writeln!(w, "p cnf {} {}", self.num_vars, self.num_clauses())?;
        for c in self.clauses() {
            for l in c {
                write!(w, "{l} ")?;
            }
            writeln!(w, "0")?;
        }
        Ok(())
    }

    /// One line per non-auxiliary variable: `<var> map <qubit> <a>,<b>`,
    /// `<var> exec <gate> <step>` or `<var> path <a>,<b> <a>,<b> <gate> <step>`.
    pub fn write_var_table<W: fmt::Write>(&self, circuit: &Circuit, w: &mut W) -> fmt::Result {
        for var in 1..=self.table.num_main_vars() {
            match self.table.describe(var) {
                Some(VarRecord::Map { qubit, vertex }) => {
                    writeln!(w, "{var} map {} {},{}", circuit.qubit_name(qubit), vertex.a, vertex.b)?
                }
                Some(VarRecord::Exec { gate, step }) => writeln!(w, "{var} exec {gate} {step}")?,
                Some(VarRecord::Path { from, to, gate, step }) => {
                    writeln!(w, "{var} path {},{} {},{} {gate} {step}", from.a, from.b, to.a, to.b)?
                }
                Some(VarRecord::Aux) | None => {}
            }
        }
        Ok(())
    }

    /// Appends unit clauses, e.g. to pin down a known solution.
    pub fn add_units(&mut self, lits: &[i32]) {
        for &l in lits {
            debug_assert!(l != 0 && l.unsigned_abs() <= self.num_vars);
            self.lits.push(l);
            self.ends.push(self.lits.len());
        }
    }
}

/// Builds the formula that is satisfiable iff the circuit can be mapped and
/// routed within `t_s` steps. With `map`, the placement is fixed.
pub fn encode(
    arch: &Architecture,
    circuit: &Circuit,
    map: Option<&QubitMap>,
    t_s: usize,
    opts: &EncodeOptions,
) -> CnfInstance {
    let table = VarTable::new(arch, circuit, t_s, opts.prune);
    let mut b = CnfBuilder::new(table.num_main_vars());
    let reason = trivial_unsat(arch, circuit, map, &table);
    if reason.is_some() {
        b.clause([]);
    } else {
        Encoder { arch, circuit, table: &table, opts, b: &mut b }.emit(map);
    }
    let (num_vars, lits, ends) = b.into_parts();
    CnfInstance { num_vars, lits, ends, table, unsat_reason: reason }
}

fn trivial_unsat(arch: &Architecture, circuit: &Circuit, map: Option<&QubitMap>, table: &VarTable) -> Option<UnsatReason> {
    if circuit.num_qubits() > arch.num_non_magic() {
        return Some(UnsatReason::TooManyQubits { qubits: circuit.num_qubits(), vertices: arch.num_non_magic() });
    }
    if let Some(gate) = (0..table.num_gates()).find(|&g| table.window(g).is_empty()) {
        return Some(UnsatReason::HorizonTooShort { gate });
    }
    if map.is_some_and(|m| m.check(arch, circuit).is_err()) {
        return Some(UnsatReason::InvalidFixedMap);
    }
    None
}

struct Encoder<'a> {
    arch: &'a Architecture,
    circuit: &'a Circuit,
    table: &'a VarTable,
    opts: &'a EncodeOptions,
    b: &'a mut CnfBuilder,
}

impl Encoder<'_> {
    fn emit(&mut self, map: Option<&QubitMap>) {
        let arch = self.arch;
        let nv = arch.num_vertices();
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        let mut edge_id = alloc::collections::BTreeMap::new();
        for (e, &(u, v)) in self.table.edges().iter().enumerate() {
            out_edges[u].push(e);
            in_edges[v].push(e);
            edge_id.insert((u, v), e);
        }
        let edge = |u: usize, v: usize| edge_id[&(u, v)];
        let non_magic: Vec<usize> = (0..nv).filter(|&i| !arch.is_magic_index(i)).collect();

        self.map_valid(&non_magic);
        if let Some(m) = map {
            for (q, v) in m.iter() {
                let var = self.table.map_var(q, arch.index(v)).expect("checked map");
                self.b.clause([var]);
            }
        }
        if self.circuit.is_empty() {
            return;
        }

        // occ(v) holds whenever some qubit is mapped to v.
        let mut occ = vec![0i32; nv];
        for &v in &non_magic {
            let o = self.b.fresh();
            occ[v] = o;
            for q in self.circuit.qubits() {
                let m = self.table.map_var(q, v).expect("non-magic");
                self.b.clause([-m, o]);
            }
        }

        // Edges entering a magic vertex from a horizontal neighbor.
        let magic_entries: Vec<usize> = (0..nv)
            .filter(|&m| arch.is_magic_index(m))
            .flat_map(|m| arch.horizontal_indices(m).map(move |u| (u, m)))
            .map(|(u, m)| edge(u, m))
            .collect();

        for gate in self.circuit.gates() {
            let g = gate.index;
            let src = gate.source();
            for t in self.table.window(g) {
                let exec = self.table.exec_var(g, t).expect("in window");
                let p = |e: usize| self.table.path_var(g, t, e).expect("in window");

                // Mapped qubits and magic states are never passed through.
                for v in 0..nv {
                    for &ei in &in_edges[v] {
                        for &eo in &out_edges[v] {
                            if arch.is_magic_index(v) {
                                self.b.clause([-p(ei), -p(eo)]);
                            } else {
                                self.b.clause([-occ[v], -p(ei), -p(eo)]);
                            }
                        }
                    }
                }

                // Start: leave the source vertically.
                for &v in &non_magic {
                    let m = self.table.map_var(src, v).expect("non-magic");
                    let outs = arch.vertical_indices(v).map(|u| p(edge(v, u)));
                    self.b.clause([-m, -exec].into_iter().chain(outs));
                }

                // Reach: enter the target horizontally, or any magic state.
                match gate.kind {
                    GateKind::Cnot { target, .. } => {
                        for &v in &non_magic {
                            let m = self.table.map_var(target, v).expect("non-magic");
                            let ins = arch.horizontal_indices(v).map(|u| p(edge(u, v)));
                            self.b.clause([-m, -exec].into_iter().chain(ins));
                        }
                    }
                    GateKind::T { .. } => {
                        let ins: Vec<i32> = magic_entries.iter().map(|&e| p(e)).collect();
                        match self.opts.t_reach {
                            TReach::Guarded => {
                                self.b.clause(core::iter::once(-exec).chain(ins.iter().copied()));
                                encode_amo(self.b, &ins);
                            }
                            TReach::Unguarded => encode_eo(self.b, &ins),
                        }
                    }
                }

                // Inductive: every used edge is fed by the source or an
                // incoming edge.
                for (e, &(u, v)) in self.table.edges().iter().enumerate() {
                    let feed = in_edges[u].iter().filter(|&&ei| self.table.edges()[ei].0 != v).map(|&ei| p(ei));
                    let at_source = self.table.map_var(src, u);
                    self.b.clause(core::iter::once(-p(e)).chain(feed).chain(at_source));
                }
            }
        }

        self.disjoint(&in_edges, &out_edges);
        self.gates_ordered();
    }

    fn map_valid(&mut self, non_magic: &[usize]) {
        let mut lits = Vec::new();
        for q in self.circuit.qubits() {
            lits.clear();
            lits.extend(non_magic.iter().map(|&v| self.table.map_var(q, v).expect("non-magic")));
            encode_eo(self.b, &lits);
        }
        for &v in non_magic {
            lits.clear();
            lits.extend(self.circuit.qubits().map(|q| self.table.map_var(q, v).expect("non-magic")));
            encode_amo(self.b, &lits);
        }
    }

    /// Per step and vertex, at most one used outgoing and one used incoming
    /// edge over all gates.
    fn disjoint(&mut self, in_edges: &[Vec<usize>], out_edges: &[Vec<usize>]) {
        let mut lits = Vec::new();
        for t in 1..=self.table.horizon() {
            let live: Vec<usize> = (0..self.table.num_gates()).filter(|&g| self.table.window(g).contains(&t)).collect();
            for edges in [out_edges, in_edges] {
                for es in edges {
                    lits.clear();
                    for &g in &live {
                        lits.extend(es.iter().map(|&e| self.table.path_var(g, t, e).expect("live")));
                    }
                    encode_amo(self.b, &lits);
                }
            }
        }
    }

    fn gates_ordered(&mut self) {
        let deps = self.circuit.dependencies();
        let n = self.circuit.len();
        for g in 0..n {
            let lits: Vec<i32> = self.table.window(g).map(|t| self.table.exec_var(g, t).expect("in window")).collect();
            encode_eo(self.b, &lits);
        }
        for j in 0..n {
            // Immediate predecessors imply the rest by transitivity; without
            // pruning every dependent pair is emitted.
            let preds: Vec<usize> = if self.opts.prune {
                deps.predecessors(j).collect()
            } else {
                (0..j).filter(|&i| self.circuit.depends_on(j, i)).collect()
            };
            for i in preds {
                for t in self.table.window(i) {
                    for t2 in self.table.window(j) {
                        if t2 > t {
                            break;
                        }
                        let a = self.table.exec_var(i, t).expect("in window");
                        let c = self.table.exec_var(j, t2).expect("in window");
                        self.b.clause([-a, -c]);
                    }
                }
            }
        }
    }
}
