// SPDX-License-Identifier: Apache-2.0

//! Independent checker for a (map, route) pair.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arch::{Architecture, Vertex};
use crate::circuit::{Circuit, GateKind};
use crate::mapping::QubitMap;
use crate::routing::GateRoute;

/// The rule a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// The map is not an injective function into non-magic vertices.
    QubitMap,
    /// A mapped or magic vertex occurs inside a path.
    DataPreservation,
    CnotRouting,
    TRouting,
    /// Dependent gates are not in strictly increasing steps.
    LogicalOrder,
    /// Two paths of the same step share a vertex.
    DisjointPaths,
    /// The route does not cover every gate with a step in `1..=steps`.
    Schedule,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::QubitMap => "Qubit Map",
            ViolationKind::DataPreservation => "Data Preservation",
            ViolationKind::CnotRouting => "CNOT Routing",
            ViolationKind::TRouting => "T Routing",
            ViolationKind::LogicalOrder => "Logical Order",
            ViolationKind::DisjointPaths => "Disjoint Paths",
            ViolationKind::Schedule => "Schedule",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub gates: Vec<usize>,
    pub vertex: Option<Vertex>,
    pub step: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        match self.gates.as_slice() {
            [] => {}
            [g] => write!(f, ", gate {g}")?,
            gs => {
                write!(f, ", gates")?;
                for g in gs {
                    write!(f, " {g}")?;
                }
            }
        }
        if let Some(v) = self.vertex {
            write!(f, ", vertex {v}")?;
        }
        if let Some(t) = self.step {
            write!(f, ", step {t}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, kind: ViolationKind, gates: &[usize], vertex: Option<Vertex>, step: Option<usize>, detail: String) {
        self.0.push(Violation { kind, gates: gates.to_vec(), vertex, step, detail });
    }
}

/// Checks every placement and routing rule and lists all violations found.
pub fn validate(arch: &Architecture, circuit: &Circuit, map: &QubitMap, route: &GateRoute) -> Result<(), Vec<Violation>> {
    let mut r = Report(Vec::new());
    let map_ok = check_map(arch, circuit, map, &mut r);
    let shape_ok = check_shape(circuit, route, &mut r);
    if map_ok && shape_ok {
        check_paths(arch, circuit, map, route, &mut r);
        check_disjoint(route, &mut r);
    }
    if shape_ok {
        check_order(circuit, route, &mut r);
    }
    if r.0.is_empty() {
        Ok(())
    } else {
        Err(r.0)
    }
}

fn check_map(arch: &Architecture, circuit: &Circuit, map: &QubitMap, r: &mut Report) -> bool {
    use ViolationKind::QubitMap as K;
    let before = r.0.len();
    if map.len() != circuit.num_qubits() {
        r.push(K, &[], None, None, format!("map covers {} qubits, circuit has {}", map.len(), circuit.num_qubits()));
        return false;
    }
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (q, v) in map.iter() {
        let name = circuit.qubit_name(q);
        if !arch.contains(v) {
            r.push(K, &[], Some(v), None, format!("qubit {name} is outside the grid"));
        } else if arch.is_magic(v) {
            r.push(K, &[], Some(v), None, format!("qubit {name} sits on a magic-state vertex"));
        }
        if let Some(&other) = owner.get(&v) {
            let other = circuit.qubit_name(crate::circuit::QubitId(other as u32));
            r.push(K, &[], Some(v), None, format!("qubits {other} and {name} share a vertex"));
        } else {
            owner.insert(v, q.index());
        }
    }
    r.0.len() == before
}

fn check_shape(circuit: &Circuit, route: &GateRoute, r: &mut Report) -> bool {
    use ViolationKind::Schedule as K;
    let n = circuit.len();
    if route.time.len() != n || route.space.len() != n {
        r.push(
            K,
            &[],
            None,
            None,
            format!("route has {} times and {} paths for {} gates", route.time.len(), route.space.len(), n),
        );
        return false;
    }
    let mut ok = true;
    for (g, &t) in route.time.iter().enumerate() {
        if t == 0 || t > route.steps {
            r.push(K, &[g], None, Some(t), format!("step outside 1..={}", route.steps));
            ok = false;
        }
    }
    ok
}

fn check_paths(arch: &Architecture, circuit: &Circuit, map: &QubitMap, route: &GateRoute, r: &mut Report) {
    let mut mapped = vec![false; arch.num_vertices()];
    for &v in map.vertices() {
        mapped[arch.index(v)] = true;
    }
    for gate in circuit.gates() {
        let g = gate.index;
        let t = Some(route.time[g]);
        let path = route.space[g].vertices();
        let (kind, start, what) = match gate.kind {
            GateKind::Cnot { control, .. } => (ViolationKind::CnotRouting, map.get(control), "control"),
            GateKind::T { operand } => (ViolationKind::TRouting, map.get(operand), "operand"),
        };
        if path.len() < 3 {
            r.push(kind, &[g], None, t, format!("path has {} vertices, at least 3 needed", path.len()));
            continue;
        }
        if let Some(&v) = path.iter().find(|v| !arch.contains(**v)) {
            r.push(kind, &[g], Some(v), t, "path leaves the grid".into());
            continue;
        }
        for w in path.windows(2) {
            if !w[0].is_adjacent(w[1]) {
                r.push(kind, &[g], Some(w[1]), t, format!("{} and {} are not adjacent", w[0], w[1]));
            }
        }
        let mut seen = BTreeMap::new();
        for &v in path {
            if seen.insert(v, ()).is_some() {
                r.push(kind, &[g], Some(v), t, "path repeats a vertex".into());
            }
        }
        let (first, second) = (path[0], path[1]);
        let (before_last, last) = (path[path.len() - 2], path[path.len() - 1]);
        if first != start {
            r.push(kind, &[g], Some(first), t, format!("path does not start at the {what}'s vertex {start}"));
        }
        if !second.is_vertical_neighbor(first) {
            r.push(kind, &[g], Some(second), t, format!("path leaves {first} horizontally"));
        }
        match gate.kind {
            GateKind::Cnot { target, .. } => {
                let end = map.get(target);
                if last != end {
                    r.push(kind, &[g], Some(last), t, format!("path does not end at the target's vertex {end}"));
                }
            }
            GateKind::T { .. } => {
                if !arch.is_magic(last) {
                    r.push(kind, &[g], Some(last), t, "path does not end at a magic-state vertex".into());
                }
            }
        }
        if !before_last.is_horizontal_neighbor(last) {
            r.push(kind, &[g], Some(before_last), t, format!("path enters {last} vertically"));
        }
        for &v in &path[1..path.len() - 1] {
            let i = arch.index(v);
            if mapped[i] {
                r.push(ViolationKind::DataPreservation, &[g], Some(v), t, "path passes through a mapped qubit".into());
            } else if arch.is_magic_index(i) {
                r.push(ViolationKind::DataPreservation, &[g], Some(v), t, "path passes through a magic state".into());
            }
        }
    }
}

fn check_order(circuit: &Circuit, route: &GateRoute, r: &mut Report) {
    // Consecutive gates per qubit suffice: the order is transitive.
    let deps = circuit.dependencies();
    for j in 0..circuit.len() {
        for i in deps.predecessors(j) {
            if route.time[i] >= route.time[j] {
                r.push(
                    ViolationKind::LogicalOrder,
                    &[i, j],
                    None,
                    Some(route.time[j]),
                    format!("gate {j} depends on gate {i} but runs at step {} vs {}", route.time[j], route.time[i]),
                );
            }
        }
    }
}

fn check_disjoint(route: &GateRoute, r: &mut Report) {
    let mut owner: BTreeMap<(usize, Vertex), usize> = BTreeMap::new();
    for (g, path) in route.space.iter().enumerate() {
        let t = route.time[g];
        let mut own = BTreeMap::new();
        for &v in path.vertices() {
            if own.insert(v, ()).is_some() {
                continue;
            }
            match owner.get(&(t, v)) {
                Some(&other) => r.push(
                    ViolationKind::DisjointPaths,
                    &[other, g],
                    Some(v),
                    Some(t),
                    "paths of the same step share a vertex".into(),
                ),
                None => {
                    owner.insert((t, v), g);
                }
            }
        }
    }
}
