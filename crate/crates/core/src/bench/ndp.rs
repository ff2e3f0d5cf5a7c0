// SPDX-License-Identifier: Apache-2.0

//! Node-disjoint-paths instances on a grid, expressed as single-step routing
//! with a fixed map.
//!
//! Every grid vertex becomes a 7x7 gadget. Gadgets of vertices that no pair
//! uses are plus-shaped corridors, so any path crossing one passes its center.
//! Gadgets of pair endpoints hold the endpoint qubit at the center plus an
//! extra CNOT whose route occupies enough of the gadget that only the
//! endpoint's own path can use it.

use alloc::vec;
use alloc::vec::Vec;

use super::{name, BenchError};
use crate::arch::{Architecture, Vertex};
use crate::circuit::Circuit;
use crate::mapping::QubitMap;

pub const GADGET_SIZE: u32 = 7;

/// Free cells of an endpoint gadget, `(column, row)` within the gadget. The
/// center `(4,4)` and the cells `(5,3)`, `(3,5)` hold qubits; all other cells
/// are magic.
const FULL_FREE: [(u32, u32); 21] = [
    (4, 1),
    (4, 2),
    (5, 2),
    (3, 3),
    (4, 3),
    (6, 3),
    (1, 4),
    (2, 4),
    (3, 4),
    (5, 4),
    (6, 4),
    (7, 4),
    (2, 5),
    (4, 5),
    (5, 5),
    (3, 6),
    (4, 6),
    (4, 7),
    // Qubit cells.
    (4, 4),
    (5, 3),
    (3, 5),
];
const CENTER: (u32, u32) = (4, 4);
const UPPER: (u32, u32) = (5, 3);
const LOWER: (u32, u32) = (3, 5);

#[derive(Clone, Debug)]
pub struct NdpInstance {
    pub arch: Architecture,
    pub circuit: Circuit,
    pub map: QubitMap,
}

/// Builds the routing instance for connecting each pair of vertices of a
/// `rows x cols` grid by vertex-disjoint paths. Vertices are `(column, row)`,
/// 1-based. The instance routes in one step iff such paths exist.
pub fn ndp_to_scr(rows: u32, cols: u32, pairs: &[(Vertex, Vertex)]) -> Result<NdpInstance, BenchError> {
    if rows == 0 || cols == 0 {
        return Err(BenchError::InvalidParameter("grid must be nonempty"));
    }
    let mut endpoint = vec![false; (rows * cols) as usize];
    let cell = |v: Vertex| ((v.b - 1) * cols + (v.a - 1)) as usize;
    for &(s, t) in pairs {
        for v in [s, t] {
            if v.a == 0 || v.b == 0 || v.a > cols || v.b > rows {
                return Err(BenchError::VertexOutOfRange(v.a, v.b));
            }
            if endpoint[cell(v)] {
                return Err(BenchError::RepeatedVertex(v.a, v.b));
            }
            endpoint[cell(v)] = true;
        }
    }

    let n = GADGET_SIZE;
    let mut free = vec![false; (rows * n * cols * n) as usize];
    let width = cols * n;
    let at = |gv: Vertex, (x, y): (u32, u32)| Vertex::new((gv.a - 1) * n + x, (gv.b - 1) * n + y);
    for b in 1..=rows {
        for a in 1..=cols {
            let gv = Vertex::new(a, b);
            let cells: Vec<(u32, u32)> = if endpoint[cell(gv)] {
                FULL_FREE.to_vec()
            } else {
                (1..=n).map(|x| (x, CENTER.1)).chain((1..=n).map(|y| (CENTER.0, y))).collect()
            };
            for c in cells {
                let v = at(gv, c);
                free[((v.b - 1) * width + (v.a - 1)) as usize] = true;
            }
        }
    }
    let magic: Vec<Vertex> = (0..free.len())
        .filter(|&i| !free[i])
        .map(|i| Vertex::new(i as u32 % width + 1, i as u32 / width + 1))
        .collect();
    let arch = Architecture::custom(rows * n, width, &magic).expect("magic inside grid");

    let mut circuit = Circuit::new();
    let mut slots = Vec::new();
    for (i, &(s, t)) in pairs.iter().enumerate() {
        circuit.cnot(&name("s", i, 0), &name("t", i, 0)).expect("distinct");
        slots.push(at(s, CENTER));
        slots.push(at(t, CENTER));
    }
    for &(s, t) in pairs {
        for v in [s, t] {
            let (a, b) = (v.a as usize, v.b as usize);
            circuit.cnot(&name("u", a, b), &name("l", a, b)).expect("distinct");
            slots.push(at(v, UPPER));
            slots.push(at(v, LOWER));
        }
    }
    Ok(NdpInstance { arch, circuit, map: QubitMap::from_vertices(slots) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::greedy_route;
    use crate::validate::validate;

    #[test]
    fn one_pair_on_two_by_two() {
        let inst = ndp_to_scr(2, 2, &[(Vertex::new(1, 1), Vertex::new(2, 2))]).unwrap();
        assert_eq!(inst.circuit.len(), 3);
        assert_eq!(inst.circuit.num_qubits(), 6);
        assert_eq!(inst.circuit.depth(), 1);
        inst.map.check(&inst.arch, &inst.circuit).unwrap();
        let r = greedy_route(&inst.arch, &inst.circuit, &inst.map).unwrap();
        assert!(validate(&inst.arch, &inst.circuit, &inst.map, &r).is_ok());
    }

    #[test]
    fn no_pairs() {
        let inst = ndp_to_scr(2, 3, &[]).unwrap();
        assert!(inst.circuit.is_empty());
        assert_eq!(inst.arch.num_non_magic(), 6 * 13);
    }

    #[test]
    fn repeated_vertex_rejected() {
        let v = Vertex::new(1, 1);
        let e = ndp_to_scr(2, 2, &[(v, Vertex::new(2, 1)), (v, Vertex::new(2, 2))]);
        assert!(matches!(e, Err(BenchError::RepeatedVertex(1, 1))));
    }
}
