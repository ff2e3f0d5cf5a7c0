// SPDX-License-Identifier: Apache-2.0

//! Grid architectures with magic-state vertices.
//!
//! Coordinates are 1-based `(a, b)` pairs where `a` is the column and `b` the
//! row. Two vertices are *horizontal* neighbors when their columns differ by
//! one and *vertical* neighbors when their rows differ by one. A lattice
//! surgery CNOT leaves its control through a vertical neighbor and enters its
//! target through a horizontal neighbor.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    /// Column, `1..=cols`.
    pub a: u32,
    /// Row, `1..=rows`.
    pub b: u32,
}

impl Vertex {
    pub const fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }

    pub fn l1(self, other: Vertex) -> u32 {
        self.a.abs_diff(other.a) + self.b.abs_diff(other.b)
    }

    pub fn linf(self, other: Vertex) -> u32 {
        self.a.abs_diff(other.a).max(self.b.abs_diff(other.b))
    }

    pub fn is_adjacent(self, other: Vertex) -> bool {
        self.l1(other) == 1
    }

    pub fn is_horizontal_neighbor(self, other: Vertex) -> bool {
        self.a.abs_diff(other.a) == 1 && self.b == other.b
    }

    pub fn is_vertical_neighbor(self, other: Vertex) -> bool {
        self.b.abs_diff(other.b) == 1 && self.a == other.a
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArchError {
    #[error("grid must have at least one row and one column")]
    EmptyGrid,
    #[error("vertex {0} lies outside the grid")]
    OutOfRange(Vertex),
    #[error("magic vertex {0} listed twice")]
    DuplicateMagic(Vertex),
    #[error("layout offers {available} regular locations, {needed} qubits need placing")]
    InsufficientLocations { needed: usize, available: usize },
}

/// An `rows x cols` grid graph together with its magic-state vertices.
///
/// Vertices are indexed densely in row-major order, which is also the order
/// used whenever a deterministic "first free vertex" is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Architecture {
    cols: u32,
    rows: u32,
    magic: Vec<bool>,
    regular: Vec<Vertex>,
}

impl Architecture {
    /// Builds a grid with the given magic vertices.
    pub fn custom(rows: u32, cols: u32, magic: &[Vertex]) -> Result<Self, ArchError> {
        if rows == 0 || cols == 0 {
            return Err(ArchError::EmptyGrid);
        }
        let mut flags = vec![false; (rows * cols) as usize];
        for &v in magic {
            if v.a == 0 || v.b == 0 || v.a > cols || v.b > rows {
                return Err(ArchError::OutOfRange(v));
            }
            let i = ((v.b - 1) * cols + (v.a - 1)) as usize;
            if flags[i] {
                return Err(ArchError::DuplicateMagic(v));
            }
            flags[i] = true;
        }
        let mut arch = Self { cols, rows, magic: flags, regular: Vec::new() };
        arch.regular = arch.compute_regular_locations();
        Ok(arch)
    }

    /// Non-magic interior of side `2 ceil(sqrt(n)) + 1` enclosed by a
    /// one-vertex magic border, corners included.
    pub fn bordered(num_qubits: usize) -> Self {
        let side = interior_side(num_qubits) + 2;
        let magic: Vec<Vertex> = (1..=side)
            .flat_map(|b| (1..=side).map(move |a| Vertex::new(a, b)))
            .filter(|v| v.a == 1 || v.b == 1 || v.a == side || v.b == side)
            .collect();
        Self::custom(side, side, &magic).expect("well-formed layout")
    }

    /// The same interior with a single magic column on its right.
    pub fn right_column(num_qubits: usize) -> Self {
        let side = interior_side(num_qubits);
        let magic: Vec<Vertex> = (1..=side).map(|b| Vertex::new(side + 1, b)).collect();
        Self::custom(side, side + 1, &magic).expect("well-formed layout")
    }

    /// The interior with its middle column turned into magic states, plus a
    /// free row above and below through which paths cross between the halves.
    ///
    /// With `widen`, the halves on either side of the magic column are
    /// instead sized to fit `ceil(n / (2 ceil(sqrt n)))` location columns each.
    pub fn center_column(num_qubits: usize, widen: bool) -> Result<Self, ArchError> {
        let s = ceil_sqrt(num_qubits.max(1)) as u32;
        let rows = 2 * s + 3;
        let (cols, mid) = if widen {
            let per_side = (num_qubits.max(1) as u32).div_ceil(2 * s).max(1);
            (4 * per_side + 3, 2 * per_side + 2)
        } else {
            (2 * s + 1, s + 1)
        };
        let magic: Vec<Vertex> = (2..rows).map(|b| Vertex::new(mid, b)).collect();
        let arch = Self::custom(rows, cols, &magic).expect("well-formed layout");
        if arch.regular.len() < num_qubits {
            return Err(ArchError::InsufficientLocations { needed: num_qubits, available: arch.regular.len() });
        }
        Ok(arch)
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn num_vertices(&self) -> usize {
        self.magic.len()
    }

    /// Number of undirected grid edges.
    pub fn num_edges(&self) -> usize {
        let (r, c) = (self.rows as usize, self.cols as usize);
        r * (c - 1) + c * (r - 1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.cols).contains(&v.a) && (1..=self.rows).contains(&v.b)
    }

    /// Dense row-major index. Panics if `v` is outside the grid.
    pub fn index(&self, v: Vertex) -> usize {
        assert!(self.contains(v), "vertex {v} outside {}x{} grid", self.rows, self.cols);
        ((v.b - 1) * self.cols + (v.a - 1)) as usize
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        let i = index as u32;
        Vertex::new(i % self.cols + 1, i / self.cols + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.num_vertices()).map(|i| self.vertex(i))
    }

    pub fn is_magic(&self, v: Vertex) -> bool {
        self.contains(v) && self.magic[self.index(v)]
    }

    pub fn is_magic_index(&self, index: usize) -> bool {
        self.magic[index]
    }

    pub fn magic_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| self.magic[self.index(v)])
    }

    pub fn num_magic(&self) -> usize {
        self.magic.iter().filter(|&&m| m).count()
    }

    pub fn non_magic_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| !self.magic[self.index(v)])
    }

    pub fn num_non_magic(&self) -> usize {
        self.num_vertices() - self.num_magic()
    }

    /// Centers of 3x3 magic-free subgrids, chosen greedily in row-major order
    /// so that any two are at Chebyshev distance at least 2.
    pub fn regular_locations(&self) -> &[Vertex] {
        &self.regular
    }

    fn compute_regular_locations(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = Vec::new();
        if self.rows < 3 || self.cols < 3 {
            return out;
        }
        for b in 2..self.rows {
            for a in 2..self.cols {
                let v = Vertex::new(a, b);
                let clear = (b - 1..=b + 1)
                    .all(|bb| (a - 1..=a + 1).all(|aa| !self.magic[self.index(Vertex::new(aa, bb))]));
                if clear && out.iter().all(|w| w.linf(v) >= 2) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Neighbor indices of the vertex with dense index `index`: up to two
    /// vertical ones followed by up to two horizontal ones.
    pub(crate) fn neighbor_indices(&self, index: usize) -> impl Iterator<Item = usize> {
        self.vertical_indices(index).chain(self.horizontal_indices(index))
    }

    pub(crate) fn vertical_indices(&self, index: usize) -> impl Iterator<Item = usize> {
        let c = self.cols as usize;
        let n = self.magic.len();
        let up = (index >= c).then(|| index - c);
        let down = (index + c < n).then(|| index + c);
        up.into_iter().chain(down)
    }

    pub(crate) fn horizontal_indices(&self, index: usize) -> impl Iterator<Item = usize> {
        let c = self.cols as usize;
        let col = index % c;
        let left = (col > 0).then(|| index - 1);
        let right = (col + 1 < c).then(|| index + 1);
        left.into_iter().chain(right)
    }

    fn checked(&self, v: Vertex) -> Result<usize, ArchError> {
        if self.contains(v) {
            Ok(self.index(v))
        } else {
            Err(ArchError::OutOfRange(v))
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, ArchError> {
        let i = self.checked(v)?;
        Ok(self.neighbor_indices(i).map(|j| self.vertex(j)).collect())
    }

    pub fn horizontal_neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, ArchError> {
        let i = self.checked(v)?;
        Ok(self.horizontal_indices(i).map(|j| self.vertex(j)).collect())
    }

    pub fn vertical_neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, ArchError> {
        let i = self.checked(v)?;
        Ok(self.vertical_indices(i).map(|j| self.vertex(j)).collect())
    }

    /// Directed edges `(u, v)` as dense index pairs, in a fixed order.
    pub(crate) fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.num_edges());
        for u in 0..self.num_vertices() {
            for v in self.neighbor_indices(u) {
                out.push((u, v));
            }
        }
        out
    }
}

/// Named architecture families, sized from the qubit count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Bordered,
    RightColumn,
    CenterColumn { widen: bool },
}

impl Layout {
    pub fn build(self, num_qubits: usize) -> Result<Architecture, ArchError> {
        match self {
            Layout::Bordered => Ok(Architecture::bordered(num_qubits)),
            Layout::RightColumn => Ok(Architecture::right_column(num_qubits)),
            Layout::CenterColumn { widen } => Architecture::center_column(num_qubits, widen),
        }
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = 0;
    while r * r < n {
        r += 1;
    }
    r
}

fn interior_side(num_qubits: usize) -> u32 {
    2 * ceil_sqrt(num_qubits.max(1)) as u32 + 1
}
