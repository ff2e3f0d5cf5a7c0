// SPDX-License-Identifier: Apache-2.0

//! Qubit placement: uniform random maps, best-of-N sampling, and structural
//! placement along interaction chains.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arch::{Architecture, Vertex};
use crate::circuit::{ChainNode, Circuit, QubitId};
use crate::routing::GateRoute;

/// Assignment of circuit qubits to grid vertices, indexed by [`QubitId`].
///
/// Construction does not validate; use [`QubitMap::check`] or the validator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitMap {
    slots: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map covers {found} qubits, circuit has {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("qubit {0} mapped outside the grid")]
    OutOfRange(u32),
    #[error("qubit {0} mapped onto a magic-state vertex")]
    OnMagic(u32),
    #[error("qubits {0} and {1} share a vertex")]
    NotInjective(u32, u32),
}

impl QubitMap {
    pub fn from_vertices(slots: Vec<Vertex>) -> Self {
        Self { slots }
    }

    pub fn get(&self, q: QubitId) -> Vertex {
        self.slots[q.index()]
    }

    pub fn set(&mut self, q: QubitId, v: Vertex) {
        self.slots[q.index()] = v;
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.slots
    }

    pub fn iter(&self) -> impl Iterator<Item = (QubitId, Vertex)> + '_ {
        self.slots.iter().enumerate().map(|(i, &v)| (QubitId(i as u32), v))
    }

    /// Checks the map is an injective function from the circuit's qubits into
    /// the non-magic vertices.
    pub fn check(&self, arch: &Architecture, circuit: &Circuit) -> Result<(), MapError> {
        if self.slots.len() != circuit.num_qubits() {
            return Err(MapError::WrongSize { expected: circuit.num_qubits(), found: self.slots.len() });
        }
        let mut owner: Vec<Option<u32>> = vec![None; arch.num_vertices()];
        for (q, v) in self.iter() {
            if !arch.contains(v) {
                return Err(MapError::OutOfRange(q.0));
            }
            if arch.is_magic(v) {
                return Err(MapError::OnMagic(q.0));
            }
            let i = arch.index(v);
            if let Some(other) = owner[i] {
                return Err(MapError::NotInjective(other, q.0));
            }
            owner[i] = Some(q.0);
        }
        Ok(())
    }
}

/// Where mappers may place qubits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Locations {
    /// Centers of isolated 3x3 magic-free subgrids.
    #[default]
    Regular,
    /// Every non-magic vertex.
    All,
}

impl Locations {
    /// Candidate vertices in row-major order.
    pub fn candidates(self, arch: &Architecture) -> Vec<Vertex> {
        match self {
            Locations::Regular => arch.regular_locations().to_vec(),
            Locations::All => arch.non_magic_vertices().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MappingError {
    #[error("{needed} qubits but only {available} candidate locations")]
    NotEnoughLocations { needed: usize, available: usize },
}

fn enough(needed: usize, available: usize) -> Result<(), MappingError> {
    if needed > available {
        Err(MappingError::NotEnoughLocations { needed, available })
    } else {
        Ok(())
    }
}

/// Draws a uniformly random injective map onto the candidate locations.
pub fn random_map<R: Rng + ?Sized>(
    arch: &Architecture,
    circuit: &Circuit,
    locations: Locations,
    rng: &mut R,
) -> Result<QubitMap, MappingError> {
    let mut cands = locations.candidates(arch);
    let n = circuit.num_qubits();
    enough(n, cands.len())?;
    let (chosen, _) = cands.partial_shuffle(rng, n);
    Ok(QubitMap::from_vertices(chosen.to_vec()))
}

/// [`random_map`] driven by a ChaCha8 stream seeded with `seed`.
pub fn random_map_seeded(
    arch: &Architecture,
    circuit: &Circuit,
    locations: Locations,
    seed: u64,
) -> Result<QubitMap, MappingError> {
    random_map(arch, circuit, locations, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The first `n` maps of the random stream for `seed`. Sample `i` of a larger
/// draw equals sample `i` of a smaller one.
pub fn sample_maps(
    arch: &Architecture,
    circuit: &Circuit,
    locations: Locations,
    n: usize,
    seed: u64,
) -> Result<Vec<QubitMap>, MappingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_map(arch, circuit, locations, &mut rng)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BestOfError<E> {
    #[error("best-of-N needs at least one sample")]
    NoSamples,
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error("routing sample {index} failed: {source}")]
    Routing { index: usize, source: E },
}

/// Index of the route with the fewest steps; ties go to the earliest sample.
pub fn select_best<'a, I>(routes: I) -> Option<usize>
where
    I: IntoIterator<Item = &'a GateRoute>,
{
    routes.into_iter().enumerate().min_by_key(|(i, r)| (r.steps, *i)).map(|(i, _)| i)
}

/// Routes `n` random maps with `router` and keeps the best pair.
///
/// Returns the winning map, its route and the sample index.
pub fn best_of_n<E, F>(
    arch: &Architecture,
    circuit: &Circuit,
    locations: Locations,
    n: usize,
    seed: u64,
    mut router: F,
) -> Result<(QubitMap, GateRoute, usize), BestOfError<E>>
where
    F: FnMut(&QubitMap) -> Result<GateRoute, E>,
{
    if n == 0 {
        return Err(BestOfError::NoSamples);
    }
    let maps = sample_maps(arch, circuit, locations, n, seed)?;
    let mut best: Option<(GateRoute, usize)> = None;
    for (index, map) in maps.iter().enumerate() {
        let route = router(map).map_err(|source| BestOfError::Routing { index, source })?;
        if best.as_ref().is_none_or(|(b, _)| route.steps < b.steps) {
            best = Some((route, index));
        }
    }
    let (route, index) = best.expect("n >= 1");
    Ok((maps[index].clone(), route, index))
}

/// Places qubits chain by chain so that interacting qubits end up two steps
/// apart, leaving room for the bend a lattice surgery path needs.
///
/// A chain that touches `T` starts next to a magic state: its first qubit goes
/// to the free candidate closest to (but not adjacent to) the magic vertices,
/// at distance exactly 2 when possible. Otherwise the chain starts at the
/// first free candidate in row-major order. Each following qubit takes the
/// first free candidate at distance 2 from its predecessor, falling back to the
/// first free candidate overall.
pub fn struct_map(arch: &Architecture, circuit: &Circuit, locations: Locations) -> Result<QubitMap, MappingError> {
    let cands = locations.candidates(arch);
    let n = circuit.num_qubits();
    enough(n, cands.len())?;

    let mut is_cand = vec![false; arch.num_vertices()];
    for &v in &cands {
        is_cand[arch.index(v)] = true;
    }
    let mut taken = vec![false; arch.num_vertices()];
    let mut cursor = 0usize;

    // Candidates with distance >= 2 to the nearest magic vertex, nearest first.
    let magic_dist = distance_to_magic(arch);
    let mut near_magic: Vec<Vertex> = cands
        .iter()
        .copied()
        .filter(|&v| magic_dist[arch.index(v)].is_some_and(|d| d >= 2))
        .collect();
    near_magic.sort_by_key(|&v| magic_dist[arch.index(v)]);
    let mut magic_cursor = 0usize;

    let mut slots: Vec<Option<Vertex>> = vec![None; n];
    for chain in circuit.interaction_chain_set().chains {
        let starts_at_t = chain.first() == Some(&ChainNode::T);
        let mut prev: Option<Vertex> = None;
        for node in chain {
            let ChainNode::Qubit(q) = node else { continue };
            let pick = match prev {
                None if starts_at_t => {
                    while magic_cursor < near_magic.len() && taken[arch.index(near_magic[magic_cursor])] {
                        magic_cursor += 1;
                    }
                    near_magic.get(magic_cursor).copied()
                }
                None => None,
                Some(p) => at_distance_two(arch, p).find(|&w| {
                    let i = arch.index(w);
                    is_cand[i] && !taken[i]
                }),
            };
            let v = match pick {
                Some(v) => v,
                None => {
                    while taken[arch.index(cands[cursor])] {
                        cursor += 1;
                    }
                    cands[cursor]
                }
            };
            taken[arch.index(v)] = true;
            slots[q.index()] = Some(v);
            prev = Some(v);
        }
    }
    Ok(QubitMap::from_vertices(slots.into_iter().map(|s| s.expect("every qubit is in a chain")).collect()))
}

/// Vertices at L1 distance 2 from `v` inside the grid, in row-major order.
fn at_distance_two(arch: &Architecture, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
    const OFFSETS: [(i64, i64); 8] = [(0, -2), (-1, -1), (1, -1), (-2, 0), (2, 0), (-1, 1), (1, 1), (0, 2)];
    OFFSETS.iter().filter_map(move |&(da, db)| {
        let a = v.a as i64 + da;
        let b = v.b as i64 + db;
        (a >= 1 && b >= 1).then(|| Vertex::new(a as u32, b as u32)).filter(|&w| arch.contains(w))
    })
}

/// Grid distance from every vertex to the nearest magic vertex.
fn distance_to_magic(arch: &Architecture) -> Vec<Option<u32>> {
    let mut dist = vec![None; arch.num_vertices()];
    let mut queue = VecDeque::new();
    for i in 0..arch.num_vertices() {
        if arch.is_magic_index(i) {
            dist[i] = Some(0);
            queue.push_back(i);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have a distance");
        for w in arch.neighbor_indices(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}
