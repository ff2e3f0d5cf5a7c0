// SPDX-License-Identifier: Apache-2.0

//! Legal lattice-surgery paths and the layer-by-layer greedy router.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::arch::{Architecture, Vertex};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::mapping::{MapError, QubitMap};

/// A simple path of grid vertices, endpoints included.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Vertex>);

impl Path {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Vertices strictly between the endpoints.
    pub fn internal(&self) -> &[Vertex] {
        if self.0.len() < 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }
}

/// Execution step (1-based) and path for every gate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GateRoute {
    pub steps: usize,
    pub time: Vec<usize>,
    pub space: Vec<Path>,
}

impl GateRoute {
    /// Gate indices executed at `step`, in increasing order.
    pub fn gates_at(&self, step: usize) -> impl Iterator<Item = usize> + '_ {
        self.time.iter().enumerate().filter(move |(_, &t)| t == step).map(|(g, _)| g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoutingError {
    #[error("invalid map: {0}")]
    InvalidMap(#[from] MapError),
    #[error("gate {gate} has no legal path under this map")]
    Unroutable { gate: usize },
}

/// A gate waiting to be routed: a path from `source` entering one of `sinks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub gate: usize,
    pub source: Vertex,
    pub sinks: Vec<Vertex>,
}

impl Request {
    /// The request for `gate` under `map`: the target for a CNOT, every
    /// magic vertex for a T gate.
    pub fn for_gate(arch: &Architecture, map: &QubitMap, gate: &Gate) -> Self {
        let sinks = match gate.kind {
            GateKind::Cnot { target, .. } => vec![map.get(target)],
            GateKind::T { .. } => arch.magic_vertices().collect(),
        };
        Self { gate: gate.index, source: map.get(gate.source()), sinks }
    }
}

/// Index-level request used inside the router.
struct Job {
    gate: usize,
    source: usize,
    sinks: Vec<usize>,
}

/// Shortest path search with orientation rules on dense indices.
///
/// Only the first edge (vertical) and the last edge (horizontal) are
/// constrained, so a plain BFS over the free vertices suffices: distances are
/// measured backwards from the free vertices that horizontally touch a sink,
/// and the path is rebuilt by always stepping to the smallest vertex that
/// lowers the distance. This yields the lexicographically smallest path among
/// the shortest ones.
struct Search<'a> {
    arch: &'a Architecture,
    dist: Vec<u32>,
    queue: VecDeque<usize>,
    is_sink: Vec<bool>,
}

const UNSEEN: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(arch: &'a Architecture) -> Self {
        let n = arch.num_vertices();
        Self { arch, dist: vec![UNSEEN; n], queue: VecDeque::new(), is_sink: vec![false; n] }
    }

    /// `no_internal[v]` forbids `v` inside a path; `used[v]` forbids it
    /// anywhere.
    fn run(&mut self, no_internal: &[bool], used: &[bool], source: usize, sinks: &[usize]) -> Option<Vec<usize>> {
        let arch = self.arch;
        if used[source] {
            return None;
        }
        for &s in sinks {
            self.is_sink[s] = true;
        }
        let free = |v: usize, is_sink: &[bool]| {
            !no_internal[v] && !used[v] && !arch.is_magic_index(v) && v != source && !is_sink[v]
        };

        self.dist.fill(UNSEEN);
        self.queue.clear();
        for &s in sinks {
            if used[s] {
                continue;
            }
            for u in arch.horizontal_indices(s) {
                if self.dist[u] == UNSEEN && free(u, &self.is_sink) {
                    self.dist[u] = 0;
                    self.queue.push_back(u);
                }
            }
        }
        while let Some(u) = self.queue.pop_front() {
            for w in arch.neighbor_indices(u) {
                if self.dist[w] == UNSEEN && free(w, &self.is_sink) {
                    self.dist[w] = self.dist[u] + 1;
                    self.queue.push_back(w);
                }
            }
        }

        let vertex = |i: usize| arch.vertex(i);
        let first = arch
            .vertical_indices(source)
            .filter(|&v| self.dist[v] != UNSEEN && free(v, &self.is_sink))
            .min_by_key(|&v| (self.dist[v], vertex(v)));
        let result = first.map(|v1| {
            let mut path = Vec::with_capacity(self.dist[v1] as usize + 3);
            path.push(source);
            let mut cur = v1;
            path.push(cur);
            while self.dist[cur] > 0 {
                let d = self.dist[cur] - 1;
                cur = arch
                    .neighbor_indices(cur)
                    .filter(|&w| self.dist[w] == d && free(w, &self.is_sink))
                    .min_by_key(|&w| vertex(w))
                    .expect("distance decreases along some neighbor");
                path.push(cur);
            }
            let sink = arch
                .horizontal_indices(cur)
                .filter(|&s| self.is_sink[s] && !used[s])
                .min_by_key(|&s| vertex(s))
                .expect("distance zero vertices touch a sink");
            path.push(sink);
            path
        });

        for &s in sinks {
            self.is_sink[s] = false;
        }
        result
    }
}

fn to_path(arch: &Architecture, idx: &[usize]) -> Path {
    Path(idx.iter().map(|&i| arch.vertex(i)).collect())
}

fn dense_set(arch: &Architecture, set: &BTreeSet<Vertex>) -> Vec<bool> {
    let mut out = vec![false; arch.num_vertices()];
    for &v in set {
        if arch.contains(v) {
            out[arch.index(v)] = true;
        }
    }
    out
}

/// Shortest legal path from `source` to one of `sinks`.
///
/// The path leaves `source` through a vertical neighbor, enters its sink
/// through a horizontal neighbor, and has no magic vertex and no vertex of
/// `blocked` in its interior. Among shortest paths the lexicographically
/// smallest vertex sequence is returned.
pub fn shortest_legal_path(
    arch: &Architecture,
    blocked: &BTreeSet<Vertex>,
    source: Vertex,
    sinks: &[Vertex],
) -> Option<Path> {
    if !arch.contains(source) {
        return None;
    }
    let no_internal = dense_set(arch, blocked);
    let used = vec![false; arch.num_vertices()];
    let sinks: Vec<usize> = sinks.iter().filter(|v| arch.contains(**v)).map(|&v| arch.index(v)).collect();
    Search::new(arch).run(&no_internal, &used, arch.index(source), &sinks).map(|p| to_path(arch, &p))
}

/// Routes requests one at a time, always taking the one whose shortest legal
/// path is currently shortest (ties to the lower gate index), and removes the
/// vertices of each chosen path from the grid. Stops when nothing else fits.
///
/// `blocked` vertices may not appear inside any path.
pub fn shortest_first(arch: &Architecture, requests: &[Request], blocked: &BTreeSet<Vertex>) -> Vec<(usize, Path)> {
    let no_internal = dense_set(arch, blocked);
    let jobs: Vec<Job> = requests
        .iter()
        .map(|r| Job {
            gate: r.gate,
            source: arch.index(r.source),
            sinks: r.sinks.iter().map(|&v| arch.index(v)).collect(),
        })
        .collect();
    let mut used = vec![false; arch.num_vertices()];
    let mut search = Search::new(arch);
    route_step(&mut search, &no_internal, &jobs, &mut used)
        .into_iter()
        .map(|(j, p)| (jobs[j].gate, to_path(arch, &p)))
        .collect()
}

/// One step of shortest-first routing over `jobs`; returns job positions with
/// their paths in the order they were chosen.
///
/// A cached path stays optimal for its job while it avoids every vertex used
/// since it was computed, so only invalidated jobs are searched again.
fn route_step(search: &mut Search<'_>, no_internal: &[bool], jobs: &[Job], used: &mut [bool]) -> Vec<(usize, Vec<usize>)> {
    let mut cache: Vec<Option<Vec<usize>>> = vec![None; jobs.len()];
    let mut live: Vec<usize> = (0..jobs.len()).collect();
    let mut stale = vec![true; jobs.len()];
    let mut out = Vec::new();
    loop {
        live.retain(|&j| {
            if stale[j] || cache[j].as_ref().is_some_and(|p| p.iter().any(|&v| used[v])) {
                let job = &jobs[j];
                cache[j] = search.run(no_internal, used, job.source, &job.sinks);
                stale[j] = false;
            }
            // The residual grid only shrinks, so an unroutable job stays so.
            cache[j].is_some()
        });
        let Some(&best) = live.iter().min_by_key(|&&j| (cache[j].as_ref().map_or(usize::MAX, Vec::len), jobs[j].gate))
        else {
            break;
        };
        let path = cache[best].take().expect("live jobs have a path");
        for &v in &path {
            used[v] = true;
        }
        live.retain(|&j| j != best);
        out.push((best, path));
    }
    out
}

/// Greedy router: gates are taken layer by layer, and each layer is split
/// into steps by repeated [`shortest_first`] calls until all of its gates are
/// routed.
pub fn greedy_route(arch: &Architecture, circuit: &Circuit, map: &QubitMap) -> Result<GateRoute, RoutingError> {
    map.check(arch, circuit)?;
    let mut no_internal = vec![false; arch.num_vertices()];
    for &v in map.vertices() {
        no_internal[arch.index(v)] = true;
    }
    let magic: Vec<usize> = (0..arch.num_vertices()).filter(|&i| arch.is_magic_index(i)).collect();

    let n = circuit.len();
    let mut time = vec![0usize; n];
    let mut space = vec![Path::default(); n];
    let mut steps = 0;
    let mut search = Search::new(arch);
    let mut used = vec![false; arch.num_vertices()];

    for layer in circuit.layering().iter() {
        let mut pending: Vec<Job> = layer
            .iter()
            .map(|&g| {
                let gate = &circuit.gates()[g];
                let sinks = match gate.kind {
                    GateKind::Cnot { target, .. } => vec![arch.index(map.get(target))],
                    GateKind::T { .. } => magic.clone(),
                };
                Job { gate: g, source: arch.index(map.get(gate.source())), sinks }
            })
            .collect();
        while !pending.is_empty() {
            used.fill(false);
            let routed = route_step(&mut search, &no_internal, &pending, &mut used);
            if routed.is_empty() {
                return Err(RoutingError::Unroutable { gate: pending[0].gate });
            }
            steps += 1;
            let mut done = vec![false; pending.len()];
            for (j, p) in routed {
                done[j] = true;
                time[pending[j].gate] = steps;
                space[pending[j].gate] = to_path(arch, &p);
            }
            let mut k = 0;
            pending.retain(|_| {
                k += 1;
                !done[k - 1]
            });
        }
    }
    Ok(GateRoute { steps, time, space })
}
