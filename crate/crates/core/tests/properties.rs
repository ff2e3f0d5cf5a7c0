// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use proptest::prelude::*;

use scmr_core::arch::Architecture;
use scmr_core::bench::{known_optimal, random_circuit};
use scmr_core::circuit::{parse_circuit, ChainNode};
use scmr_core::mapping::{random_map_seeded, sample_maps, struct_map, Locations};
use scmr_core::routing::{greedy_route, shortest_first, shortest_legal_path, Request};
use scmr_core::{validate, Circuit, QubitMap, Vertex};

fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..8, prop::collection::vec((any::<bool>(), 0u32..8, 0u32..8), 0..30)).prop_map(|(n, ops)| {
        let mut c = Circuit::new();
        for (is_t, a, b) in ops {
            let (a, b) = (format!("q{}", a as usize % n), format!("q{}", b as usize % n));
            if is_t || a == b {
                c.t(&a).unwrap();
            } else {
                c.cnot(&a, &b).unwrap();
            }
        }
        c
    })
}

/// A small grid with a few magic vertices.
fn grid() -> impl Strategy<Value = Architecture> {
    (2u32..6, 2u32..6, prop::collection::vec((0u32..6, 0u32..6), 0..4)).prop_map(|(rows, cols, magic)| {
        let magic: BTreeSet<Vertex> = magic.into_iter().map(|(a, b)| Vertex::new(a % cols + 1, b % rows + 1)).collect();
        Architecture::custom(rows, cols, &magic.into_iter().collect::<Vec<_>>()).unwrap()
    })
}

fn legal(arch: &Architecture, blocked: &BTreeSet<Vertex>, req: &Request, p: &[Vertex]) -> bool {
    p.len() >= 3
        && p[0] == req.source
        && p[0].is_vertical_neighbor(p[1])
        && p[p.len() - 2].is_horizontal_neighbor(p[p.len() - 1])
        && req.sinks.contains(&p[p.len() - 1])
        && p.windows(2).all(|w| w[0].is_adjacent(w[1]))
        && p[1..p.len() - 1].iter().all(|v| arch.contains(*v) && !arch.is_magic(*v) && !blocked.contains(v))
}

proptest! {
    #[test]
    fn layering_is_a_partition_into_antichains(c in circuit()) {
        let layers = c.layering();
        prop_assert_eq!(layers.len(), c.depth());
        prop_assert!(c.depth() <= c.len());
        let mut layer_of = vec![usize::MAX; c.len()];
        for (i, l) in layers.iter().enumerate() {
            prop_assert!(!l.is_empty());
            for &g in l {
                prop_assert_eq!(layer_of[g], usize::MAX);
                layer_of[g] = i;
            }
            for (x, &g) in l.iter().enumerate() {
                for &h in &l[x + 1..] {
                    prop_assert!(!c.gates()[g].shares_qubit(&c.gates()[h]));
                }
            }
        }
        for j in 0..c.len() {
            prop_assert!(layer_of[j] != usize::MAX);
            for i in 0..j {
                if c.gates()[i].shares_qubit(&c.gates()[j]) {
                    prop_assert!(layer_of[i] < layer_of[j]);
                }
            }
            // A gate in layer i > 0 has a predecessor in layer i - 1.
            if layer_of[j] > 0 {
                prop_assert!((0..j).any(|i| c.gates()[i].shares_qubit(&c.gates()[j]) && layer_of[i] + 1 == layer_of[j]));
            }
        }
    }

    #[test]
    fn text_round_trip(c in circuit()) {
        prop_assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn chains_cover_qubits_once(c in circuit()) {
        let graph = c.interaction_graph();
        let chains = c.interaction_chain_set();
        let mut seen = vec![0; c.num_qubits()];
        for chain in &chains.chains {
            for (i, node) in chain.iter().enumerate() {
                match node {
                    ChainNode::Qubit(q) => seen[q.index()] += 1,
                    ChainNode::T => prop_assert!(i == 0 || i + 1 == chain.len()),
                }
            }
            prop_assert!(chain.iter().filter(|n| **n == ChainNode::T).count() <= 1);
            for w in chain.windows(2) {
                prop_assert!(graph.has_edge(w[0], w[1]));
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
    }

    #[test]
    fn maps_are_injective_and_off_magic(c in circuit(), seed in any::<u64>()) {
        let arch = Architecture::bordered(c.num_qubits());
        for map in [random_map_seeded(&arch, &c, Locations::Regular, seed).unwrap(), struct_map(&arch, &c, Locations::Regular).unwrap()] {
            prop_assert!(map.check(&arch, &c).is_ok());
            let distinct: BTreeSet<Vertex> = map.vertices().iter().copied().collect();
            prop_assert_eq!(distinct.len(), c.num_qubits());
            prop_assert!(map.vertices().iter().all(|v| arch.regular_locations().contains(v)));
        }
    }

    #[test]
    fn sample_prefixes_agree(c in circuit(), seed in any::<u64>(), n in 1usize..6) {
        let arch = Architecture::right_column(c.num_qubits());
        let short = sample_maps(&arch, &c, Locations::All, n, seed).unwrap();
        let long = sample_maps(&arch, &c, Locations::All, n + 3, seed).unwrap();
        prop_assert_eq!(&long[..n], &short[..]);
    }

    #[test]
    fn shortest_first_is_disjoint_legal_and_maximal(
        arch in grid(),
        picks in prop::collection::vec((0usize..64, 0usize..64, any::<bool>()), 1..6),
    ) {
        let free: Vec<Vertex> = arch.non_magic_vertices().collect();
        prop_assume!(!free.is_empty());
        let magic: Vec<Vertex> = arch.magic_vertices().collect();
        let mut taken = BTreeSet::new();
        let mut requests = Vec::new();
        for (gate, (s, t, is_t)) in picks.into_iter().enumerate() {
            let (s, t) = (free[s % free.len()], free[t % free.len()]);
            if taken.contains(&s) || taken.contains(&t) || (s == t && !is_t) {
                continue;
            }
            taken.insert(s);
            let sinks = if is_t { magic.clone() } else { taken.insert(t); vec![t] };
            requests.push(Request { gate, source: s, sinks });
        }
        let blocked = taken.clone();
        let routed = shortest_first(&arch, &requests, &blocked);
        let mut used = BTreeSet::new();
        for (gate, path) in &routed {
            let req = requests.iter().find(|r| r.gate == *gate).unwrap();
            prop_assert!(legal(&arch, &blocked, req, path.vertices()));
            for v in path.vertices() {
                prop_assert!(used.insert(*v), "paths overlap at {:?}", v);
            }
        }
        for req in &requests {
            if routed.iter().any(|(g, _)| *g == req.gate) || used.contains(&req.source) {
                continue;
            }
            let sinks: Vec<Vertex> = req.sinks.iter().copied().filter(|v| !used.contains(v)).collect();
            let residual: BTreeSet<Vertex> = blocked.union(&used).copied().collect();
            prop_assert!(shortest_legal_path(&arch, &residual, req.source, &sinks).is_none());
        }
    }

    #[test]
    fn shortest_legal_path_is_legal_and_spans_the_distance(arch in grid(), s in 0usize..64, t in 0usize..64) {
        let free: Vec<Vertex> = arch.non_magic_vertices().collect();
        prop_assume!(!free.is_empty());
        let (s, t) = (free[s % free.len()], free[t % free.len()]);
        prop_assume!(s != t);
        let blocked: BTreeSet<Vertex> = [s, t].into_iter().collect();
        let req = Request { gate: 0, source: s, sinks: vec![t] };
        if let Some(p) = shortest_legal_path(&arch, &blocked, s, &[t]) {
            prop_assert!(legal(&arch, &blocked, &req, p.vertices()));
            prop_assert!(p.len() > s.l1(t) as usize);
        }
    }

    #[test]
    fn greedy_routes_validate_and_respect_depth(q in 1usize..10, depth in 0usize..8, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let c = random_circuit(q, depth, frac, seed).unwrap();
        let center = Architecture::center_column(q, true).unwrap();
        for arch in [Architecture::bordered(q), Architecture::right_column(q), center] {
            let map: QubitMap = random_map_seeded(&arch, &c, Locations::Regular, seed).unwrap();
            let route = greedy_route(&arch, &c, &map).unwrap();
            prop_assert!(validate(&arch, &c, &map, &route).is_ok());
            prop_assert!(route.steps >= c.depth());
        }
    }

    #[test]
    fn known_optimal_has_requested_depth(d in 1usize..12, k in 1usize..12, rho in 0.05f64..=1.0, seed in any::<u64>()) {
        let c = known_optimal(d, k, rho, seed).unwrap();
        prop_assert_eq!(c.depth(), d);
        prop_assert_eq!(c.num_qubits(), 2 * k);
        let per_layer = ((rho * k as f64) - 1e-9).ceil().max(1.0) as usize;
        prop_assert_eq!(c.len(), d * per_layer);
    }
}
