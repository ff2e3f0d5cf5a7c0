// SPDX-License-Identifier: Apache-2.0

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Circuit, GateKind, QubitId};

/// Vertex of the interaction graph: a circuit qubit, or the distinguished
/// vertex standing for all magic states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainNode {
    T,
    Qubit(QubitId),
}

/// Undirected graph with an edge per interacting qubit pair and an edge
/// `(T, q)` for every qubit that receives a T gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    pub num_qubits: usize,
    /// Normalized so that `edge.0 < edge.1`.
    pub edges: BTreeSet<(ChainNode, ChainNode)>,
}

impl InteractionGraph {
    pub fn new(c: &Circuit) -> Self {
        let mut edges = BTreeSet::new();
        for g in c.gates() {
            let (a, b) = match g.kind {
                GateKind::Cnot { control, target } => (ChainNode::Qubit(control), ChainNode::Qubit(target)),
                GateKind::T { operand } => (ChainNode::T, ChainNode::Qubit(operand)),
            };
            edges.insert(if a < b { (a, b) } else { (b, a) });
        }
        Self { num_qubits: c.num_qubits(), edges }
    }

    pub fn has_edge(&self, a: ChainNode, b: ChainNode) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&key)
    }

    pub fn degree(&self, v: ChainNode) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }
}

/// A path in the interaction graph. When the chain touches `T`, `T` is its
/// first node; otherwise the first node is the qubit of the chain that appears
/// earliest in the circuit.
pub type Chain = Vec<ChainNode>;

/// Vertex-disjoint chains covering every qubit, each with at most one edge to
/// `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionChainSet {
    pub chains: Vec<Chain>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

impl InteractionChainSet {
    /// Single pass over the gates in order, keeping each interaction edge iff
    /// the result is still a chain set. Chains are listed by their earliest
    /// qubit.
    pub fn new(c: &Circuit) -> Self {
        let n = c.num_qubits();
        let mut adj: Vec<Vec<ChainNode>> = vec![Vec::new(); n];
        let mut has_t = vec![false; n];
        let mut dsu = Dsu { parent: (0..n).collect() };
        for g in c.gates() {
            match g.kind {
                GateKind::Cnot { control, target } => {
                    let (a, b) = (control.index(), target.index());
                    if adj[a].len() >= 2 || adj[b].len() >= 2 {
                        continue;
                    }
                    let (ra, rb) = (dsu.find(a), dsu.find(b));
                    if ra == rb || (has_t[ra] && has_t[rb]) {
                        continue;
                    }
                    adj[a].push(ChainNode::Qubit(target));
                    adj[b].push(ChainNode::Qubit(control));
                    dsu.parent[rb] = ra;
                    has_t[ra] |= has_t[rb];
                }
                GateKind::T { operand } => {
                    let q = operand.index();
                    let r = dsu.find(q);
                    if adj[q].len() >= 2 || has_t[r] {
                        continue;
                    }
                    adj[q].push(ChainNode::T);
                    has_t[r] = true;
                }
            }
        }

        let mut seen = vec![false; n];
        let mut chains = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            // Qubits of this component, to find its ends.
            let mut members = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(q) = stack.pop() {
                members.push(q);
                for nb in &adj[q] {
                    if let ChainNode::Qubit(o) = nb {
                        if !seen[o.index()] {
                            seen[o.index()] = true;
                            stack.push(o.index());
                        }
                    }
                }
            }
            let qubit_degree = |q: usize| adj[q].iter().filter(|x| matches!(x, ChainNode::Qubit(_))).count();
            let head = members
                .iter()
                .copied()
                .find(|&q| adj[q].contains(&ChainNode::T))
                .unwrap_or_else(|| {
                    members.iter().copied().filter(|&q| qubit_degree(q) <= 1).min().expect("chain has an end")
                });
            let mut chain = Vec::with_capacity(members.len() + 1);
            if adj[head].contains(&ChainNode::T) {
                chain.push(ChainNode::T);
            }
            let mut prev: Option<usize> = None;
            let mut cur = head;
            loop {
                chain.push(ChainNode::Qubit(QubitId(cur as u32)));
                let next = adj[cur].iter().find_map(|nb| match nb {
                    ChainNode::Qubit(o) if Some(o.index()) != prev => Some(o.index()),
                    _ => None,
                });
                match next {
                    Some(nx) => {
                        prev = Some(cur);
                        cur = nx;
                    }
                    None => break,
                }
            }
            chains.push(chain);
        }
        Self { chains }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}
