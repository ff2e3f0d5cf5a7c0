// SPDX-License-Identifier: Apache-2.0

//! Scheduling-problem instances: jobs with precedence constraints run on
//! processor units, expressed as a mapping and routing instance.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{name, BenchError};
use crate::arch::{Architecture, Vertex};
use crate::circuit::Circuit;

/// Jobs `0..n` with precedence pairs `(before, after)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobPoset {
    names: Vec<String>,
    /// Cover relation, sorted.
    hasse: Vec<(usize, usize)>,
    topo: Vec<usize>,
}

impl JobPoset {
    /// Builds the poset generated by `edges`. Redundant edges are dropped.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, BenchError> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(BenchError::UnknownJob(a.max(b)));
            }
            if a == b {
                return Err(BenchError::CyclicJobs);
            }
            succ[a].push(b);
        }
        // Kahn's algorithm, smallest ready job first.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut ready: alloc::collections::BTreeSet<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(j) = ready.pop_first() {
            topo.push(j);
            for &b in &succ[j] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        if topo.len() != n {
            return Err(BenchError::CyclicJobs);
        }
        // reach[a][b]: b is reachable from a by a path of length >= 1.
        let mut reach = vec![vec![false; n]; n];
        for &a in topo.iter().rev() {
            for &b in &succ[a] {
                reach[a][b] = true;
                for c in 0..n {
                    if reach[b][c] {
                        reach[a][c] = true;
                    }
                }
            }
        }
        let mut hasse: Vec<(usize, usize)> = Vec::new();
        for a in 0..n {
            for &b in &succ[a] {
                let implied = succ[a].iter().any(|&m| m != b && reach[m][b]);
                if !implied {
                    hasse.push((a, b));
                }
            }
        }
        hasse.sort_unstable();
        hasse.dedup();
        Ok(Self { names, hasse, topo })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Largest in- or out-degree in the cover relation.
    pub fn max_degree(&self) -> usize {
        let n = self.len();
        let (mut din, mut dout) = (vec![0usize; n], vec![0usize; n]);
        for &(a, b) in &self.hasse {
            dout[a] += 1;
            din[b] += 1;
        }
        din.into_iter().chain(dout).max().unwrap_or(0)
    }

    /// True iff `a` must run before `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &(p, q) in &self.hasse {
                if p == x && !seen[q] {
                    if q == b {
                        return true;
                    }
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        false
    }
}

fn job_qubit(job: usize, i: usize) -> String {
    name("j", job, i)
}

/// Gadget for one job with `d + 1` qubits `j<job>_0..=j<job>_d`: CNOTs from
/// qubit 0 to each other qubit, a T on qubit 0, then the CNOTs again.
pub fn job_gadget(job: usize, d: usize) -> Circuit {
    let mut c = Circuit::new();
    let hub = job_qubit(job, 0);
    c.qubit(&hub);
    for i in 1..=d {
        c.qubit(&job_qubit(job, i));
    }
    for i in 1..=d {
        c.cnot(&hub, &job_qubit(job, i)).expect("distinct");
    }
    c.t(&hub).expect("known");
    for i in 1..=d {
        c.cnot(&hub, &job_qubit(job, i)).expect("distinct");
    }
    c
}

/// Job gadgets in topological order, each preceded by one CNOT per incoming
/// cover edge. The edge `a -> b` joins qubit `i` of `a` to qubit `i'` of `b`,
/// where `i` ranks `b` among the successors of `a` and `i'` ranks `a` among
/// the predecessors of `b` (both 1-based, in job order).
///
/// The T gate of job `a` precedes the T gate of job `b` in the dependency
/// order exactly when `a` precedes `b` in the poset.
pub fn dependency_circuit(jobs: &JobPoset) -> Circuit {
    let d = jobs.max_degree();
    let n = jobs.len();
    let mut out_rank = vec![Vec::new(); n];
    let mut in_rank = vec![Vec::new(); n];
    for &(a, b) in jobs.hasse_edges() {
        out_rank[a].push(b);
        in_rank[b].push(a);
    }
    for r in out_rank.iter_mut().chain(in_rank.iter_mut()) {
        r.sort_unstable();
    }
    let rank = |list: &[usize], x: usize| 1 + list.iter().position(|&y| y == x).expect("edge present");

    let mut c = Circuit::new();
    for &b in &jobs.topo {
        for &a in &in_rank[b] {
            c.cnot(&job_qubit(a, rank(&out_rank[a], b)), &job_qubit(b, rank(&in_rank[b], a))).expect("distinct");
        }
        c.extend_from(&job_gadget(b, d));
    }
    c
}

/// `k` independent two-qubit chains `c<u>_0`, `c<u>_1`. Each of the `t_p`
/// cycles applies `d` T gates to `c<u>_0`, a CNOT `c<u>_0 -> c<u>_1`, and `d`
/// more T gates; consecutive cycles are separated by `d*k` T gates.
pub fn cycle_circuit(d: usize, k: usize, t_p: usize) -> Result<Circuit, BenchError> {
    if k == 0 || t_p == 0 {
        return Err(BenchError::InvalidParameter("k and t_p must be positive"));
    }
    let mut c = Circuit::new();
    for u in 0..k {
        let (a, b) = (name("c", u, 0), name("c", u, 1));
        c.qubit(&a);
        c.qubit(&b);
        for cycle in 0..t_p {
            if cycle > 0 {
                for _ in 0..d * k {
                    c.t(&a).expect("known");
                }
            }
            for _ in 0..d {
                c.t(&a).expect("known");
            }
            c.cnot(&a, &b).expect("distinct");
            for _ in 0..d {
                c.t(&a).expect("known");
            }
        }
    }
    Ok(c)
}

/// Step budget of the scheduling instance: the length of each cycle chain.
pub fn psp_horizon(d: usize, k: usize, t_p: usize) -> usize {
    (2 * d + 1) * t_p + d * k * (t_p - 1)
}

#[derive(Clone, Debug)]
pub struct PspInstance {
    pub arch: Architecture,
    pub circuit: Circuit,
    pub t_s: usize,
}

/// Encodes scheduling `jobs` on `k` processors within `t_p` rounds.
///
/// The architecture chains `k` processor units of 4 rows and `6|J| + 1`
/// columns left to right; each unit has one magic vertex in its third row and
/// second-to-last column.
pub fn psp_to_scmr(jobs: &JobPoset, k: usize, t_p: usize) -> Result<PspInstance, BenchError> {
    if jobs.is_empty() {
        return Err(BenchError::InvalidParameter("at least one job is needed"));
    }
    let d = jobs.max_degree();
    let mut circuit = dependency_circuit(jobs);
    circuit.extend_from(&cycle_circuit(d, k, t_p)?);
    let unit = 6 * jobs.len() as u32 + 1;
    let magic: Vec<Vertex> = (1..=k as u32).map(|u| Vertex::new(u * unit - 1, 3)).collect();
    let arch = Architecture::custom(4, k as u32 * unit, &magic).expect("magic inside grid");
    Ok(PspInstance { arch, circuit, t_s: psp_horizon(d, k, t_p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn fig8a() -> JobPoset {
        let names = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
        JobPoset::new(names, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn gadget_sizes() {
        let g = job_gadget(0, 3);
        assert_eq!((g.len(), g.num_qubits()), (7, 4));
        assert_eq!(alloc::format!("{}", job_gadget(0, 0)), "T j0_0;\n");
        assert_eq!(alloc::format!("{}", job_gadget(2, 1)), "CNOT j2_0 j2_1;\nT j2_0;\nCNOT j2_0 j2_1;\n");
    }

    #[test]
    fn fig8_dependency_circuit() {
        let jobs = fig8a();
        assert_eq!(jobs.max_degree(), 3);
        let c = dependency_circuit(&jobs);
        assert_eq!(c.len(), 4 * 7 + 3);
        assert_eq!(c.num_qubits(), 16);
    }

    #[test]
    fn transitive_edges_dropped() {
        let names = (0..3).map(|i| i.to_string()).collect();
        let p = JobPoset::new(names, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.hasse_edges(), &[(0, 1), (1, 2)]);
        assert!(p.precedes(0, 2));
        assert!(!p.precedes(2, 0));
    }

    #[test]
    fn cyclic_jobs_rejected() {
        let names = (0..2).map(|i| i.to_string()).collect();
        assert_eq!(JobPoset::new(names, &[(0, 1), (1, 0)]), Err(BenchError::CyclicJobs));
    }

    #[test]
    fn cycle_chain_lengths() {
        assert_eq!(cycle_circuit(3, 2, 2).unwrap().depth(), 20);
        assert_eq!(cycle_circuit(1, 1, 2).unwrap().depth(), 7);
        let c = cycle_circuit(2, 3, 1).unwrap();
        assert_eq!(c.len(), 3 * 5);
        assert_eq!(c.depth(), 5);
    }

    #[test]
    fn fig8_psp_instance() {
        let inst = psp_to_scmr(&fig8a(), 2, 2).unwrap();
        assert_eq!(inst.t_s, 20);
        assert_eq!(inst.arch.num_magic(), 2);
        assert_eq!((inst.arch.rows(), inst.arch.cols()), (4, 50));
        assert!(inst.arch.is_magic(Vertex::new(24, 3)));
        assert!(inst.arch.is_magic(Vertex::new(49, 3)));
        let single = JobPoset::new(alloc::vec!["A".to_string()], &[]).unwrap();
        assert_eq!(psp_to_scmr(&single, 1, 1).unwrap().t_s, 1);
    }
}
