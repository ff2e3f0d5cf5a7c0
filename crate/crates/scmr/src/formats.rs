// SPDX-License-Identifier: Apache-2.0

//! JSON files for architectures, maps, routes and job sets, and the text
//! output of DIMACS solvers.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use scmr_core::bench::JobPoset;
use scmr_core::sat::{Model, SatOutcome};
use scmr_core::{Architecture, Circuit, GateRoute, Path, QubitMap, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid architecture: {0}")]
    Arch(#[from] scmr_core::arch::ArchError),
    #[error("map names unknown qubit `{0}`")]
    UnknownQubit(String),
    #[error("map misses qubit `{0}`")]
    MissingQubit(String),
    #[error("unknown job `{0}`")]
    UnknownJob(String),
    #[error("{0}")]
    Bench(#[from] scmr_core::bench::BenchError),
    #[error("solver output: {0}")]
    SolverOutput(String),
}

fn pair(v: Vertex) -> [u32; 2] {
    [v.a, v.b]
}

fn vertex(p: [u32; 2]) -> Vertex {
    Vertex::new(p[0], p[1])
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ArchFile {
    pub rows: u32,
    pub cols: u32,
    pub magic: Vec<[u32; 2]>,
}

pub fn arch_to_json(arch: &Architecture) -> String {
    let file = ArchFile { rows: arch.rows(), cols: arch.cols(), magic: arch.magic_vertices().map(pair).collect() };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

pub fn arch_from_json(text: &str) -> Result<Architecture, FormatError> {
    let file: ArchFile = serde_json::from_str(text)?;
    let magic: Vec<Vertex> = file.magic.into_iter().map(vertex).collect();
    Ok(Architecture::custom(file.rows, file.cols, &magic)?)
}

/// `{"<qubit>": [a, b], ...}` in qubit order.
pub fn map_to_json(circuit: &Circuit, map: &QubitMap) -> String {
    let obj: Map<String, Value> = map
        .iter()
        .map(|(q, v)| (circuit.qubit_name(q).to_string(), serde_json::json!(pair(v))))
        .collect();
    serde_json::to_string_pretty(&obj).expect("plain data serializes")
}

pub fn map_from_json(circuit: &Circuit, text: &str) -> Result<QubitMap, FormatError> {
    let obj: std::collections::BTreeMap<String, [u32; 2]> = serde_json::from_str(text)?;
    for name in obj.keys() {
        if circuit.qubit_id(name).is_none() {
            return Err(FormatError::UnknownQubit(name.clone()));
        }
    }
    let slots = circuit
        .qubit_names()
        .iter()
        .map(|n| obj.get(n).map(|&p| vertex(p)).ok_or_else(|| FormatError::MissingQubit(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QubitMap::from_vertices(slots))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RouteFile {
    pub steps: usize,
    pub gates: Vec<GateEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GateEntry {
    pub index: usize,
    pub step: usize,
    pub path: Vec<[u32; 2]>,
}

pub fn route_to_json(route: &GateRoute) -> String {
    let gates = route
        .time
        .iter()
        .zip(&route.space)
        .enumerate()
        .map(|(index, (&step, path))| GateEntry { index, step, path: path.vertices().iter().copied().map(pair).collect() })
        .collect();
    serde_json::to_string_pretty(&RouteFile { steps: route.steps, gates }).expect("plain data serializes")
}

/// Gates missing from the file get step 0 and an empty path, which the
/// validator reports.
pub fn route_from_json(circuit: &Circuit, text: &str) -> Result<GateRoute, FormatError> {
    let file: RouteFile = serde_json::from_str(text)?;
    let n = circuit.len().max(file.gates.iter().map(|g| g.index + 1).max().unwrap_or(0));
    let mut time = vec![0; n];
    let mut space = vec![Path::default(); n];
    for g in file.gates {
        time[g.index] = g.step;
        space[g.index] = Path(g.path.into_iter().map(vertex).collect());
    }
    Ok(GateRoute { steps: file.steps, time, space })
}

/// `{"jobs": ["A", ...], "edges": [["A", "B"], ...]}`, edges meaning the
/// first job runs before the second.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JobsFile {
    pub jobs: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

pub fn jobs_from_json(text: &str) -> Result<JobPoset, FormatError> {
    let file: JobsFile = serde_json::from_str(text)?;
    let find = |n: &str| file.jobs.iter().position(|j| j == n).ok_or_else(|| FormatError::UnknownJob(n.into()));
    let edges = file.edges.iter().map(|[a, b]| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>, FormatError>>()?;
    Ok(JobPoset::new(file.jobs.clone(), &edges)?)
}

/// Reads the standard competition output of a SAT solver: an `s` status line
/// and `v` lines of literals.
pub fn parse_solver_output(text: &str, num_vars: u32) -> Result<SatOutcome, FormatError> {
    let mut status = None;
    let mut lits = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| FormatError::SolverOutput(format!("bad literal `{tok}`")))?;
                if l != 0 {
                    lits.push(l);
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(SatOutcome::Sat(Model::from_literals(num_vars, lits))),
        Some("UNSATISFIABLE") => Ok(SatOutcome::Unsat),
        Some("UNKNOWN") | None => Ok(SatOutcome::Unknown),
        Some(other) => Err(FormatError::SolverOutput(format!("unexpected status `{other}`"))),
    }
}
