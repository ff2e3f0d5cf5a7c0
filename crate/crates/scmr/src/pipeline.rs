// SPDX-License-Identifier: Apache-2.0

//! Mapper and router combinations, and the metrics record of a compile run.

use std::fmt;
use std::fs::OpenOptions;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use scmr_core::mapping::{sample_maps, select_best, struct_map, Locations, MappingError};
use scmr_core::routing::{greedy_route, RoutingError};
use scmr_core::sat::{solve_optimal, OptimalError, OptimalOptions, Probe, SatBackend};
use scmr_core::{Architecture, Circuit, GateRoute, QubitMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mapper {
    Optimal,
    Struct,
    /// Best of this many uniform random maps.
    Random(usize),
}

impl FromStr for Mapper {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "optimal" => Ok(Mapper::Optimal),
            "struct" => Ok(Mapper::Struct),
            _ => {
                let n = s
                    .strip_prefix("rand:")
                    .or_else(|| s.strip_prefix("rand"))
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| format!("unknown mapper `{s}`; expected optimal, struct or rand:<N>"))?;
                Ok(Mapper::Random(n))
            }
        }
    }
}

impl fmt::Display for Mapper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mapper::Optimal => write!(f, "optimal"),
            Mapper::Struct => write!(f, "struct"),
            Mapper::Random(n) => write!(f, "rand{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Router {
    Optimal,
    Greedy,
}

impl fmt::Display for Router {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Router::Optimal => "optimal",
            Router::Greedy => "greedy",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CompileOptions {
    pub mapper: Mapper,
    pub router: Router,
    pub seed: u64,
    pub locations: Locations,
    /// Horizon cap and encoding switches for the optimal router; `t_max`
    /// of zero means the gate count.
    pub optimal: OptimalOptions,
    /// Threads for routing random samples; 0 lets rayon decide.
    pub jobs: usize,
}

impl CompileOptions {
    pub fn new(mapper: Mapper, router: Router) -> Self {
        Self {
            mapper,
            router,
            seed: 0,
            locations: Locations::Regular,
            optimal: OptimalOptions::with_cap(0),
            jobs: 0,
        }
    }

    pub fn pipeline(&self) -> String {
        format!("{}-{}", self.mapper, self.router)
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub map: QubitMap,
    pub route: GateRoute,
    /// Set for the optimal router.
    pub proven_optimal: Option<bool>,
    pub probes: Vec<Probe>,
}

#[derive(Debug, thiserror::Error)]
pub enum CompileError {
    #[error("{0}")]
    Usage(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("timeout: {0}")]
    Timeout(String),
    #[error("{0}")]
    Backend(String),
}

impl From<MappingError> for CompileError {
    fn from(e: MappingError) -> Self {
        CompileError::Infeasible(e.to_string())
    }
}

impl From<RoutingError> for CompileError {
    fn from(e: RoutingError) -> Self {
        CompileError::Infeasible(e.to_string())
    }
}

impl From<OptimalError> for CompileError {
    fn from(e: OptimalError) -> Self {
        match e {
            OptimalError::Timeout { .. } => CompileError::Timeout(e.to_string()),
            OptimalError::Backend(_) | OptimalError::Decode(_) => CompileError::Backend(e.to_string()),
            OptimalError::CapBelowDepth { .. } => CompileError::Usage(e.to_string()),
            OptimalError::Infeasible(_) | OptimalError::CapExhausted { .. } => CompileError::Infeasible(e.to_string()),
        }
    }
}

/// Runs one mapper/router combination.
pub fn compile<B: SatBackend>(
    arch: &Architecture,
    circuit: &Circuit,
    opts: &CompileOptions,
    backend: &mut B,
) -> Result<Compiled, CompileError> {
    let mut optimal = opts.optimal;
    if optimal.t_max == 0 {
        optimal.t_max = circuit.len().max(circuit.depth());
    }
    let mut route_optimal = |map: Option<&QubitMap>| -> Result<Compiled, CompileError> {
        let s = solve_optimal(backend, arch, circuit, map, &optimal)?;
        Ok(Compiled { map: s.map, route: s.route, proven_optimal: Some(s.proven_optimal), probes: s.probes })
    };
    let greedy = |map: QubitMap| -> Result<Compiled, CompileError> {
        let route = greedy_route(arch, circuit, &map)?;
        Ok(Compiled { map, route, proven_optimal: None, probes: Vec::new() })
    };
    match (opts.mapper, opts.router) {
        (Mapper::Optimal, Router::Optimal) => route_optimal(None),
        (Mapper::Optimal, Router::Greedy) => {
            Err(CompileError::Usage("the optimal mapper only runs with the optimal router".into()))
        }
        (Mapper::Struct, Router::Optimal) => {
            let map = struct_map(arch, circuit, opts.locations)?;
            route_optimal(Some(&map))
        }
        (Mapper::Struct, Router::Greedy) => greedy(struct_map(arch, circuit, opts.locations)?),
        (Mapper::Random(n), Router::Optimal) => {
            let maps = sample_maps(arch, circuit, opts.locations, n, opts.seed)?;
            let mut best: Option<Compiled> = None;
            for map in &maps {
                let c = route_optimal(Some(map))?;
                if best.as_ref().is_none_or(|b| c.route.steps < b.route.steps) {
                    best = Some(c);
                }
            }
            Ok(best.expect("n >= 1"))
        }
        (Mapper::Random(n), Router::Greedy) => {
            let maps = sample_maps(arch, circuit, opts.locations, n, opts.seed)?;
            let run = || maps.par_iter().map(|m| greedy_route(arch, circuit, m)).collect::<Result<Vec<_>, _>>();
            let routes = if opts.jobs == 0 {
                run()
            } else {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .map_err(|e| CompileError::Backend(e.to_string()))?
                    .install(run)
            }?;
            let i = select_best(&routes).expect("n >= 1");
            Ok(Compiled {
                map: maps[i].clone(),
                route: routes[i].clone(),
                proven_optimal: None,
                probes: Vec::new(),
            })
        }
    }
}

/// One row of compile metrics.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Metrics {
    pub circuit: String,
    pub pipeline: String,
    pub arch: String,
    pub qubits: usize,
    pub gates: usize,
    pub depth: usize,
    pub steps: Option<usize>,
    pub cost_ratio: Option<f64>,
    pub proven_optimal: Option<bool>,
    pub wall_seconds: f64,
    pub seed: u64,
    pub status: String,
}

/// Steps over depth; undefined for an empty circuit.
pub fn cost_ratio(steps: usize, depth: usize) -> Option<f64> {
    (depth > 0).then(|| steps as f64 / depth as f64)
}

impl Metrics {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Appends a CSV row, writing the header first when the file is new or
    /// empty.
    pub fn append_csv(&self, path: &Path) -> std::io::Result<()> {
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
        w.serialize(self).map_err(std::io::Error::other)?;
        w.flush()
    }
}
