// SPDX-License-Identifier: Apache-2.0

//! SAT backends: CaDiCaL linked in-process, or any DIMACS solver binary.

use std::io::Read;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use scmr_core::sat::{BackendError, CnfInstance, Model, SatBackend, SatOutcome};

use crate::formats::parse_solver_output;

/// In-process CaDiCaL. A fresh solver is used for every call.
#[derive(Clone, Debug, Default)]
pub struct Cadical {
    /// Per-call time limit.
    pub timeout: Option<Duration>,
}

impl Cadical {
    pub fn new(timeout: Option<Duration>) -> Self {
        Self { timeout }
    }
}

impl SatBackend for Cadical {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SatOutcome, BackendError> {
        let mut solver: cadical::Solver = cadical::Solver::new();
        if let Some(t) = self.timeout {
            solver.set_callbacks(Some(cadical::Timeout::new(t.as_secs_f32())));
        }
        solver.reserve(cnf.num_vars() as i32);
        for c in cnf.clauses() {
            solver.add_clause(c.iter().copied());
        }
        match solver.solve() {
            Some(true) => {
                let mut model = Model::new(cnf.num_vars());
                for v in 1..=cnf.num_vars() {
                    model.set(v, solver.value(v as i32).unwrap_or(false));
                }
                Ok(SatOutcome::Sat(model))
            }
            Some(false) => Ok(SatOutcome::Unsat),
            None => Ok(SatOutcome::Unknown),
        }
    }
}

/// A solver binary called as `<program> <args...> <file.cnf>` that prints an
/// `s` status line and `v` model lines.
#[derive(Clone, Debug)]
pub struct External {
    pub program: PathBuf,
    pub args: Vec<String>,
    pub timeout: Option<Duration>,
}

impl SatBackend for External {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SatOutcome, BackendError> {
        let err = |e: std::io::Error| BackendError(e.to_string());
        let mut text = String::new();
        cnf.write_dimacs(&mut text).expect("writing to a string");
        let file = tempfile::Builder::new().suffix(".cnf").tempfile().map_err(err)?;
        std::fs::write(file.path(), text).map_err(err)?;

        let mut child = Command::new(&self.program)
            .args(&self.args)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| BackendError(format!("cannot start {}: {e}", self.program.display())))?;
        let mut stdout = child.stdout.take().expect("piped");
        let reader = std::thread::spawn(move || {
            let mut out = String::new();
            stdout.read_to_string(&mut out).map(|_| out)
        });
        let start = Instant::now();
        loop {
            if child.try_wait().map_err(err)?.is_some() {
                break;
            }
            if self.timeout.is_some_and(|t| start.elapsed() >= t) {
                let _ = child.kill();
                let _ = child.wait();
                return Ok(SatOutcome::Unknown);
            }
            std::thread::sleep(Duration::from_millis(5));
        }
        let out = reader.join().map_err(|_| BackendError("reader thread panicked".into()))?.map_err(err)?;
        parse_solver_output(&out, cnf.num_vars()).map_err(|e| BackendError(e.to_string()))
    }
}
