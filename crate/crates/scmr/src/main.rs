// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use scmr::backend::{Cadical, External};
use scmr::formats::{self, FormatError};
use scmr::pipeline::{compile, cost_ratio, CompileError, CompileOptions, Mapper, Metrics, Router};
use scmr_core::arch::Layout;
use scmr_core::bench;
use scmr_core::circuit::{parse_circuit_with, ParseMode};
use scmr_core::mapping::Locations;
use scmr_core::sat::{encode, EncodeOptions, SatBackend, TReach};
use scmr_core::{validate, Architecture, Circuit, Vertex};

#[derive(Parser)]
#[command(name = "scmr", version, about = "Map and route CNOT+T circuits onto lattice-surgery grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map and route a circuit.
    Compile(CompileArgs),
    /// Generate benchmark circuits and architectures.
    #[command(subcommand)]
    Gen(Gen),
    /// Check a map and route against a circuit and architecture.
    Validate(ValidateArgs),
    /// Write the SAT encoding for a fixed number of steps as DIMACS.
    Cnf(CnfArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Circuit file.
    circuit: PathBuf,
    /// `bordered`, `right-column`, `center-column`, or an architecture JSON file.
    #[arg(long, default_value = "bordered")]
    arch: String,
    /// Reject gates other than CNOT and T (default).
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Drop single-qubit gates other than T.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct EncodingArgs {
    /// Give every gate the full step range instead of its dependency window.
    #[arg(long)]
    no_prune: bool,
    /// Require a magic-state entry edge for T gates at every step of their window.
    #[arg(long)]
    unguarded_t: bool,
}

impl EncodingArgs {
    fn options(&self) -> EncodeOptions {
        EncodeOptions {
            prune: !self.no_prune,
            t_reach: if self.unguarded_t { TReach::Unguarded } else { TReach::Guarded },
        }
    }
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `optimal`, `struct` or `rand:<N>`.
    #[arg(long, default_value = "struct")]
    mapper: Mapper,
    #[arg(long, value_enum, default_value_t = Router::Greedy)]
    router: Router,
    /// Time limit in seconds for each SAT call.
    #[arg(long)]
    timeout: Option<f64>,
    /// Largest number of steps the optimal router tries (default: gate count).
    #[arg(long)]
    t_max: Option<usize>,
    /// After a SAT call times out, keep trying larger step counts.
    #[arg(long)]
    keep_going: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Place qubits on any non-magic vertex, not only regular locations.
    #[arg(long)]
    all_locations: bool,
    /// Threads for routing random maps.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// External DIMACS solver binary instead of the built-in one.
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Directory for map.json and route.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV file to append a metrics row to.
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[command(flatten)]
    encoding: EncodingArgs,
}

#[derive(Subcommand)]
enum Gen {
    /// Layered circuit whose optimum equals its depth.
    KnownOptimal {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random circuit with a given qubit count and depth.
    Random {
        #[arg(short)]
        q: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        t_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Independent T/CNOT chains of a fixed length.
    Cycle {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Processor scheduling instance: writes circuit.qc and arch.json.
    Psp {
        /// JSON file `{"jobs": [...], "edges": [[before, after], ...]}`.
        #[arg(long)]
        jobs: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        t: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Disjoint paths instance: writes circuit.qc, arch.json and map.json.
    Ndp {
        #[arg(long)]
        rows: u32,
        #[arg(long)]
        cols: u32,
        /// `a,b:a,b`, repeatable.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Architecture JSON for a named layout.
    Arch {
        #[arg(long)]
        layout: String,
        /// Number of qubits to size for.
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    route: PathBuf,
}

#[derive(Args)]
struct CnfArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of steps.
    #[arg(long)]
    steps: usize,
    /// Fix the placement to this map.
    #[arg(long)]
    map: Option<PathBuf>,
    /// DIMACS output; the variable table goes to `<output>.vars`.
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    encoding: EncodingArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Infeasible(String),
    Timeout(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Timeout(_) => 3,
            Failure::Invalid(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Timeout(m) | Failure::Invalid(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<bench::BenchError> for Failure {
    fn from(e: bench::BenchError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::Usage(m) | CompileError::Backend(m) => Failure::Usage(m),
            CompileError::Infeasible(m) => Failure::Infeasible(m),
            CompileError::Timeout(m) => Failure::Timeout(m),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn layout(name: &str) -> Option<Layout> {
    match name {
        "bordered" => Some(Layout::Bordered),
        "right-column" => Some(Layout::RightColumn),
        "center-column" => Some(Layout::CenterColumn { widen: true }),
        _ => None,
    }
}

fn load_arch(spec: &str, num_qubits: usize) -> Result<Architecture, Failure> {
    match layout(spec) {
        Some(l) => l.build(num_qubits).map_err(|e| Failure::Infeasible(e.to_string())),
        None => Ok(formats::arch_from_json(&read(Path::new(spec))?)?),
    }
}

fn load_circuit(input: &InputArgs) -> Result<Circuit, Failure> {
    let mode = if input.lenient { ParseMode::Lenient } else { ParseMode::Strict };
    let text = read(&input.circuit)?;
    parse_circuit_with(&text, mode).map_err(|e| Failure::Usage(format!("{}:{e}", input.circuit.display())))
}

fn run_compile(args: &CompileArgs) -> Result<(), Failure> {
    let circuit = load_circuit(&args.input)?;
    let arch = load_arch(&args.input.arch, circuit.num_qubits())?;
    let mut opts = CompileOptions::new(args.mapper, args.router);
    opts.seed = args.seed;
    opts.jobs = args.jobs;
    opts.locations = if args.all_locations { Locations::All } else { Locations::Regular };
    opts.optimal.t_max = args.t_max.unwrap_or(0);
    opts.optimal.encode = args.encoding.options();
    opts.optimal.keep_going = args.keep_going;
    let timeout = args.timeout.map(Duration::from_secs_f64);
    let mut backend: Box<dyn SatBackend> = match &args.solver {
        Some(p) => Box::new(External { program: p.clone(), args: Vec::new(), timeout }),
        None => Box::new(Cadical::new(timeout)),
    };

    let start = Instant::now();
    let result = compile(&arch, &circuit, &opts, &mut backend);
    let wall = start.elapsed().as_secs_f64();

    let depth = circuit.depth();
    let mut metrics = Metrics {
        circuit: args.input.circuit.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        pipeline: opts.pipeline(),
        arch: args.input.arch.clone(),
        qubits: circuit.num_qubits(),
        gates: circuit.len(),
        depth,
        steps: None,
        cost_ratio: None,
        proven_optimal: None,
        wall_seconds: wall,
        seed: args.seed,
        status: String::new(),
    };
    let outcome = match result {
        Ok(c) => {
            metrics.steps = Some(c.route.steps);
            metrics.cost_ratio = cost_ratio(c.route.steps, depth);
            metrics.proven_optimal = c.proven_optimal;
            if let Some(dir) = &args.out {
                std::fs::create_dir_all(dir)?;
                write(&dir.join("map.json"), &formats::map_to_json(&circuit, &c.map))?;
                write(&dir.join("route.json"), &formats::route_to_json(&c.route))?;
            }
            match validate(&arch, &circuit, &c.map, &c.route) {
                Ok(()) => Ok(()),
                Err(v) => Err(Failure::Invalid(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"))),
            }
        }
        Err(e) => Err(Failure::from(e)),
    };
    metrics.status = match &outcome {
        Ok(()) => "ok",
        Err(Failure::Infeasible(_)) => "infeasible",
        Err(Failure::Timeout(_)) => "timeout",
        Err(Failure::Invalid(_)) => "invalid",
        Err(Failure::Usage(_)) => "error",
    }
    .to_string();
    println!("{}", metrics.to_json_line());
    if let Some(path) = &args.metrics {
        metrics.append_csv(path)?;
    }
    outcome
}

fn parse_pair(s: &str) -> Result<(Vertex, Vertex), Failure> {
    let bad = || Failure::Usage(format!("bad pair `{s}`, expected a,b:a,b"));
    let vertex = |t: &str| -> Result<Vertex, Failure> {
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(Vertex::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    };
    let (x, y) = s.split_once(':').ok_or_else(bad)?;
    Ok((vertex(x)?, vertex(y)?))
}

fn run_gen(g: &Gen) -> Result<(), Failure> {
    match g {
        Gen::KnownOptimal { d, k, rho, seed, output } => {
            emit(output, &bench::known_optimal(*d, *k, *rho, *seed)?.to_string())
        }
        Gen::Random { q, d, t_fraction, seed, output } => {
            emit(output, &bench::random_circuit(*q, *d, *t_fraction, *seed)?.to_string())
        }
        Gen::Cycle { d, k, t, output } => emit(output, &bench::cycle_circuit(*d, *k, *t)?.to_string()),
        Gen::Psp { jobs, k, t, out } => {
            let poset = formats::jobs_from_json(&read(jobs)?)?;
            let inst = bench::psp_to_scmr(&poset, *k, *t)?;
            std::fs::create_dir_all(out)?;
            write(&out.join("circuit.qc"), &inst.circuit.to_string())?;
            write(&out.join("arch.json"), &formats::arch_to_json(&inst.arch))?;
            println!("t_s={}", inst.t_s);
            Ok(())
        }
        Gen::Ndp { rows, cols, pairs, out } => {
            let pairs = pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>, _>>()?;
            let inst = bench::ndp_to_scr(*rows, *cols, &pairs)?;
            std::fs::create_dir_all(out)?;
            write(&out.join("circuit.qc"), &inst.circuit.to_string())?;
            write(&out.join("arch.json"), &formats::arch_to_json(&inst.arch))?;
            write(&out.join("map.json"), &formats::map_to_json(&inst.circuit, &inst.map))?;
            Ok(())
        }
        Gen::Arch { layout: name, n, output } => {
            let l = layout(name).ok_or_else(|| Failure::Usage(format!("unknown layout `{name}`")))?;
            let arch = l.build(*n).map_err(|e| Failure::Infeasible(e.to_string()))?;
            emit(output, &(formats::arch_to_json(&arch) + "\n"))
        }
    }
}

fn run_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let circuit = load_circuit(&args.input)?;
    let arch = load_arch(&args.input.arch, circuit.num_qubits())?;
    let map = formats::map_from_json(&circuit, &read(&args.map)?)?;
    let route = formats::route_from_json(&circuit, &read(&args.route)?)?;
    match validate(&arch, &circuit, &map, &route) {
        Ok(()) => {
            println!("ok");
            Ok(())
        }
        Err(v) => Err(Failure::Invalid(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"))),
    }
}

fn run_cnf(args: &CnfArgs) -> Result<(), Failure> {
    let circuit = load_circuit(&args.input)?;
    let arch = load_arch(&args.input.arch, circuit.num_qubits())?;
    let map = match &args.map {
        Some(p) => Some(formats::map_from_json(&circuit, &read(p)?)?),
        None => None,
    };
    let cnf = encode(&arch, &circuit, map.as_ref(), args.steps, &args.encoding.options());
    if let Some(reason) = cnf.unsat_reason {
        eprintln!("note: instance is trivially unsatisfiable: {reason}");
    }
    let mut text = String::new();
    cnf.write_dimacs(&mut text).expect("writing to a string");
    write(&args.output, &text)?;
    let mut vars = String::new();
    cnf.write_var_table(&circuit, &mut vars).expect("writing to a string");
    let mut sidecar = args.output.clone().into_os_string();
    sidecar.push(".vars");
    write(Path::new(&sidecar), &vars)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Compile(a) => run_compile(a),
        Command::Gen(g) => run_gen(g),
        Command::Validate(a) => run_validate(a),
        Command::Cnf(a) => run_cnf(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
