use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use semiring_core::bellman;
use semiring_core::codec::{self, Problem, ProblemFile};
use semiring_core::graph::{self, Horizon, WeightedDigraph};
use semiring_core::laws::{self, LawReport};
use semiring_core::sample::{self, Sampling};
use semiring_core::{split, Error, IntervalExt, Matrix, Mode, Profile, Semiring};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(Error),
    /// A mathematical failure reported with a prepared message.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(e) if e.is_input_error() => 2,
            CliError::Math(_) | CliError::Failed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn load(text: &str) -> CliResult<ProblemFile> {
    Ok(codec::parse_problem(text)?)
}

fn wrong_kind(cmd: &str, file: &ProblemFile) -> CliError {
    CliError::Input(format!("{cmd} cannot take a {} payload", file.problem.kind()))
}

/// Replaces node indices in a divergence error by labels.
fn with_labels(err: Error, labels: &[String]) -> CliError {
    match err {
        Error::ClosureDiverges { nodes } => {
            let names: Vec<&str> = nodes.iter().map(|&i| labels[i].as_str()).collect();
            CliError::Failed(format!(
                "closure diverges: closed path through nodes {names:?} has weight above unity"
            ))
        }
        other => other.into(),
    }
}

pub fn closure(file: &ProblemFile) -> CliResult<Value> {
    let mut out = Map::new();
    out.insert("semiring".into(), json!(file.semiring.key()));
    out.insert("kind".into(), json!(file.problem.kind()));
    match &file.problem {
        Problem::Matrix(a) => {
            out.insert("closure".into(), codec::matrix_to_json(&a.closure()?));
        }
        Problem::IntervalMatrix(a) => {
            out.insert("closure".into(), codec::interval_matrix_to_json(&a.closure()?));
        }
        Problem::Graph { graph: g, .. } => {
            let c = graph::algebraic_path(g).map_err(|e| with_labels(e, g.labels()))?;
            out.insert("nodes".into(), json!(g.labels()));
            out.insert("closure".into(), codec::matrix_to_json(&c));
        }
        Problem::Bellman { .. } => return Err(wrong_kind("closure", file)),
    }
    Ok(Value::Object(out))
}

pub struct SolveOptions {
    pub interval: bool,
    pub iterate: bool,
    pub max_iter: Option<usize>,
    pub check_spectral: bool,
    pub samples: usize,
    pub seed: u64,
}

pub fn solve(file: &ProblemFile, opts: &SolveOptions) -> CliResult<Value> {
    let Problem::Bellman { a, b, interval } = &file.problem else {
        return Err(wrong_kind("solve", file));
    };
    let as_interval = *interval || opts.interval;
    let mut out = Map::new();
    out.insert("semiring".into(), json!(file.semiring.key()));
    out.insert("interval".into(), json!(as_interval));

    let solution = bellman::solve_interval(a, b)?;
    if as_interval {
        out.insert("mode".into(), json!(a.semiring().mode().key()));
        out.insert("solution".into(), codec::interval_matrix_to_json(&solution));
    } else {
        out.insert("solution".into(), codec::matrix_to_json(&split(&solution).0));
    }

    if opts.iterate {
        let x0 = Matrix::zeros(b.semiring().clone(), b.rows(), b.cols());
        let trace = bellman::iterate(a, b, &x0, opts.max_iter)?;
        out.insert("stabilized_at".into(), json!(trace.stabilized_at));
        out.insert("converged".into(), json!(trace.converged));
        out.insert("max_iterations".into(), json!(trace.max_k));
        out.insert(
            "start_precondition".into(),
            json!(trace.precondition.key()),
        );
        let exact = trace.converged && trace.last() == &solution;
        out.insert("iterate_matches_solution".into(), json!(exact));
    }

    if opts.check_spectral {
        let (_, upper) = split(a);
        let rho = upper.spectral_radius()?;
        out.insert("spectral_radius".into(), codec::element_to_json(&rho));
        out.insert("spectral_ok".into(), json!(bellman::spectral_criterion(a)?));
    }

    if opts.samples > 0 {
        let report = bellman::sample_united_check(a, b, opts.samples, opts.seed)?;
        out.insert("samples".into(), json!(report.samples));
        out.insert("seed".into(), json!(report.seed));
        out.insert(
            "sample_failures".into(),
            json!(report.containment_failures + report.solve_failures),
        );
        out.insert("lower_attained".into(), json!(report.lower_attained));
        out.insert("upper_attained".into(), json!(report.upper_attained));
    }
    Ok(Value::Object(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PathProblem {
    Shortest,
    Width,
    Profit,
    Generic,
}

fn graph_of(file: &ProblemFile) -> CliResult<(&WeightedDigraph<Profile>, Option<&Matrix<Profile>>)> {
    match &file.problem {
        Problem::Graph { graph, terminal } => Ok((graph, terminal.as_ref())),
        _ => Err(wrong_kind("path", file)),
    }
}

pub fn path(file: &ProblemFile, problem: PathProblem, horizon: Option<usize>) -> CliResult<Value> {
    let (g, terminal) = graph_of(file)?;
    let labels = g.labels();
    let relabel = |e: Error| with_labels(e, labels);
    let (name, result) = match problem {
        PathProblem::Shortest => ("shortest", graph::shortest_paths(g).map_err(relabel)?),
        PathProblem::Width => ("width", graph::max_width_paths(g).map_err(relabel)?),
        PathProblem::Generic => ("generic", graph::algebraic_path(g).map_err(relabel)?),
        PathProblem::Profit => {
            let ones = Matrix::column(*g.semiring(), vec![g.semiring().one(); g.node_count()]);
            let b = terminal.unwrap_or(&ones);
            let h = horizon.map_or(Horizon::Unbounded, Horizon::Steps);
            ("profit", graph::best_profit(g, b, h).map_err(relabel)?)
        }
    };
    let mut out = Map::new();
    out.insert("semiring".into(), json!(g.semiring().key()));
    out.insert("problem".into(), json!(name));
    out.insert("nodes".into(), json!(labels));
    if problem == PathProblem::Profit {
        out.insert("horizon".into(), json!(horizon));
    }
    out.insert("result".into(), codec::matrix_to_json(&result));
    Ok(Value::Object(out))
}

pub fn eigen(file: &ProblemFile) -> CliResult<Value> {
    let (a, labels) = match &file.problem {
        Problem::Matrix(a) => (a.clone(), None),
        Problem::Graph { graph: g, .. } => (graph::graph_to_matrix(g), Some(g.labels().to_vec())),
        _ => return Err(wrong_kind("eigen", file)),
    };
    let mut out = Map::new();
    out.insert("semiring".into(), json!(file.semiring.key()));
    match a.eigenvalue() {
        Ok(e) => {
            out.insert("eigenvalue".into(), codec::element_to_json(&e.eigenvalue));
            out.insert("unique".into(), json!(e.unique));
            out.insert(
                "eigenvector".into(),
                e.eigenvector.map_or(Value::Null, |v| codec::matrix_to_json(&v)),
            );
        }
        Err(Error::NoCycle) => {
            out.insert("eigenvalue".into(), Value::Null);
            out.insert("eigenvector".into(), Value::Null);
            out.insert("unique".into(), json!(false));
        }
        Err(e) => return Err(e.into()),
    }
    out.insert("spectral_radius".into(), codec::element_to_json(&a.spectral_radius()?));
    out.insert("irreducible".into(), json!(a.is_irreducible()));
    let blocks = a.scc_blocks();
    out.insert("blocks".into(), json!(blocks.blocks));
    out.insert("permutation".into(), json!(blocks.permutation));
    if let Some(labels) = labels {
        out.insert("nodes".into(), json!(labels));
    }
    Ok(Value::Object(out))
}

fn report_json(r: &LawReport) -> Value {
    let laws: Map<String, Value> = r
        .laws
        .iter()
        .map(|(k, o)| {
            (
                (*k).to_string(),
                json!({"checked": o.checked, "failed": o.failed, "counterexample": o.counterexample}),
            )
        })
        .collect();
    json!({"semiring": r.semiring, "passed": r.passed(), "laws": laws})
}

/// Law suite on the scalars, then on the weak and (if the base is entire)
/// strong interval extensions.
pub fn check(p: Profile, cases: usize, seed: u64) -> CliResult<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = 1e-12;
    let mut reports = vec![(
        "scalar",
        laws::check_semiring(&p, cases, &mut rng, |r| sample::element(p, r, Sampling::Continuous), tol),
    )];
    for mode in [Mode::Weak, Mode::Strong] {
        if let Ok(ext) = IntervalExt::new(p, mode) {
            let report = laws::check_semiring(&ext, cases, &mut rng, |r| sample::interval(&ext, r, Sampling::Lattice), tol);
            reports.push((mode.key(), report));
        }
    }
    let passed = reports.iter().all(|(_, r)| r.passed());
    let body: Map<String, Value> = reports.iter().map(|(k, r)| ((*k).to_string(), report_json(r))).collect();
    let out = json!({"semiring": p.key(), "cases": cases, "seed": seed, "passed": passed, "reports": body});
    if passed {
        Ok(out)
    } else {
        let failed: Vec<String> = reports
            .iter()
            .flat_map(|(k, r)| r.failed_laws().into_iter().map(move |l| format!("{k}:{l}")))
            .collect();
        Err(CliError::Failed(format!(
            "law violations: {}\n{}",
            failed.join(", "),
            serde_json::to_string_pretty(&out).unwrap_or_default()
        )))
    }
}
