//! Baseline solvers and the external-process ask-tell protocol.
//!
//! Every solver is consumed as an evaluation stream: `(fe, objectives)`
//! pairs in evaluation order, with the harness doing the evaluating and
//! the counting. Builtin baselines are seeded and reproducible; external
//! solvers attach through a line-oriented stdin/stdout protocol.

mod external;
mod halton;

pub use external::{external_solver_session, ExternalSession};

use crate::pareto::{dominates, DecisionVector, ObjectiveVector};
use crate::problems::{ProblemError, ProblemInstance};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("protocol error on child line {line}: {message}")]
    Protocol { line: u64, message: String },
    #[error("failed to spawn {command:?}: {source}")]
    Spawn {
        command: String,
        source: std::io::Error,
    },
    #[error("child i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad solver descriptor: {0}")]
    BadDescriptor(String),
}

/// Deterministic solvers get one run at ten times the budget; stochastic
/// solvers get ten runs and their per-target best.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Deterministic,
    Stochastic,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Deterministic => "deterministic",
            SolverKind::Stochastic => "stochastic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "deterministic" => Some(SolverKind::Deterministic),
            "stochastic" => Some(SolverKind::Stochastic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    RandomSearch,
    GridSweep,
    Hillclimber,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [
        Builtin::RandomSearch,
        Builtin::GridSweep,
        Builtin::Hillclimber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::RandomSearch => "random-search",
            Builtin::GridSweep => "grid-sweep",
            Builtin::Hillclimber => "hillclimber",
        }
    }

    pub fn kind(self) -> SolverKind {
        match self {
            Builtin::GridSweep => SolverKind::Deterministic,
            _ => SolverKind::Stochastic,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolverSource {
    Builtin(Builtin),
    External { command: Vec<String> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverDescriptor {
    pub name: String,
    pub kind: SolverKind,
    pub source: SolverSource,
}

impl SolverDescriptor {
    pub fn builtin(b: Builtin) -> Self {
        Self {
            name: b.name().to_string(),
            kind: b.kind(),
            source: SolverSource::Builtin(b),
        }
    }

    /// Parses `name` (a builtin) or `name:kind:command line` (external).
    pub fn parse(spec: &str) -> Result<Self, SolverError> {
        let parts: Vec<&str> = spec.splitn(3, ':').collect();
        match parts.as_slice() {
            [name] => Builtin::ALL
                .into_iter()
                .find(|b| b.name() == *name)
                .map(Self::builtin)
                .ok_or_else(|| {
                    SolverError::BadDescriptor(format!(
                        "unknown builtin {name:?} (builtins: {})",
                        Builtin::ALL.map(|b| b.name()).join(", ")
                    ))
                }),
            [name, kind, command] => {
                validate_name(name)?;
                let kind = SolverKind::parse(kind).ok_or_else(|| {
                    SolverError::BadDescriptor(format!(
                        "kind must be deterministic or stochastic, got {kind:?}"
                    ))
                })?;
                let argv: Vec<String> = command.split_whitespace().map(String::from).collect();
                if argv.is_empty() {
                    return Err(SolverError::BadDescriptor("empty command".into()));
                }
                Ok(Self {
                    name: name.to_string(),
                    kind,
                    source: SolverSource::External { command: argv },
                })
            }
            _ => Err(SolverError::BadDescriptor(format!(
                "expected NAME or NAME:KIND:COMMAND, got {spec:?}"
            ))),
        }
    }
}

fn validate_name(name: &str) -> Result<(), SolverError> {
    if name.is_empty()
        || name
            .chars()
            .any(|c| c == ',' || c == ':' || c == '/' || c.is_whitespace())
    {
        return Err(SolverError::BadDescriptor(format!(
            "solver name {name:?} must be non-empty without commas, colons, slashes or spaces"
        )));
    }
    Ok(())
}

pub type EvalItem = Result<(u64, ObjectiveVector), SolverError>;

/// Ask side of a builtin solver; the driver evaluates and tells back.
trait Strategy {
    fn propose(&mut self) -> DecisionVector;
    fn feedback(&mut self, _x: &DecisionVector, _f: &ObjectiveVector) {}
}

struct Driver<'a, S: Strategy> {
    problem: &'a ProblemInstance,
    strategy: S,
    fe: u64,
    budget: u64,
    failed: bool,
}

impl<'a, S: Strategy> Iterator for Driver<'a, S> {
    type Item = EvalItem;

    fn next(&mut self) -> Option<EvalItem> {
        if self.failed || self.fe >= self.budget {
            return None;
        }
        let x = self.strategy.propose();
        match self.problem.evaluate(&x) {
            Ok(f) => {
                self.fe += 1;
                self.strategy.feedback(&x, &f);
                Some(Ok((self.fe, f)))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e.into()))
            }
        }
    }
}

struct RandomSearch {
    rng: ChaCha8Rng,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Strategy for RandomSearch {
    fn propose(&mut self) -> DecisionVector {
        let x = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| l + self.rng.gen::<f64>() * (u - l))
            .collect();
        DecisionVector(x)
    }
}

/// Uniform i.i.d. sampling in the box from a seeded generator.
pub fn random_search(
    problem: &ProblemInstance,
    budget: u64,
    seed: u64,
) -> impl Iterator<Item = EvalItem> + '_ {
    Driver {
        strategy: RandomSearch {
            rng: ChaCha8Rng::seed_from_u64(seed),
            lower: problem.meta().lower.clone(),
            upper: problem.meta().upper.clone(),
        },
        problem,
        fe: 0,
        budget,
        failed: false,
    }
}

struct GridSweep {
    index: u64,
    bases: Vec<u64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Strategy for GridSweep {
    fn propose(&mut self) -> DecisionVector {
        let x = self
            .bases
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                self.lower[i]
                    + halton::radical_inverse(self.index, b) * (self.upper[i] - self.lower[i])
            })
            .collect();
        self.index += 1;
        DecisionVector(x)
    }
}

/// Deterministic low-discrepancy sweep: Halton sequence with the first n
/// primes as bases, starting at index 1.
pub fn grid_sweep(problem: &ProblemInstance, budget: u64) -> impl Iterator<Item = EvalItem> + '_ {
    Driver {
        strategy: GridSweep {
            index: 1,
            bases: halton::first_primes(problem.n()),
            lower: problem.meta().lower.clone(),
            upper: problem.meta().upper.clone(),
        },
        problem,
        fe: 0,
        budget,
        failed: false,
    }
}

struct Hillclimber {
    rng: ChaCha8Rng,
    lower: Vec<f64>,
    upper: Vec<f64>,
    step_scale: f64,
    incumbent: Option<(DecisionVector, ObjectiveVector)>,
}

impl Strategy for Hillclimber {
    fn propose(&mut self) -> DecisionVector {
        match &self.incumbent {
            None => DecisionVector(
                self.lower
                    .iter()
                    .zip(&self.upper)
                    .map(|(&l, &u)| l + self.rng.gen::<f64>() * (u - l))
                    .collect(),
            ),
            Some((x, _)) => {
                let y = x
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let step: f64 = self.rng.sample(StandardNormal);
                        let (l, u) = (self.lower[i], self.upper[i]);
                        reflect(v + self.step_scale * (u - l) * step, l, u)
                    })
                    .collect();
                DecisionVector(y)
            }
        }
    }

    fn feedback(&mut self, x: &DecisionVector, f: &ObjectiveVector) {
        let accept = match &self.incumbent {
            None => true,
            Some((_, inc_f)) => !dominates(inc_f, f).unwrap_or(false),
        };
        if accept {
            self.incumbent = Some((x.clone(), f.clone()));
        }
    }
}

/// Folds a value into `[lo, hi]` by mirroring at the bounds.
fn reflect(v: f64, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let period = 2.0 * (hi - lo);
    let mut t = (v - lo) % period;
    if t < 0.0 {
        t += period;
    }
    if t > hi - lo {
        t = period - t;
    }
    lo + t
}

/// (1+1) stochastic local search: Gaussian steps scaled per coordinate,
/// a candidate replaces the incumbent unless the incumbent dominates it.
pub fn dominance_hillclimber(
    problem: &ProblemInstance,
    budget: u64,
    seed: u64,
    step_scale: f64,
) -> impl Iterator<Item = EvalItem> + '_ {
    assert!(
        step_scale > 0.0 && step_scale <= 1.0,
        "step_scale must be in (0, 1]"
    );
    Driver {
        strategy: Hillclimber {
            rng: ChaCha8Rng::seed_from_u64(seed),
            lower: problem.meta().lower.clone(),
            upper: problem.meta().upper.clone(),
            step_scale,
            incumbent: None,
        },
        problem,
        fe: 0,
        budget,
        failed: false,
    }
}

pub const DEFAULT_STEP_SCALE: f64 = 0.1;

/// Evaluation stream for any descriptor.
pub fn evaluation_stream<'a>(
    descriptor: &SolverDescriptor,
    problem: &'a ProblemInstance,
    budget: u64,
    seed: u64,
) -> Result<Box<dyn Iterator<Item = EvalItem> + 'a>, SolverError> {
    match &descriptor.source {
        SolverSource::Builtin(Builtin::RandomSearch) => {
            Ok(Box::new(random_search(problem, budget, seed)))
        }
        SolverSource::Builtin(Builtin::GridSweep) => Ok(Box::new(grid_sweep(problem, budget))),
        SolverSource::Builtin(Builtin::Hillclimber) => Ok(Box::new(dominance_hillclimber(
            problem,
            budget,
            seed,
            DEFAULT_STEP_SCALE,
        ))),
        SolverSource::External { command } => Ok(Box::new(external_solver_session(
            command, problem, budget, seed,
        )?)),
    }
}
