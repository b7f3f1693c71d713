//! Experiment configuration: flat key-value text with repeated `solver=`
//! lines, CLI flags overriding file values.

use super::OrchestratorError;
use crate::problems::{CategoryFilter, Registry};
use crate::solvers::SolverDescriptor;
use std::path::PathBuf;
use std::sync::Arc;

pub const DEFAULT_BUDGET_FACTOR: u64 = 100;
pub const DEFAULT_RUNS_STOCHASTIC: u32 = 10;
pub const DEFAULT_BASE_SEED: u64 = 1;
pub const OUTPUT_ENV_VAR: &str = "MOMARK_OUT";

/// Which problems an experiment touches: everything registered, an explicit
/// name list, or a category filter expression.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSelection {
    All,
    Names(Vec<String>),
    Filter(String),
}

impl ProblemSelection {
    pub fn parse(expr: &str) -> Result<Self, OrchestratorError> {
        if expr == "all" {
            return Ok(ProblemSelection::All);
        }
        let parts: Vec<&str> = expr.split(',').filter(|p| !p.is_empty()).collect();
        if parts.is_empty() {
            return Err(OrchestratorError::config("empty problem selection"));
        }
        let filters = parts.iter().filter(|p| p.contains('=')).count();
        if filters == parts.len() {
            CategoryFilter::parse(expr)
                .map_err(|e| OrchestratorError::config(format!("bad problem filter: {e}")))?;
            Ok(ProblemSelection::Filter(expr.to_string()))
        } else if filters == 0 {
            Ok(ProblemSelection::Names(
                parts.into_iter().map(String::from).collect(),
            ))
        } else {
            Err(OrchestratorError::config(
                "problem selection mixes names and category filters",
            ))
        }
    }

    pub fn display(&self) -> String {
        match self {
            ProblemSelection::All => "all".into(),
            ProblemSelection::Names(names) => names.join(","),
            ProblemSelection::Filter(f) => f.clone(),
        }
    }

    /// Resolves to registered instances, in stable name order.
    pub fn resolve(
        &self,
        registry: &Registry,
    ) -> Result<Vec<Arc<crate::problems::ProblemInstance>>, OrchestratorError> {
        let names: Vec<String> = match self {
            ProblemSelection::All => registry.names().map(String::from).collect(),
            ProblemSelection::Filter(expr) => {
                let filter = CategoryFilter::parse(expr)
                    .map_err(|e| OrchestratorError::config(e.to_string()))?;
                registry
                    .list(&filter)
                    .into_iter()
                    .map(|meta| meta.name)
                    .collect()
            }
            ProblemSelection::Names(names) => {
                let mut sorted = names.clone();
                sorted.sort();
                sorted.dedup();
                sorted
            }
        };
        if names.is_empty() {
            return Err(OrchestratorError::config(
                "problem selection matches nothing",
            ));
        }
        names
            .iter()
            .map(|name| {
                registry
                    .lookup(name)
                    .map_err(|e| OrchestratorError::config(e.to_string()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problems: ProblemSelection,
    pub solvers: Vec<SolverDescriptor>,
    pub budget_factor: u64,
    pub runs_stochastic: u32,
    pub base_seed: u64,
    pub output_dir: PathBuf,
    pub refset_dir: PathBuf,
}

/// Config fields before defaulting; file values fill holes the CLI left.
#[derive(Debug, Clone, Default)]
pub struct PartialConfig {
    pub problems: Option<ProblemSelection>,
    pub solvers: Vec<SolverDescriptor>,
    pub budget_factor: Option<u64>,
    pub runs_stochastic: Option<u32>,
    pub base_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub refset_dir: Option<PathBuf>,
}

impl PartialConfig {
    pub fn parse(text: &str) -> Result<Self, OrchestratorError> {
        let mut cfg = PartialConfig::default();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                OrchestratorError::config(format!(
                    "config line {}: expected key=value",
                    line_no + 1
                ))
            })?;
            let bad =
                |e: String| OrchestratorError::config(format!("config line {}: {e}", line_no + 1));
            match key {
                "problems" => cfg.problems = Some(ProblemSelection::parse(value)?),
                "solver" => cfg
                    .solvers
                    .push(SolverDescriptor::parse(value).map_err(|e| bad(e.to_string()))?),
                "budget_factor" => {
                    cfg.budget_factor = Some(value.parse().map_err(|_| bad("bad integer".into()))?)
                }
                "runs_stochastic" => {
                    cfg.runs_stochastic =
                        Some(value.parse().map_err(|_| bad("bad integer".into()))?)
                }
                "base_seed" => {
                    cfg.base_seed = Some(value.parse().map_err(|_| bad("bad integer".into()))?)
                }
                "out" => cfg.output_dir = Some(PathBuf::from(value)),
                "refsets" => cfg.refset_dir = Some(PathBuf::from(value)),
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    /// CLI values win; `self` is the CLI layer, `file` fills the rest.
    pub fn over(mut self, file: PartialConfig) -> PartialConfig {
        self.problems = self.problems.or(file.problems);
        if self.solvers.is_empty() {
            self.solvers = file.solvers;
        }
        self.budget_factor = self.budget_factor.or(file.budget_factor);
        self.runs_stochastic = self.runs_stochastic.or(file.runs_stochastic);
        self.base_seed = self.base_seed.or(file.base_seed);
        self.output_dir = self.output_dir.or(file.output_dir);
        self.refset_dir = self.refset_dir.or(file.refset_dir);
        self
    }

    pub fn resolve(self) -> Result<ExperimentConfig, OrchestratorError> {
        let config = ExperimentConfig {
            problems: self.problems.unwrap_or(ProblemSelection::All),
            solvers: self.solvers,
            budget_factor: self.budget_factor.unwrap_or(DEFAULT_BUDGET_FACTOR),
            runs_stochastic: self.runs_stochastic.unwrap_or(DEFAULT_RUNS_STOCHASTIC),
            base_seed: self.base_seed.unwrap_or(DEFAULT_BASE_SEED),
            output_dir: self
                .output_dir
                .or_else(|| std::env::var_os(OUTPUT_ENV_VAR).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("momark-out")),
            refset_dir: self.refset_dir.unwrap_or_else(|| PathBuf::from("refsets")),
        };
        if config.budget_factor == 0 {
            return Err(OrchestratorError::config("budget_factor must be >= 1"));
        }
        if config.runs_stochastic == 0 {
            return Err(OrchestratorError::config("runs_stochastic must be >= 1"));
        }
        if config.solvers.is_empty() {
            return Err(OrchestratorError::config(
                "no solvers selected (use --solver)",
            ));
        }
        let mut names: Vec<&str> = config.solvers.iter().map(|s| s.name.as_str()).collect();
        names.sort();
        names.dedup();
        if names.len() != config.solvers.len() {
            return Err(OrchestratorError::config("duplicate solver names"));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::SolverKind;

    #[test]
    fn parse_and_merge() {
        let file = PartialConfig::parse(
            "# demo\nproblems=BK1,MOP1\nsolver=random-search\nbudget_factor=50\nbase_seed=9\n",
        )
        .unwrap();
        let cli = PartialConfig {
            budget_factor: Some(25),
            ..Default::default()
        };
        let cfg = cli.over(file).resolve().unwrap();
        assert_eq!(cfg.budget_factor, 25, "cli wins");
        assert_eq!(cfg.base_seed, 9);
        assert_eq!(cfg.runs_stochastic, DEFAULT_RUNS_STOCHASTIC);
        assert_eq!(
            cfg.problems,
            ProblemSelection::Names(vec!["BK1".into(), "MOP1".into()])
        );
        assert_eq!(cfg.solvers[0].kind, SolverKind::Stochastic);
    }

    #[test]
    fn selection_parsing() {
        assert_eq!(
            ProblemSelection::parse("all").unwrap(),
            ProblemSelection::All
        );
        assert!(matches!(
            ProblemSelection::parse("D=H,m=2").unwrap(),
            ProblemSelection::Filter(_)
        ));
        assert!(ProblemSelection::parse("BK1,D=H").is_err());
        assert!(ProblemSelection::parse("D=Q").is_err());
    }

    #[test]
    fn selection_resolution() {
        let registry = Registry::core();
        let all = ProblemSelection::All.resolve(&registry).unwrap();
        assert_eq!(all.len(), 55);
        let high = ProblemSelection::parse("D=H,m=2")
            .unwrap()
            .resolve(&registry)
            .unwrap();
        assert!(high.iter().any(|p| p.name() == "ZDT1"));
        assert!(high.iter().all(|p| p.m() == 2));
        assert!(ProblemSelection::Names(vec!["NOPE".into()])
            .resolve(&registry)
            .is_err());
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(PartialConfig::parse("wild=1").is_err());
        let no_solvers = PartialConfig::default();
        assert!(no_solvers.resolve().is_err());
        let zero_budget = PartialConfig {
            budget_factor: Some(0),
            solvers: vec![SolverDescriptor::parse("random-search").unwrap()],
            ..Default::default()
        };
        assert!(zero_budget.resolve().is_err());
    }
}
