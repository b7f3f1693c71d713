//! Data profiles: the fraction of (problem, indicator, target) triples a
//! solver resolves within a given number of evaluations per dimension,
//! aggregated over category panels and emitted as CSV and SVG.
//!
//! The deterministic/stochastic comparability divisor lives here: recorded
//! first hits stay raw, and scaled runtime is `fe / (multiplier * n_p)` at
//! presentation time, once.

mod svg;

pub use svg::emit_svg;

use crate::indicators::IndicatorKind;
use crate::problems::{CategoryFilter, ProblemMeta};
use crate::runtime::{FirstHitRecord, TARGET_COUNT};
use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("profile key selects no triples")]
    EmptyKey,
    #[error("alphas must be positive and strictly increasing")]
    BadAlphas,
    #[error("no dimension known for problem {0}")]
    UnknownDimension(String),
    #[error("profile csv, line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The set P of (problem, indicator, target index) triples a profile
/// aggregates over; each triple appears at most once.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProfileKey {
    triples: BTreeSet<(String, IndicatorKind, usize)>,
}

impl ProfileKey {
    pub fn insert(&mut self, triple: (String, IndicatorKind, usize)) {
        self.triples.insert(triple);
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, IndicatorKind, usize)> {
        self.triples.iter()
    }
}

/// All triples over the filtered problems, the chosen indicators, and the
/// mandatory 70-target ladders.
pub fn aggregate_keys(
    problems: &[ProblemMeta],
    category_filter: &CategoryFilter,
    indicators: &[IndicatorKind],
) -> ProfileKey {
    let mut triples = BTreeSet::new();
    for meta in problems.iter().filter(|m| category_filter.matches(m)) {
        for &indicator in indicators {
            for target in 0..TARGET_COUNT {
                triples.insert((meta.name.clone(), indicator, target));
            }
        }
    }
    ProfileKey { triples }
}

/// Empirical CDF of scaled runtimes over a triple set.
#[derive(Debug, Clone, PartialEq)]
pub struct DataProfile {
    pub solver: String,
    pub alphas: Vec<f64>,
    pub fractions: Vec<f64>,
    /// budget-exhaustion abscissa where the x glyph is drawn
    pub max_alpha_marker: f64,
}

/// 200 log-spaced abscissas from 10^0 to 10^4.
pub fn default_alphas() -> Vec<f64> {
    (0..200)
        .map(|i| 10f64.powf(4.0 * i as f64 / 199.0))
        .collect()
}

/// Computes d_s over `key` from best-of-runs merged first hits.
///
/// `multiplier` is the solver's budget multiplier (1 stochastic, 10
/// deterministic); `dims` maps problem names to their decision dimension;
/// "never" counts in no bucket.
pub fn data_profile(
    best_hits: &[FirstHitRecord],
    key: &ProfileKey,
    solver: &str,
    multiplier: u32,
    dims: &BTreeMap<String, usize>,
    alphas: &[f64],
    max_alpha_marker: f64,
) -> Result<DataProfile, ProfileError> {
    if key.is_empty() {
        return Err(ProfileError::EmptyKey);
    }
    if alphas.is_empty() || alphas[0] <= 0.0 || alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ProfileError::BadAlphas);
    }
    let mut by_triple: BTreeMap<(&str, IndicatorKind, usize), u64> = BTreeMap::new();
    for r in best_hits.iter().filter(|r| r.solver == solver) {
        if let Some(fe) = r.fe {
            let entry = by_triple
                .entry((r.problem.as_str(), r.indicator, r.target_index))
                .or_insert(fe);
            *entry = (*entry).min(fe);
        }
    }
    let mut scaled: Vec<f64> = Vec::new();
    for (problem, indicator, target) in key.iter() {
        let n = *dims
            .get(problem)
            .ok_or_else(|| ProfileError::UnknownDimension(problem.clone()))?;
        if let Some(&fe) = by_triple.get(&(problem.as_str(), *indicator, *target)) {
            scaled.push(fe as f64 / (multiplier as u64 * n as u64) as f64);
        }
    }
    scaled.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let total = key.len() as f64;
    let fractions = alphas
        .iter()
        .map(|&a| scaled.partition_point(|&s| s <= a) as f64 / total)
        .collect();
    Ok(DataProfile {
        solver: solver.to_string(),
        alphas: alphas.to_vec(),
        fractions,
        max_alpha_marker,
    })
}

pub const PROFILE_CSV_HEADER: &str = "solver,alpha,fraction";

/// `solver,alpha,fraction` rows sorted by (solver, alpha).
pub fn emit_csv(out: &mut impl Write, profiles: &[DataProfile]) -> Result<(), ProfileError> {
    let mut sorted: Vec<&DataProfile> = profiles.iter().collect();
    sorted.sort_by(|a, b| a.solver.cmp(&b.solver));
    writeln!(out, "{PROFILE_CSV_HEADER}")?;
    for p in sorted {
        for (a, f) in p.alphas.iter().zip(&p.fractions) {
            writeln!(out, "{},{},{}", p.solver, a, f)?;
        }
    }
    Ok(())
}

/// Parses a profile CSV back into per-solver (alpha, fraction) series.
pub fn read_csv(input: impl BufRead) -> Result<BTreeMap<String, Vec<(f64, f64)>>, ProfileError> {
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (line_no, line) in input.lines().enumerate() {
        let line = line?;
        if line_no == 0 {
            if line != PROFILE_CSV_HEADER {
                return Err(ProfileError::Csv {
                    line: 1,
                    message: format!("unexpected header {line:?}"),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ProfileError::Csv {
            line: line_no + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, got {}", fields.len())));
        }
        let alpha: f64 = fields[1].parse().map_err(|_| err("bad alpha".into()))?;
        let fraction: f64 = fields[2].parse().map_err(|_| err("bad fraction".into()))?;
        series
            .entry(fields[0].to_string())
            .or_default()
            .push((alpha, fraction));
    }
    Ok(series)
}

/// A named category panel.
#[derive(Debug, Clone)]
pub struct Panel {
    pub id: String,
    pub filter: CategoryFilter,
}

/// The default panel set: everything, each pure category, and each
/// objective count. Mixed-category problems appear only in `all` and the
/// per-m panels.
pub fn default_panels() -> Vec<Panel> {
    use crate::problems::{DimClass, Modality, Separability};
    let mut panels = vec![Panel {
        id: "all".into(),
        filter: CategoryFilter::default(),
    }];
    let mut push = |id: &str, filter: CategoryFilter| {
        panels.push(Panel {
            id: id.into(),
            filter,
        })
    };
    push(
        "low_dim",
        CategoryFilter {
            dim_class: Some(DimClass::Low),
            ..Default::default()
        },
    );
    push(
        "high_dim",
        CategoryFilter {
            dim_class: Some(DimClass::High),
            ..Default::default()
        },
    );
    push(
        "separable",
        CategoryFilter {
            separability: Some(Separability::Separable),
            ..Default::default()
        },
    );
    push(
        "non_separable",
        CategoryFilter {
            separability: Some(Separability::NonSeparable),
            ..Default::default()
        },
    );
    push(
        "unimodal",
        CategoryFilter {
            modality: Some(Modality::Unimodal),
            ..Default::default()
        },
    );
    push(
        "multimodal",
        CategoryFilter {
            modality: Some(Modality::Multimodal),
            ..Default::default()
        },
    );
    for m in [2usize, 3, 4] {
        push(
            &format!("m{m}"),
            CategoryFilter {
                objectives: Some(m),
                ..Default::default()
            },
        );
    }
    panels
}
