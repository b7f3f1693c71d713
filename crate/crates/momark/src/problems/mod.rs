//! Registry of bound-constrained multi-objective test problems.
//!
//! Each problem carries its decision dimension `n`, objective count `m`,
//! box bounds, and three category tags: dimensionality (low/high),
//! separability, and modality. "Mixed" stands for the uncategorized cells
//! of the source table and is excluded from pure-category aggregates.

mod classic;
mod dtlz;
mod fes;
mod wfg;
mod zdt;

use crate::pareto::{DecisionVector, ObjectiveVector};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("unknown problem {name:?}{}", format_suggestions(.suggestions))]
    NotFound {
        name: String,
        suggestions: Vec<String>,
    },
    #[error("decision vector has length {got}, problem {problem} expects {expected}")]
    WrongLength {
        problem: String,
        expected: usize,
        got: usize,
    },
    #[error("coordinate {coord} = {value} outside [{lower}, {upper}] for problem {problem}")]
    OutOfBounds {
        problem: String,
        coord: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("problem {problem} produced a non-finite objective at {x:?}")]
    NonFiniteOutput { problem: String, x: Vec<f64> },
    #[error("unknown category filter {0:?}")]
    BadFilter(String),
}

fn format_suggestions(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!(" (similar: {})", suggestions.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimClass {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Separable,
    NonSeparable,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Unimodal,
    Multimodal,
    Mixed,
}

impl DimClass {
    pub fn symbol(self) -> &'static str {
        match self {
            DimClass::Low => "L",
            DimClass::High => "H",
        }
    }
}

impl Separability {
    pub fn symbol(self) -> &'static str {
        match self {
            Separability::Separable => "S",
            Separability::NonSeparable => "NS",
            Separability::Mixed => "X",
        }
    }
}

impl Modality {
    pub fn symbol(self) -> &'static str {
        match self {
            Modality::Unimodal => "U",
            Modality::Multimodal => "M",
            Modality::Mixed => "X",
        }
    }
}

/// Static description of a registered problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemMeta {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub dim_class: DimClass,
    pub separability: Separability,
    pub modality: Modality,
}

/// A problem with its pure, deterministic evaluator.
pub struct ProblemInstance {
    meta: ProblemMeta,
    eval: fn(&[f64]) -> Vec<f64>,
}

impl std::fmt::Debug for ProblemInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("meta", &self.meta)
            .finish()
    }
}

impl ProblemInstance {
    pub fn new(meta: ProblemMeta, eval: fn(&[f64]) -> Vec<f64>) -> Self {
        Self { meta, eval }
    }

    pub fn meta(&self) -> &ProblemMeta {
        &self.meta
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn n(&self) -> usize {
        self.meta.n
    }

    pub fn m(&self) -> usize {
        self.meta.m
    }

    /// Evaluates `x`, rejecting wrong-length or out-of-bounds inputs.
    /// Bounds violations are never clipped: solver bugs must surface.
    pub fn evaluate(&self, x: &DecisionVector) -> Result<ObjectiveVector, ProblemError> {
        let xs = x.values();
        if xs.len() != self.meta.n {
            return Err(ProblemError::WrongLength {
                problem: self.meta.name.clone(),
                expected: self.meta.n,
                got: xs.len(),
            });
        }
        for (i, &v) in xs.iter().enumerate() {
            if !(v >= self.meta.lower[i] && v <= self.meta.upper[i]) {
                return Err(ProblemError::OutOfBounds {
                    problem: self.meta.name.clone(),
                    coord: i,
                    value: v,
                    lower: self.meta.lower[i],
                    upper: self.meta.upper[i],
                });
            }
        }
        let out = (self.eval)(xs);
        debug_assert_eq!(out.len(), self.meta.m);
        ObjectiveVector::new(out).map_err(|e| match e {
            crate::pareto::ParetoError::InvalidObjectives(_) => ProblemError::NonFiniteOutput {
                problem: self.meta.name.clone(),
                x: xs.to_vec(),
            },
            _ => unreachable!(),
        })
    }
}

/// Conjunction of optional category constraints.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CategoryFilter {
    pub dim_class: Option<DimClass>,
    pub separability: Option<Separability>,
    pub modality: Option<Modality>,
    pub objectives: Option<usize>,
}

impl CategoryFilter {
    pub fn matches(&self, meta: &ProblemMeta) -> bool {
        self.dim_class.is_none_or(|d| meta.dim_class == d)
            && self.separability.is_none_or(|s| meta.separability == s)
            && self.modality.is_none_or(|m| meta.modality == m)
            && self.objectives.is_none_or(|m| meta.m == m)
    }

    /// Parses expressions like `D=H`, `S=NS`, `M=U`, `m=3`; comma-separated
    /// terms are ANDed.
    pub fn parse(expr: &str) -> Result<Self, ProblemError> {
        let mut filter = CategoryFilter::default();
        for term in expr.split(',').filter(|t| !t.is_empty()) {
            let (key, value) = term
                .split_once('=')
                .ok_or_else(|| ProblemError::BadFilter(term.to_string()))?;
            match (key, value) {
                ("D", "L") => filter.dim_class = Some(DimClass::Low),
                ("D", "H") => filter.dim_class = Some(DimClass::High),
                ("S", "S") => filter.separability = Some(Separability::Separable),
                ("S", "NS") => filter.separability = Some(Separability::NonSeparable),
                ("S", "X") => filter.separability = Some(Separability::Mixed),
                ("M", "U") => filter.modality = Some(Modality::Unimodal),
                ("M", "M") => filter.modality = Some(Modality::Multimodal),
                ("M", "X") => filter.modality = Some(Modality::Mixed),
                ("m", v) => {
                    filter.objectives = Some(
                        v.parse()
                            .map_err(|_| ProblemError::BadFilter(term.into()))?,
                    )
                }
                _ => return Err(ProblemError::BadFilter(term.to_string())),
            }
        }
        Ok(filter)
    }
}

/// Name-keyed problem registry. The mandatory core set is preloaded;
/// additional problems register through [`Registry::register`].
pub struct Registry {
    problems: BTreeMap<String, Arc<ProblemInstance>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            problems: BTreeMap::new(),
        }
    }

    /// Registry with the mandatory core problems loaded.
    pub fn core() -> Self {
        let mut r = Self::empty();
        for instance in classic::instances() {
            r.register(instance);
        }
        for instance in zdt::instances() {
            r.register(instance);
        }
        for instance in dtlz::instances() {
            r.register(instance);
        }
        for instance in wfg::instances() {
            r.register(instance);
        }
        for instance in fes::instances() {
            r.register(instance);
        }
        r
    }

    pub fn register(&mut self, instance: ProblemInstance) {
        self.problems
            .insert(instance.name().to_string(), Arc::new(instance));
    }

    /// Case-sensitive lookup on canonical names; unknown names report
    /// near matches.
    pub fn lookup(&self, name: &str) -> Result<Arc<ProblemInstance>, ProblemError> {
        self.problems.get(name).cloned().ok_or_else(|| {
            let mut suggestions: Vec<String> = self
                .problems
                .keys()
                .filter(|k| k.eq_ignore_ascii_case(name) || levenshtein(k, name) <= 2)
                .cloned()
                .collect();
            suggestions.truncate(5);
            ProblemError::NotFound {
                name: name.to_string(),
                suggestions,
            }
        })
    }

    /// Metas matching the filter, in stable name order.
    pub fn list(&self, filter: &CategoryFilter) -> Vec<ProblemMeta> {
        self.problems
            .values()
            .map(|p| p.meta().clone())
            .filter(|meta| filter.matches(meta))
            .collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.problems.keys().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}

fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Names of the mandatory core set, in registry order.
pub fn core_names() -> Vec<&'static str> {
    vec![
        "BK1", "DG01", "DPAM1", "DTLZ1", "DTLZ1n2", "DTLZ2", "DTLZ2n2", "DTLZ3", "DTLZ4", "DTLZ5",
        "DTLZ6", "FES1", "FES2", "FES3", "Far1", "Fonseca", "IKK1", "IM1", "Kursawe", "LRS1",
        "MHHM1", "MHHM2", "MLF1", "MLF2", "MOP1", "MOP2", "MOP3", "MOP4", "MOP5", "MOP6", "MOP7",
        "QV1", "SK1", "SK2", "SP1", "SSFYY1", "SSFYY2", "Sch1", "VU1", "VU2", "WFG1", "WFG2",
        "WFG3", "WFG4", "WFG5", "WFG6", "WFG7", "WFG8", "WFG9", "ZDT1", "ZDT2", "ZDT3", "ZDT4",
        "ZDT6", "ZLT1",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_registry_has_all_core_names() {
        let registry = Registry::core();
        assert_eq!(registry.len(), 55);
        for name in core_names() {
            assert!(registry.lookup(name).is_ok(), "missing {name}");
        }
    }

    #[test]
    fn lookup_examples() {
        let registry = Registry::core();
        let zdt1 = registry.lookup("ZDT1").unwrap();
        assert_eq!(zdt1.n(), 30);
        assert_eq!(zdt1.m(), 2);
        assert_eq!(zdt1.meta().dim_class, DimClass::High);
        assert_eq!(zdt1.meta().separability, Separability::Separable);
        assert_eq!(zdt1.meta().modality, Modality::Unimodal);

        let fes3 = registry.lookup("FES3").unwrap();
        assert_eq!((fes3.n(), fes3.m()), (10, 4));

        match registry.lookup("NOPE") {
            Err(ProblemError::NotFound { name, .. }) => assert_eq!(name, "NOPE"),
            other => panic!("expected not-found, got {other:?}"),
        }
    }

    #[test]
    fn lookup_suggests_near_matches() {
        let registry = Registry::core();
        match registry.lookup("zdt1") {
            Err(ProblemError::NotFound { suggestions, .. }) => {
                assert!(suggestions.contains(&"ZDT1".to_string()))
            }
            other => panic!("expected not-found, got {other:?}"),
        }
    }

    #[test]
    fn list_filters() {
        let registry = Registry::core();
        let m4 = registry.list(&CategoryFilter {
            objectives: Some(4),
            ..Default::default()
        });
        assert_eq!(m4.len(), 1);
        assert_eq!(m4[0].name, "FES3");

        let multimodal = registry.list(&CategoryFilter {
            modality: Some(Modality::Multimodal),
            ..Default::default()
        });
        let names: Vec<&str> = multimodal.iter().map(|m| m.name.as_str()).collect();
        for expected in ["DTLZ1", "DTLZ3", "ZDT6", "SK1", "MLF1", "Far1", "QV1"] {
            assert!(names.contains(&expected), "missing {expected}");
        }

        let all = registry.list(&CategoryFilter::default());
        assert_eq!(all.len(), 55);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.name.cmp(&b.name));
        assert_eq!(all, sorted, "listing must be name-ordered");
    }

    #[test]
    fn filter_parsing() {
        let f = CategoryFilter::parse("D=H,m=3").unwrap();
        assert_eq!(f.dim_class, Some(DimClass::High));
        assert_eq!(f.objectives, Some(3));
        assert!(CategoryFilter::parse("Q=Z").is_err());
        assert!(CategoryFilter::parse("modality").is_err());
    }

    #[test]
    fn table_metadata_matches_source() {
        // (name, n, m, D, S, M) transcribed from the source table
        let expected: &[(&str, usize, usize, &str, &str, &str)] = &[
            ("BK1", 2, 2, "L", "S", "U"),
            ("DG01", 1, 2, "L", "X", "M"),
            ("DPAM1", 10, 2, "H", "NS", "X"),
            ("DTLZ1", 7, 3, "H", "X", "M"),
            ("DTLZ1n2", 2, 2, "L", "X", "M"),
            ("DTLZ2", 12, 3, "H", "X", "U"),
            ("DTLZ2n2", 2, 2, "L", "X", "U"),
            ("DTLZ3", 12, 3, "H", "X", "M"),
            ("DTLZ4", 12, 3, "H", "X", "U"),
            ("DTLZ5", 12, 3, "H", "X", "U"),
            ("DTLZ6", 22, 3, "H", "X", "U"),
            ("FES1", 10, 2, "H", "S", "U"),
            ("FES2", 10, 3, "H", "S", "U"),
            ("FES3", 10, 4, "H", "S", "U"),
            ("Far1", 2, 2, "L", "NS", "M"),
            ("Fonseca", 2, 2, "L", "S", "U"),
            ("IKK1", 2, 3, "L", "X", "U"),
            ("IM1", 2, 2, "L", "X", "U"),
            ("Kursawe", 3, 2, "L", "X", "X"),
            ("LRS1", 2, 2, "L", "S", "U"),
            ("MHHM1", 1, 3, "L", "X", "U"),
            ("MHHM2", 2, 3, "L", "S", "U"),
            ("MLF1", 1, 2, "L", "X", "M"),
            ("MLF2", 2, 2, "L", "NS", "M"),
            ("MOP1", 1, 2, "L", "S", "U"),
            ("MOP2", 4, 2, "L", "S", "U"),
            ("MOP3", 2, 2, "L", "X", "X"),
            ("MOP4", 3, 2, "L", "S", "X"),
            ("MOP5", 2, 3, "L", "NS", "X"),
            ("MOP6", 2, 2, "L", "S", "X"),
            ("MOP7", 2, 3, "L", "X", "U"),
            ("QV1", 10, 2, "H", "S", "M"),
            ("SK1", 1, 2, "L", "S", "M"),
            ("SK2", 4, 2, "L", "X", "X"),
            ("SP1", 2, 2, "L", "NS", "U"),
            ("SSFYY1", 2, 2, "L", "S", "U"),
            ("SSFYY2", 1, 2, "L", "X", "X"),
            ("Sch1", 1, 2, "L", "X", "X"),
            ("VU1", 2, 2, "L", "S", "U"),
            ("VU2", 2, 2, "L", "S", "U"),
            ("WFG1", 8, 3, "H", "S", "U"),
            ("WFG2", 8, 3, "H", "NS", "X"),
            ("WFG3", 8, 3, "H", "NS", "U"),
            ("WFG4", 8, 3, "H", "S", "M"),
            ("WFG5", 8, 3, "H", "S", "X"),
            ("WFG6", 8, 3, "H", "NS", "U"),
            ("WFG7", 8, 3, "H", "S", "U"),
            ("WFG8", 8, 3, "H", "NS", "U"),
            ("WFG9", 8, 3, "H", "NS", "X"),
            ("ZDT1", 30, 2, "H", "S", "U"),
            ("ZDT2", 30, 2, "H", "S", "U"),
            ("ZDT3", 30, 2, "H", "S", "X"),
            ("ZDT4", 10, 2, "H", "S", "X"),
            ("ZDT6", 10, 2, "H", "S", "M"),
            ("ZLT1", 10, 3, "H", "S", "U"),
        ];
        assert_eq!(expected.len(), 55);
        let registry = Registry::core();
        for &(name, n, m, d, s, md) in expected {
            let p = registry
                .lookup(name)
                .unwrap_or_else(|_| panic!("missing {name}"));
            let meta = p.meta();
            assert_eq!((meta.n, meta.m), (n, m), "{name} dimensions");
            assert_eq!(meta.dim_class.symbol(), d, "{name} D");
            assert_eq!(meta.separability.symbol(), s, "{name} S");
            assert_eq!(meta.modality.symbol(), md, "{name} M");
            assert_eq!(meta.lower.len(), n);
            assert_eq!(meta.upper.len(), n);
            assert!(meta.lower.iter().zip(&meta.upper).all(|(l, u)| l <= u));
        }
    }

    #[test]
    fn evaluators_are_pure_and_finite_in_bounds() {
        let registry = Registry::core();
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for name in registry.names().map(str::to_string).collect::<Vec<_>>() {
            let p = registry.lookup(&name).unwrap();
            let meta = p.meta().clone();
            for _ in 0..1000 {
                let x: Vec<f64> = (0..meta.n)
                    .map(|i| meta.lower[i] + next() * (meta.upper[i] - meta.lower[i]))
                    .collect();
                let dv = DecisionVector::from(x.clone());
                let f1 = p.evaluate(&dv).unwrap_or_else(|e| panic!("{name}: {e}"));
                let f2 = p.evaluate(&dv).unwrap();
                // bit-identical purity
                assert_eq!(
                    f1.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                    f2.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                    "{name} impure at {x:?}"
                );
                assert_eq!(f1.len(), meta.m);
            }
        }
    }

    #[test]
    fn out_of_bounds_and_wrong_length_are_errors() {
        let registry = Registry::core();
        let p = registry.lookup("BK1").unwrap();
        let below = DecisionVector::from(vec![p.meta().lower[0] - 1e-9, 0.0]);
        assert!(matches!(
            p.evaluate(&below),
            Err(ProblemError::OutOfBounds { coord: 0, .. })
        ));
        let short = DecisionVector::from(vec![0.0]);
        assert!(matches!(
            p.evaluate(&short),
            Err(ProblemError::WrongLength { .. })
        ));
    }
}
