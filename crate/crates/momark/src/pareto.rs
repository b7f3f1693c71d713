//! Objective/decision vectors, Pareto dominance, and the non-dominated archive.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParetoError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("objective vector must have at least 2 finite components, got {0:?}")]
    InvalidObjectives(Vec<f64>),
    #[error("fe stamp {fe} precedes latest archive stamp {latest}")]
    OutOfOrderFe { fe: u64, latest: u64 },
}

/// A point in objective space, minimized componentwise. Always finite, m >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self, ParetoError> {
        if values.len() < 2 || values.iter().any(|v| !v.is_finite()) {
            return Err(ParetoError::InvalidObjectives(values));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for ObjectiveVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A point in decision space. Bounds are enforced by the problem evaluator,
/// not here.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(pub Vec<f64>);

impl DecisionVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Pairwise order of two objective vectors under weak Pareto dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrder {
    /// First vector dominates the second.
    FirstDominates,
    /// Second vector dominates the first.
    SecondDominates,
    Equal,
    Incomparable,
}

pub(crate) fn pair_order(a: &[f64], b: &[f64]) -> PairOrder {
    debug_assert_eq!(a.len(), b.len());
    let mut a_better = false;
    let mut b_better = false;
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return PairOrder::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => PairOrder::FirstDominates,
        (false, true) => PairOrder::SecondDominates,
        (false, false) => PairOrder::Equal,
        (true, true) => unreachable!(),
    }
}

/// Weak Pareto dominance for minimization: `a` is no worse everywhere and
/// strictly better somewhere. Equal vectors do not dominate each other.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<bool, ParetoError> {
    if a.len() != b.len() {
        return Err(ParetoError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(pair_order(a.values(), b.values()) == PairOrder::FirstDominates)
}

/// Keeps exactly the points not dominated by any other input point.
/// Duplicates collapse to their first copy; survivor order is input order.
pub fn nondominated_filter(
    points: &[ObjectiveVector],
) -> Result<Vec<ObjectiveVector>, ParetoError> {
    if let Some(first) = points.first() {
        for p in points {
            if p.len() != first.len() {
                return Err(ParetoError::DimensionMismatch {
                    left: first.len(),
                    right: p.len(),
                });
            }
        }
    }
    let mut out: Vec<ObjectiveVector> = Vec::new();
    'outer: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            match pair_order(q.values(), p.values()) {
                PairOrder::FirstDominates => continue 'outer,
                // keep only the first copy of duplicates
                PairOrder::Equal if j < i => continue 'outer,
                _ => {}
            }
        }
        out.push(p.clone());
    }
    Ok(out)
}

/// An archive entry: the objective vector plus the function-evaluation count
/// at which it was discovered.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub objectives: ObjectiveVector,
    pub fe_stamp: u64,
}

/// Result of offering a candidate to the archive.
#[derive(Debug, Clone, PartialEq)]
pub enum InsertOutcome {
    /// Candidate entered the archive; lists the entries it displaced.
    Accepted { removed: Vec<ObjectiveVector> },
    /// Candidate was dominated by (or equal to) an existing entry.
    Rejected,
}

impl InsertOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, InsertOutcome::Accepted { .. })
    }
}

/// The set of mutually non-dominated objective vectors found so far.
///
/// Unbounded, linear-scan insertion. Single writer; immutable once a run
/// completes, so finished archives can be shared across threads freely.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Archive {
    entries: Vec<ArchiveEntry>,
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &ObjectiveVector> {
        self.entries.iter().map(|e| &e.objectives)
    }

    /// Inserts `candidate` discovered at evaluation count `fe`.
    ///
    /// Rejected if any entry weakly dominates it or equals it; otherwise all
    /// entries it dominates are removed and it is appended with stamp `fe`.
    pub fn insert(
        &mut self,
        candidate: ObjectiveVector,
        fe: u64,
    ) -> Result<InsertOutcome, ParetoError> {
        if let Some(last) = self.entries.last() {
            if fe < last.fe_stamp {
                return Err(ParetoError::OutOfOrderFe {
                    fe,
                    latest: last.fe_stamp,
                });
            }
            if last.objectives.len() != candidate.len() {
                return Err(ParetoError::DimensionMismatch {
                    left: last.objectives.len(),
                    right: candidate.len(),
                });
            }
        }
        for entry in &self.entries {
            match pair_order(entry.objectives.values(), candidate.values()) {
                PairOrder::FirstDominates | PairOrder::Equal => return Ok(InsertOutcome::Rejected),
                _ => {}
            }
        }
        let mut removed = Vec::new();
        self.entries.retain(|entry| {
            if pair_order(candidate.values(), entry.objectives.values())
                == PairOrder::FirstDominates
            {
                removed.push(entry.objectives.clone());
                false
            } else {
                true
            }
        });
        self.entries.push(ArchiveEntry {
            objectives: candidate,
            fe_stamp: fe,
        });
        Ok(InsertOutcome::Accepted { removed })
    }
}
