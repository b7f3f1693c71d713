//! Reference-set normalization and the four archive quality indicators:
//! hypervolume difference, additive epsilon, GD, and IGD.
//!
//! All indicator inputs are expected in normalized objective space (see
//! [`NormalizationFrame`]). An empty archive maps to the `+infinity`
//! sentinel so "no target reached yet" is representable uniformly.

mod hypervolume;

pub use hypervolume::{hv_oracle, hypervolume};

use crate::pareto::{nondominated_filter, ObjectiveVector};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IndicatorError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hypervolume unsupported for {0} objectives (2..=4 only)")]
    UnsupportedDimension(usize),
    #[error(
        "normalization frame degenerate in coordinate {coord}: value {value} != ideal {ideal}"
    )]
    DegenerateFrame {
        coord: usize,
        value: f64,
        ideal: f64,
    },
    #[error("reference set is empty")]
    EmptyReference,
    #[error("invalid reference set: {0}")]
    InvalidReference(String),
}

/// The four quality indicators. All are minimized against a reference set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndicatorKind {
    HvDiff,
    EpsPlus,
    Gd,
    Igd,
}

impl IndicatorKind {
    pub const ALL: [IndicatorKind; 4] = [
        IndicatorKind::HvDiff,
        IndicatorKind::EpsPlus,
        IndicatorKind::Gd,
        IndicatorKind::Igd,
    ];

    /// Hypervolume difference and additive epsilon never rank a dominating
    /// set worse; GD and IGD can.
    pub fn pareto_compliant(self) -> bool {
        matches!(self, IndicatorKind::HvDiff | IndicatorKind::EpsPlus)
    }

    pub fn name(self) -> &'static str {
        match self {
            IndicatorKind::HvDiff => "hv_diff",
            IndicatorKind::EpsPlus => "eps_plus",
            IndicatorKind::Gd => "gd",
            IndicatorKind::Igd => "igd",
        }
    }

    pub fn parse(s: &str) -> Option<IndicatorKind> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fixed approximation of a problem's Pareto front: mutually non-dominated,
/// finite, all of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    problem: String,
    points: Vec<ObjectiveVector>,
}

impl ReferenceSet {
    pub fn new(
        problem: impl Into<String>,
        points: Vec<ObjectiveVector>,
    ) -> Result<Self, IndicatorError> {
        if points.is_empty() {
            return Err(IndicatorError::EmptyReference);
        }
        let m = points[0].len();
        for p in &points {
            if p.len() != m {
                return Err(IndicatorError::DimensionMismatch {
                    expected: m,
                    got: p.len(),
                });
            }
        }
        let filtered = nondominated_filter(&points)
            .map_err(|e| IndicatorError::InvalidReference(e.to_string()))?;
        if filtered.len() != points.len() {
            return Err(IndicatorError::InvalidReference(format!(
                "{} of {} points are dominated or duplicated",
                points.len() - filtered.len(),
                points.len()
            )));
        }
        Ok(Self {
            problem: problem.into(),
            points,
        })
    }

    pub fn problem(&self) -> &str {
        &self.problem
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn objective_count(&self) -> usize {
        self.points[0].len()
    }
}

/// Componentwise ideal (minimum) and nadir (maximum) of a reference set.
/// Coordinates where the two coincide are degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationFrame {
    ideal: ObjectiveVector,
    nadir: ObjectiveVector,
}

impl NormalizationFrame {
    pub fn new(ideal: ObjectiveVector, nadir: ObjectiveVector) -> Result<Self, IndicatorError> {
        if ideal.len() != nadir.len() {
            return Err(IndicatorError::DimensionMismatch {
                expected: ideal.len(),
                got: nadir.len(),
            });
        }
        if ideal
            .values()
            .iter()
            .zip(nadir.values())
            .any(|(i, n)| i > n)
        {
            return Err(IndicatorError::InvalidReference(
                "ideal exceeds nadir".into(),
            ));
        }
        Ok(Self { ideal, nadir })
    }

    pub fn from_points(points: &[ObjectiveVector]) -> Result<Self, IndicatorError> {
        let first = points.first().ok_or(IndicatorError::EmptyReference)?;
        let m = first.len();
        let mut ideal = vec![f64::INFINITY; m];
        let mut nadir = vec![f64::NEG_INFINITY; m];
        for p in points {
            if p.len() != m {
                return Err(IndicatorError::DimensionMismatch {
                    expected: m,
                    got: p.len(),
                });
            }
            for i in 0..m {
                ideal[i] = ideal[i].min(p[i]);
                nadir[i] = nadir[i].max(p[i]);
            }
        }
        Ok(Self {
            ideal: ObjectiveVector::new(ideal).expect("finite by construction"),
            nadir: ObjectiveVector::new(nadir).expect("finite by construction"),
        })
    }

    pub fn from_reference_set(r: &ReferenceSet) -> Result<Self, IndicatorError> {
        Self::from_points(r.points())
    }

    pub fn ideal(&self) -> &ObjectiveVector {
        &self.ideal
    }

    pub fn nadir(&self) -> &ObjectiveVector {
        &self.nadir
    }

    pub fn objective_count(&self) -> usize {
        self.ideal.len()
    }

    /// Coordinates where ideal and nadir coincide.
    pub fn degenerate_coords(&self) -> Vec<usize> {
        (0..self.ideal.len())
            .filter(|&i| self.ideal[i] == self.nadir[i])
            .collect()
    }
}

/// Maps `v` into frame coordinates: `(v_i - ideal_i) / (nadir_i - ideal_i)`.
/// A degenerate coordinate maps to 0 when `v_i` equals the ideal and errors
/// otherwise.
pub fn normalize(
    v: &ObjectiveVector,
    frame: &NormalizationFrame,
) -> Result<ObjectiveVector, IndicatorError> {
    if v.len() != frame.objective_count() {
        return Err(IndicatorError::DimensionMismatch {
            expected: frame.objective_count(),
            got: v.len(),
        });
    }
    let mut out = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let (lo, hi) = (frame.ideal[i], frame.nadir[i]);
        if lo == hi {
            if v[i] == lo {
                out.push(0.0);
            } else {
                return Err(IndicatorError::DegenerateFrame {
                    coord: i,
                    value: v[i],
                    ideal: lo,
                });
            }
        } else {
            out.push((v[i] - lo) / (hi - lo));
        }
    }
    ObjectiveVector::new(out).map_err(|_| {
        IndicatorError::InvalidReference("normalization produced non-finite values".into())
    })
}

/// Hypervolume of the reference set minus hypervolume of the archive, both in
/// normalized space against `ref_point`. Archive points outside
/// `[0, ref_point]` are excluded from the hypervolume (they still count for
/// the distance-based indicators). Empty archive yields `+infinity`.
pub fn hv_diff(
    archive: &[ObjectiveVector],
    reference: &[ObjectiveVector],
    ref_point: &ObjectiveVector,
) -> Result<f64, IndicatorError> {
    let hv_ref = hypervolume(reference, ref_point)?;
    hv_diff_against(archive, hv_ref, ref_point)
}

/// Same as [`hv_diff`] with the reference hypervolume precomputed.
pub fn hv_diff_against(
    archive: &[ObjectiveVector],
    reference_hv: f64,
    ref_point: &ObjectiveVector,
) -> Result<f64, IndicatorError> {
    if archive.is_empty() {
        return Ok(f64::INFINITY);
    }
    let within: Vec<ObjectiveVector> = archive
        .iter()
        .filter(|p| p.values().iter().all(|&x| x >= 0.0))
        .cloned()
        .collect();
    let hv_archive = hypervolume(&within, ref_point)?;
    Ok(reference_hv - hv_archive)
}

/// Additive epsilon indicator: the smallest shift `e` such that every
/// reference point is weakly dominated by some archive point moved down by
/// `e` in every coordinate.
pub fn eps_plus(
    archive: &[ObjectiveVector],
    reference: &[ObjectiveVector],
) -> Result<f64, IndicatorError> {
    if reference.is_empty() {
        return Err(IndicatorError::EmptyReference);
    }
    if archive.is_empty() {
        return Ok(f64::INFINITY);
    }
    let mut worst = f64::NEG_INFINITY;
    for r in reference {
        let mut best = f64::INFINITY;
        for a in archive {
            let mut shift = f64::NEG_INFINITY;
            for (x, y) in a.values().iter().zip(r.values()) {
                shift = shift.max(x - y);
            }
            best = best.min(shift);
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

fn euclidean(a: &ObjectiveVector, b: &ObjectiveVector) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Generational distance: mean Euclidean distance from each archive point to
/// its nearest reference point.
pub fn gd(
    archive: &[ObjectiveVector],
    reference: &[ObjectiveVector],
) -> Result<f64, IndicatorError> {
    if reference.is_empty() {
        return Err(IndicatorError::EmptyReference);
    }
    if archive.is_empty() {
        return Ok(f64::INFINITY);
    }
    let total: f64 = archive
        .iter()
        .map(|a| {
            reference
                .iter()
                .map(|r| euclidean(a, r))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / archive.len() as f64)
}

/// Inverted generational distance: mean Euclidean distance from each
/// reference point to its nearest archive point.
pub fn igd(
    archive: &[ObjectiveVector],
    reference: &[ObjectiveVector],
) -> Result<f64, IndicatorError> {
    if reference.is_empty() {
        return Err(IndicatorError::EmptyReference);
    }
    if archive.is_empty() {
        return Ok(f64::INFINITY);
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            archive
                .iter()
                .map(|a| euclidean(a, r))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::{dominates, Archive};
    use proptest::prelude::*;

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let frame = NormalizationFrame::new(ov(&[0.0, 0.0]), ov(&[4.0, 4.0])).unwrap();
        assert_eq!(
            normalize(&ov(&[0.0, 0.0]), &frame).unwrap(),
            ov(&[0.0, 0.0])
        );
        assert_eq!(
            normalize(&ov(&[4.0, 4.0]), &frame).unwrap(),
            ov(&[1.0, 1.0])
        );
        assert_eq!(
            normalize(&ov(&[2.0, 4.0]), &frame).unwrap(),
            ov(&[0.5, 1.0])
        );
    }

    #[test]
    fn normalize_degenerate_frame() {
        let frame = NormalizationFrame::new(ov(&[1.0, 2.0]), ov(&[1.0, 4.0])).unwrap();
        assert_eq!(
            normalize(&ov(&[1.0, 3.0]), &frame).unwrap(),
            ov(&[0.0, 0.5])
        );
        assert!(matches!(
            normalize(&ov(&[1.5, 3.0]), &frame),
            Err(IndicatorError::DegenerateFrame { coord: 0, .. })
        ));
        assert_eq!(frame.degenerate_coords(), vec![0]);
    }

    #[test]
    fn frame_from_points_is_componentwise_extrema() {
        let frame = NormalizationFrame::from_points(&[ov(&[1.0, 5.0]), ov(&[3.0, 2.0])]).unwrap();
        assert_eq!(frame.ideal(), &ov(&[1.0, 2.0]));
        assert_eq!(frame.nadir(), &ov(&[3.0, 5.0]));
    }

    #[test]
    fn reference_set_rejects_dominated_points() {
        assert!(ReferenceSet::new("p", vec![ov(&[1.0, 2.0]), ov(&[2.0, 3.0])]).is_err());
        assert!(ReferenceSet::new("p", vec![]).is_err());
        assert!(ReferenceSet::new("p", vec![ov(&[1.0, 2.0]), ov(&[2.0, 1.0])]).is_ok());
    }

    #[test]
    fn hv_diff_examples() {
        let reference = [ov(&[0.25, 0.75]), ov(&[0.5, 0.5]), ov(&[0.75, 0.25])];
        let unit = ov(&[1.0, 1.0]);
        // identical sets
        assert_eq!(hv_diff(&reference, &reference, &unit).unwrap(), 0.0);
        // empty archive
        assert_eq!(hv_diff(&[], &reference, &unit).unwrap(), f64::INFINITY);
        // single mid point against the 0.375 staircase
        let d = hv_diff(&[ov(&[0.5, 0.5])], &reference, &unit).unwrap();
        assert!((d - 0.125).abs() < 1e-15);
    }

    #[test]
    fn hv_diff_clips_points_outside_unit_box() {
        let reference = [ov(&[0.25, 0.75]), ov(&[0.75, 0.25])];
        let unit = ov(&[1.0, 1.0]);
        // a point better than the ideal in one coordinate is excluded from HV
        let d_out = hv_diff(&[ov(&[-0.5, 0.5])], &reference, &unit).unwrap();
        let hv_ref = hypervolume(&reference, &unit).unwrap();
        assert_eq!(d_out, hv_ref);
        // but can never make the difference larger than the reference volume
        let d_in = hv_diff(&[ov(&[0.5, 0.5])], &reference, &unit).unwrap();
        assert!(d_in < d_out);
    }

    #[test]
    fn eps_plus_examples() {
        let r = [ov(&[0.1, 0.9]), ov(&[0.5, 0.5])];
        let a = [ov(&[0.2, 0.8])];
        assert!((eps_plus(&a, &r).unwrap() - 0.3).abs() < 1e-15);
        // identical non-dominated sets -> exactly zero
        assert_eq!(eps_plus(&r, &r).unwrap(), 0.0);
        // utopian point
        assert!(eps_plus(&[ov(&[0.0, 0.0])], &r).unwrap() <= 0.0);
        assert_eq!(eps_plus(&[], &r).unwrap(), f64::INFINITY);
    }

    #[test]
    fn gd_examples() {
        let r = [ov(&[0.0, 0.0])];
        assert_eq!(gd(&[ov(&[0.0, 0.0])], &r).unwrap(), 0.0);
        let d = gd(&[ov(&[0.5, 0.5])], &r).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-12);
        let d = gd(&[ov(&[0.0, 0.0]), ov(&[1.0, 1.0])], &r).unwrap();
        assert!((d - 2.0f64.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(gd(&[], &r).unwrap(), f64::INFINITY);
    }

    #[test]
    fn igd_examples() {
        let r = [ov(&[0.0, 0.0]), ov(&[1.0, 0.0])];
        assert_eq!(igd(&r, &r).unwrap(), 0.0);
        assert!((igd(&[ov(&[0.0, 0.0])], &r).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(igd(&[], &r).unwrap(), f64::INFINITY);
        assert_eq!(
            igd(&[ov(&[0.0, 0.0])], &[]),
            Err(IndicatorError::EmptyReference)
        );
    }

    fn random_nondominated(seed: u64, m: usize, n: usize) -> Vec<ObjectiveVector> {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let cloud: Vec<ObjectiveVector> = (0..n)
            .map(|_| ov(&(0..m).map(|_| next()).collect::<Vec<_>>()))
            .collect();
        nondominated_filter(&cloud).unwrap()
    }

    #[test]
    fn monotone_under_archive_growth() {
        // inserting mutually non-dominated points never worsens the three
        // monotone indicators (GD is excluded: not Pareto compliant)
        let unit = ov(&[1.0, 1.0, 1.0]);
        for seed in 1..20u64 {
            let reference = random_nondominated(seed.wrapping_mul(7919), 3, 40);
            let incoming = random_nondominated(seed.wrapping_mul(104729), 3, 40);
            let hv_ref = hypervolume(&reference, &unit).unwrap();
            let mut archive = Archive::new();
            let mut prev = [f64::INFINITY; 3];
            for (i, p) in incoming.iter().enumerate() {
                assert!(archive
                    .insert(p.clone(), (i + 1) as u64)
                    .unwrap()
                    .is_accepted());
                let pts: Vec<ObjectiveVector> = archive.points().cloned().collect();
                let cur = [
                    hv_diff_against(&pts, hv_ref, &unit).unwrap(),
                    eps_plus(&pts, &reference).unwrap(),
                    igd(&pts, &reference).unwrap(),
                ];
                for (c, p) in cur.iter().zip(&prev) {
                    assert!(c <= p, "indicator increased: {c} > {p}");
                }
                prev = cur;
            }
        }
    }

    proptest! {
        // gd(A, R) = igd(R, A) by definition
        #[test]
        fn gd_igd_duality(
            a in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..20),
            r in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..20),
        ) {
            let a: Vec<ObjectiveVector> = a.iter().map(|v| ov(v)).collect();
            let r: Vec<ObjectiveVector> = r.iter().map(|v| ov(v)).collect();
            let lhs = gd(&a, &r).unwrap();
            let rhs = igd(&r, &a).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
        }

        // eps_plus(A, R) <= 0 iff every r is weakly dominated by some a
        #[test]
        fn eps_sign_characterizes_coverage(
            a in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 1..12),
            r in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 1..12),
        ) {
            let a: Vec<ObjectiveVector> = a.iter().map(|v| ov(v)).collect();
            let r: Vec<ObjectiveVector> = r.iter().map(|v| ov(v)).collect();
            let eps = eps_plus(&a, &r).unwrap();
            let covered = r.iter().all(|rp| {
                a.iter().any(|ap| ap == rp || dominates(ap, rp).unwrap())
            });
            prop_assert_eq!(eps <= 0.0, covered);
        }

        // permutation invariance of hypervolume
        #[test]
        fn hypervolume_permutation_invariant(
            pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..15),
            rot in 0usize..15,
        ) {
            let pts: Vec<ObjectiveVector> = pts.iter().map(|v| ov(v)).collect();
            let unit = ov(&[1.0, 1.0, 1.0]);
            let base = hypervolume(&pts, &unit).unwrap();
            let mut rotated = pts.clone();
            let shift = rot % rotated.len().max(1);
            rotated.rotate_left(shift);
            let after = hypervolume(&rotated, &unit).unwrap();
            prop_assert!((base - after).abs() <= 1e-12);
        }
    }
}
