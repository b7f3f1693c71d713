//! Target ladders, per-run first-hit recording, and best-of-runs merging.
//!
//! A run is an evaluation stream `(fe, objectives)`. The recorder maintains
//! the non-dominated archive incrementally and, whenever the archive
//! changes, re-evaluates the four indicators on the normalized archive and
//! stamps the first hit of every target reached. Indicator values are
//! constant between archive changes, so skipping unchanged evaluations is
//! exact rather than an approximation.

use crate::indicators::{
    hv_diff_against, hypervolume, normalize, IndicatorError, IndicatorKind, NormalizationFrame,
    ReferenceSet,
};
use crate::pareto::{pair_order, Archive, ObjectiveVector, PairOrder, ParetoError};
use crate::solvers::{EvalItem, SolverKind};
use std::io::{BufRead, Write};
use thiserror::Error;

pub const TARGET_COUNT: usize = 70;

#[derive(Debug, Error)]
pub enum RuntimeError {
    #[error("evaluation stream out of order: fe {fe} after {last}")]
    OutOfOrderFe { fe: u64, last: u64 },
    #[error("evaluation stream exceeded budget: fe {fe} > {budget}")]
    BudgetExceeded { fe: u64, budget: u64 },
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
    #[error(transparent)]
    Pareto(#[from] ParetoError),
    #[error("best-of-runs over mixed keys: {0}")]
    MixedKeys(String),
    #[error("best-of-runs needs at least one record")]
    NoRecords,
    #[error("first-hit csv, line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// 70 strictly decreasing target values, log-spaced between the indicator's
/// published endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetLadder {
    pub indicator: IndicatorKind,
    pub values: Vec<f64>,
}

pub fn make_targets(indicator: IndicatorKind) -> TargetLadder {
    let (e0, e1) = match indicator {
        IndicatorKind::EpsPlus => (-0.1, -2.0),
        _ => (-0.8, -3.0),
    };
    let values = (0..TARGET_COUNT)
        .map(|i| 10f64.powf(e0 + (e1 - e0) * (i as f64 / (TARGET_COUNT - 1) as f64)))
        .collect();
    TargetLadder { indicator, values }
}

/// First function-evaluation count at which one target was reached;
/// `fe = None` encodes "never".
#[derive(Debug, Clone, PartialEq)]
pub struct FirstHitRecord {
    pub problem: String,
    pub solver: String,
    pub run_id: u32,
    pub indicator: IndicatorKind,
    pub target_index: usize,
    pub target_value: f64,
    pub fe: Option<u64>,
}

/// Budget allocation for one solver on one problem: equal totals for both
/// solver classes, with deterministic solvers taking one accumulated run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBudget {
    /// evaluations per dimension-scaled run unit: budget_factor * n
    pub v: u64,
    pub runs: u32,
    pub per_run_budget: u64,
    /// scaled-runtime divisor: 1 for stochastic, runs_stochastic for
    /// deterministic
    pub multiplier: u32,
}

impl RunBudget {
    pub fn new(kind: SolverKind, n: usize, budget_factor: u64, runs_stochastic: u32) -> Self {
        let v = budget_factor * n as u64;
        match kind {
            SolverKind::Stochastic => Self {
                v,
                runs: runs_stochastic,
                per_run_budget: v,
                multiplier: 1,
            },
            SolverKind::Deterministic => Self {
                v,
                runs: 1,
                per_run_budget: v * runs_stochastic as u64,
                multiplier: runs_stochastic,
            },
        }
    }

    pub fn total(&self) -> u64 {
        self.runs as u64 * self.per_run_budget
    }
}

/// Output of one recorded run.
#[derive(Debug)]
pub struct RunRecording {
    /// 4 indicators x 70 targets, ordered by (indicator, target_index)
    pub records: Vec<FirstHitRecord>,
    /// raw-objective archive with fe stamps
    pub archive: Archive,
    pub fe_consumed: u64,
    /// stream delivered exactly `budget` evaluations without error
    pub complete: bool,
    /// solver/protocol failure that cut the run short, if any
    pub failure: Option<String>,
}

/// Incrementally maintained indicator state over the normalized archive.
///
/// eps keeps a per-reference running minimum (safe under removals because a
/// removed entry is always dominated by the incoming point, whose shift is
/// no larger). GD caches each entry's nearest-reference distance. IGD tracks
/// each reference point's nearest entry and repairs only the references
/// whose nearest entry was removed.
struct IndicatorEngine {
    reference: Vec<ObjectiveVector>,
    unit_ref: ObjectiveVector,
    reference_hv: f64,
    entries: Vec<(u64, ObjectiveVector)>,
    next_id: u64,
    eps_per_ref: Vec<f64>,
    igd_per_ref: Vec<(f64, u64)>,
    gd_dists: Vec<f64>,
    gd_sum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorValues {
    pub hv_diff: f64,
    pub eps_plus: f64,
    pub gd: f64,
    pub igd: f64,
}

impl IndicatorValues {
    pub fn get(&self, kind: IndicatorKind) -> f64 {
        match kind {
            IndicatorKind::HvDiff => self.hv_diff,
            IndicatorKind::EpsPlus => self.eps_plus,
            IndicatorKind::Gd => self.gd,
            IndicatorKind::Igd => self.igd,
        }
    }
}

fn shift(a: &ObjectiveVector, r: &ObjectiveVector) -> f64 {
    a.values()
        .iter()
        .zip(r.values())
        .map(|(x, y)| x - y)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn distance(a: &ObjectiveVector, b: &ObjectiveVector) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl IndicatorEngine {
    fn new(reference_normalized: Vec<ObjectiveVector>) -> Result<Self, IndicatorError> {
        let m = reference_normalized
            .first()
            .ok_or(IndicatorError::EmptyReference)?
            .len();
        let unit_ref = ObjectiveVector::new(vec![1.0; m]).expect("unit reference");
        let reference_hv = hypervolume(&reference_normalized, &unit_ref)?;
        let count = reference_normalized.len();
        Ok(Self {
            reference: reference_normalized,
            unit_ref,
            reference_hv,
            entries: Vec::new(),
            next_id: 0,
            eps_per_ref: vec![f64::INFINITY; count],
            igd_per_ref: vec![(f64::INFINITY, u64::MAX); count],
            gd_dists: Vec::new(),
            gd_sum: 0.0,
        })
    }

    /// Offers a normalized point; returns whether the archive changed.
    fn offer(&mut self, point: ObjectiveVector) -> bool {
        for (_, q) in &self.entries {
            match pair_order(q.values(), point.values()) {
                PairOrder::FirstDominates | PairOrder::Equal => return false,
                _ => {}
            }
        }
        let mut removed_ids = Vec::new();
        let mut keep_mask = vec![true; self.entries.len()];
        for (i, (id, q)) in self.entries.iter().enumerate() {
            if pair_order(point.values(), q.values()) == PairOrder::FirstDominates {
                keep_mask[i] = false;
                removed_ids.push(*id);
            }
        }
        if !removed_ids.is_empty() {
            let mut keep = keep_mask.iter().copied();
            let mut keep2 = keep_mask.iter().copied();
            self.entries.retain(|_| keep.next().unwrap());
            let mut sum_removed = 0.0;
            self.gd_dists.retain(|d| {
                let k = keep2.next().unwrap();
                if !k {
                    sum_removed += d;
                }
                k
            });
            self.gd_sum -= sum_removed;
        }
        let id = self.next_id;
        self.next_id += 1;

        let nearest_ref = self
            .reference
            .iter()
            .map(|r| distance(&point, r))
            .fold(f64::INFINITY, f64::min);
        self.gd_sum += nearest_ref;
        self.gd_dists.push(nearest_ref);

        for (i, r) in self.reference.iter().enumerate() {
            let s = shift(&point, r);
            if s < self.eps_per_ref[i] {
                self.eps_per_ref[i] = s;
            }
            let d = distance(&point, r);
            let (cur, cur_id) = self.igd_per_ref[i];
            if d < cur {
                self.igd_per_ref[i] = (d, id);
            } else if removed_ids.contains(&cur_id) {
                // nearest entry vanished: rescan this reference point
                let mut best = (d, id);
                for (eid, q) in &self.entries {
                    let dq = distance(q, r);
                    if dq < best.0 {
                        best = (dq, *eid);
                    }
                }
                self.igd_per_ref[i] = best;
            }
        }
        self.entries.push((id, point));
        true
    }

    fn values(&self, need_hv: bool) -> Result<IndicatorValues, IndicatorError> {
        if self.entries.is_empty() {
            return Ok(IndicatorValues {
                hv_diff: f64::INFINITY,
                eps_plus: f64::INFINITY,
                gd: f64::INFINITY,
                igd: f64::INFINITY,
            });
        }
        let hv = if need_hv {
            let points: Vec<ObjectiveVector> =
                self.entries.iter().map(|(_, p)| p.clone()).collect();
            hv_diff_against(&points, self.reference_hv, &self.unit_ref)?
        } else {
            f64::NAN
        };
        Ok(IndicatorValues {
            hv_diff: hv,
            eps_plus: self
                .eps_per_ref
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max),
            gd: self.gd_sum / self.entries.len() as f64,
            igd: self.igd_per_ref.iter().map(|(d, _)| d).sum::<f64>() / self.reference.len() as f64,
        })
    }
}

/// Consumes an evaluation stream, maintaining the archive and stamping
/// first hits for all four indicators' target ladders.
///
/// Solver failures do not discard the partial recording: the run comes back
/// with `complete = false` and the failure message attached.
pub fn record_run(
    problem: &str,
    solver: &str,
    run_id: u32,
    stream: impl Iterator<Item = EvalItem>,
    budget: u64,
    refset: &ReferenceSet,
    frame: &NormalizationFrame,
) -> Result<RunRecording, RuntimeError> {
    let reference_normalized: Vec<ObjectiveVector> = refset
        .points()
        .iter()
        .map(|p| normalize(p, frame))
        .collect::<Result<_, _>>()?;
    let mut engine = IndicatorEngine::new(reference_normalized)?;
    let ladders: Vec<TargetLadder> = IndicatorKind::ALL.into_iter().map(make_targets).collect();
    let mut next_idx = [0usize; 4];
    let mut hits: Vec<Vec<Option<u64>>> = vec![vec![None; TARGET_COUNT]; 4];
    let mut archive = Archive::new();
    let mut last_fe = 0u64;
    let mut failure = None;

    for item in stream {
        let (fe, objectives) = match item {
            Ok(pair) => pair,
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        };
        if fe <= last_fe {
            return Err(RuntimeError::OutOfOrderFe { fe, last: last_fe });
        }
        if fe > budget {
            return Err(RuntimeError::BudgetExceeded { fe, budget });
        }
        last_fe = fe;
        if !archive.insert(objectives.clone(), fe)?.is_accepted() {
            continue;
        }
        let normalized = normalize(&objectives, frame)?;
        let changed = engine.offer(normalized);
        debug_assert!(changed, "normalized archive must mirror the raw archive");
        let need_hv = next_idx[hv_slot()] < TARGET_COUNT;
        let values = engine.values(need_hv)?;
        for (k, kind) in IndicatorKind::ALL.into_iter().enumerate() {
            let value = values.get(kind);
            let ladder = &ladders[k].values;
            while next_idx[k] < TARGET_COUNT && value <= ladder[next_idx[k]] {
                hits[k][next_idx[k]] = Some(fe);
                next_idx[k] += 1;
            }
        }
    }

    let mut records = Vec::with_capacity(4 * TARGET_COUNT);
    for (k, kind) in IndicatorKind::ALL.into_iter().enumerate() {
        for (t, fe) in hits[k].iter().enumerate() {
            records.push(FirstHitRecord {
                problem: problem.to_string(),
                solver: solver.to_string(),
                run_id,
                indicator: kind,
                target_index: t,
                target_value: ladders[k].values[t],
                fe: *fe,
            });
        }
    }
    Ok(RunRecording {
        records,
        archive,
        fe_consumed: last_fe,
        complete: failure.is_none() && last_fe == budget,
        failure,
    })
}

fn hv_slot() -> usize {
    IndicatorKind::ALL
        .iter()
        .position(|k| *k == IndicatorKind::HvDiff)
        .unwrap()
}

/// Minimum first-hit over the runs of one (problem, solver, indicator,
/// target); "never" survives only if every run missed the target.
pub fn best_of_runs(records: &[FirstHitRecord]) -> Result<FirstHitRecord, RuntimeError> {
    let first = records.first().ok_or(RuntimeError::NoRecords)?;
    for r in records {
        if (
            r.problem.as_str(),
            r.solver.as_str(),
            r.indicator,
            r.target_index,
        ) != (
            first.problem.as_str(),
            first.solver.as_str(),
            first.indicator,
            first.target_index,
        ) {
            return Err(RuntimeError::MixedKeys(format!(
                "{}/{}/{}/{} vs {}/{}/{}/{}",
                r.problem,
                r.solver,
                r.indicator,
                r.target_index,
                first.problem,
                first.solver,
                first.indicator,
                first.target_index
            )));
        }
    }
    let best = records
        .iter()
        .filter(|r| r.fe.is_some())
        .min_by_key(|r| r.fe.unwrap());
    Ok(best.unwrap_or(first).clone())
}

// ---- first-hit table file -------------------------------------------------

pub const FIRST_HITS_HEADER: &str = "problem,solver,run,indicator,target_index,target_value,fe";

/// One CSV per solver: `problem,solver,run,indicator,target_index,
/// target_value,fe`, an empty fe field encoding "never".
pub fn write_first_hits_csv(
    out: &mut impl Write,
    records: &[FirstHitRecord],
) -> std::io::Result<()> {
    writeln!(out, "{FIRST_HITS_HEADER}")?;
    for r in records {
        let fe = r.fe.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.problem, r.solver, r.run_id, r.indicator, r.target_index, r.target_value, fe
        )?;
    }
    Ok(())
}

pub fn read_first_hits_csv(input: impl BufRead) -> Result<Vec<FirstHitRecord>, RuntimeError> {
    let mut records = Vec::new();
    for (line_no, line) in input.lines().enumerate() {
        let line = line?;
        if line_no == 0 {
            if line != FIRST_HITS_HEADER {
                return Err(RuntimeError::Csv {
                    line: 1,
                    message: format!("unexpected header {line:?}"),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let err = |message: String| RuntimeError::Csv {
            line: line_no + 1,
            message,
        };
        if fields.len() != 7 {
            return Err(err(format!("expected 7 fields, got {}", fields.len())));
        }
        let indicator = IndicatorKind::parse(fields[3])
            .ok_or_else(|| err(format!("unknown indicator {:?}", fields[3])))?;
        records.push(FirstHitRecord {
            problem: fields[0].to_string(),
            solver: fields[1].to_string(),
            run_id: fields[2].parse().map_err(|_| err("bad run id".into()))?,
            indicator,
            target_index: fields[4]
                .parse()
                .map_err(|_| err("bad target index".into()))?,
            target_value: fields[5]
                .parse()
                .map_err(|_| err("bad target value".into()))?,
            fe: if fields[6].is_empty() {
                None
            } else {
                Some(fields[6].parse().map_err(|_| err("bad fe".into()))?)
            },
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicators::{eps_plus as eps_full, gd as gd_full, hv_diff, igd as igd_full};

    fn ov(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec()).unwrap()
    }

    fn unit_frame() -> NormalizationFrame {
        NormalizationFrame::new(ov(&[0.0, 0.0]), ov(&[1.0, 1.0])).unwrap()
    }

    fn staircase_refset() -> ReferenceSet {
        ReferenceSet::new(
            "toy",
            vec![ov(&[0.25, 0.75]), ov(&[0.5, 0.5]), ov(&[0.75, 0.25])],
        )
        .unwrap()
    }

    fn ok_stream(points: Vec<ObjectiveVector>) -> impl Iterator<Item = EvalItem> {
        points
            .into_iter()
            .enumerate()
            .map(|(i, p)| Ok((i as u64 + 1, p)))
    }

    #[test]
    fn ladder_endpoints_and_spacing() {
        for kind in IndicatorKind::ALL {
            let ladder = make_targets(kind);
            assert_eq!(ladder.values.len(), 70);
            let (first, last) = match kind {
                IndicatorKind::EpsPlus => (10f64.powf(-0.1), 0.01),
                _ => (10f64.powf(-0.8), 0.001),
            };
            assert!((ladder.values[0] - first).abs() / first < 1e-12);
            assert!((ladder.values[69] - last).abs() / last < 1e-12);
            assert!(ladder.values.windows(2).all(|w| w[0] > w[1]));
            let steps: Vec<f64> = ladder
                .values
                .windows(2)
                .map(|w| w[1].log10() - w[0].log10())
                .collect();
            for s in &steps {
                assert!((s - steps[0]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_stream_records_all_never() {
        let rec = record_run(
            "toy",
            "s",
            1,
            ok_stream(vec![]),
            10,
            &staircase_refset(),
            &unit_frame(),
        )
        .unwrap();
        assert_eq!(rec.records.len(), 280);
        assert!(rec.records.iter().all(|r| r.fe.is_none()));
        assert!(!rec.complete);
        assert_eq!(rec.fe_consumed, 0);
    }

    #[test]
    fn reaching_the_reference_hits_everything() {
        let refset = staircase_refset();
        let pts = refset.points().to_vec();
        let k = pts.len() as u64;
        let rec = record_run("toy", "s", 1, ok_stream(pts), 3, &refset, &unit_frame()).unwrap();
        assert!(rec.complete);
        // archive equals the reference set, so every indicator is <= 0
        assert!(rec
            .records
            .iter()
            .all(|r| r.fe.is_some() && r.fe.unwrap() <= k));
    }

    #[test]
    fn hand_built_hv_crossing() {
        // archive {(0.9,0.9)} -> hv_diff 0.365; inserting (0.5,0.5) drops it
        // to 0.125, crossing target 0 (~0.15849) at fe = 2
        let refset = staircase_refset();
        let stream = ok_stream(vec![ov(&[0.9, 0.9]), ov(&[0.5, 0.5]), ov(&[0.25, 0.75])]);
        let rec = record_run("toy", "s", 1, stream, 3, &refset, &unit_frame()).unwrap();
        let hv0 = rec
            .records
            .iter()
            .find(|r| r.indicator == IndicatorKind::HvDiff && r.target_index == 0)
            .unwrap();
        assert_eq!(hv0.fe, Some(2));
    }

    #[test]
    fn first_hits_monotone_in_target_index() {
        let refset = staircase_refset();
        let pts = vec![
            ov(&[0.9, 0.9]),
            ov(&[0.6, 0.7]),
            ov(&[0.5, 0.5]),
            ov(&[0.3, 0.8]),
            ov(&[0.25, 0.75]),
            ov(&[0.75, 0.25]),
        ];
        let rec = record_run("toy", "s", 1, ok_stream(pts), 6, &refset, &unit_frame()).unwrap();
        for kind in IndicatorKind::ALL {
            let fes: Vec<Option<u64>> = rec
                .records
                .iter()
                .filter(|r| r.indicator == kind)
                .map(|r| r.fe)
                .collect();
            let mut seen_never = false;
            let mut last = 0u64;
            for fe in fes {
                match fe {
                    Some(v) => {
                        assert!(!seen_never, "hit after a never");
                        assert!(v >= last);
                        last = v;
                    }
                    None => seen_never = true,
                }
            }
        }
    }

    #[test]
    fn out_of_order_stream_is_a_protocol_error() {
        let refset = staircase_refset();
        let stream = vec![Ok((2u64, ov(&[0.5, 0.5]))), Ok((1u64, ov(&[0.4, 0.6])))].into_iter();
        assert!(matches!(
            record_run("toy", "s", 1, stream, 5, &refset, &unit_frame()),
            Err(RuntimeError::OutOfOrderFe { .. })
        ));
    }

    #[test]
    fn solver_failure_keeps_partial_recording() {
        let refset = staircase_refset();
        let stream = vec![
            Ok((1u64, ov(&[0.5, 0.5]))),
            Err(crate::solvers::SolverError::Protocol {
                line: 3,
                message: "boom".into(),
            }),
        ]
        .into_iter();
        let rec = record_run("toy", "s", 1, stream, 5, &refset, &unit_frame()).unwrap();
        assert!(!rec.complete);
        assert!(rec.failure.is_some());
        assert_eq!(rec.fe_consumed, 1);
        assert_eq!(rec.archive.len(), 1);
    }

    #[test]
    fn best_of_runs_examples() {
        let mk = |run_id, fe| FirstHitRecord {
            problem: "p".into(),
            solver: "s".into(),
            run_id,
            indicator: IndicatorKind::Gd,
            target_index: 3,
            target_value: 0.1,
            fe,
        };
        let best = best_of_runs(&[mk(1, Some(120)), mk(2, Some(80)), mk(3, None)]).unwrap();
        assert_eq!(best.fe, Some(80));
        let never = best_of_runs(&[mk(1, None), mk(2, None)]).unwrap();
        assert_eq!(never.fe, None);
        let single = best_of_runs(&[mk(1, Some(500))]).unwrap();
        assert_eq!(single.fe, Some(500));
        assert!(best_of_runs(&[]).is_err());

        let mut other = mk(1, Some(5));
        other.target_index = 4;
        assert!(matches!(
            best_of_runs(&[mk(1, Some(5)), other]),
            Err(RuntimeError::MixedKeys(_))
        ));
    }

    #[test]
    fn csv_round_trip() {
        let refset = staircase_refset();
        let pts = vec![ov(&[0.9, 0.9]), ov(&[0.5, 0.5])];
        let rec = record_run("toy", "s", 1, ok_stream(pts), 2, &refset, &unit_frame()).unwrap();
        let mut buf = Vec::new();
        write_first_hits_csv(&mut buf, &rec.records).unwrap();
        let parsed = read_first_hits_csv(&buf[..]).unwrap();
        assert_eq!(parsed, rec.records);
    }

    /// Naive recorder: replays the stream re-computing all four indicators
    /// from scratch at every evaluation. The incremental recorder must agree
    /// exactly.
    fn naive_first_hits(
        points: &[ObjectiveVector],
        refset: &ReferenceSet,
        frame: &NormalizationFrame,
    ) -> Vec<Option<u64>> {
        let reference: Vec<ObjectiveVector> = refset
            .points()
            .iter()
            .map(|p| normalize(p, frame).unwrap())
            .collect();
        let unit = ObjectiveVector::new(vec![1.0; reference[0].len()]).unwrap();
        let ladders: Vec<TargetLadder> = IndicatorKind::ALL.into_iter().map(make_targets).collect();
        let mut archive = Archive::new();
        let mut hits: Vec<Option<u64>> = vec![None; 4 * TARGET_COUNT];
        for (i, p) in points.iter().enumerate() {
            let fe = i as u64 + 1;
            archive.insert(p.clone(), fe).unwrap();
            let normalized: Vec<ObjectiveVector> = archive
                .points()
                .map(|q| normalize(q, frame).unwrap())
                .collect();
            let values = [
                hv_diff(&normalized, &reference, &unit).unwrap(),
                eps_full(&normalized, &reference).unwrap(),
                gd_full(&normalized, &reference).unwrap(),
                igd_full(&normalized, &reference).unwrap(),
            ];
            for k in 0..4 {
                for t in 0..TARGET_COUNT {
                    if hits[k * TARGET_COUNT + t].is_none() && values[k] <= ladders[k].values[t] {
                        hits[k * TARGET_COUNT + t] = Some(fe);
                    }
                }
            }
        }
        hits
    }

    #[test]
    fn incremental_recorder_matches_every_fe_recomputation() {
        let mut state = 0xabcdef12u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..20 {
            let m = 2 + trial % 3;
            let ref_cloud: Vec<ObjectiveVector> = (0..30)
                .map(|_| ov(&(0..m).map(|_| next()).collect::<Vec<_>>()))
                .collect();
            let ref_points = crate::pareto::nondominated_filter(&ref_cloud).unwrap();
            let refset = ReferenceSet::new("toy", ref_points).unwrap();
            let frame = NormalizationFrame::new(ov(&vec![0.0; m]), ov(&vec![1.0; m])).unwrap();
            let stream_points: Vec<ObjectiveVector> = (0..60)
                .map(|_| ov(&(0..m).map(|_| next()).collect::<Vec<_>>()))
                .collect();
            let rec = record_run(
                "toy",
                "s",
                1,
                ok_stream(stream_points.clone()),
                60,
                &refset,
                &frame,
            )
            .unwrap();
            let naive = naive_first_hits(&stream_points, &refset, &frame);
            for (k, _) in IndicatorKind::ALL.into_iter().enumerate() {
                for t in 0..TARGET_COUNT {
                    let incremental = rec.records[k * TARGET_COUNT + t].fe;
                    assert_eq!(
                        incremental,
                        naive[k * TARGET_COUNT + t],
                        "trial {trial} indicator {k} target {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn budget_arithmetic() {
        let s = RunBudget::new(SolverKind::Stochastic, 2, 100, 10);
        assert_eq!(
            (s.v, s.runs, s.per_run_budget, s.multiplier),
            (200, 10, 200, 1)
        );
        let d = RunBudget::new(SolverKind::Deterministic, 2, 100, 10);
        assert_eq!(
            (d.v, d.runs, d.per_run_budget, d.multiplier),
            (200, 1, 2000, 10)
        );
        assert_eq!(s.total(), d.total());
        assert_eq!(s.total(), 10 * s.v);
    }
}
