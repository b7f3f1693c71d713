//! Experiment lifecycle: reference-set generation, budgeted runs with
//! first-hit recording, data-profile reporting, the per-evaluation timing
//! micro-benchmark, and the problem listing.

pub mod config;
pub mod files;

pub use config::{ExperimentConfig, PartialConfig, ProblemSelection};
pub use files::{Manifest, RefsetFile, RunRecord};

use crate::indicators::{IndicatorKind, NormalizationFrame, ReferenceSet};
use crate::pareto::{nondominated_filter, Archive, ObjectiveVector};
use crate::problems::{CategoryFilter, ProblemInstance, Registry};
use crate::profiles::{
    aggregate_keys, data_profile, default_alphas, default_panels, emit_csv, emit_svg, DataProfile,
    Panel,
};
use crate::runtime::{
    best_of_runs, read_first_hits_csv, record_run, write_first_hits_csv, FirstHitRecord, RunBudget,
};
use crate::solvers::{evaluation_stream, Builtin, SolverDescriptor, SolverKind, SolverSource};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrchestratorError {
    /// configuration mistakes; CLI exit code 1
    #[error("{0}")]
    Config(String),
    /// runtime, protocol, and i/o failures; CLI exit code 2
    #[error("{0}")]
    Runtime(String),
}

impl OrchestratorError {
    pub fn config(msg: impl Into<String>) -> Self {
        OrchestratorError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        OrchestratorError::Runtime(msg.into())
    }

    pub fn io(e: std::io::Error) -> Self {
        OrchestratorError::Runtime(format!("i/o: {e}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            OrchestratorError::Config(_) => 1,
            OrchestratorError::Runtime(_) => 2,
        }
    }
}

fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), OrchestratorError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(OrchestratorError::io)?;
    fs::rename(&tmp, path).map_err(OrchestratorError::io)?;
    Ok(())
}

fn descriptor_display(d: &SolverDescriptor) -> String {
    match &d.source {
        SolverSource::Builtin(_) => format!("{}:{}", d.name, d.kind.name()),
        SolverSource::External { command } => {
            format!("{}:{}:{}", d.name, d.kind.name(), command.join(" "))
        }
    }
}

pub const CONVENTIONS: [&str; 4] = [
    "normalization=reference-set-ideal-nadir",
    "hv_reference_point=unit",
    "targets=absolute-normalized-indicator-values",
    "deterministic_multiplier=runs_stochastic",
];

// ---- refset -----------------------------------------------------------------

/// Generates one reference set per problem: every builtin solver runs once
/// at ten times the standard per-run budget, the archives are unioned and
/// non-dominated filtered, and the result lands next to its normalization
/// frame. Existing files are only replaced under `force`.
pub fn cmd_refset(
    registry: &Registry,
    selection: &ProblemSelection,
    budget_factor: u64,
    seed: u64,
    refset_dir: &Path,
    force: bool,
) -> Result<Vec<PathBuf>, OrchestratorError> {
    let problems = selection.resolve(registry)?;
    fs::create_dir_all(refset_dir).map_err(OrchestratorError::io)?;
    for p in &problems {
        let path = files::refset_path(refset_dir, p.name());
        if path.exists() && !force {
            return Err(OrchestratorError::config(format!(
                "{} already exists; pass --force to regenerate",
                path.display()
            )));
        }
    }
    let generated: Vec<Result<(String, RefsetFile), OrchestratorError>> = problems
        .par_iter()
        .map(|p| generate_refset(p, budget_factor, seed).map(|f| (p.name().to_string(), f)))
        .collect();
    let mut paths = Vec::new();
    for result in generated {
        let (name, file) = result?;
        let path = files::refset_path(refset_dir, &name);
        let mut buf = Vec::new();
        files::write_refset(&mut buf, &file)?;
        write_atomic(&path, &buf)?;
        paths.push(path);
    }
    Ok(paths)
}

fn generate_refset(
    problem: &ProblemInstance,
    budget_factor: u64,
    seed: u64,
) -> Result<RefsetFile, OrchestratorError> {
    let budget = 10 * budget_factor * problem.n() as u64;
    let mut union: Vec<ObjectiveVector> = Vec::new();
    let mut generators = Vec::new();
    for (idx, builtin) in Builtin::ALL.into_iter().enumerate() {
        let descriptor = SolverDescriptor::builtin(builtin);
        generators.push(descriptor.name.clone());
        let stream = evaluation_stream(&descriptor, problem, budget, seed + idx as u64)
            .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
        let mut archive = Archive::new();
        for item in stream {
            let (fe, objectives) = item.map_err(|e| OrchestratorError::runtime(e.to_string()))?;
            archive
                .insert(objectives, fe)
                .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
        }
        union.extend(archive.points().cloned());
    }
    let points =
        nondominated_filter(&union).map_err(|e| OrchestratorError::runtime(e.to_string()))?;
    let refset = ReferenceSet::new(problem.name(), points)
        .map_err(|e| OrchestratorError::runtime(format!("{}: {e}", problem.name())))?;
    let frame = NormalizationFrame::from_points(refset.points())
        .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
    let degenerate = frame.degenerate_coords();
    if !degenerate.is_empty() {
        return Err(OrchestratorError::config(format!(
            "reference set for {} is degenerate in objective(s) {:?} (ideal equals nadir); \
             enlarge the budget or inspect the problem",
            problem.name(),
            degenerate
        )));
    }
    Ok(RefsetFile {
        refset,
        frame,
        budget_factor,
        seed,
        generators,
    })
}

// ---- run ---------------------------------------------------------------------

pub struct RunOutput {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

/// Executes every (solver, problem, run) cell under the budget scheme,
/// writing per-solver first-hit tables, per-run archive dumps, and the
/// manifest. Identical config and seeds reproduce identical artifacts
/// byte for byte (manifest timestamp aside).
pub fn cmd_run(
    registry: &Registry,
    config: &ExperimentConfig,
) -> Result<RunOutput, OrchestratorError> {
    let problems = config.problems.resolve(registry)?;
    let mut refsets: BTreeMap<String, RefsetFile> = BTreeMap::new();
    for p in &problems {
        let path = files::refset_path(&config.refset_dir, p.name());
        let reader = fs::File::open(&path).map_err(|_| {
            OrchestratorError::config(format!(
                "no reference set for {} at {}; generate it first: momark refset --problems {}",
                p.name(),
                path.display(),
                p.name()
            ))
        })?;
        let file = files::read_refset(BufReader::new(reader))?;
        if file.refset.problem() != p.name() {
            return Err(OrchestratorError::runtime(format!(
                "{} names problem {:?}",
                path.display(),
                file.refset.problem()
            )));
        }
        refsets.insert(p.name().to_string(), file);
    }

    struct Cell {
        solver_idx: usize,
        problem_idx: usize,
        run_id: u32,
        seed: u64,
        budget: u64,
    }
    let mut cells = Vec::new();
    for (solver_idx, solver) in config.solvers.iter().enumerate() {
        for (problem_idx, problem) in problems.iter().enumerate() {
            let budget = RunBudget::new(
                solver.kind,
                problem.n(),
                config.budget_factor,
                config.runs_stochastic,
            );
            for run in 1..=budget.runs {
                cells.push(Cell {
                    solver_idx,
                    problem_idx,
                    run_id: run,
                    seed: config.base_seed + (run - 1) as u64,
                    budget: budget.per_run_budget,
                });
            }
        }
    }

    let recordings: Vec<Result<crate::runtime::RunRecording, OrchestratorError>> = cells
        .par_iter()
        .map(|cell| {
            let problem = &problems[cell.problem_idx];
            let solver = &config.solvers[cell.solver_idx];
            let refset = &refsets[problem.name()];
            // a spawn failure becomes a failed (incomplete) run, not an abort
            let stream: Box<dyn Iterator<Item = crate::solvers::EvalItem>> =
                match evaluation_stream(solver, problem, cell.budget, cell.seed) {
                    Ok(stream) => stream,
                    Err(e) => Box::new(std::iter::once(Err(e))),
                };
            record_run(
                problem.name(),
                &solver.name,
                cell.run_id,
                stream,
                cell.budget,
                &refset.refset,
                &refset.frame,
            )
            .map_err(|e| OrchestratorError::runtime(e.to_string()))
        })
        .collect();

    fs::create_dir_all(&config.output_dir).map_err(OrchestratorError::io)?;
    let mut run_records = Vec::new();
    let mut per_solver: BTreeMap<&str, Vec<FirstHitRecord>> = BTreeMap::new();
    for (cell, recording) in cells.iter().zip(recordings) {
        let recording = recording?;
        let problem = &problems[cell.problem_idx];
        let solver = &config.solvers[cell.solver_idx];
        if let Some(failure) = &recording.failure {
            eprintln!(
                "momark: {} run {} on {} incomplete: {failure}",
                solver.name,
                cell.run_id,
                problem.name()
            );
        }
        let archive_dir = config.output_dir.join("archives").join(&solver.name);
        fs::create_dir_all(&archive_dir).map_err(OrchestratorError::io)?;
        let mut buf = Vec::new();
        files::write_archive_csv(&mut buf, &recording.archive)?;
        write_atomic(
            &archive_dir.join(format!("{}_run{}.csv", problem.name(), cell.run_id)),
            &buf,
        )?;
        run_records.push(RunRecord {
            solver: solver.name.clone(),
            problem: problem.name().to_string(),
            run_id: cell.run_id,
            seed: cell.seed,
            fe_consumed: recording.fe_consumed,
            archive_size: recording.archive.len(),
            complete: recording.complete,
        });
        per_solver
            .entry(solver.name.as_str())
            .or_default()
            .extend(recording.records);
    }

    for (solver, records) in &per_solver {
        let mut buf = Vec::new();
        write_first_hits_csv(&mut buf, records).map_err(OrchestratorError::io)?;
        write_atomic(
            &config.output_dir.join(format!("firsthits_{solver}.csv")),
            &buf,
        )?;
    }

    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        budget_factor: config.budget_factor,
        runs_stochastic: config.runs_stochastic,
        base_seed: config.base_seed,
        problem_selection: config.problems.display(),
        problems: problems.iter().map(|p| p.name().to_string()).collect(),
        solvers: config.solvers.iter().map(descriptor_display).collect(),
        conventions: CONVENTIONS.iter().map(|s| s.to_string()).collect(),
        frames: problems
            .iter()
            .map(|p| {
                let f = &refsets[p.name()].frame;
                (
                    p.name().to_string(),
                    f.ideal().values().to_vec(),
                    f.nadir().values().to_vec(),
                )
            })
            .collect(),
        runs: run_records,
    };
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut buf = Vec::new();
    files::write_manifest(&mut buf, &manifest, timestamp)?;
    write_atomic(&config.output_dir.join("manifest.txt"), &buf)?;
    Ok(RunOutput {
        dir: config.output_dir.clone(),
        manifest,
    })
}

// ---- profile -------------------------------------------------------------------

/// Best-of-runs merge across run directories, then per-panel aggregation and
/// CSV/SVG emission. Panels whose filter selects no problem are skipped.
pub fn cmd_profile(
    registry: &Registry,
    run_dirs: &[PathBuf],
    panel_ids: Option<&[String]>,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, OrchestratorError> {
    if run_dirs.is_empty() {
        return Err(OrchestratorError::config("no run directories given"));
    }
    let mut manifests = Vec::new();
    for dir in run_dirs {
        let path = dir.join("manifest.txt");
        let reader = fs::File::open(&path).map_err(|e| {
            OrchestratorError::config(format!("cannot open {}: {e}", path.display()))
        })?;
        manifests.push(files::read_manifest(BufReader::new(reader))?);
    }
    let budget_factor = manifests[0].budget_factor;
    let runs_stochastic = manifests[0].runs_stochastic;
    for m in &manifests {
        if m.budget_factor != budget_factor || m.runs_stochastic != runs_stochastic {
            return Err(OrchestratorError::config(
                "run directories disagree on budget_factor while profiles assume one scheme",
            ));
        }
    }

    let mut solver_kinds: BTreeMap<String, SolverKind> = BTreeMap::new();
    for manifest in &manifests {
        for descriptor in &manifest.solvers {
            let mut parts = descriptor.splitn(3, ':');
            let name = parts.next().unwrap_or_default().to_string();
            let kind = parts
                .next()
                .and_then(SolverKind::parse)
                .ok_or_else(|| OrchestratorError::runtime(format!("bad solver {descriptor:?}")))?;
            solver_kinds.insert(name, kind);
        }
    }

    let mut raw_records: Vec<FirstHitRecord> = Vec::new();
    for dir in run_dirs {
        for entry in fs::read_dir(dir).map_err(OrchestratorError::io)? {
            let entry = entry.map_err(OrchestratorError::io)?;
            let name = entry.file_name().to_string_lossy().to_string();
            if name.starts_with("firsthits_") && name.ends_with(".csv") {
                let reader =
                    BufReader::new(fs::File::open(entry.path()).map_err(OrchestratorError::io)?);
                raw_records.extend(
                    read_first_hits_csv(reader)
                        .map_err(|e| OrchestratorError::runtime(e.to_string()))?,
                );
            }
        }
    }
    if raw_records.is_empty() {
        return Err(OrchestratorError::config(
            "run directories contain no first-hit tables",
        ));
    }

    // best-of-runs per (problem, solver, indicator, target)
    let mut groups: BTreeMap<(String, String, IndicatorKind, usize), Vec<FirstHitRecord>> =
        BTreeMap::new();
    for r in raw_records {
        groups
            .entry((
                r.problem.clone(),
                r.solver.clone(),
                r.indicator,
                r.target_index,
            ))
            .or_default()
            .push(r);
    }
    let mut merged: Vec<FirstHitRecord> = Vec::new();
    for records in groups.values() {
        merged.push(best_of_runs(records).map_err(|e| OrchestratorError::runtime(e.to_string()))?);
    }

    let mut problem_names: Vec<String> = merged.iter().map(|r| r.problem.clone()).collect();
    problem_names.sort();
    problem_names.dedup();
    let mut metas = Vec::new();
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    for name in &problem_names {
        let p = registry
            .lookup(name)
            .map_err(|e| OrchestratorError::config(e.to_string()))?;
        dims.insert(name.clone(), p.n());
        metas.push(p.meta().clone());
    }

    let panels: Vec<Panel> = match panel_ids {
        None => default_panels(),
        Some(ids) => {
            let all = default_panels();
            let mut chosen = Vec::new();
            for id in ids {
                let panel = all.iter().find(|p| &p.id == id).ok_or_else(|| {
                    OrchestratorError::config(format!(
                        "unknown panel {id:?} (known: {})",
                        all.iter()
                            .map(|p| p.id.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                })?;
                chosen.push(panel.clone());
            }
            chosen
        }
    };

    let solver_names: Vec<String> = solver_kinds.keys().cloned().collect();
    let alphas = default_alphas();
    fs::create_dir_all(out_dir).map_err(OrchestratorError::io)?;
    let mut written = Vec::new();
    let mut indicator_sets: Vec<(String, Vec<IndicatorKind>)> = IndicatorKind::ALL
        .into_iter()
        .map(|k| (k.name().to_string(), vec![k]))
        .collect();
    indicator_sets.push(("combined".to_string(), IndicatorKind::ALL.to_vec()));

    for panel in &panels {
        for (set_name, indicators) in &indicator_sets {
            let key = aggregate_keys(&metas, &panel.filter, indicators);
            if key.is_empty() {
                continue;
            }
            let mut profiles: Vec<DataProfile> = Vec::new();
            for solver in &solver_names {
                let multiplier = match solver_kinds[solver] {
                    SolverKind::Stochastic => 1,
                    SolverKind::Deterministic => runs_stochastic,
                };
                profiles.push(
                    data_profile(
                        &merged,
                        &key,
                        solver,
                        multiplier,
                        &dims,
                        &alphas,
                        budget_factor as f64,
                    )
                    .map_err(|e| OrchestratorError::runtime(e.to_string()))?,
                );
            }
            let base = format!("profile_{}_{}", panel.id, set_name);
            let mut csv = Vec::new();
            emit_csv(&mut csv, &profiles).map_err(|e| OrchestratorError::runtime(e.to_string()))?;
            let csv_path = out_dir.join(format!("{base}.csv"));
            write_atomic(&csv_path, &csv)?;
            written.push(csv_path);
            let mut svg = Vec::new();
            emit_svg(&mut svg, &profiles, &format!("{} - {}", panel.id, set_name))
                .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
            let svg_path = out_dir.join(format!("{base}.svg"));
            write_atomic(&svg_path, &svg)?;
            written.push(svg_path);
        }
    }
    Ok(written)
}

// ---- timing ---------------------------------------------------------------------

pub const DEFAULT_TIMING_BUDGETS: [u64; 3] = [10, 100, 1000];
/// The source benchmark also times L3ZDT1; it is not registered here, so the
/// default set substitutes nothing in its place (noted in the CSV header).
pub const DEFAULT_TIMING_PROBLEMS: [&str; 4] = ["BK1", "DPAM1", "DTLZ3", "FES3"];

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub budget: u64,
    pub problem: String,
    pub seconds: f64,
    pub seconds_per_fe: f64,
}

/// Wall-clock per whole solver run at each budget, serially, with each cell
/// repeated until the measurement window is long enough to be stable.
pub fn cmd_timing(
    registry: &Registry,
    problem_names: &[String],
    budgets: &[u64],
    solver: &SolverDescriptor,
    seed: u64,
    out: &mut impl Write,
) -> Result<Vec<TimingRow>, OrchestratorError> {
    if budgets.contains(&0) {
        return Err(OrchestratorError::config("budgets must be positive"));
    }
    let problems: Vec<Arc<ProblemInstance>> = problem_names
        .iter()
        .map(|n| {
            registry
                .lookup(n)
                .map_err(|e| OrchestratorError::config(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let io = OrchestratorError::io;
    writeln!(out, "# momark timing benchmark").map_err(io)?;
    writeln!(out, "# solver={}", solver.name).map_err(io)?;
    writeln!(
        out,
        "# problems={} (source set minus L3ZDT1, which is not registered)",
        problem_names.join(",")
    )
    .map_err(io)?;
    writeln!(out, "budget,problem,seconds,seconds_per_fe").map_err(io)?;
    let mut rows = Vec::new();
    for &budget in budgets {
        for problem in &problems {
            let seconds = time_one_run(solver, problem, budget, seed)?;
            let row = TimingRow {
                budget,
                problem: problem.name().to_string(),
                seconds,
                seconds_per_fe: seconds / budget as f64,
            };
            writeln!(
                out,
                "{},{},{},{}",
                row.budget, row.problem, row.seconds, row.seconds_per_fe
            )
            .map_err(io)?;
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn read_timing_csv(input: impl std::io::BufRead) -> Result<Vec<TimingRow>, OrchestratorError> {
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (line_no, line) in input.lines().enumerate() {
        let line = line.map_err(OrchestratorError::io)?;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad =
            |msg: String| OrchestratorError::runtime(format!("timing line {}: {msg}", line_no + 1));
        if !seen_header {
            if line != "budget,problem,seconds,seconds_per_fe" {
                return Err(bad(format!("unexpected header {line:?}")));
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 fields, got {}", fields.len())));
        }
        rows.push(TimingRow {
            budget: fields[0].parse().map_err(|_| bad("bad budget".into()))?,
            problem: fields[1].to_string(),
            seconds: fields[2].parse().map_err(|_| bad("bad seconds".into()))?,
            seconds_per_fe: fields[3]
                .parse()
                .map_err(|_| bad("bad seconds_per_fe".into()))?,
        });
    }
    Ok(rows)
}

/// Fastest observed wall-clock for one whole run. Minimum over repetitions
/// within a fixed window, so scheduler noise cannot break the budget
/// monotonicity of the emitted table.
fn time_one_run(
    solver: &SolverDescriptor,
    problem: &ProblemInstance,
    budget: u64,
    seed: u64,
) -> Result<f64, OrchestratorError> {
    let mut reps = 0u32;
    let mut best = f64::INFINITY;
    let window = Instant::now();
    loop {
        let stream = evaluation_stream(solver, problem, budget, seed)
            .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
        let start = Instant::now();
        for item in stream {
            item.map_err(|e| OrchestratorError::runtime(e.to_string()))?;
        }
        best = best.min(start.elapsed().as_secs_f64());
        reps += 1;
        if (window.elapsed().as_secs_f64() >= 0.05 && reps >= 5) || reps >= 50_000 {
            return Ok(best);
        }
    }
}

// ---- list-problems ----------------------------------------------------------------

/// Tab-separated listing: name, n, m, D, S, M.
pub fn cmd_list_problems(registry: &Registry, filter: &CategoryFilter) -> String {
    let mut out = String::new();
    for meta in registry.list(filter) {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            meta.name,
            meta.n,
            meta.m,
            meta.dim_class.symbol(),
            meta.separability.symbol(),
            meta.modality.symbol()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_has_core_rows_and_filters() {
        let registry = Registry::core();
        let all = cmd_list_problems(&registry, &CategoryFilter::default());
        assert_eq!(all.lines().count(), 55);
        assert!(all.contains("ZDT1\t30\t2\tH\tS\tU"));
        assert!(all.contains("FES3\t10\t4\tH\tS\tU"));

        let high = cmd_list_problems(&registry, &CategoryFilter::parse("D=H").unwrap());
        for name in ["ZDT1", "DTLZ1", "WFG1", "QV1", "FES1"] {
            assert!(high.lines().any(|l| l.starts_with(&format!("{name}\t"))));
        }

        let m3 = cmd_list_problems(&registry, &CategoryFilter::parse("m=3").unwrap());
        for name in [
            "DTLZ1", "DTLZ2", "DTLZ3", "DTLZ4", "DTLZ5", "DTLZ6", "WFG1", "WFG9", "MOP5", "MOP7",
            "ZLT1", "FES2", "MHHM1", "MHHM2", "IKK1",
        ] {
            assert!(
                m3.lines().any(|l| l.starts_with(&format!("{name}\t"))),
                "missing {name}"
            );
        }
    }

    #[test]
    fn timing_budgets_match_source_defaults() {
        assert_eq!(DEFAULT_TIMING_BUDGETS, [10, 100, 1000]);
        assert_eq!(DEFAULT_TIMING_PROBLEMS.len(), 4);
    }
}
