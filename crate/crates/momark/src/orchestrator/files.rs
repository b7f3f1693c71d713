//! On-disk formats: reference-set files, per-run archive CSVs, and the run
//! manifest. Everything is line-oriented text with round-trip float
//! precision, re-parseable by this module.

use super::OrchestratorError;
use crate::indicators::{NormalizationFrame, ReferenceSet};
use crate::pareto::{Archive, ObjectiveVector};
use std::io::{BufRead, Write};
use std::path::Path;

fn floats_csv(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_floats(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|f| f.parse::<f64>().map_err(|_| format!("bad float {f:?}")))
        .collect()
}

// ---- reference sets ---------------------------------------------------------

/// A reference set plus the provenance of its generation.
#[derive(Debug, Clone, PartialEq)]
pub struct RefsetFile {
    pub refset: ReferenceSet,
    pub frame: NormalizationFrame,
    pub budget_factor: u64,
    pub seed: u64,
    pub generators: Vec<String>,
}

pub fn write_refset(out: &mut impl Write, file: &RefsetFile) -> Result<(), OrchestratorError> {
    let io = OrchestratorError::io;
    writeln!(out, "# momark reference set").map_err(io)?;
    writeln!(out, "problem={}", file.refset.problem()).map_err(io)?;
    writeln!(out, "m={}", file.refset.objective_count()).map_err(io)?;
    writeln!(out, "budget_factor={}", file.budget_factor).map_err(io)?;
    writeln!(out, "seed={}", file.seed).map_err(io)?;
    writeln!(out, "generators={}", file.generators.join(";")).map_err(io)?;
    writeln!(out, "ideal={}", floats_csv(file.frame.ideal().values())).map_err(io)?;
    writeln!(out, "nadir={}", floats_csv(file.frame.nadir().values())).map_err(io)?;
    for p in file.refset.points() {
        writeln!(out, "point={}", floats_csv(p.values())).map_err(io)?;
    }
    Ok(())
}

pub fn read_refset(input: impl BufRead) -> Result<RefsetFile, OrchestratorError> {
    let mut problem = None;
    let mut m = None;
    let mut budget_factor = None;
    let mut seed = None;
    let mut generators = Vec::new();
    let mut ideal = None;
    let mut nadir = None;
    let mut points: Vec<ObjectiveVector> = Vec::new();
    for (line_no, line) in input.lines().enumerate() {
        let line = line.map_err(OrchestratorError::io)?;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad =
            |msg: String| OrchestratorError::runtime(format!("refset line {}: {msg}", line_no + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected key=value".into()))?;
        match key {
            "problem" => problem = Some(value.to_string()),
            "m" => m = Some(value.parse::<usize>().map_err(|_| bad("bad m".into()))?),
            "budget_factor" => {
                budget_factor = Some(value.parse().map_err(|_| bad("bad integer".into()))?)
            }
            "seed" => seed = Some(value.parse().map_err(|_| bad("bad integer".into()))?),
            "generators" => generators = value.split(';').map(String::from).collect(),
            "ideal" => ideal = Some(parse_floats(value).map_err(bad)?),
            "nadir" => nadir = Some(parse_floats(value).map_err(bad)?),
            "point" => points.push(
                ObjectiveVector::new(parse_floats(value).map_err(bad)?)
                    .map_err(|e| bad(e.to_string()))?,
            ),
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    let problem = problem.ok_or_else(|| OrchestratorError::runtime("refset missing problem"))?;
    let refset = ReferenceSet::new(problem, points)
        .map_err(|e| OrchestratorError::runtime(format!("refset invalid: {e}")))?;
    if let Some(m) = m {
        if m != refset.objective_count() {
            return Err(OrchestratorError::runtime("refset m mismatches its points"));
        }
    }
    let stored_frame = match (ideal, nadir) {
        (Some(i), Some(n)) => NormalizationFrame::new(
            ObjectiveVector::new(i).map_err(|e| OrchestratorError::runtime(e.to_string()))?,
            ObjectiveVector::new(n).map_err(|e| OrchestratorError::runtime(e.to_string()))?,
        )
        .map_err(|e| OrchestratorError::runtime(e.to_string()))?,
        _ => return Err(OrchestratorError::runtime("refset missing ideal/nadir")),
    };
    let derived = NormalizationFrame::from_points(refset.points())
        .map_err(|e| OrchestratorError::runtime(e.to_string()))?;
    if derived != stored_frame {
        return Err(OrchestratorError::runtime(
            "refset frame does not match its points",
        ));
    }
    Ok(RefsetFile {
        refset,
        frame: stored_frame,
        budget_factor: budget_factor
            .ok_or_else(|| OrchestratorError::runtime("refset missing budget_factor"))?,
        seed: seed.ok_or_else(|| OrchestratorError::runtime("refset missing seed"))?,
        generators,
    })
}

pub fn refset_path(dir: &Path, problem: &str) -> std::path::PathBuf {
    dir.join(format!("{problem}.refset"))
}

// ---- per-run archives -------------------------------------------------------

pub fn write_archive_csv(out: &mut impl Write, archive: &Archive) -> Result<(), OrchestratorError> {
    let m = archive
        .entries()
        .first()
        .map(|e| e.objectives.len())
        .unwrap_or(2);
    let header: Vec<String> = std::iter::once("fe".to_string())
        .chain((1..=m).map(|i| format!("f{i}")))
        .collect();
    writeln!(out, "{}", header.join(",")).map_err(OrchestratorError::io)?;
    for entry in archive.entries() {
        writeln!(
            out,
            "{},{}",
            entry.fe_stamp,
            floats_csv(entry.objectives.values())
        )
        .map_err(OrchestratorError::io)?;
    }
    Ok(())
}

pub fn read_archive_csv(input: impl BufRead) -> Result<Archive, OrchestratorError> {
    let mut archive = Archive::new();
    for (line_no, line) in input.lines().enumerate() {
        let line = line.map_err(OrchestratorError::io)?;
        let bad = |msg: String| {
            OrchestratorError::runtime(format!("archive line {}: {msg}", line_no + 1))
        };
        if line_no == 0 {
            if !line.starts_with("fe,f1") {
                return Err(bad(format!("unexpected header {line:?}")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let (fe, rest) = line
            .split_once(',')
            .ok_or_else(|| bad("expected fe,f1,...".into()))?;
        let fe: u64 = fe.parse().map_err(|_| bad("bad fe".into()))?;
        let objectives = ObjectiveVector::new(parse_floats(rest).map_err(bad)?)
            .map_err(|e| bad(e.to_string()))?;
        let accepted = archive
            .insert(objectives, fe)
            .map_err(|e| bad(e.to_string()))?;
        if !accepted.is_accepted() {
            return Err(bad("archive file contains a dominated entry".into()));
        }
    }
    Ok(archive)
}

// ---- manifest ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub solver: String,
    pub problem: String,
    pub run_id: u32,
    pub seed: u64,
    pub fe_consumed: u64,
    pub archive_size: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub version: String,
    pub budget_factor: u64,
    pub runs_stochastic: u32,
    pub base_seed: u64,
    pub problem_selection: String,
    pub problems: Vec<String>,
    /// descriptor strings `name:kind` (builtins) or `name:kind:command`
    pub solvers: Vec<String>,
    pub conventions: Vec<String>,
    /// (problem, ideal, nadir) straight from the refsets used
    pub frames: Vec<(String, Vec<f64>, Vec<f64>)>,
    pub runs: Vec<RunRecord>,
}

pub fn write_manifest(
    out: &mut impl Write,
    manifest: &Manifest,
    timestamp: u64,
) -> Result<(), OrchestratorError> {
    let io = OrchestratorError::io;
    writeln!(out, "# momark manifest").map_err(io)?;
    writeln!(out, "# generated_at={timestamp}").map_err(io)?;
    writeln!(out, "version={}", manifest.version).map_err(io)?;
    writeln!(out, "budget_factor={}", manifest.budget_factor).map_err(io)?;
    writeln!(out, "runs_stochastic={}", manifest.runs_stochastic).map_err(io)?;
    writeln!(out, "base_seed={}", manifest.base_seed).map_err(io)?;
    writeln!(out, "problem_selection={}", manifest.problem_selection).map_err(io)?;
    for c in &manifest.conventions {
        writeln!(out, "convention={c}").map_err(io)?;
    }
    for s in &manifest.solvers {
        writeln!(out, "solver={s}").map_err(io)?;
    }
    for p in &manifest.problems {
        writeln!(out, "problem={p}").map_err(io)?;
    }
    for (problem, ideal, nadir) in &manifest.frames {
        writeln!(
            out,
            "frame={problem};{};{}",
            floats_csv(ideal),
            floats_csv(nadir)
        )
        .map_err(io)?;
    }
    for r in &manifest.runs {
        writeln!(
            out,
            "run={},{},{},{},{},{},{}",
            r.solver,
            r.problem,
            r.run_id,
            r.seed,
            r.fe_consumed,
            r.archive_size,
            if r.complete { "complete" } else { "incomplete" }
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn read_manifest(input: impl BufRead) -> Result<Manifest, OrchestratorError> {
    let mut manifest = Manifest {
        version: String::new(),
        budget_factor: 0,
        runs_stochastic: 0,
        base_seed: 0,
        problem_selection: String::new(),
        problems: Vec::new(),
        solvers: Vec::new(),
        conventions: Vec::new(),
        frames: Vec::new(),
        runs: Vec::new(),
    };
    for (line_no, line) in input.lines().enumerate() {
        let line = line.map_err(OrchestratorError::io)?;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| {
            OrchestratorError::runtime(format!("manifest line {}: {msg}", line_no + 1))
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected key=value".into()))?;
        match key {
            "version" => manifest.version = value.to_string(),
            "budget_factor" => {
                manifest.budget_factor = value.parse().map_err(|_| bad("bad integer".into()))?
            }
            "runs_stochastic" => {
                manifest.runs_stochastic = value.parse().map_err(|_| bad("bad integer".into()))?
            }
            "base_seed" => {
                manifest.base_seed = value.parse().map_err(|_| bad("bad integer".into()))?
            }
            "problem_selection" => manifest.problem_selection = value.to_string(),
            "convention" => manifest.conventions.push(value.to_string()),
            "solver" => manifest.solvers.push(value.to_string()),
            "problem" => manifest.problems.push(value.to_string()),
            "frame" => {
                let parts: Vec<&str> = value.split(';').collect();
                if parts.len() != 3 {
                    return Err(bad("frame needs problem;ideal;nadir".into()));
                }
                manifest.frames.push((
                    parts[0].to_string(),
                    parse_floats(parts[1]).map_err(bad)?,
                    parse_floats(parts[2]).map_err(bad)?,
                ));
            }
            "run" => {
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 7 {
                    return Err(bad("run needs 7 fields".into()));
                }
                manifest.runs.push(RunRecord {
                    solver: parts[0].to_string(),
                    problem: parts[1].to_string(),
                    run_id: parts[2].parse().map_err(|_| bad("bad run id".into()))?,
                    seed: parts[3].parse().map_err(|_| bad("bad seed".into()))?,
                    fe_consumed: parts[4].parse().map_err(|_| bad("bad fe".into()))?,
                    archive_size: parts[5].parse().map_err(|_| bad("bad size".into()))?,
                    complete: match parts[6] {
                        "complete" => true,
                        "incomplete" => false,
                        other => return Err(bad(format!("bad completeness {other:?}"))),
                    },
                });
            }
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    if manifest.version.is_empty() {
        return Err(OrchestratorError::runtime("manifest missing version"));
    }
    Ok(manifest)
}
