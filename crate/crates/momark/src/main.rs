//! momark command-line interface.

use clap::{Parser, Subcommand};
use momark::orchestrator::{
    cmd_list_problems, cmd_profile, cmd_refset, cmd_run, cmd_timing, config::PartialConfig,
    OrchestratorError, ProblemSelection, DEFAULT_TIMING_BUDGETS, DEFAULT_TIMING_PROBLEMS,
};
use momark::problems::{CategoryFilter, Registry};
use momark::solvers::SolverDescriptor;
use std::io::{BufRead, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "momark",
    version,
    about = "Benchmarking harness for black-box multi-objective optimizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a benchmark experiment (requires reference sets).
    Run {
        /// flat key-value config file; CLI flags override it
        #[arg(long)]
        config: Option<PathBuf>,
        /// "all", a comma-separated name list, or a category filter (D=H,m=2)
        #[arg(long)]
        problems: Option<String>,
        /// builtin name, or NAME:KIND:COMMAND for an external solver; repeatable
        #[arg(long = "solver")]
        solvers: Vec<String>,
        /// evaluations per decision dimension and run
        #[arg(long)]
        budget_factor: Option<u64>,
        /// runs per stochastic solver (deterministic solvers run once at
        /// this multiple of the budget)
        #[arg(long = "runs")]
        runs_stochastic: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// output directory (default: $MOMARK_OUT or ./momark-out)
        #[arg(long)]
        out: Option<PathBuf>,
        /// directory holding the reference sets
        #[arg(long)]
        refsets: Option<PathBuf>,
    },
    /// Generate reference sets from the builtin solvers at 10x budget.
    Refset {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        problems: Option<String>,
        #[arg(long)]
        budget_factor: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// directory to write reference sets into
        #[arg(long)]
        out: Option<PathBuf>,
        /// replace existing reference-set files
        #[arg(long)]
        force: bool,
    },
    /// Merge run directories and emit per-panel data-profile CSV/SVG files.
    Profile {
        /// one or more run directories produced by `momark run`
        run_dirs: Vec<PathBuf>,
        /// panel ids to emit (default: the full panel set); repeatable
        #[arg(long = "panel")]
        panels: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wall-clock per-evaluation micro-benchmark.
    Timing {
        /// comma-separated problem names
        #[arg(long)]
        problems: Option<String>,
        /// comma-separated evaluation budgets
        #[arg(long)]
        budgets: Option<String>,
        #[arg(long)]
        solver: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// output CSV path (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List registered problems: name, n, m, D, S, M (tab-separated).
    ListProblems {
        /// category filter, e.g. D=H or m=3,S=NS
        #[arg(long)]
        filter: Option<String>,
    },
    /// Reference ask-tell client (demo external solver; used by the tests).
    Client {
        /// midpoint | random | replay
        mode: String,
        /// file of decision vectors for replay mode
        file: Option<PathBuf>,
        /// exit silently after this many evaluations
        #[arg(long)]
        stop_after: Option<u64>,
        /// send a malformed X line (protocol-error fixture)
        #[arg(long)]
        bad_arity: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("momark: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), OrchestratorError> {
    let registry = Registry::core();
    match cli.command {
        Command::Run {
            config,
            problems,
            solvers,
            budget_factor,
            runs_stochastic,
            seed,
            out,
            refsets,
        } => {
            let mut cli_layer = PartialConfig {
                problems: problems
                    .as_deref()
                    .map(ProblemSelection::parse)
                    .transpose()?,
                budget_factor,
                runs_stochastic,
                base_seed: seed,
                output_dir: out,
                refset_dir: refsets,
                ..Default::default()
            };
            for s in &solvers {
                cli_layer.solvers.push(
                    SolverDescriptor::parse(s)
                        .map_err(|e| OrchestratorError::config(e.to_string()))?,
                );
            }
            let file_layer = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        OrchestratorError::config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    PartialConfig::parse(&text)?
                }
                None => PartialConfig::default(),
            };
            let config = cli_layer.over(file_layer).resolve()?;
            let output = cmd_run(&registry, &config)?;
            println!("run complete: {}", output.dir.display());
            Ok(())
        }
        Command::Refset {
            config,
            problems,
            budget_factor,
            seed,
            out,
            force,
        } => {
            let file_layer = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        OrchestratorError::config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    PartialConfig::parse(&text)?
                }
                None => PartialConfig::default(),
            };
            let selection = match problems {
                Some(expr) => ProblemSelection::parse(&expr)?,
                None => file_layer.problems.clone().unwrap_or(ProblemSelection::All),
            };
            let budget_factor = budget_factor
                .or(file_layer.budget_factor)
                .unwrap_or(momark::orchestrator::config::DEFAULT_BUDGET_FACTOR);
            let seed = seed
                .or(file_layer.base_seed)
                .unwrap_or(momark::orchestrator::config::DEFAULT_BASE_SEED);
            let dir = out
                .or(file_layer.refset_dir)
                .unwrap_or_else(|| PathBuf::from("refsets"));
            let paths = cmd_refset(&registry, &selection, budget_factor, seed, &dir, force)?;
            println!("wrote {} reference sets to {}", paths.len(), dir.display());
            Ok(())
        }
        Command::Profile {
            run_dirs,
            panels,
            out,
        } => {
            let out_dir = out.unwrap_or_else(|| {
                run_dirs
                    .first()
                    .map(|d| d.join("profiles"))
                    .unwrap_or_else(|| PathBuf::from("profiles"))
            });
            let panel_ids = if panels.is_empty() {
                None
            } else {
                Some(panels.as_slice())
            };
            let files = cmd_profile(&registry, &run_dirs, panel_ids, &out_dir)?;
            println!(
                "wrote {} profile files to {}",
                files.len(),
                out_dir.display()
            );
            Ok(())
        }
        Command::Timing {
            problems,
            budgets,
            solver,
            seed,
            out,
        } => {
            let problem_names: Vec<String> = match problems {
                Some(list) => list.split(',').map(String::from).collect(),
                None => DEFAULT_TIMING_PROBLEMS
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            };
            let budgets: Vec<u64> = match budgets {
                Some(list) => list
                    .split(',')
                    .map(|b| {
                        b.parse()
                            .map_err(|_| OrchestratorError::config(format!("bad budget {b:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => DEFAULT_TIMING_BUDGETS.to_vec(),
            };
            let descriptor = match solver {
                Some(s) => SolverDescriptor::parse(&s)
                    .map_err(|e| OrchestratorError::config(e.to_string()))?,
                None => SolverDescriptor::parse("random-search").unwrap(),
            };
            let seed = seed.unwrap_or(momark::orchestrator::config::DEFAULT_BASE_SEED);
            match out {
                Some(path) => {
                    let mut buf = Vec::new();
                    cmd_timing(
                        &registry,
                        &problem_names,
                        &budgets,
                        &descriptor,
                        seed,
                        &mut buf,
                    )?;
                    std::fs::write(&path, &buf).map_err(OrchestratorError::io)?;
                    println!("wrote timing table to {}", path.display());
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    cmd_timing(
                        &registry,
                        &problem_names,
                        &budgets,
                        &descriptor,
                        seed,
                        &mut lock,
                    )?;
                }
            }
            Ok(())
        }
        Command::ListProblems { filter } => {
            let filter = match filter {
                Some(expr) => CategoryFilter::parse(&expr)
                    .map_err(|e| OrchestratorError::config(e.to_string()))?,
                None => CategoryFilter::default(),
            };
            print!("{}", cmd_list_problems(&registry, &filter));
            Ok(())
        }
        Command::Client {
            mode,
            file,
            stop_after,
            bad_arity,
        } => run_client(&mode, file.as_deref(), stop_after, bad_arity)
            .map_err(|e| OrchestratorError::runtime(format!("client: {e}"))),
    }
}

/// Reference implementation of the ask-tell child side. Exists so the
/// protocol has a runnable example and the test suite has a counterpart
/// process to talk to.
fn run_client(
    mode: &str,
    file: Option<&std::path::Path>,
    stop_after: Option<u64>,
    bad_arity: bool,
) -> std::io::Result<()> {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    let mut read_line = || -> std::io::Result<String> {
        lines
            .next()
            .transpose()?
            .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::UnexpectedEof, "closed"))
    };
    let greeting = read_line()?;
    let fields: Vec<&str> = greeting.split(' ').collect();
    if fields.len() != 7 || fields[0] != "MOBENCH" || fields[1] != "1" {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("bad greeting {greeting:?}"),
        ));
    }
    let n: usize = fields[3].parse().map_err(bad_num)?;
    let budget: u64 = fields[5].parse().map_err(bad_num)?;
    let seed: u64 = fields[6].parse().map_err(bad_num)?;
    let lower = parse_bounds(&read_line()?, "L", n)?;
    let upper = parse_bounds(&read_line()?, "U", n)?;

    let replay: Option<Vec<Vec<f64>>> = match mode {
        "replay" => {
            let path = file.ok_or_else(|| {
                std::io::Error::new(std::io::ErrorKind::InvalidInput, "replay needs a file")
            })?;
            let text = std::fs::read_to_string(path)?;
            Some(
                text.lines()
                    .filter(|l| !l.is_empty())
                    .map(|l| {
                        l.split(' ')
                            .map(|f| f.parse::<f64>().map_err(bad_num))
                            .collect::<std::io::Result<Vec<f64>>>()
                    })
                    .collect::<std::io::Result<Vec<Vec<f64>>>>()?,
            )
        }
        "midpoint" | "random" => None,
        other => {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                format!("unknown client mode {other:?}"),
            ))
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for asked in 0..budget {
        if stop_after == Some(asked) {
            return Ok(()); // simulate a child dying early
        }
        let x: Vec<f64> = if bad_arity {
            vec![0.5]
        } else {
            match (&replay, mode) {
                (Some(points), _) => match points.get(asked as usize) {
                    Some(p) => p.clone(),
                    None => return Ok(()),
                },
                (None, "midpoint") => lower
                    .iter()
                    .zip(&upper)
                    .map(|(&l, &u)| l + 0.5 * (u - l))
                    .collect(),
                (None, _) => lower
                    .iter()
                    .zip(&upper)
                    .map(|(&l, &u)| l + rng.gen::<f64>() * (u - l))
                    .collect(),
            }
        };
        let mut line = String::from("X");
        for v in &x {
            line.push(' ');
            line.push_str(&v.to_string());
        }
        writeln!(out, "{line}")?;
        out.flush()?;
        let reply = read_line()?;
        if reply.starts_with("ERROR") {
            std::process::exit(3);
        }
        if !reply.starts_with("F ") {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("expected F line, got {reply:?}"),
            ));
        }
    }
    // budget exhausted: wait for STOP
    match read_line() {
        Ok(line) if line == "STOP" => Ok(()),
        Ok(_) | Err(_) => Ok(()),
    }
}

fn bad_num<E: std::fmt::Display>(e: E) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string())
}

fn parse_bounds(line: &str, tag: &str, n: usize) -> std::io::Result<Vec<f64>> {
    let mut fields = line.split(' ');
    if fields.next() != Some(tag) {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("expected {tag} line, got {line:?}"),
        ));
    }
    let values: Vec<f64> = fields
        .map(|f| f.parse::<f64>().map_err(bad_num))
        .collect::<std::io::Result<_>>()?;
    if values.len() != n {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("{tag} carries {} values, expected {n}", values.len()),
        ));
    }
    Ok(values)
}
