//! Repeated seeded runs of one or both planners on a map, and the artifacts
//! written for them.

use super::mapfile::{parse_map, MapError};
use super::report::{
    comparison_csv, diagnostics_csv, run_csv, steps_csv, text_report, trajectory_csv,
    AlgorithmSummary,
};
use super::svg::render_svg;
use crate::box_model::WorldMap;
use crate::planner::{
    run_planner, Algorithm, OptimizerSettings, PlannerConfig, PlannerError, RunReport,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    Mopso,
    Nsga2,
    Both,
}

impl AlgorithmChoice {
    pub fn algorithms(&self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::Mopso => vec![Algorithm::Mopso],
            AlgorithmChoice::Nsga2 => vec![Algorithm::Nsga2],
            AlgorithmChoice::Both => vec![Algorithm::Mopso, Algorithm::Nsga2],
        }
    }
}

impl FromStr for AlgorithmChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "both" => Ok(AlgorithmChoice::Both),
            other => match other.parse::<Algorithm>()? {
                Algorithm::Mopso => Ok(AlgorithmChoice::Mopso),
                Algorithm::Nsga2 => Ok(AlgorithmChoice::Nsga2),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormats {
    pub text: bool,
    pub csv: bool,
    pub svg: bool,
}

impl Default for OutputFormats {
    fn default() -> Self {
        OutputFormats {
            text: true,
            csv: true,
            svg: false,
        }
    }
}

impl FromStr for OutputFormats {
    type Err = String;
    /// Comma-separated subset of `text`, `csv`, `svg`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut f = OutputFormats {
            text: false,
            csv: false,
            svg: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "text" => f.text = true,
                "csv" => f.csv = true,
                "svg" => f.svg = true,
                other => return Err(format!("unknown output format `{other}`")),
            }
        }
        if !(f.text || f.csv || f.svg) {
            return Err("no output format selected".into());
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub map_path: PathBuf,
    pub algorithms: AlgorithmChoice,
    pub repetitions: usize,
    pub base_seed: u64,
    pub optimizer: OptimizerSettings,
    pub max_steps: usize,
    pub out_dir: PathBuf,
    pub formats: OutputFormats,
}

impl ExperimentSpec {
    pub fn new(map_path: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> ExperimentSpec {
        ExperimentSpec {
            map_path: map_path.into(),
            algorithms: AlgorithmChoice::Mopso,
            repetitions: 10,
            base_seed: 0,
            optimizer: OptimizerSettings::default(),
            max_steps: 50,
            out_dir: out_dir.into(),
            formats: OutputFormats::default(),
        }
    }

    fn planner_config(&self, algorithm: Algorithm) -> PlannerConfig {
        PlannerConfig {
            algorithm,
            optimizer: self.optimizer.clone(),
            max_steps: self.max_steps,
        }
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{path}: {source}")]
    Map { path: PathBuf, source: MapError },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ExperimentError {
    /// Process exit status: 1 for input/config problems, 2 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Map { .. } | ExperimentError::Config(_) => 1,
            ExperimentError::Io { .. } => 2,
        }
    }
}

impl From<PlannerError> for ExperimentError {
    fn from(e: PlannerError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub world: WorldMap,
    pub runs: Vec<(Algorithm, Vec<RunReport>)>,
    pub summaries: Vec<AlgorithmSummary>,
    pub text: String,
    pub written: Vec<PathBuf>,
}

/// Runs seeds `base_seed .. base_seed + repetitions`, in parallel, and
/// returns the reports in seed order.
pub fn run_repetitions(
    world: &WorldMap,
    config: &PlannerConfig,
    base_seed: u64,
    repetitions: usize,
) -> Result<Vec<RunReport>, PlannerError> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(repetitions.max(1));
    let seeds: Vec<u64> = (0..repetitions as u64)
        .map(|i| base_seed.wrapping_add(i))
        .collect();
    let mut slots: Vec<Option<Result<RunReport, PlannerError>>> =
        (0..repetitions).map(|_| None).collect();
    thread::scope(|scope| {
        for (chunk_seeds, chunk_slots) in seeds
            .chunks(repetitions.div_ceil(workers).max(1))
            .zip(slots.chunks_mut(repetitions.div_ceil(workers).max(1)))
        {
            scope.spawn(move || {
                for (seed, slot) in chunk_seeds.iter().zip(chunk_slots) {
                    *slot = Some(run_planner(world, config, *seed));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every repetition ran"))
        .collect()
}

fn validate(spec: &ExperimentSpec) -> Result<(), ExperimentError> {
    let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
    if spec.repetitions == 0 {
        return bad("repetitions must be at least 1");
    }
    if spec.max_steps == 0 {
        return bad("max steps must be at least 1");
    }
    let o = &spec.optimizer;
    if o.population < 2 {
        return bad("population must be at least 2");
    }
    if o.iterations == 0 {
        return bad("iterations must be at least 1");
    }
    if o.archive_capacity == 0 {
        return bad("archive capacity must be at least 1");
    }
    if o.grid_divisions == 0 {
        return bad("grid divisions must be at least 1");
    }
    if !(o.mutation_rate > 0.0 && o.mutation_rate <= 1.0) {
        return bad("mutation rate must lie in (0, 1]");
    }
    Ok(())
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), ExperimentError> {
    fs::write(&path, contents).map_err(|source| ExperimentError::Io {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(())
}

pub fn load_map(path: &Path) -> Result<WorldMap, ExperimentError> {
    let text = fs::read_to_string(path).map_err(|e| ExperimentError::Map {
        path: path.to_path_buf(),
        source: MapError {
            line: None,
            message: e.to_string(),
        },
    })?;
    parse_map(&text).map_err(|source| ExperimentError::Map {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads the map, runs every repetition, then writes all artifacts.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome, ExperimentError> {
    validate(spec)?;
    let world = load_map(&spec.map_path)?;
    fs::create_dir_all(&spec.out_dir).map_err(|source| ExperimentError::Io {
        path: spec.out_dir.clone(),
        source,
    })?;

    let mut runs = Vec::new();
    for algorithm in spec.algorithms.algorithms() {
        let reports = run_repetitions(
            &world,
            &spec.planner_config(algorithm),
            spec.base_seed,
            spec.repetitions,
        )?;
        runs.push((algorithm, reports));
    }
    let summaries: Vec<AlgorithmSummary> = runs
        .iter()
        .map(|(a, r)| AlgorithmSummary::from_reports(*a, r))
        .collect();
    let map_name = spec
        .map_path
        .file_stem()
        .map_or_else(|| "map".to_string(), |s| s.to_string_lossy().into_owned());
    let text = text_report(&map_name, &summaries);

    let dir = &spec.out_dir;
    let mut written = Vec::new();
    if spec.formats.text {
        write(dir.join("report.txt"), &text, &mut written)?;
    }
    if spec.formats.csv {
        for ((algorithm, reports), summary) in runs.iter().zip(&summaries) {
            let tag = algorithm.tag();
            write(
                dir.join(format!("steps_{tag}.csv")),
                &steps_csv(&summary.steps),
                &mut written,
            )?;
            write(
                dir.join(format!("diagnostics_{tag}.csv")),
                &diagnostics_csv(reports),
                &mut written,
            )?;
            for r in reports {
                write(
                    dir.join(format!("run_{tag}_seed{}.csv", r.seed)),
                    &run_csv(r),
                    &mut written,
                )?;
                write(
                    dir.join(format!("trajectory_{tag}_seed{}.csv", r.seed)),
                    &trajectory_csv(r),
                    &mut written,
                )?;
            }
        }
        if summaries.len() > 1 {
            write(
                dir.join("comparison.csv"),
                &comparison_csv(&summaries),
                &mut written,
            )?;
        }
    }
    if spec.formats.svg {
        for (algorithm, reports) in &runs {
            for r in reports {
                write(
                    dir.join(format!("{}_seed{}.svg", algorithm.tag(), r.seed)),
                    &render_svg(r, &world),
                    &mut written,
                )?;
            }
        }
    }

    Ok(ExperimentOutcome {
        world,
        runs,
        summaries,
        text,
        written,
    })
}
