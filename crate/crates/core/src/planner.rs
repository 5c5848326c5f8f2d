//! Local step-by-step planner: at every step an optimizer searches the
//! seven-dimensional decision space around the current box pose, a single
//! compromise solution is picked from the resulting front and committed, and
//! the loop repeats until the CG is within tolerance of the goal.

use crate::box_model::{
    evaluate, BoxState, DecisionVector, Evaluation, ObjectiveBreakdown, WorldMap,
};
use crate::mopso::{run_mopso, MopsoConfig, MopsoError};
use crate::nsga2::{run_nsga2, Nsga2Config, Nsga2Error};
use crate::pareto::is_feasible;
use crate::rng::derive_seed;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PlannerError {
    #[error("optimizer produced no feasible solution")]
    Stalled,
    #[error(transparent)]
    Mopso(#[from] MopsoError),
    #[error(transparent)]
    Nsga2(#[from] Nsga2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Mopso,
    Nsga2,
}

impl Algorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Mopso => "mopso",
            Algorithm::Nsga2 => "nsga2",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Mopso => "MOPSO",
            Algorithm::Nsga2 => "NSGA-II",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mopso" => Ok(Algorithm::Mopso),
            "nsga2" => Ok(Algorithm::Nsga2),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Optimizer knobs shared by both algorithms. Population and iteration
/// count are used by both, so equal settings give equal evaluation budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSettings {
    pub population: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub archive_capacity: usize,
    pub grid_divisions: usize,
    pub mutation_rate: f64,
    pub crossover_probability: f64,
    pub crossover_eta: f64,
    pub mutation_eta: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            population: 50,
            iterations: 100,
            inertia: 0.4,
            archive_capacity: 100,
            grid_divisions: 10,
            mutation_rate: 0.5,
            crossover_probability: 0.9,
            crossover_eta: 20.0,
            mutation_eta: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerConfig {
    pub algorithm: Algorithm,
    pub optimizer: OptimizerSettings,
    pub max_steps: usize,
}

impl PlannerConfig {
    pub fn new(algorithm: Algorithm) -> PlannerConfig {
        PlannerConfig {
            algorithm,
            optimizer: OptimizerSettings::default(),
            max_steps: 50,
        }
    }
}

/// A candidate solution offered by the optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub objectives: Vec<f64>,
}

/// Index of the candidate with the smallest sum of min-max normalised
/// objectives. Ties prefer lower `f1`, then lower `f2`, then the earlier
/// candidate. Infeasible candidates are skipped.
pub fn select_solution<V: AsRef<[f64]>>(objectives: &[V]) -> Result<usize, PlannerError> {
    let feasible: Vec<usize> = (0..objectives.len())
        .filter(|&i| is_feasible(objectives[i].as_ref()))
        .collect();
    let first = *feasible.first().ok_or(PlannerError::Stalled)?;
    let k = objectives[first].as_ref().len();

    let mut lo = vec![f64::INFINITY; k];
    let mut hi = vec![f64::NEG_INFINITY; k];
    for &i in &feasible {
        for (m, &v) in objectives[i].as_ref().iter().enumerate() {
            lo[m] = lo[m].min(v);
            hi[m] = hi[m].max(v);
        }
    }
    let score = |i: usize| -> f64 {
        objectives[i]
            .as_ref()
            .iter()
            .enumerate()
            .map(|(m, &v)| {
                let range = hi[m] - lo[m];
                if range > 0.0 {
                    (v - lo[m]) / range
                } else {
                    0.0
                }
            })
            .sum()
    };

    let mut best = first;
    let mut best_score = score(first);
    for &i in &feasible[1..] {
        let s = score(i);
        let better = match s.total_cmp(&best_score) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => {
                let (a, b) = (objectives[i].as_ref(), objectives[best].as_ref());
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .is_some_and(|o| o.is_lt())
            }
        };
        if better {
            best = i;
            best_score = s;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// 1-based step number.
    pub index: usize,
    /// Committed decision, pivot already projected onto the contact segment.
    pub decision: DecisionVector,
    pub breakdown: ObjectiveBreakdown,
    pub pre: BoxState,
    pub post: BoxState,
    pub archive_size: usize,
    pub evaluations: usize,
    /// Optimizer wall-clock time; diagnostic only, never written to artifacts.
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    GoalReached,
    StepLimit,
    Stalled,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::GoalReached => "goal-reached",
            Termination::StepLimit => "step-limit",
            Termination::Stalled => "stalled",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub steps: Vec<StepRecord>,
    /// J.
    pub total_energy: f64,
    /// s.
    pub total_time: f64,
    pub termination: Termination,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub start: BoxState,
}

impl RunReport {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn final_state(&self) -> BoxState {
        self.steps.last().map_or(self.start, |s| s.post)
    }
}

/// Candidates produced by one optimizer run on the step problem.
fn optimize_step(
    state: &BoxState,
    world: &WorldMap,
    config: &PlannerConfig,
    seed: u64,
) -> Result<(Vec<Candidate>, usize), PlannerError> {
    let bounds = DecisionVector::search_bounds(state, world);
    let objective = |x: &[f64]| evaluate(&DecisionVector::from_slice(x), state, world).objectives();
    let o = &config.optimizer;
    match config.algorithm {
        Algorithm::Mopso => {
            let mc = MopsoConfig {
                population: o.population,
                iterations: o.iterations,
                inertia: o.inertia,
                archive_capacity: o.archive_capacity,
                grid_divisions: o.grid_divisions,
                mutation_rate: o.mutation_rate,
                bounds,
                seed,
            };
            let run = run_mopso(objective, &mc)?;
            let c = run
                .archive
                .members()
                .iter()
                .map(|m| Candidate {
                    position: m.position.clone(),
                    objectives: m.objectives.clone(),
                })
                .collect();
            Ok((c, run.evaluations))
        }
        Algorithm::Nsga2 => {
            let nc = Nsga2Config {
                population: o.population,
                generations: o.iterations,
                crossover_probability: o.crossover_probability,
                crossover_eta: o.crossover_eta,
                mutation_probability: None,
                mutation_eta: o.mutation_eta,
                bounds,
                seed,
            };
            let run = run_nsga2(objective, &nc)?;
            let c = run
                .front
                .into_iter()
                .map(|i| Candidate {
                    position: i.position,
                    objectives: i.objectives,
                })
                .collect();
            Ok((c, run.evaluations))
        }
    }
}

/// Plans and commits one step from `state`.
pub fn plan_step(
    index: usize,
    state: &BoxState,
    world: &WorldMap,
    config: &PlannerConfig,
    seed: u64,
) -> Result<StepRecord, PlannerError> {
    let started = Instant::now();
    let (candidates, evaluations) = optimize_step(state, world, config, seed)?;
    let objs: Vec<&[f64]> = candidates.iter().map(|c| c.objectives.as_slice()).collect();
    let chosen = select_solution(&objs)?;
    let decision = DecisionVector::from_slice(&candidates[chosen].position).projected(state);
    match evaluate(&decision, state, world) {
        Evaluation::Feasible { breakdown, next } => Ok(StepRecord {
            index,
            decision,
            breakdown,
            pre: *state,
            post: next,
            archive_size: candidates.len(),
            evaluations,
            elapsed: started.elapsed(),
        }),
        Evaluation::Infeasible(_) => Err(PlannerError::Stalled),
    }
}

/// Seed of one step attempt, derived from the run seed.
pub fn step_seed(run_seed: u64, step: usize, attempt: u64) -> u64 {
    derive_seed(run_seed, &[step as u64, attempt])
}

/// Repeats [`plan_step`] until the goal tolerance, the step limit, or a step
/// that stays infeasible after one reseeded retry.
pub fn run_planner(
    world: &WorldMap,
    config: &PlannerConfig,
    seed: u64,
) -> Result<RunReport, PlannerError> {
    let eps = world.params.epsilon;
    let mut state = world.start;
    let mut steps = Vec::new();
    let termination = loop {
        if state.cg.distance(world.goal) <= eps {
            break Termination::GoalReached;
        }
        if steps.len() >= config.max_steps {
            break Termination::StepLimit;
        }
        let index = steps.len() + 1;
        let record = match plan_step(index, &state, world, config, step_seed(seed, index, 0)) {
            Err(PlannerError::Stalled) => {
                log::warn!("step {index} stalled, retrying with a fresh seed");
                plan_step(index, &state, world, config, step_seed(seed, index, 1))
            }
            other => other,
        };
        match record {
            Ok(r) => {
                state = r.post;
                steps.push(r);
            }
            Err(PlannerError::Stalled) => break Termination::Stalled,
            Err(e) => return Err(e),
        }
    };

    Ok(RunReport {
        total_energy: steps.iter().map(|s| s.breakdown.f2).sum(),
        total_time: steps.iter().map(|s| s.breakdown.f1).sum(),
        steps,
        termination,
        seed,
        algorithm: config.algorithm,
        start: world.start,
    })
}
