//! Archive-based multi-objective particle swarm optimizer.
//!
//! Leaders are drawn from an external archive of non-dominated solutions via
//! roulette-wheel selection over an adaptive hypercube grid, so sparsely
//! populated regions of the front attract more particles. A mutation operator
//! whose firing probability and range decay with the generation counter keeps
//! the swarm exploring early on.

mod archive;
mod grid;

pub use archive::{cube_fitness, Archive, ArchiveMember, Insertion};
pub use grid::{CubeIndex, Grid};

use crate::bounds::{self, Bound};
use crate::pareto::{dominates_unchecked, is_feasible};
use crate::rng::{RandomSource, SeededRng};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MopsoError {
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MopsoConfig {
    pub population: usize,
    pub iterations: usize,
    /// Inertia weight.
    pub inertia: f64,
    pub archive_capacity: usize,
    pub grid_divisions: usize,
    pub mutation_rate: f64,
    pub bounds: Vec<Bound>,
    pub seed: u64,
}

impl MopsoConfig {
    pub fn new(bounds: Vec<Bound>) -> MopsoConfig {
        MopsoConfig {
            population: 50,
            iterations: 100,
            inertia: 0.4,
            archive_capacity: 100,
            grid_divisions: 10,
            mutation_rate: 0.5,
            bounds,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), MopsoError> {
        let bad = |m: &str| Err(MopsoError::InvalidConfig(m.to_string()));
        if self.population == 0 {
            return bad("population must be positive");
        }
        if self.iterations == 0 {
            return bad("iterations must be positive");
        }
        if !(self.inertia >= 0.0 && self.inertia.is_finite()) {
            return bad("inertia must be finite and non-negative");
        }
        if self.archive_capacity == 0 {
            return bad("archive capacity must be positive");
        }
        if self.grid_divisions == 0 {
            return bad("grid divisions must be positive");
        }
        if !(self.mutation_rate > 0.0 && self.mutation_rate <= 1.0) {
            return bad("mutation rate must lie in (0, 1]");
        }
        if self.bounds.is_empty() {
            return bad("search space has no dimensions");
        }
        if let Err(i) = bounds::validate(&self.bounds) {
            return Err(MopsoError::InvalidConfig(format!(
                "dimension {i} has invalid bounds {}",
                self.bounds[i]
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub objectives: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_objectives: Vec<f64>,
}

impl Particle {
    /// Particle at rest whose personal best is its starting point.
    pub fn at_rest(position: Vec<f64>, objectives: Vec<f64>) -> Particle {
        Particle {
            velocity: vec![0.0; position.len()],
            pbest_position: position.clone(),
            pbest_objectives: objectives.clone(),
            position,
            objectives,
        }
    }
}

/// `w·v + R1·(pbest − x) + R2·(gbest − x)` with one scalar `R1`, `R2` per call.
pub fn update_velocity<R: RandomSource>(
    p: &Particle,
    gbest: &[f64],
    inertia: f64,
    rng: &mut R,
) -> Vec<f64> {
    let r1 = rng.next_f64();
    let r2 = rng.next_f64();
    p.velocity
        .iter()
        .zip(&p.position)
        .zip(p.pbest_position.iter().zip(gbest))
        .map(|((v, x), (pb, gb))| inertia * v + r1 * (pb - x) + r2 * (gb - x))
        .collect()
}

/// Moves the particle by its velocity. A coordinate that leaves its bound is
/// clamped onto it and that velocity component reversed.
pub fn advance_position(p: &mut Particle, bounds: &[Bound]) {
    for ((x, v), b) in p.position.iter_mut().zip(&mut p.velocity).zip(bounds) {
        *x += *v;
        if *x < b.lower {
            *x = b.lower;
            *v = -*v;
        } else if *x > b.upper {
            *x = b.upper;
            *v = -*v;
        }
    }
}

/// Personal-best update: take the current point if it dominates, keep the old
/// one if it is dominated, otherwise pick either with equal chance.
/// Infeasible current evaluations never replace a feasible personal best.
pub fn update_pbest<R: RandomSource>(p: &mut Particle, rng: &mut R) {
    let take = if !is_feasible(&p.objectives) {
        false
    } else if !is_feasible(&p.pbest_objectives)
        || dominates_unchecked(&p.objectives, &p.pbest_objectives)
    {
        true
    } else if dominates_unchecked(&p.pbest_objectives, &p.objectives) {
        false
    } else {
        rng.flip(0.5)
    };
    if take {
        p.pbest_position.clone_from(&p.position);
        p.pbest_objectives.clone_from(&p.objectives);
    }
}

/// `(1 − gen/total)^(5/rate)`: both the firing probability of the mutation
/// operator and the fraction of a dimension's range it may move.
pub fn mutation_probability(current_gen: usize, total_gen: usize, mutation_rate: f64) -> f64 {
    let progress = current_gen as f64 / total_gen as f64;
    (1.0 - progress).max(0.0).powf(5.0 / mutation_rate)
}

/// Decaying mutation. Returns whether it fired.
pub fn mutate<R: RandomSource>(
    p: &mut Particle,
    current_gen: usize,
    total_gen: usize,
    mutation_rate: f64,
    bounds: &[Bound],
    rng: &mut R,
) -> bool {
    let pm = mutation_probability(current_gen, total_gen, mutation_rate);
    if !rng.flip(pm) {
        return false;
    }
    let dim = rng.below(p.position.len());
    let b = bounds[dim];
    let range = b.width() * pm;
    let x = p.position[dim];
    let lo = (x - range).max(b.lower);
    let hi = (x + range).min(b.upper);
    p.position[dim] = rng.in_range(lo, hi).clamp(b.lower, b.upper);
    true
}

/// Final archive plus bookkeeping of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct MopsoRun {
    pub archive: Archive,
    pub evaluations: usize,
    /// Evaluations that produced non-finite objectives.
    pub infeasible_evaluations: usize,
}

/// Runs the optimizer on `evaluate` over the configured search box.
pub fn run_mopso<F>(evaluate: F, config: &MopsoConfig) -> Result<MopsoRun, MopsoError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    run_mopso_observed(evaluate, config, |_, _| {})
}

/// Like [`run_mopso`], calling `observe` with the archive after every
/// insertion attempt.
pub fn run_mopso_observed<F, O>(
    evaluate: F,
    config: &MopsoConfig,
    mut observe: O,
) -> Result<MopsoRun, MopsoError>
where
    F: Fn(&[f64]) -> Vec<f64>,
    O: FnMut(&Archive, Insertion),
{
    config.validate()?;
    let mut rng = SeededRng::new(config.seed);
    let bounds = &config.bounds;
    let mut evaluations = 0usize;
    let mut infeasible = 0usize;
    let mut eval = |x: &[f64]| {
        let f = evaluate(x);
        evaluations += 1;
        if !is_feasible(&f) {
            infeasible += 1;
        }
        f
    };

    let mut swarm: Vec<Particle> = (0..config.population)
        .map(|_| {
            let x: Vec<f64> = bounds
                .iter()
                .map(|b| rng.in_range(b.lower, b.upper))
                .collect();
            let f = eval(&x);
            Particle::at_rest(x, f)
        })
        .collect();

    let mut archive = Archive::new(config.archive_capacity, config.grid_divisions);
    for p in &swarm {
        let outcome = archive.insert(&p.position, &p.objectives, &mut rng);
        observe(&archive, outcome);
    }

    for iter in 0..config.iterations {
        for p in swarm.iter_mut() {
            // With nothing feasible found yet, a particle follows its own best.
            let leader = match archive.select_leader(&mut rng) {
                Some(m) => m.position.clone(),
                None => p.pbest_position.clone(),
            };
            p.velocity = update_velocity(p, &leader, config.inertia, &mut rng);
            advance_position(p, bounds);
            mutate(
                p,
                iter,
                config.iterations,
                config.mutation_rate,
                bounds,
                &mut rng,
            );
        }
        for p in swarm.iter_mut() {
            p.objectives = eval(&p.position);
        }
        for p in &swarm {
            let outcome = archive.insert(&p.position, &p.objectives, &mut rng);
            observe(&archive, outcome);
        }
        for p in swarm.iter_mut() {
            update_pbest(p, &mut rng);
        }
    }

    if infeasible > 0 {
        log::debug!("mopso: {infeasible} of {evaluations} evaluations were infeasible");
    }
    Ok(MopsoRun {
        archive,
        evaluations,
        infeasible_evaluations: infeasible,
    })
}
