//! NSGA-II baseline: fast non-dominated sorting, crowding distance, binary
//! tournament, simulated binary crossover and polynomial mutation with
//! elitist (μ + λ) survival.

use crate::bounds::{self, Bound};
use crate::pareto::{dominates_unchecked, is_feasible};
use crate::rng::{RandomSource, SeededRng};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Nsga2Error {
    #[error("invalid NSGA-II configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nsga2Config {
    pub population: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    /// SBX distribution index.
    pub crossover_eta: f64,
    /// Per-variable mutation probability; `None` means `1 / n`.
    pub mutation_probability: Option<f64>,
    /// Polynomial mutation distribution index.
    pub mutation_eta: f64,
    pub bounds: Vec<Bound>,
    pub seed: u64,
}

impl Nsga2Config {
    pub fn new(bounds: Vec<Bound>) -> Nsga2Config {
        Nsga2Config {
            population: 100,
            generations: 100,
            crossover_probability: 0.9,
            crossover_eta: 20.0,
            mutation_probability: None,
            mutation_eta: 20.0,
            bounds,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), Nsga2Error> {
        let bad = |m: String| Err(Nsga2Error::InvalidConfig(m));
        if self.population < 2 {
            return bad("population must be at least 2".into());
        }
        if self.generations == 0 {
            return bad("generations must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return bad("crossover probability must lie in [0, 1]".into());
        }
        if let Some(p) = self.mutation_probability {
            if !(0.0..=1.0).contains(&p) {
                return bad("mutation probability must lie in [0, 1]".into());
            }
        }
        if !(self.crossover_eta >= 0.0 && self.mutation_eta >= 0.0) {
            return bad("distribution indices must be non-negative".into());
        }
        if self.bounds.is_empty() {
            return bad("search space has no dimensions".into());
        }
        if let Err(i) = bounds::validate(&self.bounds) {
            return bad(format!(
                "dimension {i} has invalid bounds {}",
                self.bounds[i]
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedIndividual {
    pub position: Vec<f64>,
    pub objectives: Vec<f64>,
    /// Front index, 0 for the non-dominated front.
    pub rank: usize,
    pub crowding: f64,
}

/// Partitions `objectives` into successive non-dominated fronts (indices).
pub fn fast_nondominated_sort<V: AsRef<[f64]>>(objectives: &[V]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();

    for p in 0..n {
        for q in (p + 1)..n {
            let (a, b) = (objectives[p].as_ref(), objectives[q].as_ref());
            if dominates_unchecked(a, b) {
                dominated_by[p].push(q);
                domination_count[q] += 1;
            } else if dominates_unchecked(b, a) {
                dominated_by[q].push(p);
                domination_count[p] += 1;
            }
        }
    }
    current.extend((0..n).filter(|&p| domination_count[p] == 0));
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Crowding distance of every member of one front (same order as input).
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let k = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for m in 0..k {
        let value = |i: usize| front[i].as_ref()[m];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (lo, hi) = (value(order[0]), value(order[n - 1]));
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let i = order[w];
            distance[i] += (value(order[w + 1]) - value(order[w - 1])) / range;
        }
    }
    distance
}

/// Ranks a population: feasible individuals by non-dominated sorting and
/// crowding; infeasible ones form a final front with zero crowding.
fn rank_population(pop: &mut [RankedIndividual]) {
    let feasible: Vec<usize> = (0..pop.len())
        .filter(|&i| is_feasible(&pop[i].objectives))
        .collect();
    let objs: Vec<&[f64]> = feasible
        .iter()
        .map(|&i| pop[i].objectives.as_slice())
        .collect();
    let fronts = fast_nondominated_sort(&objs);
    let worst = fronts.len();
    let mut assigned = Vec::with_capacity(feasible.len());
    for (r, front) in fronts.iter().enumerate() {
        let members: Vec<&[f64]> = front.iter().map(|&j| objs[j]).collect();
        let cd = crowding_distance(&members);
        assigned.extend(front.iter().zip(cd).map(|(&j, c)| (feasible[j], r, c)));
    }
    for (i, r, c) in assigned {
        pop[i].rank = r;
        pop[i].crowding = c;
    }
    for ind in pop.iter_mut().filter(|i| !is_feasible(&i.objectives)) {
        ind.rank = worst;
        ind.crowding = 0.0;
    }
}

/// Crowded-comparison order: lower rank first, then larger crowding.
fn crowded_cmp(a: &RankedIndividual, b: &RankedIndividual) -> Ordering {
    a.rank
        .cmp(&b.rank)
        .then_with(|| b.crowding.total_cmp(&a.crowding))
}

fn tournament<'a, R: RandomSource>(
    pop: &'a [RankedIndividual],
    rng: &mut R,
) -> &'a RankedIndividual {
    let a = &pop[rng.below(pop.len())];
    let b = &pop[rng.below(pop.len())];
    match crowded_cmp(a, b) {
        Ordering::Greater => b,
        Ordering::Less => a,
        Ordering::Equal => {
            if rng.flip(0.5) {
                a
            } else {
                b
            }
        }
    }
}

/// Bounded simulated binary crossover.
pub fn sbx_crossover<R: RandomSource>(
    p1: &[f64],
    p2: &[f64],
    bounds: &[Bound],
    eta: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    for i in 0..p1.len() {
        if !rng.flip(0.5) || (p1[i] - p2[i]).abs() <= 1e-14 {
            continue;
        }
        let (yl, yu) = (bounds[i].lower, bounds[i].upper);
        let (y1, y2) = (p1[i].min(p2[i]), p1[i].max(p2[i]));
        let u = rng.next_f64();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let bq1 = spread(1.0 + 2.0 * (y1 - yl) / (y2 - y1));
        let bq2 = spread(1.0 + 2.0 * (yu - y2) / (y2 - y1));
        let a = (0.5 * ((y1 + y2) - bq1 * (y2 - y1))).clamp(yl, yu);
        let b = (0.5 * ((y1 + y2) + bq2 * (y2 - y1))).clamp(yl, yu);
        if rng.flip(0.5) {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation, each variable mutated with probability `pm`.
pub fn polynomial_mutation<R: RandomSource>(
    x: &mut [f64],
    bounds: &[Bound],
    pm: f64,
    eta: f64,
    rng: &mut R,
) {
    for (v, b) in x.iter_mut().zip(bounds) {
        if !rng.flip(pm) {
            continue;
        }
        let (yl, yu) = (b.lower, b.upper);
        let width = yu - yl;
        let d1 = (*v - yl) / width;
        let d2 = (yu - *v) / width;
        let u = rng.next_f64();
        let pow = 1.0 / (eta + 1.0);
        let dq = if u <= 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0);
            val.powf(pow) - 1.0
        } else {
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0);
            1.0 - val.powf(pow)
        };
        *v = (*v + dq * width).clamp(yl, yu);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nsga2Run {
    /// Feasible rank-0 members of the final population, in population order.
    pub front: Vec<RankedIndividual>,
    pub evaluations: usize,
    pub infeasible_evaluations: usize,
}

pub fn run_nsga2<F>(evaluate: F, config: &Nsga2Config) -> Result<Nsga2Run, Nsga2Error>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    config.validate()?;
    let mut rng = SeededRng::new(config.seed);
    let bounds = &config.bounds;
    let n = bounds.len();
    let pm = config.mutation_probability.unwrap_or(1.0 / n as f64);
    let mut evaluations = 0usize;
    let mut infeasible = 0usize;
    let mut make = |position: Vec<f64>| {
        let objectives = evaluate(&position);
        evaluations += 1;
        if !is_feasible(&objectives) {
            infeasible += 1;
        }
        RankedIndividual {
            position,
            objectives,
            rank: 0,
            crowding: 0.0,
        }
    };

    let mut pop: Vec<RankedIndividual> = (0..config.population)
        .map(|_| {
            make(
                bounds
                    .iter()
                    .map(|b| rng.in_range(b.lower, b.upper))
                    .collect(),
            )
        })
        .collect();
    rank_population(&mut pop);

    for _ in 0..config.generations {
        let mut offspring = Vec::with_capacity(config.population);
        while offspring.len() < config.population {
            let a = tournament(&pop, &mut rng).position.clone();
            let b = tournament(&pop, &mut rng).position.clone();
            let (mut c1, mut c2) = if rng.flip(config.crossover_probability) {
                sbx_crossover(&a, &b, bounds, config.crossover_eta, &mut rng)
            } else {
                (a, b)
            };
            polynomial_mutation(&mut c1, bounds, pm, config.mutation_eta, &mut rng);
            polynomial_mutation(&mut c2, bounds, pm, config.mutation_eta, &mut rng);
            offspring.push(make(c1));
            if offspring.len() < config.population {
                offspring.push(make(c2));
            }
        }

        pop.extend(offspring);
        rank_population(&mut pop);
        // Stable sort keeps parents ahead of equally ranked offspring.
        pop.sort_by(crowded_cmp);
        pop.truncate(config.population);
        rank_population(&mut pop);
    }

    let front = pop
        .into_iter()
        .filter(|i| i.rank == 0 && is_feasible(&i.objectives))
        .collect();
    Ok(Nsga2Run {
        front,
        evaluations,
        infeasible_evaluations: infeasible,
    })
}
