//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use boxpush::bounds::Bound;
use boxpush::mopso::{run_mopso, MopsoConfig};
use boxpush::nsga2::{run_nsga2, Nsga2Config};
use boxpush::rng::RandomSource;

/// Replays a fixed list of variates, cycling.
pub struct Scripted {
    values: Vec<f64>,
    next: usize,
}

impl Scripted {
    pub fn new(values: &[f64]) -> Self {
        Scripted {
            values: values.to_vec(),
            next: 0,
        }
    }
}

impl RandomSource for Scripted {
    fn next_f64(&mut self) -> f64 {
        let v = self.values[self.next % self.values.len()];
        self.next += 1;
        v
    }
}

/// Quadratic-time reference: indices of points no other point dominates.
pub fn brute_force_front(points: &[Vec<f64>]) -> Vec<usize> {
    let dom = |u: &[f64], v: &[f64]| {
        u.iter().zip(v).all(|(a, b)| a <= b) && u.iter().zip(v).any(|(a, b)| a < b)
    };
    (0..points.len())
        .filter(|&i| !points.iter().any(|q| dom(q, &points[i])))
        .collect()
}

pub fn schaffer(x: &[f64]) -> Vec<f64> {
    vec![x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0)]
}

/// Front positions stay near `[0, 2]` and reach both ends.
pub fn converged(positions: &[f64]) -> bool {
    if positions.is_empty() {
        return false;
    }
    let inside = positions.iter().all(|&x| (-0.05..=2.05).contains(&x));
    let lo = positions.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = positions.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    inside && lo.abs() <= 0.1 && (hi - 2.0).abs() <= 0.1
}

pub fn mopso_converges(seed: u64) -> bool {
    let mut c = MopsoConfig::new(vec![Bound::new(-5.0, 5.0)]);
    c.population = 50;
    c.iterations = 100;
    c.seed = seed;
    let run = run_mopso(schaffer, &c).unwrap();
    let xs: Vec<f64> = run
        .archive
        .members()
        .iter()
        .map(|m| m.position[0])
        .collect();
    converged(&xs)
}

pub fn nsga2_converges(seed: u64) -> bool {
    let mut c = Nsga2Config::new(vec![Bound::new(-5.0, 5.0)]);
    c.population = 50;
    c.generations = 100;
    c.seed = seed;
    let run = run_nsga2(schaffer, &c).unwrap();
    let xs: Vec<f64> = run.front.iter().map(|m| m.position[0]).collect();
    converged(&xs)
}
