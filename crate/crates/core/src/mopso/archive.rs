//! Bounded external repository of non-dominated solutions.

use super::grid::Grid;
use crate::pareto::{dominates_unchecked, is_feasible};
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveMember {
    pub position: Vec<f64>,
    pub objectives: Vec<f64>,
}

/// What happened to a candidate offered to the archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Accepted,
    /// Some member dominates the candidate.
    Dominated,
    /// A member already has exactly these objectives.
    Duplicate,
    /// Non-finite objectives.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    members: Vec<ArchiveMember>,
    capacity: usize,
    divisions: usize,
    grid: Option<Grid>,
}

impl Archive {
    pub fn new(capacity: usize, divisions: usize) -> Archive {
        assert!(capacity > 0, "archive capacity must be positive");
        assert!(divisions > 0, "grid divisions must be positive");
        Archive {
            members: Vec::new(),
            capacity,
            divisions,
            grid: None,
        }
    }

    pub fn members(&self) -> &[ArchiveMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Grid over the current members; `None` while the archive is empty.
    pub fn grid(&self) -> Option<&Grid> {
        self.grid.as_ref()
    }

    /// Offers a candidate. Members it dominates are dropped; on overflow one
    /// member of the most crowded hypercube is evicted at random.
    pub fn insert<R: RandomSource>(
        &mut self,
        position: &[f64],
        objectives: &[f64],
        rng: &mut R,
    ) -> Insertion {
        if !is_feasible(objectives) {
            return Insertion::Infeasible;
        }
        for m in &self.members {
            if m.objectives == objectives {
                return Insertion::Duplicate;
            }
            if dominates_unchecked(&m.objectives, objectives) {
                return Insertion::Dominated;
            }
        }
        self.members
            .retain(|m| !dominates_unchecked(objectives, &m.objectives));
        self.members.push(ArchiveMember {
            position: position.to_vec(),
            objectives: objectives.to_vec(),
        });
        self.rebuild_grid();

        if self.members.len() > self.capacity {
            let grid = self.grid.as_ref().expect("non-empty archive has a grid");
            let (_, crowded) = grid.most_crowded().expect("occupied grid");
            let victim = crowded[rng.below(crowded.len())];
            self.members.remove(victim);
            self.rebuild_grid();
        }
        Insertion::Accepted
    }

    fn rebuild_grid(&mut self) {
        self.grid = if self.members.is_empty() {
            None
        } else {
            let objs: Vec<&[f64]> = self
                .members
                .iter()
                .map(|m| m.objectives.as_slice())
                .collect();
            Some(Grid::build(&objs, self.divisions))
        };
    }

    /// Leader for the velocity update: a hypercube is picked by roulette wheel
    /// with fitness `10 / occupancy`, then one of its members uniformly.
    pub fn select_leader<R: RandomSource>(&self, rng: &mut R) -> Option<&ArchiveMember> {
        let grid = self.grid.as_ref()?;
        let cells: Vec<&[usize]> = grid.cell_members().collect();
        let fitness: Vec<f64> = cells.iter().map(|m| cube_fitness(m.len())).collect();
        let total: f64 = fitness.iter().sum();
        let spin = rng.next_f64() * total;
        let mut acc = 0.0;
        let mut chosen = cells.len() - 1;
        for (i, f) in fitness.iter().enumerate() {
            acc += f;
            if spin < acc {
                chosen = i;
                break;
            }
        }
        let members = cells[chosen];
        Some(&self.members[members[rng.below(members.len())]])
    }
}

/// Hypercube fitness, inversely proportional to its occupancy.
pub fn cube_fitness(occupancy: usize) -> f64 {
    10.0 / occupancy as f64
}
