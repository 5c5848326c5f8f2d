//! Workspace, obstacles and the physical constants of one planning problem.

use super::geometry::{convex_circle_distance, convex_distance, Circle, Point, Quad, Rect};
use super::kinematics::BoxState;
use crate::bounds::Bound;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Obstacle {
    Rect(Rect),
    Circle(Circle),
}

impl Obstacle {
    /// Boundary distance to a convex footprint, 0 when they overlap.
    pub fn distance_to(&self, footprint: &Quad) -> f64 {
        match self {
            Obstacle::Rect(r) => convex_distance(footprint, &r.corners()),
            Obstacle::Circle(c) => convex_circle_distance(footprint, c),
        }
    }
}

/// Constants and decision bounds of the box-pushing problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Box mass, kg.
    pub mass: f64,
    /// Mass moment of inertia about the vertical axis, kg·m².
    pub inertia: f64,
    /// Scale of the remaining-distance time term, s·m^-1/2.
    pub k: f64,
    /// Scale of the remaining-distance energy term, J/m.
    pub k1: f64,
    /// Penalty scale, J.
    pub k2: f64,
    /// Obstacle clearance reported when no obstacle is nearer, m.
    pub clearance_cap: f64,
    /// Goal tolerance on the CG, m.
    pub epsilon: f64,
    /// Per-robot force bounds, N (rotation and translation).
    pub force: Bound,
    /// Translation distance bounds per step, m.
    pub distance: Bound,
    /// Turn angle bounds per step, rad.
    pub alpha: Bound,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            mass: 50.0,
            inertia: 50.0 * (8.0 * 8.0 + 4.0 * 4.0) / 12.0,
            k: 10.0,
            k1: 100.0,
            k2: 1000.0,
            clearance_cap: 20.0,
            epsilon: 2.0,
            force: Bound::new(1.0, 100.0),
            distance: Bound::new(0.0, 10.0),
            alpha: Bound::new(-FRAC_PI_2, FRAC_PI_2),
        }
    }
}

impl PhysicalParams {
    /// Names the first constant that violates its invariant.
    pub fn check(&self) -> Result<(), String> {
        let positive = [
            ("mass", self.mass),
            ("inertia", self.inertia),
            ("k", self.k),
            ("k1", self.k1),
            ("k2", self.k2),
            ("epsilon", self.epsilon),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive and finite, got {v}"));
            }
        }
        if !(self.clearance_cap >= 0.0 && self.clearance_cap.is_finite()) {
            return Err(format!(
                "clearance cap must be non-negative, got {}",
                self.clearance_cap
            ));
        }
        if !self.force.is_valid() || self.force.lower <= 0.0 {
            return Err(format!("force bounds {} must be positive", self.force));
        }
        if !self.distance.is_valid() || self.distance.lower < 0.0 {
            return Err(format!(
                "distance bounds {} must be non-negative",
                self.distance
            ));
        }
        if !self.alpha.is_valid() {
            return Err(format!("invalid angle bounds {}", self.alpha));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldMap {
    pub workspace: Rect,
    pub obstacles: Vec<Obstacle>,
    pub start: BoxState,
    pub goal: Point,
    pub params: PhysicalParams,
}

impl WorldMap {
    /// Every corner inside the workspace.
    pub fn footprint_in_workspace(&self, footprint: &Quad) -> bool {
        footprint.iter().all(|&p| self.workspace.contains(p))
    }

    /// Index of the first obstacle the footprint touches.
    pub fn first_collision(&self, footprint: &Quad) -> Option<usize> {
        self.obstacles
            .iter()
            .position(|o| o.distance_to(footprint) <= 0.0)
    }

    pub fn is_free(&self, state: &BoxState) -> bool {
        let fp = state.corners();
        self.footprint_in_workspace(&fp) && self.first_collision(&fp).is_none()
    }
}
