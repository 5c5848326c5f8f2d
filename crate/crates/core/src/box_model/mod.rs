//! Box-pushing problem model: kinematics of one rotate-then-translate step
//! and the time / energy objectives it is scored by.
//!
//! Time is `t1 + t2 + t3` (rotation, translation, and a `k·√S` estimate of
//! the time still needed to cover the remaining distance `S`). Energy is
//! `E1 + E2 + E3 + E4` (rotation, translation, `k1·S`, and a clearance
//! penalty `k2·2^(−d2)`).

pub mod geometry;
pub mod kinematics;
pub mod world;

pub use geometry::{Circle, Point, Rect};
pub use kinematics::{apply_rotation, apply_translation, normalize_angle, rotate_point, BoxState};
pub use world::{Obstacle, PhysicalParams, WorldMap};

use crate::bounds::Bound;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ModelError {
    #[error("zero torque cannot turn the box by {alpha} rad")]
    ZeroTorque { alpha: f64 },
    #[error("zero force cannot push the box {distance} m")]
    ZeroForce { distance: f64 },
}

/// The seven per-step unknowns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionVector {
    /// Rotation point.
    pub pivot: Point,
    /// Per-robot force while turning, N.
    pub f1r: f64,
    /// Per-robot force while pushing, N.
    pub f1t: f64,
    /// Moment arm, m.
    pub d1: f64,
    /// Translation distance, m.
    pub d: f64,
    /// Signed turn angle, counter-clockwise positive, rad.
    pub alpha: f64,
}

impl DecisionVector {
    pub const DIMENSION: usize = 7;

    pub fn from_slice(x: &[f64]) -> DecisionVector {
        assert_eq!(x.len(), Self::DIMENSION, "decision vector has 7 entries");
        DecisionVector {
            pivot: Point::new(x[0], x[1]),
            f1r: x[2],
            f1t: x[3],
            d1: x[4],
            d: x[5],
            alpha: x[6],
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        vec![
            self.pivot.x,
            self.pivot.y,
            self.f1r,
            self.f1t,
            self.d1,
            self.d,
            self.alpha,
        ]
    }

    /// The same decision with its pivot moved onto the contact segment.
    pub fn projected(&self, state: &BoxState) -> DecisionVector {
        DecisionVector {
            pivot: state.project_on_contacts(self.pivot),
            ..*self
        }
    }

    /// Search box for one planning step from `state`.
    pub fn search_bounds(state: &BoxState, world: &WorldMap) -> Vec<Bound> {
        let ws = world.workspace;
        let p = &world.params;
        let span = state.contact_span();
        vec![
            Bound::new(ws.min().x, ws.max().x),
            Bound::new(ws.min().y, ws.max().y),
            p.force,
            p.force,
            Bound::new(span * MIN_ARM_FRACTION, span),
            p.distance,
            p.alpha,
        ]
    }

    /// Resulting box pose: turn about the (projected) pivot, then push.
    pub fn apply(&self, state: &BoxState) -> BoxState {
        let pivot = state.project_on_contacts(self.pivot);
        let turned = apply_rotation(state, pivot, self.alpha);
        apply_translation(&turned, self.d)
    }
}

/// Smallest moment arm offered to the optimizer, as a fraction of `|EF|`.
pub const MIN_ARM_FRACTION: f64 = 0.01;

/// Component-wise scores of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveBreakdown {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    /// Total time, s.
    pub f1: f64,
    /// Total energy, J.
    pub f2: f64,
    /// Remaining CG distance to the goal after the step, m.
    pub s_remaining: f64,
    /// Clearance that drove the penalty, m.
    pub d2: f64,
}

impl ObjectiveBreakdown {
    pub fn objectives(&self) -> [f64; 2] {
        [self.f1, self.f2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Infeasibility {
    LeavesWorkspace,
    HitsObstacle(usize),
    Model(ModelError),
}

/// Result of scoring a decision: either a full breakdown or the reason it
/// was rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Feasible {
        breakdown: ObjectiveBreakdown,
        next: BoxState,
    },
    Infeasible(Infeasibility),
}

impl Evaluation {
    /// `[f1, f2]`, or `[+inf, +inf]` for infeasible decisions.
    pub fn objectives(&self) -> Vec<f64> {
        match self {
            Evaluation::Feasible { breakdown, .. } => breakdown.objectives().to_vec(),
            Evaluation::Infeasible(_) => vec![f64::INFINITY, f64::INFINITY],
        }
    }

    pub fn breakdown(&self) -> Option<&ObjectiveBreakdown> {
        match self {
            Evaluation::Feasible { breakdown, .. } => Some(breakdown),
            Evaluation::Infeasible(_) => None,
        }
    }
}

/// `t1 = √(2|α|J / T)` with torque `T = 2·f1r·d1`.
pub fn rotation_time(alpha: f64, inertia: f64, f1r: f64, d1: f64) -> Result<f64, ModelError> {
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let torque = 2.0 * f1r * d1;
    if torque == 0.0 {
        return Err(ModelError::ZeroTorque { alpha });
    }
    Ok((2.0 * alpha.abs() * inertia / torque).sqrt())
}

/// `t2 = √(2·m·d / (2·f1t))`, both robots pushing with the same force.
pub fn translation_time(mass: f64, d: f64, f1t: f64) -> Result<f64, ModelError> {
    if d == 0.0 {
        return Ok(0.0);
    }
    if f1t == 0.0 {
        return Err(ModelError::ZeroForce { distance: d });
    }
    Ok((2.0 * mass * d / (2.0 * f1t)).sqrt())
}

pub fn remaining_distance(next_cg: Point, goal: Point) -> f64 {
    next_cg.distance(goal)
}

pub fn secondary_time(s: f64, k: f64) -> f64 {
    k * s.sqrt()
}

/// `E1 = 2·f1r·d1·|α|`.
pub fn rotation_energy(f1r: f64, d1: f64, alpha: f64) -> f64 {
    2.0 * f1r * d1 * alpha.abs()
}

/// `E2 = 2·f1t·d`.
pub fn translation_energy(f1t: f64, d: f64) -> f64 {
    2.0 * f1t * d
}

pub fn secondary_energy(s: f64, k1: f64) -> f64 {
    k1 * s
}

/// Clearance `d2` of a box pose: nearest vertical-wall gap plus nearest
/// horizontal-wall gap (both over the four corners) plus the nearest
/// obstacle gap, the latter capped at the map's clearance cap.
pub fn clearance(state: &BoxState, world: &WorldMap) -> f64 {
    let fp = state.corners();
    let (lo, hi) = (world.workspace.min(), world.workspace.max());
    let cx = fp
        .iter()
        .map(|p| (p.x - lo.x).min(hi.x - p.x))
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    let cy = fp
        .iter()
        .map(|p| (p.y - lo.y).min(hi.y - p.y))
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    let cap = world.params.clearance_cap;
    let cobs = world
        .obstacles
        .iter()
        .map(|o| o.distance_to(&fp))
        .fold(cap, f64::min);
    cx + cy + cobs
}

/// `E4 = k2·2^(−d2)`.
pub fn penalty(d2: f64, k2: f64) -> f64 {
    k2 * (-d2).exp2()
}

/// Scores `decision` applied to `state`. The pivot is first projected onto
/// the contact segment. Only the end pose is checked for feasibility.
pub fn evaluate(decision: &DecisionVector, state: &BoxState, world: &WorldMap) -> Evaluation {
    let p = &world.params;
    let decision = decision.projected(state);
    let next = decision.apply(state);

    let fp = next.corners();
    if !world.footprint_in_workspace(&fp) {
        return Evaluation::Infeasible(Infeasibility::LeavesWorkspace);
    }
    if let Some(i) = world.first_collision(&fp) {
        return Evaluation::Infeasible(Infeasibility::HitsObstacle(i));
    }

    let t1 = match rotation_time(decision.alpha, p.inertia, decision.f1r, decision.d1) {
        Ok(t) => t,
        Err(e) => return Evaluation::Infeasible(Infeasibility::Model(e)),
    };
    let t2 = match translation_time(p.mass, decision.d, decision.f1t) {
        Ok(t) => t,
        Err(e) => return Evaluation::Infeasible(Infeasibility::Model(e)),
    };
    let s = remaining_distance(next.cg, world.goal);
    let t3 = secondary_time(s, p.k);
    let e1 = rotation_energy(decision.f1r, decision.d1, decision.alpha);
    let e2 = translation_energy(decision.f1t, decision.d);
    let e3 = secondary_energy(s, p.k1);
    let d2 = clearance(&next, world);
    let e4 = penalty(d2, p.k2);

    Evaluation::Feasible {
        breakdown: ObjectiveBreakdown {
            t1,
            t2,
            t3,
            e1,
            e2,
            e3,
            e4,
            f1: t1 + t2 + t3,
            f2: e1 + e2 + e3 + e4,
            s_remaining: s,
            d2,
        },
        next,
    }
}
