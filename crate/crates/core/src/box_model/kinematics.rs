//! Rigid planar motion of the box: rotation about a pivot followed by
//! translation along the box heading.

use super::geometry::{project_onto_segment, Point, Quad};
use std::f64::consts::PI;

/// Pose and contact points of the pushed box.
///
/// `theta` is the heading of the length axis; the robots push on the rear
/// face, so translation happens along `+theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxState {
    pub cg: Point,
    pub theta: f64,
    pub length: f64,
    pub width: f64,
    pub contact_e: Point,
    pub contact_f: Point,
}

impl BoxState {
    /// Box with the two robots gripping the rear face at a quarter of the
    /// width either side of the centre line.
    pub fn new(cg: Point, theta: f64, length: f64, width: f64) -> BoxState {
        let e = body_to_world(cg, theta, Point::new(-length / 2.0, -width / 4.0));
        let f = body_to_world(cg, theta, Point::new(-length / 2.0, width / 4.0));
        BoxState {
            cg,
            theta,
            length,
            width,
            contact_e: e,
            contact_f: f,
        }
    }

    pub fn with_contacts(mut self, e: Point, f: Point) -> BoxState {
        self.contact_e = e;
        self.contact_f = f;
        self
    }

    /// Footprint corners, counter-clockwise, starting at the rear right.
    pub fn corners(&self) -> Quad {
        let (hl, hw) = (self.length / 2.0, self.width / 2.0);
        [
            Point::new(-hl, -hw),
            Point::new(hl, -hw),
            Point::new(hl, hw),
            Point::new(-hl, hw),
        ]
        .map(|p| body_to_world(self.cg, self.theta, p))
    }

    /// End points of the rear face (right, left).
    pub fn rear_face(&self) -> (Point, Point) {
        let c = self.corners();
        (c[0], c[3])
    }

    /// Distance between the two contact points, `|EF|`.
    pub fn contact_span(&self) -> f64 {
        self.contact_e.distance(self.contact_f)
    }

    /// Closest point on the contact segment `EF` to `p`.
    pub fn project_on_contacts(&self, p: Point) -> Point {
        project_onto_segment(p, self.contact_e, self.contact_f)
    }

    /// Checks the structural invariants: positive size, distinct contacts on
    /// the rear face.
    pub fn is_consistent(&self) -> bool {
        let (r, l) = self.rear_face();
        let on_rear = |p: Point| {
            let proj = project_onto_segment(p, r, l);
            proj.distance(p) <= 1e-9
        };
        self.length > 0.0
            && self.width > 0.0
            && self.contact_span() > 0.0
            && on_rear(self.contact_e)
            && on_rear(self.contact_f)
    }
}

fn body_to_world(cg: Point, theta: f64, p: Point) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(cg.x + p.x * c - p.y * s, cg.y + p.x * s + p.y * c)
}

/// Wraps an angle into `(−π, π]`.
pub fn normalize_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Counter-clockwise rotation of `p` about `pivot` by `alpha`.
pub fn rotate_point(p: Point, pivot: Point, alpha: f64) -> Point {
    if alpha == 0.0 {
        return p;
    }
    let (s, c) = alpha.sin_cos();
    let (dx, dy) = (p.x - pivot.x, p.y - pivot.y);
    Point::new(pivot.x + dx * c - dy * s, pivot.y + dx * s + dy * c)
}

/// Turns the whole box (CG and both contacts) about `pivot`.
pub fn apply_rotation(state: &BoxState, pivot: Point, alpha: f64) -> BoxState {
    if alpha == 0.0 {
        return *state;
    }
    BoxState {
        cg: rotate_point(state.cg, pivot, alpha),
        theta: normalize_angle(state.theta + alpha),
        contact_e: rotate_point(state.contact_e, pivot, alpha),
        contact_f: rotate_point(state.contact_f, pivot, alpha),
        ..*state
    }
}

/// Pushes the box a distance `d` along its current heading.
pub fn apply_translation(state: &BoxState, d: f64) -> BoxState {
    debug_assert!(d >= 0.0, "translation distance must be non-negative");
    let shift = Point::heading(state.theta) * d;
    BoxState {
        cg: state.cg + shift,
        contact_e: state.contact_e + shift,
        contact_f: state.contact_f + shift,
        ..*state
    }
}
