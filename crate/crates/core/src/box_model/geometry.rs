//! Planar primitives: points, segments, rectangles, circles and the
//! distance queries the clearance term needs.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Unit vector at angle `theta` from the x-axis.
    pub fn heading(theta: f64) -> Point {
        Point::new(theta.cos(), theta.sin())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Closest point to `p` on segment `[a, b]`.
pub fn project_onto_segment(p: Point, a: Point, b: Point) -> Point {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    a + ab * t
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    p.distance(project_onto_segment(p, a, b))
}

/// Axis-aligned rectangle given by its lower-left corner and size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Rect {
        Rect {
            x,
            y,
            width,
            height,
        }
    }

    pub fn from_corners(min: Point, max: Point) -> Rect {
        Rect::new(min.x, min.y, max.x - min.x, max.y - min.y)
    }

    pub fn min(&self) -> Point {
        Point::new(self.x, self.y)
    }

    pub fn max(&self) -> Point {
        Point::new(self.x + self.width, self.y + self.height)
    }

    pub fn corners(&self) -> [Point; 4] {
        let (lo, hi) = (self.min(), self.max());
        [lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)]
    }

    pub fn contains(&self, p: Point) -> bool {
        let (lo, hi) = (self.min(), self.max());
        p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

/// Convex quadrilateral with counter-clockwise vertices.
pub type Quad = [Point; 4];

fn edges(poly: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    (0..poly.len()).map(move |i| (poly[i], poly[(i + 1) % poly.len()]))
}

/// Point inside (or on) a convex polygon with counter-clockwise winding.
pub fn convex_contains(poly: &[Point], p: Point) -> bool {
    edges(poly).all(|(a, b)| (b - a).cross(p - a) >= -1e-12)
}

fn projection_range(poly: &[Point], axis: Point) -> (f64, f64) {
    poly.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let d = p.dot(axis);
            (lo.min(d), hi.max(d))
        })
}

/// Separating-axis overlap test for two convex polygons. Touching counts.
pub fn convex_overlap(a: &[Point], b: &[Point]) -> bool {
    for poly in [a, b] {
        for (p, q) in edges(poly) {
            let e = q - p;
            let axis = Point::new(-e.y, e.x);
            let (a_lo, a_hi) = projection_range(a, axis);
            let (b_lo, b_hi) = projection_range(b, axis);
            if a_hi < b_lo || b_hi < a_lo {
                return false;
            }
        }
    }
    true
}

/// Boundary-to-boundary distance between two convex polygons; 0 if they overlap.
pub fn convex_distance(a: &[Point], b: &[Point]) -> f64 {
    if convex_overlap(a, b) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for &p in a {
        for (s, t) in edges(b) {
            best = best.min(point_segment_distance(p, s, t));
        }
    }
    for &p in b {
        for (s, t) in edges(a) {
            best = best.min(point_segment_distance(p, s, t));
        }
    }
    best
}

/// Boundary-to-boundary distance between a convex polygon and a circle;
/// 0 if they overlap.
pub fn convex_circle_distance(poly: &[Point], c: &Circle) -> f64 {
    if convex_contains(poly, c.center) {
        return 0.0;
    }
    let d = edges(poly)
        .map(|(s, t)| point_segment_distance(c.center, s, t))
        .fold(f64::INFINITY, f64::min);
    (d - c.radius).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x: f64, y: f64, s: f64) -> Quad {
        Rect::new(x, y, s, s).corners()
    }

    #[test]
    fn projection_clamps_to_endpoints() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert_eq!(
            project_onto_segment(Point::new(1.0, 5.0), a, b),
            Point::new(1.0, 0.0)
        );
        assert_eq!(project_onto_segment(Point::new(-3.0, 1.0), a, b), a);
        assert_eq!(project_onto_segment(Point::new(9.0, -1.0), a, b), b);
    }

    #[test]
    fn disjoint_squares() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(3.0, 0.0, 1.0);
        assert!(!convex_overlap(&a, &b));
        assert!((convex_distance(&a, &b) - 2.0).abs() < 1e-12);
        // Diagonal offset: corner to corner.
        let c = square(4.0, 5.0, 1.0);
        assert!((convex_distance(&a, &c) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn overlapping_and_touching_squares() {
        let a = square(0.0, 0.0, 2.0);
        assert_eq!(convex_distance(&a, &square(1.0, 1.0, 2.0)), 0.0);
        assert_eq!(convex_distance(&a, &square(2.0, 0.0, 1.0)), 0.0);
    }

    #[test]
    fn rotated_square_against_axis_aligned() {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        // Diamond centred at (0, 0) with vertices at distance 1.
        let diamond = [
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(-1.0, 0.0),
            Point::new(0.0, -1.0),
        ];
        let b = Rect::new(1.0, 1.0, 1.0, 1.0).corners();
        assert!((convex_distance(&diamond, &b) - (2.0 - 1.0) * d).abs() < 1e-12);
    }

    #[test]
    fn circle_distances() {
        let box_ = Rect::new(6.0, 8.0, 8.0, 4.0).corners();
        let c = Circle {
            center: Point::new(20.0, 10.0),
            radius: 2.0,
        };
        assert!((convex_circle_distance(&box_, &c) - 4.0).abs() < 1e-12);
        let inside = Circle {
            center: Point::new(10.0, 10.0),
            radius: 0.5,
        };
        assert_eq!(convex_circle_distance(&box_, &inside), 0.0);
        let grazing = Circle {
            center: Point::new(15.0, 10.0),
            radius: 1.5,
        };
        assert_eq!(convex_circle_distance(&box_, &grazing), 0.0);
    }
}
