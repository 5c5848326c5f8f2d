//! Line-oriented world map files.
//!
//! ```text
//! # comment
//! workspace x_min y_min x_max y_max
//! box cg_x cg_y theta length width
//! mass kg
//! inertia kgm2
//! goal x y
//! epsilon m
//! obstacle rect x y w h
//! obstacle circle x y r
//! constants k k1 k2 dcap
//! bounds f|d|alpha lo hi
//! ```
//!
//! `workspace`, `box` and `goal` are required. When `inertia` is omitted it
//! is derived from the mass and box dimensions as a uniform rectangle.

use crate::bounds::Bound;
use crate::box_model::{BoxState, Circle, Obstacle, PhysicalParams, Point, Rect, WorldMap};
use std::fmt::{self, Write as _};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct MapError {
    /// 1-based line the problem was found on, if any.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> MapError {
    MapError {
        line: Some(line),
        message: message.into(),
    }
}

struct Directive<'a> {
    line: usize,
    name: &'a str,
    args: Vec<&'a str>,
}

impl Directive<'_> {
    fn numbers(&self, skip: usize, expected: usize, usage: &str) -> Result<Vec<f64>, MapError> {
        let args = &self.args[skip.min(self.args.len())..];
        if args.len() != expected {
            return Err(err(
                self.line,
                format!(
                    "`{}` expects {expected} numbers, got {} (usage: {usage})",
                    self.name,
                    args.len()
                ),
            ));
        }
        args.iter()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(self.line, format!("`{t}` is not a finite number")))
            })
            .collect()
    }
}

#[derive(Default)]
struct Slots {
    workspace: Option<(usize, Rect)>,
    start: Option<(usize, [f64; 5])>,
    goal: Option<(usize, Point)>,
    mass: Option<(usize, f64)>,
    inertia: Option<(usize, f64)>,
    epsilon: Option<(usize, f64)>,
    constants: Option<(usize, [f64; 4])>,
    obstacles: Vec<(usize, Obstacle)>,
}

fn set_once<T>(slot: &mut Option<(usize, T)>, d: &Directive, value: T) -> Result<(), MapError> {
    if let Some((first, _)) = slot {
        return Err(err(
            d.line,
            format!("duplicate `{}` directive (first on line {first})", d.name),
        ));
    }
    *slot = Some((d.line, value));
    Ok(())
}

/// Parses a map document into a validated [`WorldMap`].
pub fn parse_map(text: &str) -> Result<WorldMap, MapError> {
    let mut s = Slots::default();
    let mut params = PhysicalParams::default();
    let mut bounds_lines: Vec<usize> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let name = tokens.next().expect("non-empty line");
        let d = Directive {
            line,
            name,
            args: tokens.collect(),
        };
        match name {
            "workspace" => {
                let v = d.numbers(0, 4, "workspace x_min y_min x_max y_max")?;
                if v[2] <= v[0] || v[3] <= v[1] {
                    return Err(err(line, "workspace must have positive width and height"));
                }
                let r = Rect::from_corners(Point::new(v[0], v[1]), Point::new(v[2], v[3]));
                set_once(&mut s.workspace, &d, r)?;
            }
            "box" => {
                let v = d.numbers(0, 5, "box cg_x cg_y theta length width")?;
                if v[3] <= 0.0 || v[4] <= 0.0 {
                    return Err(err(line, "box length and width must be positive"));
                }
                set_once(&mut s.start, &d, [v[0], v[1], v[2], v[3], v[4]])?;
            }
            "goal" => {
                let v = d.numbers(0, 2, "goal x y")?;
                set_once(&mut s.goal, &d, Point::new(v[0], v[1]))?;
            }
            "mass" => {
                let v = d.numbers(0, 1, "mass kg")?;
                set_once(&mut s.mass, &d, v[0])?;
            }
            "inertia" => {
                let v = d.numbers(0, 1, "inertia kgm2")?;
                set_once(&mut s.inertia, &d, v[0])?;
            }
            "epsilon" => {
                let v = d.numbers(0, 1, "epsilon m")?;
                set_once(&mut s.epsilon, &d, v[0])?;
            }
            "constants" => {
                let v = d.numbers(0, 4, "constants k k1 k2 dcap")?;
                set_once(&mut s.constants, &d, [v[0], v[1], v[2], v[3]])?;
            }
            "obstacle" => {
                let obstacle = match d.args.first().copied() {
                    Some("rect") => {
                        let v = d.numbers(1, 4, "obstacle rect x y w h")?;
                        if v[2] <= 0.0 || v[3] <= 0.0 {
                            return Err(err(line, "rectangle obstacle must have positive size"));
                        }
                        Obstacle::Rect(Rect::new(v[0], v[1], v[2], v[3]))
                    }
                    Some("circle") => {
                        let v = d.numbers(1, 3, "obstacle circle x y r")?;
                        if v[2] <= 0.0 {
                            return Err(err(line, "circle obstacle must have positive radius"));
                        }
                        Obstacle::Circle(Circle {
                            center: Point::new(v[0], v[1]),
                            radius: v[2],
                        })
                    }
                    Some(other) => {
                        return Err(err(
                            line,
                            format!("unknown obstacle shape `{other}` (expected rect or circle)"),
                        ))
                    }
                    None => return Err(err(line, "`obstacle` needs a shape (rect or circle)")),
                };
                s.obstacles.push((line, obstacle));
            }
            "bounds" => {
                let which = d.args.first().copied().unwrap_or("");
                let v = d.numbers(1, 2, "bounds f|d|alpha lo hi")?;
                let b = Bound::new(v[0], v[1]);
                if !b.is_valid() {
                    return Err(err(line, format!("bounds need lo < hi, got {b}")));
                }
                match which {
                    "f" if b.lower > 0.0 => params.force = b,
                    "f" => return Err(err(line, "force bounds must be positive")),
                    "d" if b.lower >= 0.0 => params.distance = b,
                    "d" => return Err(err(line, "distance bounds must be non-negative")),
                    "alpha" => params.alpha = b,
                    other => {
                        return Err(err(
                            line,
                            format!("unknown bounds variable `{other}` (expected f, d or alpha)"),
                        ))
                    }
                }
                bounds_lines.push(line);
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    let missing = |what: &str| MapError {
        line: None,
        message: format!("missing required `{what}` directive"),
    };
    let (ws_line, workspace) = s.workspace.ok_or_else(|| missing("workspace"))?;
    let (box_line, b) = s.start.ok_or_else(|| missing("box"))?;
    let (goal_line, goal) = s.goal.ok_or_else(|| missing("goal"))?;

    if let Some((line, m)) = s.mass {
        if m <= 0.0 {
            return Err(err(line, "mass must be positive"));
        }
        params.mass = m;
    }
    params.inertia = match s.inertia {
        Some((line, j)) if j <= 0.0 => return Err(err(line, "inertia must be positive")),
        Some((_, j)) => j,
        None => params.mass * (b[3] * b[3] + b[4] * b[4]) / 12.0,
    };
    if let Some((line, e)) = s.epsilon {
        if e <= 0.0 {
            return Err(err(line, "epsilon must be positive"));
        }
        params.epsilon = e;
    }
    if let Some((line, [k, k1, k2, dcap])) = s.constants {
        if k <= 0.0 || k1 <= 0.0 || k2 <= 0.0 || dcap < 0.0 {
            return Err(err(line, "constants need k, k1, k2 > 0 and dcap >= 0"));
        }
        params.k = k;
        params.k1 = k1;
        params.k2 = k2;
        params.clearance_cap = dcap;
    }
    if let Err(m) = params.check() {
        return Err(MapError {
            line: bounds_lines.last().copied(),
            message: m,
        });
    }

    let start = BoxState::new(Point::new(b[0], b[1]), b[2], b[3], b[4]);
    let obstacles: Vec<Obstacle> = s.obstacles.iter().map(|&(_, o)| o).collect();
    let world = WorldMap {
        workspace,
        obstacles,
        start,
        goal,
        params,
    };

    let fp = start.corners();
    if !world.footprint_in_workspace(&fp) {
        return Err(err(
            box_line,
            format!("start box does not fit inside the workspace (line {ws_line})"),
        ));
    }
    if let Some(i) = world.first_collision(&fp) {
        return Err(err(
            box_line,
            format!(
                "start box overlaps the obstacle on line {}",
                s.obstacles[i].0
            ),
        ));
    }
    if !workspace.contains(goal) {
        return Err(err(goal_line, "goal lies outside the workspace"));
    }
    Ok(world)
}

/// Renders a world as a map document that [`parse_map`] reads back to the
/// same values. Contact points are not stored; they are re-derived from the
/// box pose.
pub fn write_map(world: &WorldMap) -> String {
    let mut out = String::new();
    let ws = world.workspace;
    let s = &world.start;
    let p = &world.params;
    let (lo, hi) = (ws.min(), ws.max());
    writeln!(out, "workspace {} {} {} {}", lo.x, lo.y, hi.x, hi.y).unwrap();
    writeln!(
        out,
        "box {} {} {} {} {}",
        s.cg.x, s.cg.y, s.theta, s.length, s.width
    )
    .unwrap();
    writeln!(out, "goal {} {}", world.goal.x, world.goal.y).unwrap();
    writeln!(out, "mass {}", p.mass).unwrap();
    writeln!(out, "inertia {}", p.inertia).unwrap();
    writeln!(out, "epsilon {}", p.epsilon).unwrap();
    writeln!(
        out,
        "constants {} {} {} {}",
        p.k, p.k1, p.k2, p.clearance_cap
    )
    .unwrap();
    writeln!(out, "bounds f {} {}", p.force.lower, p.force.upper).unwrap();
    writeln!(out, "bounds d {} {}", p.distance.lower, p.distance.upper).unwrap();
    writeln!(out, "bounds alpha {} {}", p.alpha.lower, p.alpha.upper).unwrap();
    for o in &world.obstacles {
        match o {
            Obstacle::Rect(r) => writeln!(
                out,
                "obstacle rect {} {} {} {}",
                r.x, r.y, r.width, r.height
            )
            .unwrap(),
            Obstacle::Circle(c) => writeln!(
                out,
                "obstacle circle {} {} {}",
                c.center.x, c.center.y, c.radius
            )
            .unwrap(),
        }
    }
    out
}
