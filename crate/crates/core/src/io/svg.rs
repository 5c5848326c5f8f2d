//! Standalone SVG rendering of a planned trajectory.

use crate::box_model::{Obstacle, Point, WorldMap};
use crate::planner::RunReport;
use std::fmt::Write as _;

const MARGIN: f64 = 2.0;

/// Draws the workspace, obstacles, the box footprint before the first step
/// and after every step, the goal marker and the CG polyline.
///
/// World coordinates are used directly (metres); the y axis is flipped so
/// that north is up.
pub fn render_svg(report: &RunReport, world: &WorldMap) -> String {
    let ws = world.workspace;
    let (lo, hi) = (ws.min(), ws.max());
    // Flip y about the workspace so +y points up in the picture.
    let fy = |y: f64| lo.y + hi.y - y;
    let pt = |p: Point| format!("{:.3},{:.3}", p.x, fy(p.y));

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}" width="800" height="{:.0}">"#,
        lo.x - MARGIN,
        lo.y - MARGIN,
        ws.width + 2.0 * MARGIN,
        ws.height + 2.0 * MARGIN,
        800.0 * (ws.height + 2.0 * MARGIN) / (ws.width + 2.0 * MARGIN)
    )
    .unwrap();
    writeln!(
        out,
        r#"<title>{} seed {}: {} steps, {}</title>"#,
        report.algorithm.label(),
        report.seed,
        report.step_count(),
        report.termination
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect class="workspace" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="#ffffff" stroke="#000000" stroke-width="0.4"/>"##,
        lo.x, lo.y, ws.width, ws.height
    )
    .unwrap();

    for o in &world.obstacles {
        match o {
            Obstacle::Rect(r) => writeln!(
                out,
                r##"<rect class="obstacle" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="#7f7f7f"/>"##,
                r.x,
                fy(r.y + r.height),
                r.width,
                r.height
            )
            .unwrap(),
            Obstacle::Circle(c) => writeln!(
                out,
                r##"<circle class="obstacle" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#7f7f7f"/>"##,
                c.center.x,
                fy(c.center.y),
                c.radius
            )
            .unwrap(),
        }
    }

    let footprint = |out: &mut String, class: &str, style: &str, corners: [Point; 4]| {
        let pts: Vec<String> = corners.iter().map(|&p| pt(p)).collect();
        writeln!(
            out,
            r#"<polygon class="{class}" points="{}" {style}/>"#,
            pts.join(" ")
        )
        .unwrap();
    };
    footprint(
        &mut out,
        "box start",
        r##"fill="#9ecae1" stroke="#08519c" stroke-width="0.4""##,
        report.start.corners(),
    );
    for s in &report.steps {
        footprint(
            &mut out,
            "box",
            r##"fill="none" stroke="#3182bd" stroke-width="0.25""##,
            s.post.corners(),
        );
    }

    if !report.steps.is_empty() {
        let mut pts = vec![pt(report.start.cg)];
        pts.extend(report.steps.iter().map(|s| pt(s.post.cg)));
        writeln!(
            out,
            r##"<polyline class="cg-path" points="{}" fill="none" stroke="#d62728" stroke-width="0.4"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }

    let g = world.goal;
    writeln!(
        out,
        r##"<circle class="goal" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#2ca02c" stroke-width="0.4"/>"##,
        g.x,
        fy(g.y),
        world.params.epsilon
    )
    .unwrap();
    writeln!(
        out,
        r##"<circle class="goal-centre" cx="{:.3}" cy="{:.3}" r="0.6" fill="#2ca02c"/>"##,
        g.x,
        fy(g.y)
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
