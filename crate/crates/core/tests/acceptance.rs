//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use boxpush::bounds::Bound;
use boxpush::box_model::{
    apply_rotation, apply_translation, clearance, penalty, remaining_distance, rotate_point,
    rotation_energy, rotation_time, secondary_energy, secondary_time, translation_energy,
    translation_time, BoxState, Circle, Obstacle, Point,
};
use boxpush::io::report::AlgorithmSummary;
use boxpush::io::{benchmark_map, parse_map, run_repetitions, write_map};
use boxpush::mopso::{mutate, mutation_probability, run_mopso_observed, MopsoConfig, Particle};
use boxpush::pareto::nondominated_filter;
use boxpush::planner::{Algorithm, PlannerConfig, RunReport, Termination};
use boxpush::rng::{RandomSource, SeededRng};
use common::{brute_force_front, mopso_converges, nsga2_converges, schaffer, Scripted};
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn oracle_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = SeededRng::new(2024);
    let mut mismatches = 0;
    for set in 0..1000 {
        let k = 2 + set % 2;
        let n = 1 + rng.below(200);
        // Small integer lattice so ties and duplicates are common.
        let levels = 5 + rng.below(40);
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|_| rng.below(levels) as f64).collect())
            .collect();
        if nondominated_filter(&pts).unwrap() != brute_force_front(&pts) {
            mismatches += 1;
        }
    }
    let mut impure = 0;
    let mut insertions = 0;
    for seed in 0..100 {
        let mut c = MopsoConfig::new(vec![Bound::new(-5.0, 5.0)]);
        c.seed = seed;
        run_mopso_observed(schaffer, &c, |archive, _| {
            insertions += 1;
            let objs: Vec<&[f64]> = archive
                .members()
                .iter()
                .map(|m| m.objectives.as_slice())
                .collect();
            if archive.len() > archive.capacity()
                || nondominated_filter(&objs).unwrap().len() != objs.len()
            {
                impure += 1;
            }
        })
        .unwrap();
    }
    let t = start.elapsed();
    outcome(
        mismatches == 0 && impure == 0 && t < Duration::from_secs(30),
        format!(
            "filter mismatches {mismatches}/1000, impure archives {impure}/{insertions}, {t:.2?}"
        ),
    )
}

fn convergence() -> Outcome {
    let start = Instant::now();
    let m = (0..20).filter(|&s| mopso_converges(s)).count();
    let n = (0..20).filter(|&s| nsga2_converges(s)).count();
    let t = start.elapsed();
    outcome(
        m >= 19 && n >= 19 && t < Duration::from_secs(10),
        format!("MOPSO {m}/20, NSGA-II {n}/20, {t:.2?}"),
    )
}

fn mutation_schedule() -> Outcome {
    let total = 100;
    let bounds = [Bound::new(-1.0, 1.0)];
    let mut exact = true;
    for (gen, expected) in [(0, 1.0), (total / 2, 0.5f64.powi(10)), (total, 0.0)] {
        let pm = mutation_probability(gen, total, 0.5);
        exact &= pm == expected;
        let mut p = Particle::at_rest(vec![0.0], vec![0.0]);
        // Fires on any draw strictly below the probability, never at it.
        if pm > 0.0 {
            exact &= mutate(
                &mut p,
                gen,
                total,
                0.5,
                &bounds,
                &mut Scripted::new(&[pm * (1.0 - 1e-12), 0.3]),
            );
        }
        exact &= !mutate(
            &mut p,
            gen,
            total,
            0.5,
            &bounds,
            &mut Scripted::new(&[pm, 0.3]),
        );
    }
    let wide = [
        Bound::new(-3.0, 7.0),
        Bound::new(0.0, 1e-6),
        Bound::new(-1.0, -1.0),
    ];
    let mut rng = SeededRng::new(1);
    let mut p = Particle::at_rest(vec![7.0, 0.0, -1.0], vec![0.0]);
    let mut escapes = 0;
    for i in 0..1_000_000 {
        mutate(&mut p, i % 100, 100, 0.5, &wide, &mut rng);
        if !wide.iter().zip(&p.position).all(|(b, x)| b.contains(*x)) {
            escapes += 1;
        }
    }
    outcome(
        exact && escapes == 0,
        format!("schedule exact: {exact}, out-of-bounds positions {escapes}/1000000"),
    )
}

fn kinematics() -> Outcome {
    let mut rng = SeededRng::new(77);
    let (mut rigid, mut inverse) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let s = BoxState::new(
            Point::new(rng.in_range(-100.0, 100.0), rng.in_range(-100.0, 100.0)),
            rng.in_range(-PI, PI),
            rng.in_range(0.5, 10.0),
            rng.in_range(0.5, 10.0),
        );
        let pivot = Point::new(rng.in_range(-100.0, 100.0), rng.in_range(-100.0, 100.0));
        let alpha = rng.in_range(-2.0 * PI, 2.0 * PI);
        let r = apply_rotation(&s, pivot, alpha);
        let (a, b) = (s.corners(), r.corners());
        for i in 0..4 {
            for j in i + 1..4 {
                rigid = rigid.max((a[i].distance(a[j]) - b[i].distance(b[j])).abs());
            }
        }
        let back = apply_rotation(&r, pivot, -alpha);
        for (x, y) in s.corners().iter().zip(back.corners().iter()) {
            inverse = inverse.max(x.distance(*y));
        }
    }
    let mut translation = 0.0f64;
    for _ in 0..10_000 {
        let (x, y, th, d) = (
            rng.in_range(-100.0, 100.0),
            rng.in_range(-100.0, 100.0),
            rng.in_range(-PI, PI),
            rng.in_range(0.0, 10.0),
        );
        let t = apply_translation(&BoxState::new(Point::new(x, y), th, 8.0, 4.0), d);
        translation = translation
            .max((t.cg.x - (x + d * th.cos())).abs())
            .max((t.cg.y - (y + d * th.sin())).abs());
    }
    let hand = {
        let s = BoxState::new(Point::new(1.0, 1.0), PI / 4.0, 8.0, 4.0);
        apply_translation(&s, 2f64.sqrt())
            .cg
            .distance(Point::new(2.0, 2.0))
    };
    let turned = rotate_point(Point::new(1.0, 0.0), Point::new(0.0, 0.0), FRAC_PI_2);
    let hand_rot = turned.distance(Point::new(0.0, 1.0));
    outcome(
        rigid < 1e-9 && inverse < 1e-9 && translation < 1e-12 && hand < 1e-12 && hand_rot < 1e-12,
        format!("rigidity {rigid:.1e}, inverse {inverse:.1e}, translation {translation:.1e}"),
    )
}

fn objective_oracles() -> Outcome {
    let world = benchmark_map(1).unwrap();
    let mut open = world.clone();
    open.workspace = boxpush::box_model::Rect::new(0.0, 0.0, 100.0, 100.0);
    open.obstacles.clear();
    open.params.clearance_cap = 20.0;
    let b = BoxState::new(Point::new(10.0, 10.0), 0.0, 8.0, 4.0);
    let c34 = clearance(&b, &open);
    open.obstacles.push(Obstacle::Circle(Circle {
        center: Point::new(20.0, 10.0),
        radius: 2.0,
    }));
    let c18 = clearance(&b, &open);
    let cases: Vec<(&str, f64, f64)> = vec![
        (
            "t1",
            rotation_time(FRAC_PI_2, 100.0, 10.0, 1.0).unwrap(),
            (2.0 * FRAC_PI_2 * 100.0 / 20.0f64).sqrt(),
        ),
        (
            "t2",
            translation_time(50.0, 2.0, 10.0).unwrap(),
            10f64.sqrt(),
        ),
        (
            "S",
            remaining_distance(Point::new(1.0, 1.0), Point::new(4.0, 5.0)),
            5.0,
        ),
        ("t3 k=1", secondary_time(5.0, 1.0), 5f64.sqrt()),
        ("t3 k=2", secondary_time(4.0, 2.0), 4.0),
        ("E1", rotation_energy(10.0, 1.0, FRAC_PI_2), 10.0 * PI),
        ("E2 a", translation_energy(10.0, 2.0), 40.0),
        ("E2 b", translation_energy(7.5, 4.0), 60.0),
        ("E3", secondary_energy(5.0, 10.0), 50.0),
        ("d2 open", c34, 34.0),
        ("d2 circle", c18, 18.0),
        ("E4", penalty(10.0, 1000.0), 1000.0 / 1024.0),
    ];
    let worst = cases
        .iter()
        .map(|(name, got, want)| ((got - want).abs(), *name))
        .fold((0.0, ""), |a, b| if b.0 > a.0 { b } else { a });
    let rounded = [
        (3.9633, cases[0].1),
        (3.1623, cases[1].1),
        (31.416, cases[5].1),
        (0.9766, cases[11].1),
    ]
    .iter()
    .all(|(shown, v)| (shown - v).abs() < 5e-4);
    outcome(
        worst.0 < 1e-9 && rounded,
        format!(
            "{} oracles, worst error {:.1e} ({})",
            cases.len(),
            worst.0,
            if worst.1.is_empty() { "none" } else { worst.1 }
        ),
    )
}

fn runs_for(map: u8, algorithm: Algorithm) -> (Vec<RunReport>, Duration) {
    let world = benchmark_map(map).unwrap();
    let start = Instant::now();
    let reports = run_repetitions(&world, &PlannerConfig::new(algorithm), 0, 10).unwrap();
    (reports, start.elapsed())
}

fn planner_integration(runs: &[(u8, Vec<RunReport>, Duration)]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (map, reports, t) in runs {
        let good = reports
            .iter()
            .filter(|r| {
                r.termination == Termination::GoalReached && (5..=20).contains(&r.step_count())
            })
            .count();
        let steps: Vec<usize> = reports.iter().map(|r| r.step_count()).collect();
        pass &= good >= 9 && *t < Duration::from_secs(120);
        parts.push(format!(
            "map{map}: {good}/10 goal-reached in 5-20 steps {steps:?}, {t:.1?}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn comparison(
    mopso: &[(u8, Vec<RunReport>, Duration)],
    nsga2: &[(u8, Vec<RunReport>, Duration)],
) -> Outcome {
    let mut worse_maps = 0;
    let mut total = Duration::ZERO;
    let mut parts = Vec::new();
    for ((map, m, tm), (_, n, tn)) in mopso.iter().zip(nsga2) {
        let sm = AlgorithmSummary::from_reports(Algorithm::Mopso, m);
        let sn = AlgorithmSummary::from_reports(Algorithm::Nsga2, n);
        let e = sm.mean_energy_j / sn.mean_energy_j;
        let t = sm.mean_time_s / sn.mean_time_s;
        if e > 1.05 || t > 1.05 {
            worse_maps += 1;
        }
        total += *tm + *tn;
        parts.push(format!("map{map}: energy x{e:.3}, time x{t:.3}"));
    }
    outcome(
        worse_maps < 2 && total < Duration::from_secs(600),
        format!("{} (MOPSO / NSGA-II), {total:.1?}", parts.join("; ")),
    )
}

fn cli_determinism() -> Outcome {
    let map = Path::new(env!("CARGO_MANIFEST_DIR")).join("maps/map1.txt");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut ok = true;
    for d in &dirs {
        let status = Command::new(env!("CARGO_BIN_EXE_boxpush"))
            .args([
                "plan",
                "--map",
                map.to_str().unwrap(),
                "--algo",
                "both",
                "--reps",
                "2",
            ])
            .args([
                "--pop", "25", "--iters", "30", "--seed", "13", "--format", "csv,svg",
            ])
            .arg("--out")
            .arg(d.path())
            .status()
            .unwrap();
        ok &= status.success();
    }
    let mut files = 0;
    for entry in std::fs::read_dir(dirs[0].path()).unwrap() {
        let name = entry.unwrap().file_name();
        files += 1;
        ok &= std::fs::read(dirs[0].path().join(&name)).ok()
            == std::fs::read(dirs[1].path().join(&name)).ok();
    }
    let mut worst = 0.0f64;
    for n in [1, 2] {
        let w = benchmark_map(n).unwrap();
        let back = parse_map(&write_map(&w)).unwrap();
        ok &= back.obstacles == w.obstacles && back.params == w.params && back.start == w.start;
        let pairs = [
            (w.goal.x, back.goal.x),
            (w.goal.y, back.goal.y),
            (w.workspace.x, back.workspace.x),
            (w.workspace.y, back.workspace.y),
            (w.workspace.width, back.workspace.width),
            (w.workspace.height, back.workspace.height),
            (w.start.cg.x, back.start.cg.x),
            (w.start.cg.y, back.start.cg.y),
            (w.start.theta, back.start.theta),
            (w.params.inertia, back.params.inertia),
        ];
        worst = pairs.iter().fold(worst, |a, (x, y)| a.max((x - y).abs()));
    }
    outcome(
        ok && files > 0 && worst <= 1e-12,
        format!("{files} artifacts byte-identical: {ok}, map round-trip max error {worst:.1e}"),
    )
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("dominance/archive oracle suite", oracle_suite()),
        ("engine convergence sanity", convergence()),
        ("mutation schedule", mutation_schedule()),
        ("kinematics", kinematics()),
        ("objective oracles", objective_oracles()),
    ];
    let mopso: Vec<_> = [1u8, 2]
        .iter()
        .map(|&m| {
            let (r, t) = runs_for(m, Algorithm::Mopso);
            (m, r, t)
        })
        .collect();
    let nsga2: Vec<_> = [1u8, 2]
        .iter()
        .map(|&m| {
            let (r, t) = runs_for(m, Algorithm::Nsga2);
            (m, r, t)
        })
        .collect();
    results.push(("planner integration", planner_integration(&mopso)));
    results.push(("comparison direction", comparison(&mopso, &nsga2)));
    results.push(("CLI determinism and map round-trip", cli_determinism()));

    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
