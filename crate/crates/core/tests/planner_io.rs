use boxpush::box_model::{evaluate, Circle, Obstacle, Point, WorldMap};
use boxpush::io::report::run_csv;
use boxpush::io::{benchmark_map, parse_map, render_svg, write_map};
use boxpush::planner::{run_planner, Algorithm, PlannerConfig, RunReport, Termination};

fn quick(algorithm: Algorithm) -> PlannerConfig {
    let mut c = PlannerConfig::new(algorithm);
    c.optimizer.population = 30;
    c.optimizer.iterations = 40;
    c
}

fn run(map: u8, algorithm: Algorithm, seed: u64) -> (WorldMap, RunReport) {
    let world = benchmark_map(map).unwrap();
    let report = run_planner(&world, &quick(algorithm), seed).unwrap();
    (world, report)
}

#[test]
fn golden_map1_seed42() {
    let world = benchmark_map(1).unwrap();
    let report = run_planner(&world, &PlannerConfig::new(Algorithm::Mopso), 42).unwrap();
    assert_eq!(report.termination, Termination::GoalReached);
    assert_eq!(report.step_count(), 10);
}

#[test]
fn committed_steps_replay() {
    for algorithm in [Algorithm::Mopso, Algorithm::Nsga2] {
        let (world, report) = run(2, algorithm, 3);
        let mut state = world.start;
        for step in &report.steps {
            assert_eq!(step.pre, state);
            let post = step.decision.apply(&state);
            assert!(post.cg.distance(step.post.cg) < 1e-12);
            assert!((post.theta - step.post.theta).abs() < 1e-12);
            let again = evaluate(&step.decision, &state, &world);
            let b = again.breakdown().expect("committed steps are feasible");
            assert!((b.f1 - step.breakdown.f1).abs() < 1e-9);
            assert!((b.f2 - step.breakdown.f2).abs() < 1e-9);
            assert!(world.is_free(&post));
            state = step.post;
        }
        let e: f64 = report.steps.iter().map(|s| s.breakdown.f2).sum();
        assert!((e - report.total_energy).abs() < 1e-6);
    }
}

#[test]
fn planner_runs_repeat() {
    let (_, a) = run(1, Algorithm::Mopso, 8);
    let (_, b) = run(1, Algorithm::Mopso, 8);
    assert_eq!(a.steps.len(), b.steps.len());
    for (x, y) in a.steps.iter().zip(&b.steps) {
        assert_eq!(x.decision, y.decision);
        assert_eq!(x.post, y.post);
    }
}

fn count_svg(doc: &str) -> (usize, usize) {
    let xml = roxmltree::Document::parse(doc).expect("well-formed SVG");
    let boxes = xml
        .descendants()
        .filter(|n| n.has_tag_name("polygon"))
        .count();
    let segments = xml
        .descendants()
        .find(|n| n.has_tag_name("polyline"))
        .map_or(0, |n| {
            n.attribute("points").unwrap().split_whitespace().count() - 1
        });
    (boxes, segments)
}

#[test]
fn svg_draws_every_footprint() {
    let (world, report) = run(1, Algorithm::Mopso, 1);
    let n = report.step_count();
    assert!(n > 0);
    assert_eq!(count_svg(&render_svg(&report, &world)), (n + 1, n));

    let empty = RunReport {
        steps: Vec::new(),
        total_energy: 0.0,
        total_time: 0.0,
        termination: Termination::Stalled,
        seed: 0,
        algorithm: Algorithm::Mopso,
        start: world.start,
    };
    let doc = render_svg(&empty, &world);
    assert_eq!(count_svg(&doc), (1, 0));
    assert!(doc.contains("class=\"goal\""));
}

#[test]
fn csv_total_is_sum_of_rows() {
    let (_, report) = run(2, Algorithm::Nsga2, 4);
    let csv = run_csv(&report);
    let cents = |s: &str| -> i64 {
        let (whole, frac) = s.split_once('.').unwrap();
        whole.parse::<i64>().unwrap() * 100 + frac.parse::<i64>().unwrap()
    };
    let mut sums = [0i64; 2];
    let mut total = None;
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0] == "total" {
            total = Some([cents(cols[1]), cents(cols[2])]);
        } else {
            sums[0] += cents(cols[1]);
            sums[1] += cents(cols[2]);
        }
    }
    assert_eq!(total, Some(sums));
}

#[test]
fn map_files_round_trip() {
    for n in [1, 2] {
        let world = benchmark_map(n).unwrap();
        assert_eq!(parse_map(&write_map(&world)).unwrap(), world);
    }
    let mut odd = benchmark_map(1).unwrap();
    odd.obstacles.push(Obstacle::Circle(Circle {
        center: Point::new(0.1 + 0.2, 90.0 / 7.0),
        radius: 1.0 / 3.0,
    }));
    odd.params.k2 = std::f64::consts::E;
    odd.params.inertia = 1_234.567_890_123;
    let back = parse_map(&write_map(&odd)).unwrap();
    assert_eq!(back, odd);
}
