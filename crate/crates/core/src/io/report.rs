//! Step tables, comparison tables and CSV renderings of planner runs.

use crate::planner::{Algorithm, RunReport, Termination};
use std::fmt::Write as _;

/// Mean per-step energy and time over the runs that reached that step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepAverage {
    pub step: usize,
    pub avg_energy_j: f64,
    pub avg_time_s: f64,
    pub runs: usize,
}

pub fn average_steps(reports: &[RunReport]) -> Vec<StepAverage> {
    let longest = reports.iter().map(RunReport::step_count).max().unwrap_or(0);
    (0..longest)
        .map(|i| {
            let reached: Vec<_> = reports.iter().filter_map(|r| r.steps.get(i)).collect();
            let n = reached.len() as f64;
            StepAverage {
                step: i + 1,
                avg_energy_j: reached.iter().map(|s| s.breakdown.f2).sum::<f64>() / n,
                avg_time_s: reached.iter().map(|s| s.breakdown.f1).sum::<f64>() / n,
                runs: reached.len(),
            }
        })
        .collect()
}

/// Repetition summary of one algorithm on one map.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_energy_j: f64,
    pub mean_time_s: f64,
    pub mean_steps: f64,
    pub goal_reached: usize,
    pub step_limit: usize,
    pub stalled: usize,
    pub steps: Vec<StepAverage>,
}

impl AlgorithmSummary {
    pub fn from_reports(algorithm: Algorithm, reports: &[RunReport]) -> AlgorithmSummary {
        let n = reports.len().max(1) as f64;
        let count = |t: Termination| reports.iter().filter(|r| r.termination == t).count();
        AlgorithmSummary {
            algorithm,
            runs: reports.len(),
            mean_energy_j: reports.iter().map(|r| r.total_energy).sum::<f64>() / n,
            mean_time_s: reports.iter().map(|r| r.total_time).sum::<f64>() / n,
            mean_steps: reports.iter().map(|r| r.step_count() as f64).sum::<f64>() / n,
            goal_reached: count(Termination::GoalReached),
            step_limit: count(Termination::StepLimit),
            stalled: count(Termination::Stalled),
            steps: average_steps(reports),
        }
    }
}

/// How MOPSO's mean totals compare with NSGA-II's (ratios MOPSO / NSGA-II).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub energy_ratio: f64,
    pub time_ratio: f64,
}

impl Direction {
    pub fn between(mopso: &AlgorithmSummary, nsga2: &AlgorithmSummary) -> Direction {
        Direction {
            energy_ratio: mopso.mean_energy_j / nsga2.mean_energy_j,
            time_ratio: mopso.mean_time_s / nsga2.mean_time_s,
        }
    }

    /// MOPSO is no worse on both totals.
    pub fn mopso_ahead(&self) -> bool {
        self.energy_ratio <= 1.0 && self.time_ratio <= 1.0
    }
}

/// Rounds to hundredths and returns the integer number of hundredths.
fn cents(v: f64) -> i64 {
    (v * 100.0).round() as i64
}

fn fmt_cents(c: i64) -> String {
    let sign = if c < 0 { "-" } else { "" };
    let c = c.abs();
    format!("{sign}{}.{:02}", c / 100, c % 100)
}

/// Two-decimal rendering used for joules and seconds.
pub fn fmt2(v: f64) -> String {
    fmt_cents(cents(v))
}

/// Three-decimal rendering used for kilojoules.
pub fn fmt3(v: f64) -> String {
    format!("{v:.3}")
}

/// `step,avg_energy_j,avg_time_s,runs_at_step`
pub fn steps_csv(steps: &[StepAverage]) -> String {
    let mut out = String::from("step,avg_energy_j,avg_time_s,runs_at_step\n");
    for s in steps {
        writeln!(
            out,
            "{},{},{},{}",
            s.step,
            fmt2(s.avg_energy_j),
            fmt2(s.avg_time_s),
            s.runs
        )
        .unwrap();
    }
    out
}

/// `method,total_energy_kj,total_time_s,total_steps`, means over repetitions.
pub fn comparison_csv(summaries: &[AlgorithmSummary]) -> String {
    let mut out = String::from("method,total_energy_kj,total_time_s,total_steps\n");
    for s in summaries {
        writeln!(
            out,
            "{},{},{},{:.1}",
            s.algorithm.label(),
            fmt3(s.mean_energy_j / 1000.0),
            fmt2(s.mean_time_s),
            s.mean_steps
        )
        .unwrap();
    }
    out
}

/// Step table of a single run with a closing `total` row. The total is the
/// sum of the printed (hundredth-rounded) rows.
pub fn run_csv(report: &RunReport) -> String {
    let mut out = String::from("step,energy_j,time_s\n");
    let (mut e, mut t) = (0i64, 0i64);
    for s in &report.steps {
        let (ce, ct) = (cents(s.breakdown.f2), cents(s.breakdown.f1));
        e += ce;
        t += ct;
        writeln!(out, "{},{},{}", s.index, fmt_cents(ce), fmt_cents(ct)).unwrap();
    }
    writeln!(out, "total,{},{}", fmt_cents(e), fmt_cents(t)).unwrap();
    out
}

/// CG pose after every step, starting with the initial pose as step 0.
pub fn trajectory_csv(report: &RunReport) -> String {
    let mut out = String::from("step,cg_x,cg_y,theta\n");
    let row = |out: &mut String, i: usize, s: &crate::box_model::BoxState| {
        writeln!(out, "{i},{:.6},{:.6},{:.6}", s.cg.x, s.cg.y, s.theta).unwrap();
    };
    row(&mut out, 0, &report.start);
    for s in &report.steps {
        row(&mut out, s.index, &s.post);
    }
    out
}

/// Full decision and objective breakdown of every step of every run.
pub fn diagnostics_csv(reports: &[RunReport]) -> String {
    let mut out = String::from(
        "seed,step,pivot_x,pivot_y,f1r,f1t,d1,d,alpha,t1,t2,t3,e1,e2,e3,e4,f1,f2,s_remaining,d2,archive_size\n",
    );
    for r in reports {
        for s in &r.steps {
            let d = &s.decision;
            let b = &s.breakdown;
            let values = [
                d.pivot.x,
                d.pivot.y,
                d.f1r,
                d.f1t,
                d.d1,
                d.d,
                d.alpha,
                b.t1,
                b.t2,
                b.t3,
                b.e1,
                b.e2,
                b.e3,
                b.e4,
                b.f1,
                b.f2,
                b.s_remaining,
                b.d2,
            ];
            write!(out, "{},{}", r.seed, s.index).unwrap();
            for v in values {
                write!(out, ",{v:.6}").unwrap();
            }
            writeln!(out, ",{}", s.archive_size).unwrap();
        }
    }
    out
}

/// Human-readable report: one averaged step table per algorithm, totals,
/// and the comparison table when both algorithms ran.
pub fn text_report(map_name: &str, summaries: &[AlgorithmSummary]) -> String {
    let mut out = String::new();
    for s in summaries {
        writeln!(
            out,
            "STEP BY STEP ENERGY AND TIME FOR {} ({map_name})",
            s.algorithm.label()
        )
        .unwrap();
        writeln!(
            out,
            "{:>5}  {:>18}  {:>16}  {:>5}",
            "Step", "Average Energy (J)", "Average Time (s)", "Runs"
        )
        .unwrap();
        for st in &s.steps {
            writeln!(
                out,
                "{:>5}  {:>18}  {:>16}  {:>5}",
                st.step,
                fmt2(st.avg_energy_j),
                fmt2(st.avg_time_s),
                st.runs
            )
            .unwrap();
        }
        writeln!(
            out,
            "runs: {}  goal-reached: {}  step-limit: {}  stalled: {}",
            s.runs, s.goal_reached, s.step_limit, s.stalled
        )
        .unwrap();
        if s.stalled > 0 {
            writeln!(
                out,
                "note: {} run(s) stalled without a feasible step",
                s.stalled
            )
            .unwrap();
        }
        writeln!(
            out,
            "mean totals: {} KJ, {} s, {:.1} steps\n",
            fmt3(s.mean_energy_j / 1000.0),
            fmt2(s.mean_time_s),
            s.mean_steps
        )
        .unwrap();
    }

    let mopso = summaries.iter().find(|s| s.algorithm == Algorithm::Mopso);
    let nsga2 = summaries.iter().find(|s| s.algorithm == Algorithm::Nsga2);
    if let (Some(m), Some(n)) = (mopso, nsga2) {
        writeln!(out, "COMPARISON BETWEEN NSGA-II AND MOPSO ({map_name})").unwrap();
        writeln!(
            out,
            "{:<8}  {:>17}  {:>14}  {:>17}",
            "Method", "Total Energy (KJ)", "Total Time (s)", "Total No of steps"
        )
        .unwrap();
        for s in [n, m] {
            writeln!(
                out,
                "{:<8}  {:>17}  {:>14}  {:>17.1}",
                s.algorithm.label(),
                fmt3(s.mean_energy_j / 1000.0),
                fmt2(s.mean_time_s),
                s.mean_steps
            )
            .unwrap();
        }
        let d = Direction::between(m, n);
        writeln!(
            out,
            "MOPSO / NSGA-II: energy {:.3}, time {:.3}",
            d.energy_ratio, d.time_ratio
        )
        .unwrap();
        if !d.mopso_ahead() {
            writeln!(
                out,
                "warning: MOPSO does not beat NSGA-II on every total for this map"
            )
            .unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_rendering() {
        assert_eq!(fmt2(7011.454), "7011.45");
        assert_eq!(fmt2(56.4), "56.40");
        assert_eq!(fmt2(0.005), "0.01");
        assert_eq!(fmt2(0.0), "0.00");
        assert_eq!(fmt3(33.3021), "33.302");
    }
}
