//! `simulate`: plan a whole scenario and write the results as files.
//!
//! The output directory receives one trajectory CSV per vehicle (named
//! `<id>.csv`), a `summary.csv` table with one row per committed plan, and
//! a `violations.csv` listing every sampled spacing shortfall and
//! merging-zone overlap (header only for a safe schedule). All files use
//! 17-significant-digit floats, so repeated runs are byte-identical.
//!
//! A schedule with violations is still written out in full — the files are
//! the evidence — but the process exits with code 5.

use std::fmt::Write as _;
use std::path::Path;

use merge_sim::{ScenarioConfig, SimulationReport};
use trajectory_core::csv_float;
use trajectory_oracle::solve_numeric;

use crate::args::SimulateArgs;
use crate::solve_cmd::VERIFY_COST_REL_TOL;
use crate::{grid_steps, CliFailure, CmdOutcome, CmdResult, EXIT_UNSAFE, EXIT_VERIFY_GAP};

pub fn run_simulate(args: &SimulateArgs) -> CmdResult {
    if !(args.resolution.is_finite() && args.resolution > 0.0) {
        return Err(CliFailure::invalid("--resolution must be a positive number of seconds"));
    }
    let config = ScenarioConfig::from_path(&args.scenario)?;
    for v in &config.vehicles {
        if !filesystem_safe(&v.id) {
            return Err(CliFailure::invalid(format!(
                "vehicle id `{}` is not filesystem-safe (use letters, digits, `-`, `_`)",
                v.id
            )));
        }
    }

    let report = merge_sim::run(&config)?;
    std::fs::create_dir_all(&args.out)?;
    write_outputs(&args.out, &report, args.resolution)?;

    let mut out = String::new();
    writeln!(out, "scenario: {}", args.scenario.display()).unwrap();
    writeln!(out, "vehicles: {}", report.plans.len()).unwrap();
    writeln!(out, "total_cost: {}", csv_float(report.total_cost)).unwrap();
    let counts: Vec<String> = report
        .case_counts
        .iter()
        .map(|(case, n)| format!("{}={n}", case.label()))
        .collect();
    writeln!(out, "cases: {}", counts.join(" ")).unwrap();
    for plan in &report.plans {
        let (tm, t_f) = plan.occupancy();
        writeln!(
            out,
            "vehicle {}: lane={} case={} cost={:.4} tm_s={:.4} tf_s={:.4}",
            plan.id,
            plan.lane,
            plan.case().label(),
            plan.cost(),
            tm,
            t_f
        )
        .unwrap();
    }

    let mut worst_gap = 0.0f64;
    if args.verify {
        for plan in &report.plans {
            let n = grid_steps(plan.bc.horizon(), args.resolution);
            let numeric = solve_numeric(&plan.bc, &plan.lim, n).map_err(|e| CliFailure {
                stdout: out.clone(),
                ..CliFailure::from(e)
            })?;
            let gap = (plan.cost() - numeric.cost).abs() / numeric.cost.abs().max(1e-12);
            worst_gap = worst_gap.max(gap);
            writeln!(
                out,
                "verify {}: discrete_cost={} rel_gap={gap:.3e}",
                plan.id,
                csv_float(numeric.cost)
            )
            .unwrap();
        }
    }

    let n_rear = report.rear_end.len();
    let n_lateral = report.lateral.len();
    if report.is_safe() {
        writeln!(out, "violations: none").unwrap();
    } else {
        writeln!(out, "violations: {n_rear} rear-end, {n_lateral} lateral (see violations.csv)")
            .unwrap();
    }
    writeln!(out, "out: {}", args.out.display()).unwrap();

    if !report.is_safe() {
        return Err(CliFailure {
            stdout: out,
            message: format!(
                "safety check failed: {n_rear} rear-end and {n_lateral} lateral violation(s)"
            ),
            exit_code: EXIT_UNSAFE,
        });
    }
    if args.verify && worst_gap > VERIFY_COST_REL_TOL {
        return Err(CliFailure {
            stdout: out,
            message: format!(
                "verification failed: worst relative cost gap {worst_gap:.3e} exceeds \
                 {VERIFY_COST_REL_TOL:.1e}"
            ),
            exit_code: EXIT_VERIFY_GAP,
        });
    }
    Ok(CmdOutcome::ok(out))
}

fn filesystem_safe(id: &str) -> bool {
    id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

fn write_outputs(dir: &Path, report: &SimulationReport, resolution: f64) -> Result<(), CliFailure> {
    for plan in &report.plans {
        std::fs::write(dir.join(format!("{}.csv", plan.id)), plan.traj.to_csv(resolution)?)?;
    }

    let mut summary = String::from("id,lane,case,cost,tm_s,tf_s\n");
    for plan in &report.plans {
        let (tm, t_f) = plan.occupancy();
        writeln!(
            summary,
            "{},{},{},{},{},{}",
            plan.id,
            plan.lane,
            plan.case().label(),
            csv_float(plan.cost()),
            csv_float(tm),
            csv_float(t_f)
        )
        .unwrap();
    }
    std::fs::write(dir.join("summary.csv"), summary)?;

    let mut violations = String::from("kind,first,second,t_start_s,t_end_s,detail\n");
    for v in &report.rear_end {
        writeln!(
            violations,
            "rear-end,{},{},{},{},gap {} m below required {} m",
            v.follower,
            v.leader,
            csv_float(v.t_s),
            csv_float(v.t_s),
            csv_float(v.gap_m),
            csv_float(v.required_m)
        )
        .unwrap();
    }
    for v in &report.lateral {
        writeln!(
            violations,
            "lateral,{},{},{},{},merging-zone occupancy overlap",
            v.first,
            v.second,
            csv_float(v.overlap_start_s),
            csv_float(v.overlap_end_s)
        )
        .unwrap();
    }
    std::fs::write(dir.join("violations.csv"), violations)?;
    Ok(())
}
