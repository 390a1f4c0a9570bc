//! Schedule validation from phases alone.
//!
//! Nothing here calls into the solvers: positions, times, speeds and coverage
//! are recomputed from the phase endpoints, so a schedule read from JSON is
//! checked exactly like one produced in memory.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Mode, Phase, Robot, Schedule, Tolerance};

/// Searched intervals closer than this fraction of the length are merged.
pub const TOUCH_FRACTION: f64 = 1e-12;

/// A phase needs more speed than the robot has, or moves the wrong way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedViolation {
    pub robot: String,
    pub phase: usize,
    /// Signed velocity the phase implies; negative for a backwards search.
    pub required: f64,
    pub allowed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityKind {
    /// First phase does not start at time 0 at the origin.
    StartsAwayFromOrigin,
    TimeGap,
    PositionJump,
    NegativeDuration,
    OutOfBounds,
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityViolation {
    pub robot: String,
    pub phase: usize,
    pub kind: ContinuityKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub feasible: bool,
    pub coverage_gaps: Vec<(f64, f64)>,
    pub speed_violations: Vec<SpeedViolation>,
    pub continuity_violations: Vec<ContinuityViolation>,
    /// Latest end time of any search phase.
    pub measured_finishing_time: f64,
    pub measured_speed: f64,
}

/// Which structural properties of optimal offline schedules hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    /// Every robot's searched set is a single interval.
    pub contiguous_search: bool,
    /// No robot idles, and every robot is searching until the common finish.
    pub no_idle_and_common_finish: bool,
    /// Every robot searches a piece of positive length.
    pub all_utilized: bool,
    /// Robots searching further from the origin walk at least as fast.
    pub walk_speed_ordered: bool,
}

/// Phases of each instance robot, in instance order; absent robots get none.
fn resolve<'a>(instance: &Instance, schedule: &'a Schedule) -> Result<Vec<&'a [Phase]>> {
    let index: HashMap<&str, usize> = instance
        .robots()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id(), i))
        .collect();
    let mut phases: Vec<Option<&[Phase]>> = vec![None; instance.len()];
    for tl in &schedule.robots {
        let i = *index
            .get(tl.id.as_str())
            .ok_or_else(|| Error::RobotMismatch(tl.id.clone()))?;
        if phases[i].is_some() {
            return Err(Error::RobotMismatch(tl.id.clone()));
        }
        phases[i] = Some(&tl.phases);
    }
    Ok(phases.into_iter().map(|p| p.unwrap_or(&[])).collect())
}

fn allowed_speed(robot: &Robot, mode: Mode) -> f64 {
    match mode {
        Mode::Walk => robot.walk_speed(),
        Mode::Search => robot.search_speed(),
        Mode::Idle => 0.0,
    }
}

fn velocity(p: &Phase) -> f64 {
    let dx = p.x1 - p.x0;
    let dt = p.t1 - p.t0;
    if dt > 0.0 {
        dx / dt
    } else if dx == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(dx)
    }
}

/// Sorts and merges intervals, joining ones closer than `touch`.
fn merge(mut intervals: Vec<(f64, f64)>, touch: f64) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo <= last.1 + touch => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

fn search_intervals(phases: &[Phase], length: f64) -> Vec<(f64, f64)> {
    phases
        .iter()
        .filter(|p| p.mode == Mode::Search)
        .map(|p| {
            let (lo, hi) = (p.x0.min(p.x1), p.x0.max(p.x1));
            (lo.clamp(0.0, length), hi.clamp(0.0, length))
        })
        .filter(|(lo, hi)| hi > lo)
        .collect()
}

pub fn validate(instance: &Instance, schedule: &Schedule) -> Result<ValidationReport> {
    validate_with(instance, schedule, Tolerance::default())
}

/// Checks continuity, speed limits and full coverage of `[0, length]`.
pub fn validate_with(
    instance: &Instance,
    schedule: &Schedule,
    tol: Tolerance,
) -> Result<ValidationReport> {
    let length = instance.length();
    let per_robot = resolve(instance, schedule)?;
    let mut speed_violations = Vec::new();
    let mut continuity_violations = Vec::new();
    let mut searched = Vec::new();
    let mut finishing_time = 0.0_f64;

    for (robot, phases) in instance.robots().iter().zip(&per_robot) {
        let mut flag = |phase: usize, kind: ContinuityKind| {
            continuity_violations.push(ContinuityViolation {
                robot: robot.id().to_string(),
                phase,
                kind,
            })
        };
        for (k, p) in phases.iter().enumerate() {
            if ![p.t0, p.t1, p.x0, p.x1].iter().all(|v| v.is_finite()) {
                flag(k, ContinuityKind::NonFinite);
                continue;
            }
            match k {
                0 if !(tol.close(p.t0, 0.0) && tol.close(p.x0, 0.0)) => {
                    flag(k, ContinuityKind::StartsAwayFromOrigin)
                }
                0 => {}
                _ => {
                    let prev = &phases[k - 1];
                    if !tol.close(p.t0, prev.t1) {
                        flag(k, ContinuityKind::TimeGap);
                    }
                    if !tol.close(p.x0, prev.x1) {
                        flag(k, ContinuityKind::PositionJump);
                    }
                }
            }
            if !tol.le(p.t0, p.t1) {
                flag(k, ContinuityKind::NegativeDuration);
            }
            let out = |x: f64| !tol.le(0.0, x) || !tol.le(x, length);
            if out(p.x0) || out(p.x1) {
                flag(k, ContinuityKind::OutOfBounds);
            }

            let allowed = allowed_speed(robot, p.mode);
            let dx = p.x1 - p.x0;
            let reach = allowed * (p.t1 - p.t0).max(0.0);
            let scale = p.x0.abs().max(p.x1.abs()).max(allowed * p.t1.abs());
            let too_fast = dx.abs() > reach + tol.slack(scale);
            let backwards = p.mode == Mode::Search && dx < -tol.slack(scale);
            if too_fast || backwards {
                speed_violations.push(SpeedViolation {
                    robot: robot.id().to_string(),
                    phase: k,
                    required: velocity(p),
                    allowed,
                });
            }
            if p.mode == Mode::Search {
                finishing_time = finishing_time.max(p.t1);
            }
        }
        searched.extend(search_intervals(phases, length));
    }

    let touch = TOUCH_FRACTION * length;
    let mut coverage_gaps = Vec::new();
    let mut cursor = 0.0;
    for (lo, hi) in merge(searched, touch) {
        if lo > cursor + touch {
            coverage_gaps.push((cursor, lo));
        }
        cursor = hi;
    }
    if cursor < length - touch {
        coverage_gaps.push((cursor, length));
    }

    let measured_speed = if finishing_time > 0.0 {
        length / finishing_time
    } else {
        0.0
    };
    Ok(ValidationReport {
        feasible: coverage_gaps.is_empty()
            && speed_violations.is_empty()
            && continuity_violations.is_empty(),
        coverage_gaps,
        speed_violations,
        continuity_violations,
        measured_finishing_time: finishing_time,
        measured_speed,
    })
}

pub fn check_structure(instance: &Instance, schedule: &Schedule) -> Result<StructureReport> {
    check_structure_with(instance, schedule, Tolerance::default())
}

/// Evaluates the four structural properties of optimal offline schedules.
///
/// A robot counts as idle if it has an idle phase or a phase of positive
/// duration in which it covers less than `tol.rel` of what its allowed speed
/// permits. Common finish means every robot's last phase is a search ending
/// at the latest search end time.
pub fn check_structure_with(
    instance: &Instance,
    schedule: &Schedule,
    tol: Tolerance,
) -> Result<StructureReport> {
    let length = instance.length();
    let touch = TOUCH_FRACTION * length;
    let per_robot = resolve(instance, schedule)?;

    let finish = per_robot
        .iter()
        .flat_map(|phases| phases.iter())
        .filter(|p| p.mode == Mode::Search)
        .fold(0.0_f64, |acc, p| acc.max(p.t1));

    let mut contiguous = true;
    let mut common_finish = true;
    let mut utilized = true;
    let mut starts: Vec<(f64, f64)> = Vec::new();

    for (robot, phases) in instance.robots().iter().zip(&per_robot) {
        let pieces = merge(search_intervals(phases, length), touch);
        if pieces.len() > 1 {
            contiguous = false;
        }
        let searched: f64 = pieces.iter().map(|(lo, hi)| hi - lo).sum();
        if searched <= touch {
            utilized = false;
        } else {
            starts.push((pieces[0].0, robot.walk_speed()));
        }

        let stalled = phases.iter().any(|p| {
            let dt = p.t1 - p.t0;
            p.mode == Mode::Idle
                || (dt > tol.slack(p.t1)
                    && p.distance() < tol.rel * allowed_speed(robot, p.mode) * dt)
        });
        let ends_searching = phases
            .last()
            .is_some_and(|p| p.mode == Mode::Search && tol.close(p.t1, finish));
        if stalled || !ends_searching {
            common_finish = false;
        }
    }

    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ordered = starts.windows(2).all(|w| tol.le(w[0].1, w[1].1));

    Ok(StructureReport {
        contiguous_search: contiguous,
        no_idle_and_common_finish: common_finish,
        all_utilized: utilized,
        walk_speed_ordered: ordered,
    })
}
