//! Online scheduling when the segment length is unknown (LeapFrog, also
//! published under the name OnlineSearch).
//!
//! A subset of the robots, the swarm, moves in lockstep: every swarm robot
//! passes each integer point at the same time. Within every unit segment each
//! member searches a fixed slice and walks the rest, so the schedule is
//! periodic and its speed does not depend on where the segment ends. Robots
//! too slow to keep up with the swarm stay at the origin.
//!
//! The semi-line is represented by a finite integer horizon.

use crate::error::{Error, Result};
use crate::model::{Instance, Mode, Phase, Robot, Schedule, SwarmPlan, Timeline, Tolerance};

/// A LeapFrog run over `[0, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeapFrogSchedule {
    pub plan: SwarmPlan,
    pub horizon: u64,
    pub schedule: Schedule,
    /// Time the swarm needs per unit segment, `1 / swarm_speed`.
    pub unit_time: f64,
}

/// Indices sorted by non-increasing walk speed, then non-increasing search
/// speed, then input index.
pub fn swarm_order(robots: &[Robot]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..robots.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&robots[a], &robots[b]);
        rb.walk_speed()
            .total_cmp(&ra.walk_speed())
            .then(rb.search_speed().total_cmp(&ra.search_speed()))
            .then(a.cmp(&b))
    });
    order
}

struct Admission {
    order: Vec<usize>,
    admitted: usize,
    trace: Vec<f64>,
}

fn admit(robots: &[Robot]) -> Admission {
    let tol = Tolerance::default();
    let order = swarm_order(robots);
    let (mut speed, mut num, mut den) = (0.0_f64, 0.0_f64, 1.0_f64);
    let mut trace = Vec::new();
    for &i in &order {
        let r = &robots[i];
        // A walk speed within tolerance of the swarm speed counts as equal:
        // such a robot would contribute a vanishing share and is excluded.
        if tol.le(r.walk_speed(), speed) {
            break;
        }
        let inv_delta = 1.0 / r.delta();
        num += inv_delta;
        den += inv_delta / r.walk_speed();
        speed = num / den;
        trace.push(speed);
    }
    Admission {
        admitted: trace.len(),
        order,
        trace,
    }
}

/// Swarm speed after each admission, in admission order.
pub fn swarm_speed_trace(robots: &[Robot]) -> Vec<f64> {
    admit(robots).trace
}

/// Chooses the swarm, its speed and each member's share of a unit segment.
///
/// Robots are considered fastest walker first; a robot joins while the
/// current swarm speed is below its walk speed (by more than the default
/// relative tolerance), and the first rejection ends the loop. Member `i`
/// gets `c_i = (1/S - 1/w_i) / delta_i`.
pub fn swarm_speed(robots: &[Robot]) -> SwarmPlan {
    let Admission {
        order,
        admitted,
        trace,
    } = admit(robots);
    let speed = *trace.last().expect("first robot is always admitted");
    let swarm = order[..admitted].to_vec();
    let excluded = order[admitted..].to_vec();
    let deltas: Vec<f64> = swarm.iter().map(|&i| robots[i].delta()).collect();
    let contributions = swarm
        .iter()
        .zip(&deltas)
        .map(|(&i, d)| (1.0 / speed - 1.0 / robots[i].walk_speed()) / d)
        .collect();
    SwarmPlan {
        swarm,
        excluded,
        swarm_speed: speed,
        contributions,
        deltas,
    }
}

/// LeapFrog over `[0, instance.length]`; the length must be a positive integer.
pub fn leapfrog_schedule(instance: &Instance) -> Result<LeapFrogSchedule> {
    let length = instance.length();
    if length.fract() != 0.0 || length < 1.0 || length > u32::MAX as f64 {
        return Err(Error::NonIntegerHorizon(length));
    }
    Ok(leapfrog_with_horizon(instance.robots(), length as u64))
}

/// LeapFrog for `robots` over `[0, horizon]`.
pub fn leapfrog_with_horizon(robots: &[Robot], horizon: u64) -> LeapFrogSchedule {
    assert!(horizon > 0, "horizon must be positive");
    let plan = swarm_speed(robots);
    let unit_time = 1.0 / plan.swarm_speed;
    let finishing_time = horizon as f64 * unit_time;

    // Slice boundaries inside a unit segment, pinned to 1 at the end.
    let mut bounds = Vec::with_capacity(plan.swarm.len() + 1);
    bounds.push(0.0);
    let mut acc = 0.0;
    for c in &plan.contributions[..plan.contributions.len() - 1] {
        acc += c;
        bounds.push(acc);
    }
    bounds.push(1.0);

    let mut timelines: Vec<Timeline> = robots.iter().map(|r| Timeline::new(r.id())).collect();
    for (k, &i) in plan.swarm.iter().enumerate() {
        let r = &robots[i];
        let tl = &mut timelines[i];
        tl.push_move(Mode::Walk, bounds[k], r.walk_speed());
        for m in 0..horizon {
            let base = m as f64;
            tl.push_move(Mode::Search, base + bounds[k + 1], r.search_speed());
            let next = if m + 1 < horizon {
                (m + 1) as f64 + bounds[k]
            } else {
                horizon as f64
            };
            tl.push_move(Mode::Walk, next, r.walk_speed());
        }
    }
    for &i in &plan.excluded {
        timelines[i].phases.push(Phase {
            mode: Mode::Idle,
            t0: 0.0,
            t1: finishing_time,
            x0: 0.0,
            x1: 0.0,
        });
    }

    LeapFrogSchedule {
        plan,
        horizon,
        schedule: Schedule {
            robots: timelines,
            finishing_time,
        },
        unit_time,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fleet(speeds: &[(f64, f64)]) -> Vec<Robot> {
        Instance::from_speeds(speeds, 1.0)
            .unwrap()
            .robots()
            .to_vec()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn single_robot_swarm() {
        let plan = swarm_speed(&fleet(&[(0.5, 1.0)]));
        assert_eq!(plan.swarm, vec![0]);
        assert!(plan.excluded.is_empty());
        assert!(close(plan.swarm_speed, 0.5));
        assert!(close(plan.contributions[0], 1.0));
    }

    #[test]
    fn proposition_fleet_excludes_slow_walker() {
        let plan = swarm_speed(&fleet(&[(1.0, 3.0), (0.75, 1.0)]));
        assert_eq!(plan.swarm, vec![0]);
        assert_eq!(plan.excluded, vec![1]);
        assert!(close(plan.swarm_speed, 1.0));
    }

    #[test]
    fn three_robot_swarm() {
        let robots = fleet(&[(0.6, 3.0), (0.4, 2.0), (0.2, 1.0)]);
        let trace = swarm_speed_trace(&robots);
        assert!(close(trace[0], 0.6));
        assert!(close(trace[1], 5.0 / 6.0));
        assert!(close(trace[2], 6.0 / 7.0));
        let plan = swarm_speed(&robots);
        assert_eq!(plan.swarm, vec![0, 1, 2]);
        for (c, want) in plan
            .contributions
            .iter()
            .zip([5.0 / 8.0, 1.0 / 3.0, 1.0 / 24.0])
        {
            assert!(close(*c, want), "{c} vs {want}");
        }
        assert!(close(plan.contributions.iter().sum(), 1.0));
    }

    #[test]
    fn swarm_order_is_by_descending_walk_speed() {
        let robots = fleet(&[(0.2, 1.0), (0.6, 3.0), (0.4, 3.0), (0.4, 2.0)]);
        assert_eq!(swarm_order(&robots), vec![1, 2, 3, 0]);
    }

    #[test]
    fn single_robot_searches_continuously() {
        let inst = Instance::from_speeds(&[(0.5, 1.0)], 3.0).unwrap();
        let lf = leapfrog_schedule(&inst).unwrap();
        let phases = &lf.schedule.robots[0].phases;
        assert_eq!(phases.len(), 1);
        assert_eq!(phases[0].mode, Mode::Search);
        assert_eq!((phases[0].x0, phases[0].x1), (0.0, 3.0));
        assert!(close(lf.schedule.finishing_time, 6.0));
    }

    #[test]
    fn three_robot_unit_run() {
        let inst = Instance::from_speeds(&[(0.6, 3.0), (0.4, 2.0), (0.2, 1.0)], 1.0).unwrap();
        let lf = leapfrog_schedule(&inst).unwrap();
        assert!(close(lf.schedule.finishing_time, 7.0 / 6.0));
        let slow = &lf.schedule.robots[2].phases;
        assert_eq!(slow.len(), 2);
        assert_eq!(slow[0].mode, Mode::Walk);
        assert!(close(slow[0].x1, 23.0 / 24.0));
        assert_eq!(slow[1].mode, Mode::Search);
        assert_eq!(slow[1].x1, 1.0);
        for tl in &lf.schedule.robots {
            assert!(
                close(tl.end_time(), 7.0 / 6.0),
                "{}: {}",
                tl.id,
                tl.end_time()
            );
            assert_eq!(tl.end_position(), 1.0);
        }
    }

    #[test]
    fn excluded_robot_idles() {
        let inst = Instance::from_speeds(&[(1.0, 3.0), (0.75, 1.0)], 1.0).unwrap();
        let lf = leapfrog_schedule(&inst).unwrap();
        assert!(close(lf.schedule.finishing_time, 1.0));
        let idle = &lf.schedule.robots[1].phases;
        assert_eq!(idle.len(), 1);
        assert_eq!(idle[0].mode, Mode::Idle);
        assert_eq!(idle[0].t1, lf.schedule.finishing_time);
    }

    #[test]
    fn rejects_fractional_horizon() {
        let inst = Instance::from_speeds(&[(0.5, 1.0)], 2.5).unwrap();
        assert_eq!(leapfrog_schedule(&inst), Err(Error::NonIntegerHorizon(2.5)));
        let inst = Instance::from_speeds(&[(0.5, 1.0)], 0.5).unwrap();
        assert!(leapfrog_schedule(&inst).is_err());
    }

    #[test]
    fn finishing_time_scales_exactly_with_horizon() {
        let robots = fleet(&[(0.6, 3.0), (0.4, 2.0), (0.2, 1.0)]);
        let one = leapfrog_with_horizon(&robots, 1).schedule.finishing_time;
        for h in [2, 3, 7, 100] {
            let t = leapfrog_with_horizon(&robots, h).schedule.finishing_time;
            assert_eq!(t, h as f64 * one);
        }
    }
}
