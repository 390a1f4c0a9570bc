//! Optimal offline scheduling when the segment length is known.
//!
//! In an optimal schedule the robots, sorted by non-decreasing walk speed,
//! split the segment into consecutive pieces. Robot `k` walks past the pieces
//! of robots `1..k` and then searches its own, and every robot finishes at the
//! same moment. The piece lengths follow a linear recurrence, so the whole
//! solution is an `O(n log n)` sort followed by one linear pass.

use crate::error::{Error, Result};
use crate::model::{offline_order, Instance, Mode, Robot, Schedule, Timeline};

/// The optimal offline schedule and the quantities that define it.
#[derive(Debug, Clone, PartialEq)]
pub struct OfflineSolution {
    /// Instance indices in canonical offline order.
    pub order: Vec<usize>,
    /// Length searched by each robot, listed in `order`.
    pub lengths: Vec<f64>,
    pub optimal_time: f64,
    pub optimal_speed: f64,
    pub schedule: Schedule,
}

/// Lengths each robot searches when the whole fleet works for one time unit
/// and all robots finish together.
///
/// `ordered` must already be in canonical offline order. With `T = 1`:
/// `y_1 = s_1` and
/// `y_k = (s_k / w_k) * ((w_{k-1} / s_{k-1} - 1) * y_{k-1} + (w_k - w_{k-1}))`.
pub fn unit_search_lengths<'a, I>(ordered: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a Robot>,
{
    let mut lengths = Vec::new();
    // (w_{k-1} / s_{k-1} - 1) * y_{k-1}, and w_{k-1}; both zero before the first robot.
    let mut carry = 0.0;
    let mut prev_walk = 0.0;
    for robot in ordered {
        let (s, w) = (robot.search_speed(), robot.walk_speed());
        let y = if lengths.is_empty() {
            s
        } else {
            s / w * (carry + (w - prev_walk))
        };
        carry = (w / s - 1.0) * y;
        prev_walk = w;
        lengths.push(y);
    }
    lengths
}

/// Closed form of the per-unit-time lengths:
/// `y_k = s_k - (s_k / w_k) * sum_{r<k} s_r prod_{r<j<k} (1 - s_j / w_j)`.
///
/// Quadratic in the fleet size; kept as a cross-check of the recurrence.
pub fn closed_form_unit_lengths<'a, I>(ordered: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a Robot>,
{
    let robots: Vec<&Robot> = ordered.into_iter().collect();
    (0..robots.len())
        .map(|k| {
            let (sk, wk) = (robots[k].search_speed(), robots[k].walk_speed());
            let mut sum = 0.0;
            for r in 0..k {
                let mut prod = 1.0;
                for robot in &robots[r + 1..k] {
                    prod *= 1.0 - robot.search_speed() / robot.walk_speed();
                }
                sum += robots[r].search_speed() * prod;
            }
            sk - sk / wk * sum
        })
        .collect()
}

/// Search power of a fleet: the optimal offline speed.
///
/// Sorts by walk speed and evaluates
/// `sum_k s_k prod_{j>k} (1 - s_j / w_j)` with the nested form
/// `g <- g * (1 - s_k / w_k) + s_k`.
pub fn search_power(robots: &[Robot]) -> f64 {
    offline_order(robots).into_iter().fold(0.0, |g, i| {
        let r = &robots[i];
        g * (1.0 - r.search_speed() / r.walk_speed()) + r.search_speed()
    })
}

/// Optimal speed of a fleet sharing one walk speed: `w * (1 - prod(1 - s_i / w))`.
pub fn wuniform_speed(search_speeds: &[f64], walk_speed: f64) -> Result<f64> {
    if search_speeds.is_empty() {
        return Err(Error::EmptyFleet);
    }
    if !(walk_speed > 0.0 && walk_speed.is_finite()) {
        return Err(Error::NonPositiveSpeed {
            index: 0,
            id: "r1".into(),
            field: "walk_speed",
            value: walk_speed,
        });
    }
    let mut missed = 1.0;
    for (index, &s) in search_speeds.iter().enumerate() {
        let id = format!("r{}", index + 1);
        if s.is_nan() || s <= 0.0 {
            return Err(Error::NonPositiveSpeed {
                index,
                id,
                field: "search_speed",
                value: s,
            });
        }
        if s >= walk_speed {
            return Err(Error::SearchNotSlowerThanWalk {
                index,
                id,
                search: s,
                walk: walk_speed,
            });
        }
        missed *= 1.0 - s / walk_speed;
    }
    Ok(walk_speed * (1.0 - missed))
}

/// Runs the Comb algorithm: optimal partition plus the explicit schedule.
pub fn comb_schedule(instance: &Instance) -> OfflineSolution {
    let robots = instance.robots();
    let length = instance.length();
    let order = offline_order(robots);
    let unit = unit_search_lengths(order.iter().map(|&i| &robots[i]));
    let speed: f64 = unit.iter().sum();
    let lengths: Vec<f64> = unit.iter().map(|y| length * y / speed).collect();

    // Boundaries between consecutive pieces; the last one is pinned to the
    // segment end so rounding in the prefix sums never leaves a sliver.
    let mut bounds = Vec::with_capacity(lengths.len() + 1);
    bounds.push(0.0);
    let mut acc = 0.0;
    for c in &lengths[..lengths.len() - 1] {
        acc += c;
        bounds.push(acc);
    }
    bounds.push(length);

    let mut timelines: Vec<Timeline> = robots.iter().map(|r| Timeline::new(r.id())).collect();
    for (k, &i) in order.iter().enumerate() {
        let r = &robots[i];
        let tl = &mut timelines[i];
        tl.push_move(Mode::Walk, bounds[k], r.walk_speed());
        tl.push_move(Mode::Search, bounds[k + 1], r.search_speed());
    }

    let optimal_time = length / speed;
    OfflineSolution {
        order,
        lengths,
        optimal_time,
        optimal_speed: speed,
        schedule: Schedule {
            robots: timelines,
            finishing_time: optimal_time,
        },
    }
}
