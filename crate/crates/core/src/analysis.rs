//! Competitive ratio of the online schedule against the offline optimum.
//!
//! Ratios compare finishing times on a unit segment, which is enough because
//! the online schedule is periodic over unit segments.
//!
//! For fleets that share one walk speed the ratio depends only on the search
//! speeds; when they also share the search speed `alpha` it reduces to
//! `f_n(alpha)`. Naming: `alpha_star` is the maximizer of `f_n` and
//! `ratio_star = f_n(alpha_star)` is the worst-case ratio for `n` robots.
//! Some write-ups call the ratio itself `alpha_n`; here that name is avoided.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Robot};
use crate::numeric::{bisect, golden_section_max};
use crate::offline::comb_schedule;
use crate::online::swarm_speed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub t_offline: f64,
    pub t_online: f64,
    pub ratio: f64,
    /// The general guarantee `t_online < 2 t_offline` holds.
    pub bound_2_satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WUniformMax {
    pub n: u32,
    pub alpha_star: f64,
    pub ratio_star: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLimit {
    pub c_star: f64,
    pub limit: f64,
}

/// Online over offline finishing time on the unit segment.
pub fn competitive_ratio(instance: &Instance) -> RatioReport {
    let unit = instance.with_length(1.0).expect("unit length is valid");
    let t_offline = comb_schedule(&unit).optimal_time;
    let t_online = 1.0 / swarm_speed(unit.robots()).swarm_speed;
    let ratio = t_online / t_offline;
    RatioReport {
        t_offline,
        t_online,
        ratio,
        bound_2_satisfied: ratio < 2.0,
    }
}

/// Two robots whose ratio is exactly `2 - epsilon`:
/// `(1 - epsilon/2, 1)` and `(1, (2 - epsilon) / epsilon)`.
pub fn prop1_instance(epsilon: f64) -> Result<Instance> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Instance::new(
        vec![
            Robot::new("r1", 1.0 - epsilon / 2.0, 1.0)?,
            Robot::new("r2", 1.0, (2.0 - epsilon) / epsilon)?,
        ],
        1.0,
    )
}

/// `f_n(alpha) = (alpha (n - 1) + 1) (1 - (1 - alpha)^n) / (alpha n)`.
pub fn f_n(n: u32, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n == 0 {
        return Err(Error::TooFewRobots { min: 1, got: 0 });
    }
    if n == 1 {
        return Ok(1.0);
    }
    Ok(f_n_unchecked(n, alpha))
}

fn f_n_unchecked(n: u32, alpha: f64) -> f64 {
    let nf = f64::from(n);
    (alpha * (nf - 1.0) + 1.0) * (1.0 - (1.0 - alpha).powi(n as i32)) / (alpha * nf)
}

/// Derivative numerator of `f_n`; its unique root in `(0, 1)` is the maximizer.
pub fn critical_residual(n: u32, alpha: f64) -> f64 {
    let nf = f64::from(n);
    (1.0 - alpha).powi(n as i32 - 1) * (1.0 + alpha * (nf - 1.0) + alpha * alpha * nf * (nf - 1.0))
        - 1.0
}

/// Maximizer and maximum of `f_n` over `(0, 1)`.
///
/// The residual rises on `(0, 1/(n+1))` and falls after, so the root lies in
/// `(1/(n+1), 1)`; for `n >= 5` it is known to exceed `1/(n-1)`.
pub fn maximize_f(n: u32) -> Result<WUniformMax> {
    if n < 2 {
        return Err(Error::TooFewRobots {
            min: 2,
            got: n as usize,
        });
    }
    let nf = f64::from(n);
    let lo = if n >= 5 {
        1.0 / (nf - 1.0)
    } else {
        1.0 / (nf + 1.0)
    };
    let alpha_star = bisect(|a| critical_residual(n, a), lo, 1.0 - 1e-12, 1e-12);
    Ok(WUniformMax {
        n,
        alpha_star,
        ratio_star: f_n_unchecked(n, alpha_star),
    })
}

/// One row per requested fleet size.
pub fn wuniform_table(ns: &[u32]) -> Result<Vec<WUniformMax>> {
    ns.iter().map(|&n| maximize_f(n)).collect()
}

/// Large-fleet limit of the worst ratio: the maximum of
/// `(1 + 1/c)(1 - e^{-c})` over `c > 0`.
pub fn asymptotic_limit() -> AsymptoticLimit {
    let h = |c: f64| (1.0 + 1.0 / c) * (1.0 - (-c).exp());
    let (c_star, limit) = golden_section_max(h, 0.1, 10.0, 1e-10);
    AsymptoticLimit { c_star, limit }
}

/// Ratio for a fleet with walk speed 1 and the given search speeds:
/// `(1 - prod(1 - s_k)) (1 + 1 / sum(s_k / (1 - s_k)))`.
pub fn wuniform_ratio_bound(search_speeds: &[f64]) -> Result<f64> {
    if search_speeds.is_empty() {
        return Err(Error::EmptyFleet);
    }
    let mut missed = 1.0;
    let mut odds = 0.0;
    for (index, &s) in search_speeds.iter().enumerate() {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::SpeedOutOfRange { index, value: s });
        }
        missed *= 1.0 - s;
        odds += s / (1.0 - s);
    }
    Ok((1.0 - missed) * (1.0 + 1.0 / odds))
}
