//! Brute-force certificates for the solvers' optimality claims.
//!
//! Everything here is evaluated straight from the defining sums and products
//! and shares no code with the offline solver.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::analysis::wuniform_ratio_bound;
use crate::error::{Error, Result};
use crate::model::Robot;

/// Largest fleet the exhaustive search will enumerate.
pub const MAX_BRUTE_FORCE: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingResult {
    /// Robot indices from the origin outwards.
    pub permutation: Vec<usize>,
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMax {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Speed reached when the robots search consecutive pieces in exactly the
/// order `permutation` and all finish together:
/// `sum_k s_{p(k)} prod_{j>k} (1 - s_{p(j)} / w_{p(j)})`.
pub fn ordered_search_power(robots: &[Robot], permutation: &[usize]) -> Result<f64> {
    let n = robots.len();
    let mut seen = vec![false; n];
    if permutation.len() != n
        || !permutation
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::InvalidPermutation(n));
    }
    let mut total = 0.0;
    for k in 0..n {
        let mut product = 1.0;
        for &j in &permutation[k + 1..] {
            product *= 1.0 - robots[j].search_speed() / robots[j].walk_speed();
        }
        total += robots[permutation[k]].search_speed() * product;
    }
    Ok(total)
}

/// Tries all `n!` orders in lexicographic order and keeps the first best one.
pub fn best_order_bruteforce(robots: &[Robot]) -> Result<OrderingResult> {
    let n = robots.len();
    if n == 0 {
        return Err(Error::EmptyFleet);
    }
    if n > MAX_BRUTE_FORCE {
        return Err(Error::FleetTooLarge {
            max: MAX_BRUTE_FORCE,
            got: n,
        });
    }
    let mut best: Option<OrderingResult> = None;
    for permutation in (0..n).permutations(n) {
        let speed = ordered_search_power(robots, &permutation)?;
        if best.as_ref().is_none_or(|b| speed > b.speed) {
            best = Some(OrderingResult { permutation, speed });
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// All orders attaining the maximum speed to within `rel` relative.
pub fn optimal_orders(robots: &[Robot], rel: f64) -> Result<Vec<OrderingResult>> {
    let best = best_order_bruteforce(robots)?;
    let n = robots.len();
    let mut ties = Vec::new();
    for permutation in (0..n).permutations(n) {
        let speed = ordered_search_power(robots, &permutation)?;
        if speed >= best.speed * (1.0 - rel) {
            ties.push(OrderingResult { permutation, speed });
        }
    }
    Ok(ties)
}

/// Exhaustive grid maximization of the shared-walk-speed ratio over
/// search speeds `{step, 2 step, ...} < 1` in each of `n` coordinates.
pub fn grid_max_wuniform(n: u32, step: f64) -> Result<GridMax> {
    if !(2..=3).contains(&n) {
        return Err(Error::GridDimension(n));
    }
    if !(1e-3..=0.1).contains(&step) {
        return Err(Error::GridStepOutOfRange(step));
    }
    let axis: Vec<f64> = (1..)
        .map(|k| k as f64 * step)
        .take_while(|&x| x < 1.0 - step / 2.0)
        .collect();
    let mut best = GridMax {
        point: Vec::new(),
        value: f64::NEG_INFINITY,
    };
    let mut consider = |point: &[f64]| -> Result<()> {
        let value = wuniform_ratio_bound(point)?;
        if value > best.value {
            best = GridMax {
                point: point.to_vec(),
                value,
            };
        }
        Ok(())
    };
    for &a in &axis {
        for &b in &axis {
            if n == 2 {
                consider(&[a, b])?;
            } else {
                for &c in &axis {
                    consider(&[a, b, c])?;
                }
            }
        }
    }
    Ok(best)
}
