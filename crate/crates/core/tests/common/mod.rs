#![allow(dead_code)]

use beachcomb::Instance;
use proptest::prelude::*;

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

/// `(search, walk)` pairs with walk speeds log-uniform in `[10^lo, 10^hi]`.
pub fn speeds(max_n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((lo..=hi, 1e-6..(1.0 - 1e-6)), 1..=max_n).prop_map(|v| {
        v.into_iter()
            .map(|(e, u): (f64, f64)| {
                let w = 10f64.powf(e);
                (u * w, w)
            })
            .collect()
    })
}

/// Speeds drawn from (0, 1] with search below walk.
pub fn unit_speeds(max_n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((1e-3..=1.0f64, 1e-6..(1.0 - 1e-6)), 1..=max_n)
        .prop_map(|v| v.into_iter().map(|(w, u)| (u * w, w)).collect())
}

pub fn instance(speeds: &[(f64, f64)], length: f64) -> Instance {
    Instance::from_speeds(speeds, length).unwrap()
}
