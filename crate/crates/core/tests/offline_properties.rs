mod common;

use beachcomb::model::{
    canonical_offline_order, offline_order, Instance, Mode, Schedule, Timeline,
};
use beachcomb::offline::{
    closed_form_unit_lengths, comb_schedule, search_power, unit_search_lengths,
};
use beachcomb::oracle::{best_order_bruteforce, optimal_orders, ordered_search_power};
use beachcomb::verify::{check_structure, validate};
use common::{instance, rel_close, speeds, unit_speeds};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn triple_agreement(sp in unit_speeds(64)) {
        let inst = instance(&sp, 1.0);
        let g = search_power(inst.robots());
        let order = canonical_offline_order(&inst);
        let y: f64 = unit_search_lengths(order.iter().map(|&i| &inst.robots()[i])).iter().sum();
        let sol = comb_schedule(&inst);
        let report = validate(&inst, &sol.schedule).unwrap();
        prop_assert!(report.feasible, "{report:?}");
        prop_assert!(rel_close(g, y, 1e-9), "{g} vs {y}");
        prop_assert!(rel_close(g, report.measured_speed, 1e-9));
        prop_assert!(rel_close(g, sol.optimal_speed, 1e-9));
        prop_assert!(rel_close(sol.optimal_speed, inst.length() / sol.optimal_time, 1e-12));
    }

    #[test]
    fn closed_form_matches_recurrence(sp in unit_speeds(64)) {
        let inst = instance(&sp, 1.0);
        let ordered: Vec<_> = canonical_offline_order(&inst).into_iter().map(|i| &inst.robots()[i]).collect();
        let rec = unit_search_lengths(ordered.iter().copied());
        let closed = closed_form_unit_lengths(ordered.iter().copied());
        let total: f64 = rec.iter().sum();
        for (a, b) in rec.iter().zip(&closed) {
            prop_assert!(rel_close(*a, *b, 1e-9), "{a} vs {b} (total {total})");
        }
    }

    #[test]
    fn comb_has_optimal_structure(sp in speeds(64, -2.0, 2.0)) {
        let inst = instance(&sp, 1.0);
        let sol = comb_schedule(&inst);
        prop_assert!(sol.lengths.iter().all(|&c| c > 0.0));
        prop_assert!(rel_close(sol.lengths.iter().sum(), 1.0, 1e-9));
        let s = check_structure(&inst, &sol.schedule).unwrap();
        prop_assert!(s.contiguous_search && s.no_idle_and_common_finish && s.all_utilized && s.walk_speed_ordered, "{s:?}");
    }

    #[test]
    fn length_and_speed_scaling(sp in speeds(16, -1.0, 1.0), length in 0.01f64..100.0, gamma in 0.1f64..10.0) {
        let unit = comb_schedule(&instance(&sp, 1.0));
        let long = comb_schedule(&instance(&sp, length));
        prop_assert!(rel_close(long.optimal_time, length * unit.optimal_time, 1e-12));
        for (a, b) in unit.schedule.robots.iter().zip(&long.schedule.robots) {
            for (p, q) in a.phases.iter().zip(&b.phases) {
                prop_assert!((q.x1 - length * p.x1).abs() <= 1e-9 * length);
                prop_assert!((q.t1 - length * p.t1).abs() <= 1e-9 * long.optimal_time);
            }
        }
        let fast: Vec<(f64, f64)> = sp.iter().map(|&(s, w)| (s * gamma, w * gamma)).collect();
        let scaled = comb_schedule(&instance(&fast, 1.0));
        prop_assert!(rel_close(scaled.optimal_time, unit.optimal_time / gamma, 1e-12));
    }

    #[test]
    fn canonical_order_is_an_idempotent_permutation(sp in speeds(32, -2.0, 2.0)) {
        let inst = instance(&sp, 1.0);
        let order = canonical_offline_order(&inst);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..inst.len()).collect::<Vec<_>>());
        let reordered: Vec<_> = order.iter().map(|&i| inst.robots()[i].clone()).collect();
        prop_assert_eq!(offline_order(&reordered), (0..inst.len()).collect::<Vec<_>>());
    }

    #[test]
    fn equal_walk_speeds_can_be_swapped(sp in speeds(12, -1.0, 1.0), pick in 0usize..12, u in 1e-3f64..0.999) {
        // Give a second robot the same walk speed as a chosen one, then compare both
        // orders of the tied pair.
        let mut sp = sp;
        let k = pick % sp.len();
        let w = sp[k].1;
        sp.push((u * w, w));
        let inst = instance(&sp, 1.0);
        let order = canonical_offline_order(&inst);
        let a = order.iter().position(|&i| i == k).unwrap();
        let b = order.iter().position(|&i| i == sp.len() - 1).unwrap();
        let mut swapped = order.clone();
        swapped.swap(a, b);
        let base = ordered_search_power(inst.robots(), &order).unwrap();
        let other = ordered_search_power(inst.robots(), &swapped).unwrap();
        prop_assert!(rel_close(base, other, 1e-12), "{base} vs {other}");
    }

    #[test]
    fn canonical_order_beats_every_permutation(sp in speeds(7, -1.0, 1.0)) {
        let inst = instance(&sp, 1.0);
        let canonical = canonical_offline_order(&inst);
        let g = search_power(inst.robots());
        let best = best_order_bruteforce(inst.robots()).unwrap();
        prop_assert!(rel_close(best.speed, g, 1e-9));
        prop_assert!(rel_close(ordered_search_power(inst.robots(), &canonical).unwrap(), g, 1e-12));
        // Every order that ties the optimum places the same walk speeds at each position.
        let walk = |p: &[usize]| -> Vec<f64> { p.iter().map(|&i| inst.robots()[i].walk_speed()).collect() };
        for tie in optimal_orders(inst.robots(), 1e-12).unwrap() {
            prop_assert_eq!(walk(&tie.permutation), walk(&canonical));
        }
    }

    #[test]
    fn perturbing_a_piece_costs_time(sp in speeds(10, -1.0, 1.0), pick in 0usize..100) {
        prop_assume!(sp.len() >= 2);
        let inst = instance(&sp, 1.0);
        let sol = comb_schedule(&inst);
        let n = sol.lengths.len();
        let (grow, shrink) = (pick % n, (pick / n + 1 + pick % n) % n);
        prop_assume!(grow != shrink);
        let mut lengths = sol.lengths.clone();
        let delta = 0.01 * lengths[grow];
        prop_assume!(lengths[shrink] > delta);
        lengths[grow] += delta;
        lengths[shrink] -= delta;
        let sched = schedule_from_lengths(&inst, &sol.order, &lengths);
        let report = validate(&inst, &sched).unwrap();
        prop_assert!(!report.speed_violations.is_empty() || report.measured_finishing_time > sol.optimal_time);
    }
}

/// Comb-shaped schedule for arbitrary piece lengths, robots at full speed.
fn schedule_from_lengths(inst: &Instance, order: &[usize], lengths: &[f64]) -> Schedule {
    let mut robots: Vec<Timeline> = inst
        .robots()
        .iter()
        .map(|r| Timeline::new(r.id()))
        .collect();
    let mut start = 0.0;
    for (k, &i) in order.iter().enumerate() {
        let r = &inst.robots()[i];
        let end = if k + 1 == order.len() {
            inst.length()
        } else {
            start + lengths[k]
        };
        robots[i].push_move(Mode::Walk, start, r.walk_speed());
        robots[i].push_move(Mode::Search, end, r.search_speed());
        start = end;
    }
    let finishing_time = robots.iter().map(|t| t.end_time()).fold(0.0, f64::max);
    Schedule {
        robots,
        finishing_time,
    }
}

#[test]
fn tied_walk_order_has_same_power() {
    let inst = instance(&[(0.3, 1.0), (0.2, 1.0)], 1.0);
    assert_eq!(canonical_offline_order(&inst), vec![1, 0]);
    let a = ordered_search_power(inst.robots(), &[1, 0]).unwrap();
    let b = ordered_search_power(inst.robots(), &[0, 1]).unwrap();
    assert!(rel_close(a, b, 1e-12));
}

#[test]
fn comb_example_verifies() {
    let inst = instance(&[(0.5, 1.0), (0.5, 2.0)], 1.0);
    let sol = comb_schedule(&inst);
    let report = validate(&inst, &sol.schedule).unwrap();
    assert!(report.feasible);
    assert!(rel_close(report.measured_speed, 0.875, 1e-12));
    assert!(rel_close(report.measured_finishing_time, 8.0 / 7.0, 1e-12));
}

#[test]
fn oracle_identity_matches_search_power() {
    let inst = instance(&[(0.5, 1.0), (0.5, 2.0)], 1.0);
    assert_eq!(
        ordered_search_power(inst.robots(), &[0, 1]).unwrap(),
        search_power(inst.robots())
    );
}

#[test]
fn equal_walk_speeds_are_order_free() {
    let inst: Instance = instance(&[(0.1, 1.0), (0.5, 1.0), (0.7, 1.0), (0.3, 1.0)], 1.0);
    let id = ordered_search_power(inst.robots(), &[0, 1, 2, 3]).unwrap();
    for p in [[3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]] {
        assert!(rel_close(
            ordered_search_power(inst.robots(), &p).unwrap(),
            id,
            1e-12
        ));
    }
}
