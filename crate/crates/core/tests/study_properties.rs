mod common;

use std::collections::BTreeSet;

use common::{brute_force_objective, moments};
use coriolis_core::study::{
    balance_groups, balance_groups_with, group_scores, pair_delta, report, standard_pairs,
    BalanceMethod, BalanceOptions, GroupScores, PairSpec, StudentRecord,
};
use proptest::prelude::*;

fn roster(gpas: &[f64]) -> Vec<StudentRecord> {
    gpas.iter()
        .enumerate()
        .map(|(i, &g)| StudentRecord::new(format!("s{i:02}"), g))
        .collect()
}

fn gpa() -> impl Strategy<Value = f64> {
    // two-decimal grades, as they appear on transcripts
    (0u32..=430).prop_map(|c| c as f64 / 100.0)
}

fn roster_case() -> impl Strategy<Value = (Vec<f64>, usize)> {
    prop_oneof![Just(2usize), Just(3usize)].prop_flat_map(|k| {
        (1..=12 / k)
            .prop_flat_map(move |per| prop::collection::vec(gpa(), per * k))
            .prop_map(move |g| (g, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_brute_force((gpas, k) in roster_case()) {
        let got = balance_groups(&roster(&gpas), k).unwrap();
        let oracle = brute_force_objective(&gpas, k, 1.0);
        prop_assert!((got.objective - oracle).abs() <= 1e-12 * (1.0 + oracle),
            "got {} oracle {}", got.objective, oracle);
        prop_assert_eq!(got.method, BalanceMethod::Exact);
    }

    #[test]
    fn assignment_is_a_partition((gpas, k) in roster_case()) {
        let r = roster(&gpas);
        let got = balance_groups(&r, k).unwrap();
        prop_assert_eq!(got.groups.len(), k);
        let mut ids = BTreeSet::new();
        for (i, g) in got.groups.iter().enumerate() {
            prop_assert_eq!(&g.label, &format!("G{}", i + 1));
            prop_assert_eq!(g.members.len(), gpas.len() / k);
            let (m, v) = moments(&g.gpas());
            prop_assert!((g.mean - m).abs() < 1e-12);
            prop_assert!((g.variance - v).abs() < 1e-12);
            for s in &g.members {
                prop_assert!(ids.insert(s.id.clone()));
            }
        }
        prop_assert_eq!(ids.len(), gpas.len());
    }

    #[test]
    fn roster_order_does_not_change_optimum((gpas, k) in roster_case(), rot in 0usize..12) {
        let mut shuffled = gpas.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.reverse();
        let a = balance_groups(&roster(&gpas), k).unwrap().objective;
        let b = balance_groups(&roster(&shuffled), k).unwrap().objective;
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn uniform_shift_does_not_change_optimum((gpas, k) in roster_case()) {
        let lo = gpas.iter().cloned().fold(f64::INFINITY, f64::min);
        let shifted: Vec<f64> = gpas.iter().map(|g| g - lo * 0.5).collect();
        let a = balance_groups(&roster(&gpas), k).unwrap().objective;
        let b = balance_groups(&roster(&shifted), k).unwrap().objective;
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn equal_scores_give_zero_delta(score in 1e-3..1e4f64) {
        let pair = PairSpec::new("p", "G1", "G2", "x").unwrap();
        let scores: GroupScores = [("G1".to_string(), score), ("G2".to_string(), score)].into();
        prop_assert_eq!(pair_delta(&pair, &scores).unwrap(), 0.0);
    }

    #[test]
    fn delta_is_scale_free(c in 1e-3..1e4f64, e in 0.0..1e4f64, s in 1e-2..1e2f64) {
        let pair = PairSpec::new("p", "G1", "G2", "x").unwrap();
        let base: GroupScores = [("G1".to_string(), c), ("G2".to_string(), e)].into();
        let scaled: GroupScores = [("G1".to_string(), c * s), ("G2".to_string(), e * s)].into();
        let d0 = pair_delta(&pair, &base).unwrap();
        let d1 = pair_delta(&pair, &scaled).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-9 * (1.0 + d0.abs()));
        prop_assert!((d0 - 100.0 * (e - c) / c).abs() <= 1e-9 * (1.0 + d0.abs()));
    }
}

#[test]
fn eight_student_instance_balances_exactly() {
    let gpas = [4.0, 3.8, 3.6, 3.4, 3.2, 3.0, 2.8, 2.6];
    let got = balance_groups(&roster(&gpas), 2).unwrap();
    assert!(got.objective < 1e-24, "objective {}", got.objective);
    for g in &got.groups {
        assert!((g.variance - 0.21).abs() < 1e-12, "{}", g.variance);
        assert!((g.mean - 3.3).abs() < 1e-12);
    }
    let mut split: Vec<Vec<f64>> = got
        .groups
        .iter()
        .map(|g| {
            let mut v = g.gpas();
            v.sort_by(|a, b| b.total_cmp(a));
            v
        })
        .collect();
    split.sort_by(|a, b| b[0].total_cmp(&a[0]));
    assert_eq!(
        split,
        vec![vec![4.0, 3.4, 3.0, 2.8], vec![3.8, 3.6, 3.2, 2.6]]
    );
}

#[test]
fn heuristic_path_stays_near_the_exact_optimum() {
    let gpas = [3.9, 3.1, 2.4, 3.7, 2.9, 3.3, 2.2, 4.1, 3.5, 2.7, 3.0, 3.8];
    let exact = balance_groups(&roster(&gpas), 3).unwrap();
    let opts = BalanceOptions {
        exact_limit: 0,
        ..Default::default()
    };
    let heur = balance_groups_with(&roster(&gpas), 3, &opts).unwrap();
    assert_eq!(heur.method, BalanceMethod::Heuristic);
    assert!(heur.objective >= exact.objective - 1e-15);
    assert!(
        heur.objective <= 2.0 * exact.objective + 1e-4,
        "heuristic {} exact {}",
        heur.objective,
        exact.objective
    );
}

#[test]
fn balancing_is_deterministic() {
    let gpas: Vec<f64> = (0..24)
        .map(|i| 2.0 + ((i * 37) % 23) as f64 / 10.0)
        .collect();
    let a = balance_groups(&roster(&gpas), 4).unwrap();
    let b = balance_groups(&roster(&gpas), 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn report_reproduces_constructed_deltas() {
    let gpas: Vec<f64> = (0..8).map(|i| 2.5 + 0.2 * i as f64).collect();
    let mut assignment = balance_groups(&roster(&gpas), 4).unwrap();
    for (g, total) in assignment
        .groups
        .iter_mut()
        .zip([220.0, 230.0, 253.0, 253.0])
    {
        let n = g.members.len() as f64;
        for s in &mut g.members {
            s.quiz_score = Some(total / n);
        }
    }
    let scores = group_scores(&assignment).unwrap();
    let out = report(&assignment, &standard_pairs()).unwrap();
    let ids: Vec<&str> = out.rows.iter().map(|r| r.pair_id.as_str()).collect();
    assert_eq!(ids, ["G1-G4", "G2-G3", "G3-G4", "G1-G3"]);
    let deltas: Vec<f64> = out.rows.iter().map(|r| r.delta_percent).collect();
    for (got, want) in deltas.iter().zip([15.0, 10.0, 0.0, 15.0]) {
        assert!((got - want).abs() < 1e-9, "{deltas:?}");
    }
    assert_eq!(scores["G3"], 253.0);
}
