use std::collections::BTreeMap;

use katolab::{run_sweep, run_verify, Record, Report, SweepAxis, TrialPlan};
use katolab_core::{Context, InequalityCheck};
use proptest::prelude::*;

fn plan(dims: Vec<usize>) -> TrialPlan {
    TrialPlan {
        dims,
        trials_per_cell: 4,
        checkers: ["trace-kato", "sandwich", "normal-series", "basis-inf-bound"].map(String::from).to_vec(),
        ..TrialPlan::default()
    }
}

#[test]
fn report_json_round_trips() {
    let r = run_verify(&plan(vec![1, 3])).unwrap();
    let back = Report::from_json(&r.to_json().unwrap()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json().unwrap(), r.to_json().unwrap());
}

#[test]
fn aggregates_are_recomputable() {
    let r = run_verify(&plan(vec![2, 4])).unwrap();
    let skipped: BTreeMap<String, usize> = r.aggregates.iter().map(|a| (a.checker.clone(), a.skipped)).collect();
    let order = r.plan.checker_list();
    assert_eq!(Report::aggregate(&r.records, &r.errors, &skipped, &order), r.aggregates);
    assert_eq!(r.aggregates.iter().map(|a| a.checks).sum::<usize>(), r.records.len());
}

#[test]
fn record_count_grows_with_dimensions() {
    let mut last = 0;
    for k in 1..=5 {
        let r = run_verify(&plan((1..=k).collect())).unwrap();
        assert!(r.records.len() > last);
        last = r.records.len();
    }
    let table = run_sweep(&plan(vec![1, 2, 3]), SweepAxis::Dim).unwrap();
    assert_eq!(table.rows.len(), 4 * 3);
}

#[test]
fn records_carry_seed_and_stream() {
    let r = run_verify(&plan(vec![2])).unwrap();
    assert!(r.records.iter().all(|rec| rec.context.seed == Some(42) && rec.context.stream.is_some()));
}

proptest! {
    #[test]
    fn any_float_survives_serialization(lhs in prop::num::f64::ANY, rhs in prop::num::f64::ANY) {
        let rec = Record::new("kato", InequalityCheck::new("kato", lhs, rhs).with_context(Context::new(1)));
        let text = serde_json::to_string(&rec).unwrap();
        let back: Record = serde_json::from_str(&text).unwrap();
        for (a, b) in [(rec.lhs, back.lhs), (rec.rhs, back.rhs), (rec.slack, back.slack), (rec.rel_slack, back.rel_slack)] {
            prop_assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
        }
    }
}
