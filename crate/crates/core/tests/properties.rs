mod common;

use common::*;
use lineup_core::axioms::{is_non_wasteful, is_score_pareto_optimal, lift_counterexample};
use lineup_core::datagen::{generate_one, GenModel, GenSpec};
use lineup_core::matching::SearchBudget;
use lineup_core::metrics::{bundle, gini};
use lineup_core::model::{election_to_csv, election_to_json, parse_election, Election, Score};
use lineup_core::rules::{apply_rule, RuleId};
use proptest::prelude::*;

fn budget() -> SearchBudget {
    SearchBudget::with_cap(1_000_000)
}

fn solve(rule: &RuleId, e: &Election) -> Set {
    set(&apply_rule(rule, e, &budget()).unwrap())
}

/// Elections with `q <= m <= max` and integer scores in `0..=top`.
fn elections(max: usize, top: i64) -> impl Strategy<Value = Election> {
    (1..=max)
        .prop_flat_map(move |q| (Just(q), q..=max))
        .prop_flat_map(move |(q, m)| prop::collection::vec(prop::collection::vec(0..=top, q), m))
        .prop_map(|rows| {
            election_from(
                rows.into_iter()
                    .map(|r| r.into_iter().map(Score::from_integer).collect())
                    .collect(),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_named_rule_matches_brute_force(e in elections(5, 3)) {
        for rule in &RuleId::NAMED {
            prop_assert_eq!(solve(rule, &e), winners(rule, &e), "{}", rule);
        }
    }

    #[test]
    fn symmetric_rules_commute_with_position_relabelling(e in elections(5, 4), seed in any::<u64>()) {
        let q = e.num_positions();
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by_key(|&p| (seed.rotate_left(p as u32 * 7) ^ p as u64, p));
        let permuted = e.permute_positions(&order).unwrap();
        for rule in [RuleId::Utilitarian, RuleId::Egalitarian, RuleId::Harmonic, RuleId::InverseHarmonic, RuleId::EgalitarianMaxSum, RuleId::SeqMaxFirst, RuleId::SeqMinFirst] {
            let mapped: Set = solve(&rule, &e).into_iter().map(|lu| order.iter().map(|&p| lu[p]).collect()).collect();
            prop_assert_eq!(solve(&rule, &permuted), mapped, "{}", rule);
        }
    }

    #[test]
    fn sum_sensitive_winners_are_efficient(e in elections(6, 3)) {
        for rule in [RuleId::Utilitarian, RuleId::Harmonic, RuleId::EgalitarianMaxSum] {
            for lu in apply_rule(&rule, &e, &budget()).unwrap().iter() {
                prop_assert!(is_score_pareto_optimal(&e, lu) && pareto_optimal(&e, lu.indices()));
                prop_assert!(is_non_wasteful(&e, lu));
            }
        }
    }

    #[test]
    fn documents_round_trip(e in elections(6, 9)) {
        let halved = e.map_scores(|s| s / &Score::from_integer(4));
        prop_assert_eq!(parse_election(&election_to_json(&halved)).unwrap(), halved.clone());
        prop_assert_eq!(parse_election(&election_to_csv(&halved)).unwrap(), halved);
    }

    #[test]
    fn lifting_keeps_original_winners_on_the_original_positions(e in elections(4, 3), extra in 0usize..3, split in 0usize..3) {
        let k = e.num_positions() + extra;
        let split = split.min(extra);
        let lifted = lift_counterexample(&e, k, split).unwrap();
        prop_assert_eq!(lifted.num_positions(), k);
        let q = e.num_positions();
        let restricted: Set = solve(&RuleId::Utilitarian, &lifted).into_iter().map(|lu| lu[..q].to_vec()).collect();
        prop_assert_eq!(restricted, solve(&RuleId::Utilitarian, &e));
    }

    #[test]
    fn gini_is_scale_free_and_bounded(x in prop::collection::vec(0.0f64..100.0, 1..20), c in 0.01f64..100.0) {
        prop_assume!(x.iter().sum::<f64>() > 1e-6);
        let g = gini(&x).unwrap();
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        prop_assert!((0.0..1.0).contains(&g));
        prop_assert!((gini(&scaled).unwrap() - g).abs() < 1e-9);
    }

    #[test]
    fn metric_bundle_is_consistent(e in elections(5, 4)) {
        prop_assume!(e.all_scores().iter().any(Score::is_positive));
        let ws = apply_rule(&RuleId::Utilitarian, &e, &budget()).unwrap();
        let b = bundle(&e, ws.first()).unwrap();
        prop_assert!(b.normalized_sum > 0.0 && b.normalized_sum <= 1.0);
        prop_assert!(b.reasonable_dissatisfaction >= 0.0);
        let seq = apply_rule(&RuleId::SeqMaxFirst, &e, &budget()).unwrap();
        prop_assert_eq!(bundle(&e, seq.first()).unwrap().reasonable_dissatisfaction, 0.0);
    }

    #[test]
    fn generated_elections_are_reproducible(seed in any::<u64>(), index in 0u64..50, m2 in any::<bool>()) {
        let spec = GenSpec { model: if m2 { GenModel::M2 } else { GenModel::M1 }, m: 8, q: 6, count: 50, seed };
        let a = generate_one(&spec, index).unwrap();
        prop_assert_eq!(&a, &generate_one(&spec, index).unwrap());
        prop_assert!(a.all_scores().iter().all(|s| !s.is_negative() && s <= &Score::one()));
    }
}
