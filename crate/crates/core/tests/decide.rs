mod common;

use amalgam_core::decide::rules;
use amalgam_core::{decide_compactness, decide_embedding, Relation, SpaceSpec};
use common::*;
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = SpaceSpec> {
    let e = prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, 4.0]);
    let s = prop::sample::select(vec![0.0, 0.5, 1.0, 2.0]);
    (e.clone(), e.clone(), e, s.clone(), s).prop_map(|(p, q, r, s1, s2)| space(p, q, r, s1, s2))
}

proptest! {
    #[test]
    fn every_space_equals_itself(s in spec()) {
        let v = decide_embedding(&s, &s).unwrap();
        prop_assert_eq!(v.relation, Relation::Equal);
        prop_assert!(v.trace.iter().all(|c| c.holds));
    }

    #[test]
    fn inclusions_compose(a in spec(), b in spec(), c in spec()) {
        let embeds = |x: &SpaceSpec, y: &SpaceSpec| {
            matches!(decide_embedding(x, y).unwrap().relation, Relation::Embeds | Relation::Equal)
        };
        if embeds(&a, &b) && embeds(&b, &c) {
            prop_assert!(!decide_embedding(&a, &c).unwrap().definite_negative);
        }
    }

    #[test]
    fn no_rule_names_a_failing_hypothesis(a in spec(), b in spec()) {
        let v = decide_embedding(&a, &b).unwrap();
        if v.relation == Relation::NoRule {
            prop_assert!(v.trace.iter().any(|c| !c.holds));
        } else {
            prop_assert!(v.trace.iter().all(|c| c.holds));
        }
    }
}

#[test]
fn documented_verdicts() {
    let v = decide_embedding(&space(3.0, 3.0, 1.0, 2.0, 1.0), &space(2.0, 2.0, 2.0, 1.0, 0.0)).unwrap();
    assert_eq!((v.relation, v.rule.as_str()), (Relation::Embeds, rules::GENERAL));
    let s = space(2.0, 2.0, 2.0, 1.0, 1.0);
    assert_eq!(decide_embedding(&s, &s).unwrap().rule, rules::EQUAL);
    let v = decide_embedding(&space(2.0, 2.0, 2.0, 1.0, 0.0), &space(2.0, 2.0, 2.0, 2.0, 0.0)).unwrap();
    assert!(v.definite_negative);
    assert_eq!(v.rule, rules::WEIGHT_CHARACTERIZATION);

    let src = space(2.0, 2.0, 2.0, 2.0, 0.0);
    let v = decide_compactness(&src, &poly(2.0), None).unwrap();
    assert_eq!(v.relation, Relation::NeverCompactEmbedding);
    let v = decide_compactness(&src, &poly(1.0), None).unwrap();
    assert_eq!(v.relation, Relation::NoRule);
    let v = decide_compactness(&space(2.0, 2.0, 2.0, 2.0, 1.0), &poly(2.0), Some(&poly(0.0))).unwrap();
    assert_eq!(v.relation, Relation::NeverCompactEmbedding);
}

#[test]
fn verdict_json_shape() {
    let v = decide_embedding(&space(3.0, 2.0, 1.0, 0.0, 0.0), &space(2.0, 2.0, 2.0, 0.0, 0.0)).unwrap();
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["relation"], "embeds");
    assert_eq!(j["constant_hint"], 1.0);
    assert!(j["trace"].is_array());
}
