//! Data instances, query evaluation, normalisation and syntactic classes.

mod common;

use std::collections::BTreeSet;

use ltl_qbe::logic::{
    classify, eval_data, eval_lasso, normalize_next_diamond, parse_query, DataInstance, LassoModel, Query,
    QueryClass,
};
use proptest::prelude::*;

fn q(s: &str) -> Query {
    parse_query(s).unwrap()
}

fn d(s: &str) -> DataInstance {
    DataInstance::parse("d", s).unwrap()
}

fn atoms(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn nested_diamond_query_true_on_positive_and_false_on_negative() {
    let query = q("F(T & F F V)");
    assert!(eval_data(&d("T@2, V@4"), &query, 0));
    assert!(!eval_data(&d("V@1, T@2"), &query, 0));
}

#[test]
fn top_is_true_everywhere() {
    for k in 0..6 {
        assert!(eval_data(&d("A@3"), &Query::Top, k));
        assert!(eval_data(&DataInstance::empty("e"), &Query::Top, k));
    }
}

#[test]
fn bottom_is_false_everywhere() {
    for k in 0..6 {
        assert!(!eval_data(&d("A@0, A@1, A@2"), &Query::Bot, k));
    }
}

#[test]
fn until_requires_left_argument_in_between() {
    let query = q("T U V");
    assert!(eval_data(&d("T@1, V@2"), &query, 0));
    assert!(!eval_data(&d("T@1, V@3"), &query, 0));
}

#[test]
fn lasso_evaluation_sees_loop() {
    let m = LassoModel::new(vec![atoms(&["A", "C"])], vec![atoms(&["B"]), atoms(&["C"])]).unwrap();
    assert!(eval_lasso(&m, &q("F B"), 0).unwrap());
    assert!(!eval_lasso(&m, &q("F A"), 0).unwrap());
    let empty = LassoModel::new(vec![BTreeSet::new()], vec![BTreeSet::new()]).unwrap();
    assert!(eval_lasso(&empty, &q("F true"), 0).unwrap());
}

#[test]
fn lasso_evaluation_rejects_out_of_range_position() {
    let m = LassoModel::new(vec![], vec![BTreeSet::new()]).unwrap();
    assert!(eval_lasso(&m, &Query::Top, 5).is_err());
}

#[test]
fn temporal_depth_examples() {
    assert_eq!(q("T & V").temporal_depth(), 0);
    assert_eq!(q("F(T & F F V)").temporal_depth(), 3);
    assert_eq!(q("(A U B) U C").temporal_depth(), 2);
}

#[test]
fn normalisation_examples() {
    assert_eq!(normalize_next_diamond(&q("F T & F V")).unwrap(), vec![q("F T"), q("F V")]);
    assert_eq!(normalize_next_diamond(&q("X F A")).unwrap(), vec![q("F X A")]);
    let got: BTreeSet<Query> = normalize_next_diamond(&q("F(A & F B & F C)")).unwrap().into_iter().collect();
    let want: BTreeSet<Query> = [q("F(A & F B)"), q("F(A & F C)")].into_iter().collect();
    assert_eq!(got, want);
}

#[test]
fn normalisation_of_branching_query_is_equivalent_on_all_small_instances() {
    let input = q("F(A & F B & F C)");
    let out = Query::and(normalize_next_diamond(&input).unwrap());
    let names = ["A", "B", "C"];
    // Every instance over {A, B, C} with timestamps 0..=4.
    for mask in 0u32..(1 << 15) {
        let facts = (0..15).filter(|i| mask >> i & 1 == 1).map(|i| (names[i % 3], i / 3));
        let inst = DataInstance::new("d", facts).unwrap();
        assert_eq!(eval_data(&inst, &input, 0), eval_data(&inst, &out, 0), "{inst}");
    }
}

#[test]
fn normalisation_rejects_until() {
    assert!(normalize_next_diamond(&q("A U B")).is_err());
}

#[test]
fn class_membership_examples() {
    let all: BTreeSet<QueryClass> = QueryClass::ALL.into_iter().collect();
    assert_eq!(classify(&q("F(T & F V)")), all);
    let branch: BTreeSet<QueryClass> = [
        QueryClass::BranchDiamond,
        QueryClass::BranchNextDiamond,
        QueryClass::SimpleUntil,
        QueryClass::FullUntil,
    ]
    .into_iter()
    .collect();
    assert_eq!(classify(&q("F T & F V")), branch);
    assert_eq!(classify(&q("(A U B) U C")), [QueryClass::FullUntil].into_iter().collect());
}

#[test]
fn conjunction_is_flattened_and_deduplicated() {
    let a = Query::and([q("A & B"), q("B"), Query::Top, q("C & A")]);
    assert_eq!(a, Query::And(vec![q("A"), q("B"), q("C")]));
    assert_eq!(Query::and([q("A"), Query::Bot]), Query::Bot);
    assert_eq!(Query::and([]), Query::Top);
}

#[test]
fn parser_round_trips_display() {
    for s in ["F(T & F F V)", "(A U B) U C", "A & X(B U C)", "F X A & G_1", "true", "false U A"] {
        let parsed = q(s);
        assert_eq!(q(&parsed.to_string()), parsed, "{s}");
    }
}

#[test]
fn parser_reports_position() {
    let err = parse_query("A & & B").unwrap_err();
    assert_eq!(err.pos, 4);
    assert!(parse_query("G").is_err());
}

#[test]
fn invalid_atoms_are_rejected() {
    assert!(DataInstance::parse("d", "1A@0").is_err());
    assert!(DataInstance::parse("d", "U@0").is_err());
    assert!(DataInstance::parse("d", "A@x").is_err());
    assert_eq!(d("A@3, A@3, B@1").len(), 2);
    assert_eq!(d("A@3, B@1").max_timestamp(), 3);
    assert_eq!(DataInstance::empty("e").max_timestamp(), 0);
}

const ATOMS: [&str; 3] = ["A", "B", "C"];

fn arb_instance() -> impl Strategy<Value = DataInstance> {
    prop::collection::btree_set((0..3usize, 0..=5usize), 0..8)
        .prop_map(|fs| DataInstance::new("d", fs.into_iter().map(|(a, t)| (ATOMS[a], t))).unwrap())
}

fn arb_query() -> impl Strategy<Value = Query> {
    any::<u64>().prop_map(|seed| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        common::random_query(&mut rng, &ATOMS, 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn evaluation_is_monotone_in_facts(a in arb_instance(), b in arb_instance(), query in arb_query(), k in 0..4usize) {
        let sup = a.union(&b);
        if eval_data(&a, &query, k) {
            prop_assert!(eval_data(&sup, &query, k));
        }
    }

    #[test]
    fn next_and_diamond_are_until_special_cases(inst in arb_instance(), query in arb_query(), k in 0..4usize) {
        prop_assert_eq!(
            eval_data(&inst, &Query::next(query.clone()), k),
            eval_data(&inst, &Query::until(Query::Bot, query.clone()), k)
        );
        prop_assert_eq!(
            eval_data(&inst, &Query::diamond(query.clone()), k),
            eval_data(&inst, &Query::until(Query::Top, query), k)
        );
    }

    #[test]
    fn normalisation_preserves_truth(inst in arb_instance(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // Drop until operators by rewriting them to F of the right argument.
        fn strip(q: &Query) -> Query {
            match q {
                Query::Until(_, r) => Query::diamond(strip(r)),
                Query::And(qs) => Query::and(qs.iter().map(strip)),
                Query::Next(p) => Query::next(strip(p)),
                Query::Diamond(p) => Query::diamond(strip(p)),
                other => other.clone(),
            }
        }
        let query = strip(&common::random_query(&mut rng, &ATOMS, 3));
        let out = Query::and(normalize_next_diamond(&query).unwrap());
        prop_assert_eq!(eval_data(&inst, &query, 0), eval_data(&inst, &out, 0), "{} vs {}", query, out);
    }

    #[test]
    fn lasso_with_empty_loop_agrees_with_data(inst in arb_instance(), query in arb_query()) {
        let m = LassoModel::from_data(&inst);
        for k in 0..m.pre() {
            prop_assert_eq!(eval_lasso(&m, &query, k).unwrap(), eval_data(&inst, &query, k));
        }
    }

    #[test]
    fn display_parse_round_trip(query in arb_query()) {
        prop_assert_eq!(parse_query(&query.to_string()).unwrap(), query);
    }

    #[test]
    fn classes_are_ordered(query in arb_query()) {
        let cs = classify(&query);
        prop_assert!(cs.contains(&QueryClass::FullUntil));
        if cs.contains(&QueryClass::PathUntil) { prop_assert!(cs.contains(&QueryClass::SimpleUntil)); }
        if cs.contains(&QueryClass::PathDiamond) {
            prop_assert!(cs.contains(&QueryClass::BranchDiamond));
            prop_assert!(cs.contains(&QueryClass::PathNextDiamond));
        }
        if cs.contains(&QueryClass::BranchDiamond) { prop_assert!(cs.contains(&QueryClass::BranchNextDiamond)); }
    }
}
