//! The brute-force reference decider and its query enumeration.

mod common;

use std::collections::BTreeSet;

use ltl_qbe::logic::{classify, ExampleSet, Query, QueryClass};
use ltl_qbe::oracle::{brute_force_decide, enumerate_queries, Bounds};
use ltl_qbe::qbe::{separates, Ontology, Problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn depth_zero_enumeration_is_top_and_the_atom() {
    let got: BTreeSet<Query> = enumerate_queries(QueryClass::PathDiamond, &names(&["A"]), 0, 1).into_iter().collect();
    let want: BTreeSet<Query> = [Query::Top, Query::atom("A")].into_iter().collect();
    assert_eq!(got, want);
}

#[test]
fn depth_one_enumeration_contains_eventually_queries() {
    let got = enumerate_queries(QueryClass::PathDiamond, &names(&["A"]), 1, 1);
    let fa = Query::diamond(Query::atom("A"));
    assert!(got.contains(&fa));
    assert!(got.contains(&Query::and([Query::atom("A"), fa])));
}

#[test]
fn path_diamond_count_matches_closed_form() {
    // Blocks are conjunctions of at most two of the two atoms (including the empty one);
    // a query of depth n has n + 1 blocks, the innermost of which is nonempty.
    let atoms = 2;
    let blocks: usize = (0..=2).map(|k| binom(atoms, k)).sum();
    let expected: usize = blocks + (1..=2).map(|n| blocks.pow(n as u32) * (blocks - 1)).sum::<usize>();
    let got = enumerate_queries(QueryClass::PathDiamond, &names(&["A", "B"]), 2, 2);
    assert_eq!(got.len(), expected);
    assert_eq!(expected, 64);
}

#[test]
fn enumeration_is_duplicate_free_and_within_class() {
    for cls in QueryClass::ALL {
        // Conjunctions of two temporal subqueries at depth two run into the hundreds of
        // thousands for the richer branching classes; one conjunct keeps them small.
        let conj = match cls {
            QueryClass::BranchNextDiamond | QueryClass::SimpleUntil | QueryClass::FullUntil => 1,
            _ => 2,
        };
        let qs = enumerate_queries(cls, &names(&["A", "B"]), 2, conj);
        let set: BTreeSet<&Query> = qs.iter().collect();
        assert_eq!(set.len(), qs.len(), "{cls}");
        for q in &qs {
            assert!(classify(q).contains(&cls), "{cls}: {q}");
            assert!(q.temporal_depth() <= 2, "{cls}: {q}");
        }
    }
}

#[test]
fn enumeration_is_monotone_in_bounds() {
    for cls in QueryClass::ALL {
        for (d, s) in [(0, 1), (1, 1)] {
            let small: BTreeSet<Query> = enumerate_queries(cls, &names(&["A", "B"]), d, s).into_iter().collect();
            for (d2, s2) in [(d + 1, s), (d, s + 1)] {
                let big: BTreeSet<Query> = enumerate_queries(cls, &names(&["A", "B"]), d2, s2).into_iter().collect();
                assert!(small.is_subset(&big), "{cls}: ({d}, {s}) against ({d2}, {s2})");
            }
        }
    }
}

#[test]
fn identical_examples_are_inseparable_at_every_bound() {
    let e = ExampleSet::parse(&["A@1, B@3"], &["A@1, B@3"]).unwrap();
    for cls in QueryClass::ALL {
        for rounds in [Some(1), Some(3), None] {
            let p = Problem::new(cls, e.clone(), Ontology::None);
            let b = Bounds { max_rounds: rounds, ..Default::default() };
            assert!(!brute_force_decide(&p, &b).unwrap().separable, "{cls}");
        }
    }
}

#[test]
fn oracle_witnesses_separate() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..60 {
        let e = common::random_examples(&mut rng, &["A", "B"], 4, 3, 3);
        for cls in QueryClass::ALL {
            let p = Problem::new(cls, e.clone(), Ontology::None);
            let v = brute_force_decide(&p, &Bounds::default()).unwrap();
            if v.separable {
                let w = v.witness.expect("witness");
                assert!(classify(&w).contains(&cls), "{cls}: {w}");
                assert!(separates(&e, &Ontology::None, &w).unwrap(), "{cls}: {w}");
            }
        }
    }
}

#[test]
fn more_rounds_never_lose_separability() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for _ in 0..40 {
        let e = common::random_examples(&mut rng, &["A", "B"], 3, 2, 2);
        for cls in QueryClass::ALL {
            let p = Problem::new(cls, e.clone(), Ontology::None);
            let mut prev = false;
            for rounds in [Some(0), Some(1), Some(2), Some(4), None] {
                let b = Bounds { max_rounds: rounds, ..Default::default() };
                let now = brute_force_decide(&p, &b).unwrap().separable;
                assert!(!prev || now, "{cls}");
                prev = now;
            }
        }
    }
}
