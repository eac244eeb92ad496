//! The `F`/`G` ontology fragment: parsing, consistency and entailment.

mod common;

use std::collections::BTreeSet;

use ltl_qbe::logic::{eval_data, eval_lasso, parse_query, DataInstance, LassoModel, Query};
use ltl_qbe::prior::{
    load_prior_ontology, parse_prior_formula, prior_consistent, prior_countermodel, prior_entails, PriorError,
    PriorFormula, PriorOntology,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Truth of `f` at position `n` by direct quantification over the strictly later
/// materialised positions of the lasso.
fn holds(m: &LassoModel, f: &PriorFormula, n: usize) -> bool {
    let later = || (n + 1..m.len()).chain(if n >= m.pre() { m.pre()..n + 1 } else { 0..0 });
    match f {
        PriorFormula::True => true,
        PriorFormula::False => false,
        PriorFormula::Atom(a) => m.at(n).contains(a),
        PriorFormula::Not(x) => !holds(m, x, n),
        PriorFormula::And(a, b) => holds(m, a, n) && holds(m, b, n),
        PriorFormula::Or(a, b) => holds(m, a, n) || holds(m, b, n),
        PriorFormula::Implies(a, b) => !holds(m, a, n) || holds(m, b, n),
        PriorFormula::Box(x) => later().all(|k| holds(m, x, k)),
        PriorFormula::Diamond(x) => later().any(|k| holds(m, x, k)),
    }
}

fn is_model(o: &PriorOntology, d: &DataInstance, m: &LassoModel) -> bool {
    d.facts().all(|(a, t)| m.unfolded(t).contains(a))
        && o.axioms.iter().all(|ax| (0..m.len()).all(|n| holds(m, ax, n)))
}

/// Every lasso over `atoms` with prefix `maxD+1..=maxD+extra` and loop `1..=max_per`.
fn lassos(atoms: &[&str], d: &DataInstance, extra: usize, max_per: usize) -> Vec<LassoModel> {
    let letters: Vec<BTreeSet<String>> = (0..1u32 << atoms.len())
        .map(|mask| atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.to_string()).collect())
        .collect();
    let mut out = Vec::new();
    for pre in d.max_timestamp() + 1..=d.max_timestamp() + extra {
        for per in 1..=max_per {
            let len = pre + per;
            let total = letters.len().pow(len as u32);
            for mut code in 0..total {
                let mut word = Vec::with_capacity(len);
                for _ in 0..len {
                    word.push(letters[code % letters.len()].clone());
                    code /= letters.len();
                }
                let cycle = word.split_off(pre);
                out.push(LassoModel { prefix: word, cycle });
            }
        }
    }
    out
}

fn d(s: &str) -> DataInstance {
    DataInstance::parse("d", s).unwrap()
}

#[test]
fn next_is_rejected_by_the_grammar() {
    assert!(load_prior_ontology("X A -> A").is_err());
    assert!(matches!(load_prior_ontology("A -> B\nA -> X B"), Err(PriorError::Parse { line: 2, .. })));
}

#[test]
fn eventually_with_exclusion_is_consistent() {
    let o = load_prior_ontology("A -> F B\n!(A & B)").unwrap();
    assert!(prior_consistent(&o, &d("A@0")).unwrap());
}

#[test]
fn eventually_true_cannot_be_refuted() {
    let o = load_prior_ontology("F true -> false").unwrap();
    assert!(!prior_consistent(&o, &DataInstance::empty("e")).unwrap());
}

#[test]
fn disjunction_leaves_choice_open() {
    let o = load_prior_ontology("T | V").unwrap();
    let q = parse_query("F T & F V").unwrap();
    assert!(!prior_entails(&o, &d("T@1"), &q).unwrap());
    let m = prior_countermodel(&o, &d("T@1"), &q).unwrap().unwrap();
    assert!(is_model(&o, &d("T@1"), &m));
    assert!(!eval_lasso(&m, &q, 0).unwrap());
}

#[test]
fn valid_query_is_entailed() {
    let o = load_prior_ontology("!A -> F B").unwrap();
    assert!(prior_entails(&o, &DataInstance::empty("e"), &parse_query("F true").unwrap()).unwrap());
}

#[test]
fn next_queries_are_rejected() {
    let o = PriorOntology::default();
    assert!(matches!(
        prior_entails(&o, &d("A@1"), &parse_query("X A").unwrap()),
        Err(PriorError::UnsupportedQuery(_))
    ));
}

#[test]
fn formula_display_round_trips() {
    for s in ["A -> F B", "!(A & B)", "G (A | B) -> F C", "A & B & C", "F G A"] {
        let f = parse_prior_formula(s).unwrap();
        assert_eq!(parse_prior_formula(&f.to_string()).unwrap(), f, "{s}");
    }
}

const ATOMS: [&str; 2] = ["P", "Q"];

fn random_axiom(rng: &mut impl Rng) -> String {
    let mut a = || *ATOMS.choose(rng).unwrap();
    let (x, y) = (a(), a());
    match rng.gen_range(0..7) {
        0 => format!("{x} -> F {y}"),
        1 => format!("{x} -> G {y}"),
        2 => format!("{x} | {y}"),
        3 => format!("F {x} -> {y}"),
        4 => format!("!({x} & {y})"),
        5 => format!("G {x} -> F {y}"),
        _ => format!("!{x} -> {y}"),
    }
}

fn random_diamond_query(rng: &mut impl Rng, depth: usize) -> Query {
    let atom = |rng: &mut ChaCha8Rng| Query::atom(*ATOMS.choose(rng).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut q = if rng.gen_bool(0.5) { atom(&mut rng) } else { Query::Top };
    for _ in 0..depth {
        let here = if rng.gen_bool(0.5) { atom(&mut rng) } else { Query::Top };
        q = if rng.gen_bool(0.3) {
            Query::and([here, Query::diamond(q), Query::diamond(atom(&mut rng))])
        } else {
            Query::and([here, Query::diamond(q)])
        };
    }
    q
}

#[test]
fn entailment_agrees_with_exhaustive_small_lassos() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..120 {
        let text = (0..rng.gen_range(1..=2)).map(|_| random_axiom(&mut rng)).collect::<Vec<_>>().join("\n");
        let o = load_prior_ontology(&text).unwrap();
        let data = common::random_instance(&mut rng, "d", &ATOMS, 1, 3);
        let depth = rng.gen_range(0..=2);
        let q = random_diamond_query(&mut rng, depth);
        let entailed = prior_entails(&o, &data, &q).unwrap();
        // Any small countermodel refutes entailment.
        let small = lassos(&ATOMS, &data, 2, 2)
            .into_iter()
            .find(|m| is_model(&o, &data, m) && !eval_lasso(m, &q, 0).unwrap());
        if small.is_some() {
            assert!(!entailed, "{text}\n{data}\n{q}");
        }
        // A reported countermodel is a genuine one.
        if !entailed {
            let m = prior_countermodel(&o, &data, &q).unwrap().unwrap();
            assert!(is_model(&o, &data, &m), "{text}\n{data}\n{m}");
            assert!(!eval_lasso(&m, &q, 0).unwrap(), "{text}\n{data}\n{q}\n{m}");
        }
        // Consistency agrees with the existence of a small model.
        let consistent = prior_consistent(&o, &data).unwrap();
        if lassos(&ATOMS, &data, 2, 2).iter().any(|m| is_model(&o, &data, m)) {
            assert!(consistent, "{text}\n{data}");
        }
    }
}

#[test]
fn empty_ontology_entailment_is_data_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let data = common::random_instance(&mut rng, "d", &ATOMS, 4, 5);
        let depth = rng.gen_range(0..=3);
        let q = random_diamond_query(&mut rng, depth);
        assert_eq!(prior_entails(&PriorOntology::default(), &data, &q).unwrap(), eval_data(&data, &q, 0), "{data} {q}");
    }
}

#[test]
fn adding_axioms_never_loses_entailments() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..150 {
        let base = random_axiom(&mut rng);
        let extra = random_axiom(&mut rng);
        let o1 = load_prior_ontology(&base).unwrap();
        let o2 = load_prior_ontology(&format!("{base}\n{extra}")).unwrap();
        let data = common::random_instance(&mut rng, "d", &ATOMS, 2, 3);
        let depth = rng.gen_range(0..=2);
        let q = random_diamond_query(&mut rng, depth);
        if prior_entails(&o1, &data, &q).unwrap() {
            assert!(prior_entails(&o2, &data, &q).unwrap(), "{base}\n{extra}\n{data}\n{q}");
        }
    }
}
