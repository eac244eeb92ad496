//! Until classes via transition-system representations.
//!
//! Positives are combined by a synchronous product (a query holds on all positives iff it
//! holds on the product), negatives are kept apart. Path-until separability is run
//! containment of the product in the union of the negatives; the until classes are closed
//! under conjunction, so they are decided one negative at a time by simulation. A failing
//! run or subtree is turned back into a separating query.

use crate::logic::{ExampleSet, Query, QueryClass};
use crate::repr::{repr_lasso, repr_lasso_br, repr_plain, repr_plain_br};
use crate::tsys::{
    disjoint_union, extract_failing_run, product, Color, Label, Run, Signature, Simulation,
    TransitionSystem, Tree, BOT,
};

use super::{preprocess, DecideOptions, Ontology, Prepared, Preprocessed, QbeError, Stats, Verdict};

/// Conjunction of a label's atoms, or `false` when the label contains `⊥`.
fn label_query(sig: &Signature, l: Label) -> Query {
    if l & BOT != 0 {
        Query::Bot
    } else {
        Query::conj(sig.atoms_of(l))
    }
}

/// `left U right`, written with `X` when `left` is `false` and `F` when it is `true`.
fn until_query(left: Query, right: Query) -> Query {
    match left {
        Query::Bot => Query::next(right),
        Query::Top => Query::diamond(right),
        l => Query::until(l, right),
    }
}

/// The path-until query read off a run: `ρ0 & (λ1 U (ρ1 & (λ2 U ...)))`.
pub fn query_from_run(run: &Run, sig: &Signature) -> Query {
    let mut q = label_query(sig, *run.state_labels.last().expect("runs are non-empty"));
    for i in (0..run.edge_labels.len()).rev() {
        let step = until_query(label_query(sig, run.edge_labels[i]), q);
        q = Query::and([label_query(sig, run.state_labels[i]), step]);
    }
    q
}

/// The until query read off a finite tree. A node reached by an edge labelled `λ` becomes
/// `(λ & reds) U (γ & blacks)`, where `γ` is the node label and `reds`/`blacks` are the
/// queries of its red/black children; the root is `γ & blacks`.
pub fn query_from_tree(tree: &Tree, sig: &Signature) -> Query {
    let (_, blacks) = children_queries(tree, sig);
    Query::and(std::iter::once(label_query(sig, tree.label)).chain(blacks))
}

fn children_queries(tree: &Tree, sig: &Signature) -> (Vec<Query>, Vec<Query>) {
    let mut reds = Vec::new();
    let mut blacks = Vec::new();
    for edge in &tree.children {
        let (child_reds, child_blacks) = children_queries(&edge.child, sig);
        let left = Query::and(std::iter::once(label_query(sig, edge.label)).chain(child_reds));
        let right = Query::and(std::iter::once(label_query(sig, edge.child.label)).chain(child_blacks));
        let q = until_query(left, right);
        match edge.color {
            Color::Black => blacks.push(q),
            Color::Red => reds.push(q),
        }
    }
    (reds, blacks)
}

/// Decides separability for `PathUntil`, `SimpleUntil` or `FullUntil`.
pub fn decide_until_family(e: &ExampleSet, o: &Ontology, cls: QueryClass) -> Result<Verdict, QbeError> {
    if matches!(o, Ontology::Prior(_)) {
        return Err(QbeError::Unsupported { class: cls, ontology: o.kind() });
    }
    match preprocess(e, o)? {
        Preprocessed::Done(v) => Ok(v),
        Preprocessed::Models(p) => decide_prepared(&p, o, cls, &DecideOptions::default()),
    }
}

fn representations(p: &Prepared, o: &Ontology, colored: bool) -> Result<(Vec<TransitionSystem>, Vec<TransitionSystem>), QbeError> {
    let build = |i: usize, positive: bool| -> Result<TransitionSystem, QbeError> {
        let (data, lasso) = if positive {
            (&p.examples.positives[i], &p.positives[i])
        } else {
            (&p.examples.negatives[i], &p.negatives[i])
        };
        Ok(match (o, colored) {
            (Ontology::Horn(_), false) => repr_lasso(lasso, &p.sig),
            (Ontology::Horn(_), true) => repr_lasso_br(lasso, &p.sig)?,
            (_, false) => repr_plain(data, &p.sig),
            (_, true) => repr_plain_br(data, &p.sig)?,
        })
    };
    let pos = (0..p.positives.len()).map(|i| build(i, true)).collect::<Result<Vec<_>, _>>()?;
    let neg = (0..p.negatives.len()).map(|i| build(i, false)).collect::<Result<Vec<_>, _>>()?;
    Ok((pos, neg))
}

pub(crate) fn decide_prepared(
    p: &Prepared,
    o: &Ontology,
    cls: QueryClass,
    _opts: &DecideOptions,
) -> Result<Verdict, QbeError> {
    let colored = cls == QueryClass::FullUntil;
    let (pos, neg) = representations(p, o, colored)?;
    let prod = product(&pos)?;
    let mut stats = Stats {
        nodes: 0,
        positive_states: prod.len(),
        negative_states: neg.iter().map(TransitionSystem::len).sum(),
    };
    if cls == QueryClass::PathUntil {
        let union = disjoint_union(&neg)?;
        return Ok(match extract_failing_run(&prod, &union)? {
            Some(run) => Verdict::separable(query_from_run(&run, &p.sig)).with_stats(stats),
            None => Verdict::not_separable().with_stats(stats),
        });
    }
    let mut parts = Vec::new();
    for (j, n) in neg.iter().enumerate() {
        let sim = Simulation::compute(&prod, n);
        stats.nodes += sim.pairs();
        match sim.failing_subtree() {
            Some(tree) => parts.push(query_from_tree(&tree, &p.sig)),
            None => {
                return Ok(Verdict::not_separable()
                    .with_note(format!("negative {} simulates the positives", p.examples.negatives[j].name))
                    .with_stats(stats))
            }
        }
    }
    Ok(Verdict::separable(Query::and(parts)).with_stats(stats))
}
