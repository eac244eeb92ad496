//! Path `F`-query search under prior-fragment ontologies.
//!
//! Candidates `ρ0 & F(ρ1 & F(... F ρk))` are enumerated breadth-first, up to
//! `k ≤ K + |E−|` with `K` the largest `maxD + |O|` over the negatives: every negative has
//! a countermodel that becomes periodic after `K`, so a longer separator can be shortened to
//! its first `K + 1` conjunctions plus one later conjunction per negative. Only prefixes
//! entailed by every positive are extended: a longer path implies each of its prefixes, and
//! a larger conjunction implies a smaller one, so both prunings are sound. Entailment is
//! decided by the exact countermodel search of the prior module, after a cheap refutation
//! test on one fixed model per positive.

use std::collections::VecDeque;

use crate::logic::{eval_lasso, DataInstance, ExampleSet, LassoModel, Query, QueryClass};
use crate::prior::{prior_entails, prior_model, PriorOntology};
use crate::transform::split_per_negative;
use crate::tsys::Label;

use super::dp::blocks_query;
use super::{preprocess, signature, Ontology, Preprocessed, QbeError, Stats, Verdict};

/// Decides separability by a `PathDiamond` or `BranchDiamond` query under a prior ontology.
pub fn prior_path_search(
    o: &PriorOntology,
    e: &ExampleSet,
    cls: QueryClass,
    node_cap: usize,
) -> Result<Verdict, QbeError> {
    match preprocess(e, &Ontology::Prior(o.clone()))? {
        Preprocessed::Done(v) => Ok(v),
        Preprocessed::Models(p) => search(o, &p.examples, cls, node_cap),
    }
}

/// Search on examples that are already known to be consistent.
pub(crate) fn search(o: &PriorOntology, e: &ExampleSet, cls: QueryClass, node_cap: usize) -> Result<Verdict, QbeError> {
    match cls {
        QueryClass::PathDiamond => path_search(o, e, node_cap),
        QueryClass::BranchDiamond => {
            let mut parts = Vec::new();
            let mut stats = Stats::default();
            for sub in split_per_negative(e) {
                let v = path_search(o, &sub, node_cap)?;
                stats.nodes += v.stats.nodes;
                if !v.separable {
                    return Ok(Verdict::not_separable().with_stats(stats));
                }
                parts.push(v.witness.expect("separable verdicts carry witnesses"));
            }
            Ok(Verdict::separable(Query::and(parts)).with_stats(stats))
        }
        other => Err(QbeError::Unsupported { class: other, ontology: "prior" }),
    }
}

fn path_search(o: &PriorOntology, e: &ExampleSet, node_cap: usize) -> Result<Verdict, QbeError> {
    let sig = signature(e, &Ontology::Prior(o.clone()))?;
    let width = sig.atoms().len();
    let bound = e.negatives.iter().map(|d| d.max_timestamp() + o.size()).max().unwrap_or(0) + e.negatives.len();
    let mut models: Vec<Option<LassoModel>> = Vec::new();
    for d in &e.positives {
        models.push(prior_model(o, d)?);
    }
    let to_query = |seq: &[Label]| -> Query {
        let blocks: Vec<Vec<Label>> = seq.iter().map(|&l| vec![l]).collect();
        blocks_query(&sig, &blocks, QueryClass::PathDiamond)
    };
    let all = |ds: &[DataInstance], q: &Query| -> Result<bool, QbeError> {
        for (d, m) in ds.iter().zip(&models) {
            if let Some(m) = m {
                if !eval_lasso(m, q, 0).expect("position 0 exists") {
                    return Ok(false);
                }
            }
            if !prior_entails(o, d, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let none = |ds: &[DataInstance], q: &Query| -> Result<bool, QbeError> {
        for d in ds {
            if prior_entails(o, d, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut explored = 0usize;
    let mut queue: VecDeque<Vec<Label>> = VecDeque::new();
    queue.push_back(Vec::new());
    while let Some(prefix) = queue.pop_front() {
        if prefix.len() > bound {
            continue;
        }
        let mut failed: Vec<Label> = Vec::new();
        for rho in 0..(1 as Label) << width {
            if failed.iter().any(|&f| f & !rho == 0) {
                continue;
            }
            explored += 1;
            if explored > node_cap {
                return Err(QbeError::NodeCap(node_cap));
            }
            let mut seq = prefix.clone();
            seq.push(rho);
            let q = to_query(&seq);
            if !all(&e.positives, &q)? {
                failed.push(rho);
                continue;
            }
            if none(&e.negatives, &q)? {
                return Ok(Verdict::separable(q).with_stats(Stats { nodes: explored, ..Stats::default() }));
            }
            queue.push_back(seq);
        }
    }
    Ok(Verdict::not_separable().with_stats(Stats { nodes: explored, ..Stats::default() }))
}
