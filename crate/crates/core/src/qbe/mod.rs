//! The separability engine.
//!
//! [`decide`] preprocesses the examples against the ontology (inconsistent negatives make
//! the problem unseparable, inconsistent positives are dropped) and dispatches on the query
//! class:
//!
//! | class | ontology-free / Horn |
//! |---|---|
//! | path `F`, path `X`/`F`, block paths | [`dp_path`] over lassos, or [`horn_diamond_search`] |
//! | branching `F`, branching `X`/`F` | one path problem per negative, witnesses conjoined |
//! | path until | run containment between representations |
//! | simple until | simulation between representations |
//! | full until | simulation between black/red representations |
//!
//! Under a prior-fragment ontology only the path and branching `F` classes are supported
//! ([`prior_path_search`]). Every separable verdict carries a witness that is re-verified
//! against the examples before it is returned.

mod dp;
mod horn_search;
mod minimize;
mod prior_search;
mod until;

pub use dp::{dp_path, DpOptions};
pub use horn_search::horn_diamond_search;
pub use minimize::minimize;
pub use prior_search::prior_path_search;
pub use until::{decide_until_family, query_from_run, query_from_tree};

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::horn::{canonical_model, depth_bounds, HornError, HornOntology};
use crate::logic::{
    classify, eval_data, eval_lasso, DataInstance, ExampleSet, LassoModel, Query, QueryClass,
};
use crate::prior::{prior_consistent, prior_entails, PriorError, PriorOntology};
use crate::repr::ReprError;
use crate::tsys::{Signature, TsysError};

/// The ontology a problem is posed under.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Ontology {
    #[default]
    None,
    Horn(HornOntology),
    Prior(PriorOntology),
}

impl Ontology {
    pub fn kind(&self) -> &'static str {
        match self {
            Ontology::None => "none",
            Ontology::Horn(_) => "horn",
            Ontology::Prior(_) => "prior",
        }
    }

    /// Ontology atoms visible to queries.
    pub fn atoms(&self) -> BTreeSet<String> {
        match self {
            Ontology::None => BTreeSet::new(),
            Ontology::Horn(o) => {
                let fresh = o.fresh_atoms();
                o.atoms().into_iter().filter(|a| !fresh.contains(a)).collect()
            }
            Ontology::Prior(o) => o.atoms(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QbeError {
    #[error("class {class} is not supported under a {ontology} ontology")]
    Unsupported { class: QueryClass, ontology: &'static str },
    #[error("separability needs at least one positive example")]
    EmptyPositives,
    #[error("search exceeded the node cap of {0}")]
    NodeCap(usize),
    #[error("witness `{0}` failed re-verification")]
    WitnessUnsound(String),
    #[error(transparent)]
    Horn(#[from] HornError),
    #[error(transparent)]
    Prior(#[from] PriorError),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Tsys(#[from] TsysError),
}

impl QbeError {
    /// Errors caused by exceeding a resource bound rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            QbeError::NodeCap(_)
                | QbeError::Horn(HornError::WindowOverflow(_))
                | QbeError::Repr(ReprError::TooManyPositions(_))
                | QbeError::Prior(PriorError::TooLarge(_))
                | QbeError::Tsys(TsysError::SignatureTooLarge(_))
        )
    }
}

/// A separability question: examples, ontology and target class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub cls: QueryClass,
    pub examples: ExampleSet,
    pub ontology: Ontology,
}

impl Problem {
    pub fn new(cls: QueryClass, examples: ExampleSet, ontology: Ontology) -> Self {
        Problem { cls, examples, ontology }
    }
}

/// Search statistics reported with a verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Search nodes (DP nodes, search states or simulation pairs) explored.
    pub nodes: usize,
    /// States of the positive-side transition system (until classes).
    pub positive_states: usize,
    /// States of the negative-side transition system (until classes).
    pub negative_states: usize,
}

impl Stats {
    fn absorb(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.positive_states = self.positive_states.max(other.positive_states);
        self.negative_states += other.negative_states;
    }
}

/// The outcome of a separability question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub separable: bool,
    pub witness: Option<Query>,
    pub note: Option<String>,
    pub stats: Stats,
}

impl Verdict {
    pub fn separable(witness: Query) -> Self {
        Verdict { separable: true, witness: Some(witness), note: None, stats: Stats::default() }
    }

    pub fn not_separable() -> Self {
        Verdict { separable: false, witness: None, note: None, stats: Stats::default() }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn with_stats(mut self, stats: Stats) -> Self {
        self.stats = stats;
        self
    }
}

/// Which decider handles path classes under a Horn ontology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HornPathRoute {
    /// Step-by-step search over queries on the canonical models.
    #[default]
    Search,
    /// The block dynamic programme over the canonical lassos.
    Lasso,
}

/// Tuning knobs for [`decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub horn_route: HornPathRoute,
    /// Upper bound on explored search nodes.
    pub node_cap: usize,
    /// Greedily shrink the witness before returning it.
    pub minimize: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { horn_route: HornPathRoute::Search, node_cap: 2_000_000, minimize: false }
    }
}

/// An example set with per-instance models after consistency preprocessing.
pub(crate) struct Prepared {
    pub examples: ExampleSet,
    pub positives: Vec<LassoModel>,
    pub negatives: Vec<LassoModel>,
    pub sig: Signature,
}

/// Outcome of preprocessing: either a final verdict or models to work on.
pub(crate) enum Preprocessed {
    Done(Verdict),
    Models(Prepared),
}

pub(crate) fn signature(e: &ExampleSet, o: &Ontology) -> Result<Signature, QbeError> {
    let mut atoms = e.signature();
    atoms.extend(o.atoms());
    Ok(Signature::new(atoms)?)
}

pub(crate) fn preprocess(e: &ExampleSet, o: &Ontology) -> Result<Preprocessed, QbeError> {
    if e.positives.is_empty() {
        return Err(QbeError::EmptyPositives);
    }
    let sig = signature(e, o)?;
    let mut kept = ExampleSet::default();
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    let mut dropped = 0;
    match o {
        Ontology::None | Ontology::Prior(_) => {
            if let Ontology::Prior(po) = o {
                for d in &e.negatives {
                    if !prior_consistent(po, d)? {
                        return Ok(Preprocessed::Done(
                            Verdict::not_separable().with_note(format!("negative {} is inconsistent", d.name)),
                        ));
                    }
                }
                for d in &e.positives {
                    if prior_consistent(po, d)? {
                        kept.positives.push(d.clone());
                    } else {
                        dropped += 1;
                    }
                }
            } else {
                kept.positives = e.positives.clone();
            }
            kept.negatives = e.negatives.clone();
            positives = kept.positives.iter().map(LassoModel::from_data).collect();
            negatives = kept.negatives.iter().map(LassoModel::from_data).collect();
        }
        Ontology::Horn(ho) => {
            for d in &e.negatives {
                match canonical_model(ho, d) {
                    Ok(m) => {
                        negatives.push(m.lasso);
                        kept.negatives.push(d.clone());
                    }
                    Err(HornError::Inconsistent) => {
                        return Ok(Preprocessed::Done(
                            Verdict::not_separable().with_note(format!("negative {} is inconsistent", d.name)),
                        ))
                    }
                    Err(err) => return Err(err.into()),
                }
            }
            for d in &e.positives {
                match canonical_model(ho, d) {
                    Ok(m) => {
                        positives.push(m.lasso);
                        kept.positives.push(d.clone());
                    }
                    Err(HornError::Inconsistent) => dropped += 1,
                    Err(err) => return Err(err.into()),
                }
            }
        }
    }
    if kept.positives.is_empty() {
        // Every positive entails everything; `false` is refuted by every consistent negative.
        return Ok(Preprocessed::Done(
            Verdict::separable(Query::Bot).with_note("all positives are inconsistent"),
        ));
    }
    if kept.negatives.is_empty() {
        return Ok(Preprocessed::Done(Verdict::separable(Query::Top)));
    }
    let _ = dropped;
    Ok(Preprocessed::Models(Prepared { examples: kept, positives, negatives, sig }))
}

/// Whether `q` is certainly true at 0 on the instance under the ontology.
pub fn entails(o: &Ontology, d: &DataInstance, q: &Query) -> Result<bool, QbeError> {
    Ok(match o {
        Ontology::None => eval_data(d, q, 0),
        Ontology::Horn(ho) => match canonical_model(ho, d) {
            Ok(m) => eval_lasso(&m.lasso, q, 0).expect("position 0 exists"),
            Err(HornError::Inconsistent) => true,
            Err(err) => return Err(err.into()),
        },
        Ontology::Prior(po) => {
            if !prior_consistent(po, d)? {
                true
            } else {
                prior_entails(po, d, q)?
            }
        }
    })
}

/// Whether `q` is certainly true on every positive and not certainly true on any negative.
pub fn separates(e: &ExampleSet, o: &Ontology, q: &Query) -> Result<bool, QbeError> {
    for d in &e.positives {
        if !entails(o, d, q)? {
            return Ok(false);
        }
    }
    for d in &e.negatives {
        if entails(o, d, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_supported(cls: QueryClass, o: &Ontology) -> Result<(), QbeError> {
    if matches!(o, Ontology::Prior(_)) && !matches!(cls, QueryClass::PathDiamond | QueryClass::BranchDiamond) {
        return Err(QbeError::Unsupported { class: cls, ontology: o.kind() });
    }
    Ok(())
}

/// Decides whether the examples are separable by a query of the class under the ontology.
pub fn decide(p: &Problem) -> Result<Verdict, QbeError> {
    decide_with(p, &DecideOptions::default())
}

/// [`decide`] with explicit options.
pub fn decide_with(p: &Problem, opts: &DecideOptions) -> Result<Verdict, QbeError> {
    let (e, o, cls) = (&p.examples, &p.ontology, p.cls);
    check_supported(cls, o)?;
    let mut verdict = match preprocess(e, o)? {
        Preprocessed::Done(v) => v,
        Preprocessed::Models(prep) => dispatch(&prep, o, cls, opts)?,
    };
    if let Some(w) = &verdict.witness {
        if opts.minimize {
            let small = minimize(e, o, cls, w)?;
            verdict.witness = Some(small);
        }
    }
    if let Some(w) = &verdict.witness {
        if !classify(w).contains(&cls) || !separates(e, o, w)? {
            return Err(QbeError::WitnessUnsound(w.to_string()));
        }
    }
    Ok(verdict)
}

fn dispatch(p: &Prepared, o: &Ontology, cls: QueryClass, opts: &DecideOptions) -> Result<Verdict, QbeError> {
    match cls {
        QueryClass::PathDiamond | QueryClass::PathNextDiamond | QueryClass::PathDiamondCircBlocks => {
            path_decider(p, o, cls, opts)
        }
        QueryClass::BranchDiamond | QueryClass::BranchNextDiamond => {
            let path_cls = if cls == QueryClass::BranchDiamond {
                QueryClass::PathDiamond
            } else {
                QueryClass::PathDiamondCircBlocks
            };
            let mut parts = Vec::new();
            let mut stats = Stats::default();
            for (j, neg) in p.negatives.iter().enumerate() {
                let sub = Prepared {
                    examples: ExampleSet::new(p.examples.positives.clone(), vec![p.examples.negatives[j].clone()]),
                    positives: p.positives.clone(),
                    negatives: vec![neg.clone()],
                    sig: p.sig.clone(),
                };
                let v = path_decider(&sub, o, path_cls, opts)?;
                stats.absorb(&v.stats);
                if !v.separable {
                    return Ok(Verdict::not_separable()
                        .with_note(format!("negative {} cannot be separated", p.examples.negatives[j].name))
                        .with_stats(stats));
                }
                parts.push(v.witness.expect("separable verdicts carry witnesses"));
            }
            Ok(Verdict::separable(Query::and(parts)).with_stats(stats))
        }
        QueryClass::PathUntil | QueryClass::SimpleUntil | QueryClass::FullUntil => {
            until::decide_prepared(p, o, cls, opts)
        }
    }
}

fn path_decider(p: &Prepared, o: &Ontology, cls: QueryClass, opts: &DecideOptions) -> Result<Verdict, QbeError> {
    match o {
        Ontology::None => dp::dp_prepared(p, cls, &DpOptions { node_cap: opts.node_cap, ..DpOptions::default() }),
        Ontology::Horn(ho) => match opts.horn_route {
            HornPathRoute::Search => horn_search::search_prepared(p, cls, opts.node_cap),
            HornPathRoute::Lasso => {
                let (k, m) = depth_bounds(ho, &p.examples)?;
                let block = k.saturating_add(m).max(1);
                dp::dp_prepared(p, cls, &DpOptions { max_block: Some(block), node_cap: opts.node_cap, ..DpOptions::default() })
            }
        },
        Ontology::Prior(po) => prior_search::search(po, &p.examples, cls, opts.node_cap),
    }
}
