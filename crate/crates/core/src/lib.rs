//! Query-by-example for positive linear temporal logic over timestamped data.
//!
//! Given positive and negative data instances (finite sets of timestamped atoms) and,
//! optionally, an ontology, the engine decides whether some query of a chosen class is
//! certainly true at time 0 on every positive and certainly false on every negative, and
//! if so constructs such a separating query.
//!
//! Module map:
//!
//! * [`logic`] — data instances, queries, parsing, evaluation and syntactic classes.
//! * [`transform`] — separability-preserving reductions between problem variants.
//! * [`horn`] — Horn ontologies, canonical lasso models and certain answers.
//! * [`prior`] — the "prior" ontology fragment (only `F`/`G`-style operators).
//! * [`tsys`] — labelled (optionally two-coloured) transition systems, products,
//!   containment and simulation, with counterexample extraction.
//! * [`repr`] — transition-system representations of instances and canonical models.
//! * [`qbe`] — the separability engine dispatching on class and ontology kind.
//! * [`oracle`] — an independent brute-force reference decider.
//! * [`cli`] — the command-line front end.

pub mod cli;
pub mod horn;
pub mod logic;
pub mod oracle;
pub mod prior;
pub mod qbe;
pub mod repr;
pub mod transform;
pub mod tsys;

pub use logic::{
    classify, eval_data, eval_lasso, DataInstance, ExampleSet, LassoModel, Query, QueryClass,
};

pub use qbe::{decide, decide_with, DecideOptions, Ontology, Problem, QbeError, Verdict};
