//! Ontologies with only eventually/always operators: entailment, countermodels and
//! separation by diamond queries.
//!
//! Run with `cargo run --example prior`.

use ltl_qbe::logic::{parse_query, DataInstance};
use ltl_qbe::prior::{load_prior_ontology, prior_countermodel, prior_entails};
use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Every time point carries T or V, but the ontology never says which.
    let o = load_prior_ontology("T | V")?;
    let d = DataInstance::parse("d", "T@1")?;
    let q = parse_query("F T & F V")?;
    println!("{q} entailed on {d}: {}", prior_entails(&o, &d, &q)?);
    if let Some(m) = prior_countermodel(&o, &d, &q)? {
        println!("countermodel: {m}");
    }

    let o = load_prior_ontology("A -> F B")?;
    let e = ExampleSet::parse(&["A@1"], &["B@2"])?;
    for cls in [QueryClass::PathDiamond, QueryClass::BranchDiamond] {
        let v = decide(&Problem::new(cls, e.clone(), Ontology::Prior(o.clone())))?;
        println!("{cls}: separable = {}, query = {:?}", v.separable, v.witness.map(|q| q.to_string()));
    }
    Ok(())
}
