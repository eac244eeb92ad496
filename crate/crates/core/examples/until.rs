//! The until classes: a nested until separates examples that no simple-until query can.
//!
//! Run with `cargo run --example until`.

use ltl_qbe::logic::parse_query;
use ltl_qbe::qbe::separates;
use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = ExampleSet::parse(&["B@2, C@2", "A@2, B@3, B@4, C@4"], &["A@2, B@3, B@5, C@5"])?;
    for cls in [QueryClass::PathUntil, QueryClass::SimpleUntil, QueryClass::FullUntil] {
        let v = decide(&Problem::new(cls, e.clone(), Ontology::None))?;
        match v.witness {
            Some(q) => println!("{cls:<12} separable by {q}"),
            None => println!("{cls:<12} not separable"),
        }
    }
    let q = parse_query("(A U B) U C")?;
    println!("{q} separates: {}", separates(&e, &Ontology::None, &q)?);
    Ok(())
}
