//! Decide separability of the sensor example for every query class and print the
//! separating queries.
//!
//! Run with `cargo run --example decide`.

use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Positive runs: a low temperature (T) followed two or more steps later by a valve
    // event (V). Negative runs lack one of the two or have them in the wrong order.
    let e = ExampleSet::parse(&["T@2, V@4", "T@1, V@4"], &["T@1", "V@4", "V@1, T@2"])?;
    for cls in QueryClass::ALL {
        let v = decide(&Problem::new(cls, e.clone(), Ontology::None))?;
        match &v.witness {
            Some(q) => println!("{cls:<20} separable by {q}"),
            None => println!("{cls:<20} not separable"),
        }
    }
    Ok(())
}
