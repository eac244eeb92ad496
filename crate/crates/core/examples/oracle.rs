//! The brute-force reference decider next to the engine, and the size of the query spaces
//! it enumerates.
//!
//! Run with `cargo run --release --example oracle`.

use ltl_qbe::oracle::{brute_force_decide, enumerate_queries, Bounds};
use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = ExampleSet::parse(&["A@1, B@2", "A@1, B@3"], &["B@1, A@2", "A@1"])?;
    for cls in QueryClass::ALL {
        let p = Problem::new(cls, e.clone(), Ontology::None);
        let engine = decide(&p)?;
        let oracle = brute_force_decide(&p, &Bounds::default())?;
        println!(
            "{cls:<20} engine {:<5} oracle {:<5} oracle query {}",
            engine.separable,
            oracle.separable,
            oracle.witness.map(|q| q.to_string()).unwrap_or_else(|| "-".into())
        );
    }
    let atoms = ["A".to_string(), "B".to_string()];
    for cls in QueryClass::ALL {
        println!("{cls:<20} {} queries of depth <= 1", enumerate_queries(cls, &atoms, 1, 2).len());
    }
    Ok(())
}
