//! Separability under a Horn ontology: the axiom `X H -> T` ("a heater switched on at the
//! next step means the temperature is low now") makes an otherwise inseparable example
//! set separable.
//!
//! Run with `cargo run --example horn`.

use ltl_qbe::horn::{certain_answer, load_ontology};
use ltl_qbe::logic::{parse_query, DataInstance};
use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = load_ontology("X H -> T")?;
    let e = ExampleSet::parse(&["H@3, V@4", "T@1, V@4"], &["T@1", "V@4", "V@1, T@2"])?;

    let bare = decide(&Problem::new(QueryClass::PathDiamond, e.clone(), Ontology::None))?;
    println!("without the axiom: separable = {}", bare.separable);
    let with = decide(&Problem::new(QueryClass::PathDiamond, e, Ontology::Horn(o.clone())))?;
    println!("with the axiom:    separable = {}, query = {}", with.separable, with.witness.unwrap());

    let d = DataInstance::parse("e1", "H@3, V@4")?;
    let q = parse_query("F(T & F F V)")?;
    println!("certain answer of {q} on {d}: {}", certain_answer(&o, &d, &q, 0)?);
    Ok(())
}
