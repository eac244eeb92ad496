//! Separability-preserving reductions: merging the negatives of a path-until problem into
//! one, and compiling next-operators into fresh shifted atoms.
//!
//! Run with `cargo run --example reductions`.

use ltl_qbe::transform::{compile_next_to_diamond, merge_negatives_for_path_until};
use ltl_qbe::{decide, ExampleSet, Ontology, Problem, QueryClass};

fn verdict(cls: QueryClass, e: &ExampleSet) -> Result<bool, ltl_qbe::QbeError> {
    Ok(decide(&Problem::new(cls, e.clone(), Ontology::None))?.separable)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = ExampleSet::parse(&["A@1, A@2", "A@2"], &["A@1", "A@3"])?;
    let merged = merge_negatives_for_path_until(&e)?;
    println!("merged negative: {}", merged.negatives[0]);
    println!(
        "path-until verdict before/after merging: {}/{}",
        verdict(QueryClass::PathUntil, &e)?,
        verdict(QueryClass::PathUntil, &merged)?
    );

    let e = ExampleSet::parse(&["A@1"], &["A@2"])?;
    let compiled = compile_next_to_diamond(&e)?;
    println!("compiled positive: {}", compiled.positives[0]);
    println!(
        "path-next-diamond on the original: {}, path-diamond on the compiled set: {}",
        verdict(QueryClass::PathNextDiamond, &e)?,
        verdict(QueryClass::PathDiamond, &compiled)?
    );
    Ok(())
}
