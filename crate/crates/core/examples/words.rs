//! Words as data instances: separation by a common subsequence (`F`-chains of letters)
//! or a common subword (a block of consecutive letters).
//!
//! Run with `cargo run --example words`.

use ltl_qbe::logic::{DataInstance, ExampleSet, LassoModel, QueryClass};
use ltl_qbe::qbe::{dp_path, DpOptions};
use ltl_qbe::tsys::Signature;

/// Letter `i` of the word becomes a fact at time `i + 1`.
fn word(w: &str) -> DataInstance {
    DataInstance::new(w, w.chars().enumerate().map(|(i, c)| (c.to_string(), i + 1))).expect("valid word")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = ExampleSet::new(vec![word("ab"), word("cab")], vec![word("acb")]);
    let sig = Signature::new(e.signature())?;
    let models = |ds: &[DataInstance]| ds.iter().map(LassoModel::from_data).collect::<Vec<_>>();
    let (pos, neg) = (models(&e.positives), models(&e.negatives));

    let subsequence = DpOptions { nonempty_steps: true, max_initial_block: Some(1), ..DpOptions::default() };
    let v = dp_path(&pos, &neg, &sig, QueryClass::PathDiamond, &subsequence)?;
    println!("common subsequence: separable = {}", v.separable);

    let subword = DpOptions { max_blocks: Some(1), ..subsequence };
    let v = dp_path(&pos, &neg, &sig, QueryClass::PathDiamondCircBlocks, &subword)?;
    println!("common subword:     separable = {}, query = {:?}", v.separable, v.witness.map(|q| q.to_string()));
    Ok(())
}
