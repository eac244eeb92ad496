//! The canonical (least) lasso model of a Horn ontology and a data instance, with its
//! handle `s` and period `p`.
//!
//! Run with `cargo run --example canonical`.

use ltl_qbe::horn::{canonical_model, load_ontology};
use ltl_qbe::logic::DataInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = load_ontology("A -> C\nA -> X B\nB -> X X B\nB -> X C")?;
    let d = DataInstance::parse("d", "A@0")?;
    let cm = canonical_model(&o, &d)?;
    println!("model  {}", cm.lasso);
    println!("handle s = {}, period p = {}", cm.s, cm.p);
    for t in 0..8 {
        let atoms: Vec<&str> = cm.lasso.unfolded(t).iter().map(String::as_str).collect();
        println!("  t = {t}: {{{}}}", atoms.join(", "));
    }
    Ok(())
}
