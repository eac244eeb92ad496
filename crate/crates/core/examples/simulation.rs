//! Transition-system representations of data instances: simulation between them, and the
//! branching query read off a subtree that witnesses a failed simulation.
//!
//! Run with `cargo run --example simulation`.

use ltl_qbe::logic::{eval_data, DataInstance};
use ltl_qbe::qbe::query_from_tree;
use ltl_qbe::repr::repr_plain_br;
use ltl_qbe::tsys::{extract_failing_subtree, simulates, Signature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::new(["A".to_string(), "B".to_string()])?;
    let pos = DataInstance::parse("pos", "A@1, B@2")?;
    let neg = DataInstance::parse("neg", "B@1, A@2")?;
    let (s, t) = (repr_plain_br(&pos, &sig)?, repr_plain_br(&neg, &sig)?);
    println!("positive system: {} states, {} edges", s.len(), s.edge_count());
    println!("negative simulates positive: {}", simulates(&s, &t));
    if let Some(tree) = extract_failing_subtree(&s, &t) {
        let q = query_from_tree(&tree, &sig);
        println!("failing subtree of depth {} gives {q}", tree.depth());
        println!("  true on {pos}: {}", eval_data(&pos, &q, 0));
        println!("  true on {neg}: {}", eval_data(&neg, &q, 0));
    }
    println!("\n{}", s.to_dot(&sig));
    Ok(())
}
