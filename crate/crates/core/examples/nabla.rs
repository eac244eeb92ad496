//! The `⋖`/`∇` calculus on sets of time points, with and without wrap-around in a
//! periodic window `[M, P)`.
//!
//! Run with `cargo run --example nabla`.

use std::collections::BTreeSet;

use ltl_qbe::repr::{lessdot, lessdot_mp, nabla, nabla_mp};

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn main() {
    let (d, e) = (set(&[1, 2, 3]), set(&[3, 4]));
    println!("{d:?} ⋖ {e:?}: {}", lessdot(&d, &e));
    println!("∇({d:?}, {e:?}) = {:?}", nabla(&d, &e));

    let (d, e) = (set(&[1, 4, 6, 7]), set(&[3, 5]));
    println!("{d:?} ⋖ {e:?} in [2, 8): {}", lessdot_mp(&d, &e, 2, 8));
    println!("∇_(2,8)({d:?}, {e:?}) = {:?}", nabla_mp(&d, &e, 2, 8));
}
