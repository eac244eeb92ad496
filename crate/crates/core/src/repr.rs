//! Transition systems representing data instances and canonical models.
//!
//! A system *represents* an instance when the queries read off its finite runs (for
//! path-until queries) or finite computation subtrees (for until queries) are exactly the
//! queries true at 0 on the instance, up to subsumption. Uncoloured systems serve the
//! path-until and simple-until classes; black/red systems serve the full until class, where
//! red edges describe the left argument of an `U` and black edges its right argument.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::horn::CanonicalModel;
use crate::logic::{DataInstance, LassoModel};
use crate::tsys::{Color, Label, Signature, TransitionSystem, SIGMA_BOT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("{0} positions exceed the supported {MAX_POSITIONS} for black/red systems")]
    TooManyPositions(usize),
}

/// Largest number of positions handled by the black/red constructions.
pub const MAX_POSITIONS: usize = 16;

/// Labels of the positions of a lasso (or of a plain instance, with one empty loop point).
fn position_labels(m: &LassoModel, sig: &Signature) -> Vec<Label> {
    (0..m.len()).map(|n| sig.label(m.at(n))).collect()
}

/// Atoms true at every listed position; `Σ⊥` for the empty list.
fn common(labels: &[Label], positions: impl IntoIterator<Item = usize>) -> Label {
    let mut acc = SIGMA_BOT;
    let mut any = false;
    for n in positions {
        acc &= labels[n];
        any = true;
    }
    if any {
        acc & !crate::tsys::BOT
    } else {
        SIGMA_BOT
    }
}

/// Uncoloured system of a plain instance: states `0..=maxD+1`, the last one an empty sink
/// with a `Σ⊥` loop; `j → k` is labelled by the atoms holding throughout `(j, k)`.
pub fn repr_plain(d: &DataInstance, sig: &Signature) -> TransitionSystem {
    let c = d.max_timestamp() + 1;
    let m = LassoModel::from_data(d);
    let labels = position_labels(&m, sig);
    let mut ts = TransitionSystem::new(false);
    for (j, &l) in labels.iter().enumerate() {
        ts.add_state(j.to_string(), l);
    }
    for j in 0..=c {
        for k in j + 1..=c {
            ts.add_edge(j, k, common(&labels, j + 1..k), Color::Black);
        }
    }
    ts.add_edge(c, c, SIGMA_BOT, Color::Black);
    ts.initial = vec![0];
    ts
}

/// Uncoloured system of a canonical model: states are the lasso positions `0..P`.
/// Forward edges `n → m` are labelled by the atoms holding throughout `(n, m)`; inside the
/// loop `[M, P)`, edges `n → m` with `n ≥ m` go around the loop through `(n, P) ∪ [M, m)`.
pub fn repr_horn(cm: &CanonicalModel, sig: &Signature) -> TransitionSystem {
    repr_lasso(&cm.lasso, sig)
}

/// [`repr_horn`] for an arbitrary lasso.
pub fn repr_lasso(m: &LassoModel, sig: &Signature) -> TransitionSystem {
    let labels = position_labels(m, sig);
    let (pre, len) = (m.pre(), m.len());
    let mut ts = TransitionSystem::new(false);
    for (j, &l) in labels.iter().enumerate() {
        ts.add_state(j.to_string(), l);
    }
    for n in 0..len {
        for k in n + 1..len {
            ts.add_edge(n, k, common(&labels, n + 1..k), Color::Black);
        }
        if n >= pre {
            for k in pre..=n {
                ts.add_edge(n, k, common(&labels, (n + 1..len).chain(pre..k)), Color::Black);
            }
        }
    }
    ts.initial = vec![0];
    ts
}

fn bits(set: &BTreeSet<usize>) -> u64 {
    set.iter().fold(0, |acc, &x| acc | 1 << x)
}

fn unbits(b: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| b >> i & 1 == 1).collect()
}

/// `µ(x)` on bitsets: the least element of `e` after `x`, or for points of the periodic
/// zone `[m, p)` without one, the least element of `e` inside the zone.
fn mu(x: usize, e: u64, m: usize, p: usize) -> Option<usize> {
    let after = if x >= 63 { 0 } else { e & !((1u64 << (x + 1)) - 1) };
    if after != 0 {
        return Some(after.trailing_zeros() as usize);
    }
    if x >= m && x < p {
        let zone = e & !((1u64 << m) - 1);
        if zone != 0 {
            return Some(zone.trailing_zeros() as usize);
        }
    }
    None
}

fn lessdot_bits(d: u64, e: u64, m: usize, p: usize) -> Option<u64> {
    if d == 0 || e == 0 {
        return None;
    }
    let mut hit = 0u64;
    let mut nabla = 0u64;
    for x in unbits(d) {
        let y = mu(x, e, m, p)?;
        hit |= 1 << y;
        if x < y {
            for z in x + 1..y {
                nabla |= 1 << z;
            }
        } else {
            for z in (x + 1..p).chain(m..y) {
                nabla |= 1 << z;
            }
        }
    }
    (hit == e).then_some(nabla)
}

/// `d ⋖ e`: mapping every point of `d` to the least point of `e` after it is a total
/// surjection.
pub fn lessdot(d: &BTreeSet<usize>, e: &BTreeSet<usize>) -> bool {
    let p = d.iter().chain(e).max().map_or(0, |x| x + 1);
    lessdot_bits(bits(d), bits(e), p, p).is_some()
}

/// `∇(d, e)`: the union of the open intervals between each point and its image
/// (`None` unless `d ⋖ e`).
pub fn nabla(d: &BTreeSet<usize>, e: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    let p = d.iter().chain(e).max().map_or(0, |x| x + 1);
    lessdot_bits(bits(d), bits(e), p, p).map(unbits)
}

/// The wrap-around variant of [`lessdot`] for a lasso with loop `[m, p)`.
pub fn lessdot_mp(d: &BTreeSet<usize>, e: &BTreeSet<usize>, m: usize, p: usize) -> bool {
    lessdot_bits(bits(d), bits(e), m, p).is_some()
}

/// The wrap-around variant of [`nabla`]: a point `x` of the loop mapped to `y ≤ x` covers
/// `(x, p) ∪ [m, y)`.
pub fn nabla_mp(d: &BTreeSet<usize>, e: &BTreeSet<usize>, m: usize, p: usize) -> Option<BTreeSet<usize>> {
    lessdot_bits(bits(d), bits(e), m, p).map(unbits)
}

/// Black/red system of a plain instance.
pub fn repr_plain_br(d: &DataInstance, sig: &Signature) -> Result<TransitionSystem, ReprError> {
    let m = LassoModel::from_data(d);
    let labels = position_labels(&m, sig);
    let n = d.max_timestamp() + 1;
    build_br(&labels[..n], n, n, true)
}

/// Black/red system of a canonical model, using the wrap-around `⋖`/`∇` over its lasso.
pub fn repr_horn_br(cm: &CanonicalModel, sig: &Signature) -> Result<TransitionSystem, ReprError> {
    repr_lasso_br(&cm.lasso, sig)
}

/// [`repr_horn_br`] for an arbitrary lasso.
pub fn repr_lasso_br(m: &LassoModel, sig: &Signature) -> Result<TransitionSystem, ReprError> {
    let labels = position_labels(m, sig);
    build_br(&labels, m.pre(), m.len(), false)
}

/// States: `0`, `u`, optionally `z`, and reachable pairs `(F, G)` of position sets, where
/// `G` holds the points reached so far and `F` the points strictly between them and their
/// predecessors. From `(F, G)`, black edges go to `(∇(G, G'), G')` for `G ⋖ G'` and red
/// edges to `(∇(F, G'), G')` for `F ⋖ G'`; edges are labelled by the atoms common to the new
/// `F` (`Σ⊥` when it is empty).
///
/// With `with_z` (plain instances), `z` stands for every point after the data: it is reached
/// by black and red `Σ⊥` edges from `0` and every pair state (black only from `0`), loops on
/// itself in both colours and has a red edge to `u`. Subtrees below `z` only denote valid
/// formulas, because every edge into `z` carries `⊥`.
fn build_br(labels: &[Label], m: usize, p: usize, with_z: bool) -> Result<TransitionSystem, ReprError> {
    if p > MAX_POSITIONS {
        return Err(ReprError::TooManyPositions(p));
    }
    let mut ts = TransitionSystem::new(true);
    let zero = ts.add_state("0", labels[0]);
    ts.initial = vec![zero];
    let u = ts.add_state("u", SIGMA_BOT);
    ts.add_edge(u, u, SIGMA_BOT, Color::Black);
    ts.add_edge(u, u, SIGMA_BOT, Color::Red);
    let z = with_z.then(|| {
        let z = ts.add_state("z", 0);
        ts.add_edge(z, z, SIGMA_BOT, Color::Black);
        ts.add_edge(z, z, SIGMA_BOT, Color::Red);
        ts.add_edge(z, u, SIGMA_BOT, Color::Red);
        ts.add_edge(zero, z, SIGMA_BOT, Color::Black);
        z
    });
    let label_of = |set: u64| common(labels, unbits(set));
    let subsets: Vec<u64> = (1..(1u64 << p)).collect();
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut queue: VecDeque<(u64, u64, usize)> = VecDeque::new();
    let mut intern = |ts: &mut TransitionSystem, f: u64, g: u64, queue: &mut VecDeque<(u64, u64, usize)>| -> usize {
        *index.entry((f, g)).or_insert_with(|| {
            let name = format!("{:?}{:?}", unbits(f), unbits(g));
            let id = ts.add_state(name, label_of(g));
            queue.push_back((f, g, id));
            id
        })
    };
    let successors = |src: u64| -> Vec<(u64, u64)> {
        subsets.iter().filter_map(|&g| lessdot_bits(src, g, m, p).map(|f| (f, g))).collect()
    };
    for (f, g) in successors(1) {
        let to = intern(&mut ts, f, g, &mut queue);
        ts.add_edge(zero, to, label_of(f), Color::Black);
    }
    while let Some((f, g, from)) = queue.pop_front() {
        for (f2, g2) in successors(g) {
            let to = intern(&mut ts, f2, g2, &mut queue);
            ts.add_edge(from, to, label_of(f2), Color::Black);
        }
        if f != 0 {
            for (f2, g2) in successors(f) {
                let to = intern(&mut ts, f2, g2, &mut queue);
                ts.add_edge(from, to, label_of(f2), Color::Red);
            }
        } else {
            ts.add_edge(from, u, SIGMA_BOT, Color::Red);
        }
        if let Some(z) = z {
            ts.add_edge(from, z, SIGMA_BOT, Color::Black);
            ts.add_edge(from, z, SIGMA_BOT, Color::Red);
        }
    }
    Ok(ts)
}
