//! Step-by-step search for path queries over canonical models.
//!
//! Unlike the block DP, this search guesses the query itself one step at a time: a
//! conjunction `ρ ⊆ Σ` together with the operator (`X` or `F`) leading to it. For every
//! instance it tracks the set of `(anchor, current)` position pairs at which the query
//! prefix read so far can be matched. An `X` step moves every pair's current position to its
//! successor; an `F` step restarts from the earliest anchor, since earlier anchors have a
//! larger future. During an `X`-block the whole set must be kept — collapsing it to the
//! earliest match too soon loses matches whose later positions carry the required atoms.
//!
//! A query prefix separates once every negative has no matching pair left while every
//! positive still has one. The state space is finite, so breadth-first search with
//! memoisation is complete without explicit depth bounds.

use std::collections::{HashMap, VecDeque};

use crate::horn::{canonical_model, HornError, HornOntology};
use crate::logic::{ExampleSet, LassoModel, Query, QueryClass};
use crate::tsys::{Label, Signature};

use super::dp::{blocks_query, Inst};
use super::{signature, Prepared, QbeError, Stats, Verdict};

type Pairs = Vec<(u32, u32)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Next,
    Diamond,
}

struct Node {
    parent: Option<usize>,
    step: Step,
    rho: Label,
}

/// Decides Horn separability for a path class by searching over query steps on the
/// canonical models of the examples.
pub fn horn_diamond_search(
    o: &HornOntology,
    e: &ExampleSet,
    cls: QueryClass,
    node_cap: usize,
) -> Result<Verdict, QbeError> {
    let sig = signature(e, &super::Ontology::Horn(o.clone()))?;
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for d in &e.negatives {
        match canonical_model(o, d) {
            Ok(m) => negatives.push(m.lasso),
            Err(HornError::Inconsistent) => return Ok(Verdict::not_separable()),
            Err(err) => return Err(err.into()),
        }
    }
    for d in &e.positives {
        match canonical_model(o, d) {
            Ok(m) => positives.push(m.lasso),
            Err(HornError::Inconsistent) => {}
            Err(err) => return Err(err.into()),
        }
    }
    if positives.is_empty() {
        return Ok(Verdict::separable(Query::Bot));
    }
    search(&positives, &negatives, &sig, cls, node_cap)
}

pub(crate) fn search_prepared(p: &Prepared, cls: QueryClass, node_cap: usize) -> Result<Verdict, QbeError> {
    search(&p.positives, &p.negatives, &p.sig, cls, node_cap)
}

fn search(
    positives: &[LassoModel],
    negatives: &[LassoModel],
    sig: &Signature,
    cls: QueryClass,
    node_cap: usize,
) -> Result<Verdict, QbeError> {
    let insts: Vec<Inst> = positives.iter().chain(negatives).map(|m| Inst::new(m, sig)).collect();
    let npos = positives.len();
    let start_anchor = matches!(cls, QueryClass::PathDiamondCircBlocks);
    let allow_next = !matches!(cls, QueryClass::PathDiamond);
    let width = sig.atoms().len();
    let rhos: Vec<Label> = (0..1u128 << width).collect();

    let alive = |state: &[Pairs]| state[..npos].iter().all(|s| !s.is_empty());
    let done = |state: &[Pairs]| state[npos..].iter().all(|s| s.is_empty());

    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<Vec<Pairs>, usize> = HashMap::new();
    let mut states: Vec<Vec<Pairs>> = Vec::new();
    let mut queue = VecDeque::new();

    let rebuild = |nodes: &Vec<Node>, at: usize| -> Query {
        let mut steps = Vec::new();
        let mut cur = Some(at);
        while let Some(i) = cur {
            steps.push((nodes[i].step, nodes[i].rho));
            cur = nodes[i].parent;
        }
        steps.reverse();
        let mut blocks: Vec<Vec<Label>> = Vec::new();
        for (k, (step, rho)) in steps.into_iter().enumerate() {
            if k == 0 || step == Step::Diamond {
                blocks.push(vec![rho]);
            } else {
                blocks.last_mut().expect("initial block").push(rho);
            }
        }
        blocks_query(sig, &blocks, cls)
    };

    for &rho in &rhos {
        let state: Vec<Pairs> = insts
            .iter()
            .map(|i| if rho & !i.labels[0] == 0 { vec![(0, 0)] } else { vec![] })
            .collect();
        if !alive(&state) || index.contains_key(&state) {
            continue;
        }
        let id = nodes.len();
        nodes.push(Node { parent: None, step: Step::Diamond, rho });
        index.insert(state.clone(), id);
        if done(&state) {
            return Ok(Verdict::separable(rebuild(&nodes, id)).with_stats(Stats { nodes: nodes.len(), ..Stats::default() }));
        }
        states.push(state);
        queue.push_back(id);
    }

    while let Some(cur) = queue.pop_front() {
        let state = states[cur].clone();
        for step in [Step::Next, Step::Diamond] {
            if step == Step::Next && !allow_next {
                continue;
            }
            for &rho in &rhos {
                let next: Vec<Pairs> = insts
                    .iter()
                    .zip(&state)
                    .map(|(inst, pairs)| advance(inst, pairs, step, rho, start_anchor))
                    .collect();
                if !alive(&next) || index.contains_key(&next) {
                    continue;
                }
                if nodes.len() >= node_cap {
                    return Err(QbeError::NodeCap(node_cap));
                }
                let id = nodes.len();
                nodes.push(Node { parent: Some(cur), step, rho });
                index.insert(next.clone(), id);
                if done(&next) {
                    return Ok(Verdict::separable(rebuild(&nodes, id))
                        .with_stats(Stats { nodes: nodes.len(), ..Stats::default() }));
                }
                states.push(next);
                queue.push_back(id);
            }
        }
    }
    Ok(Verdict::not_separable().with_stats(Stats { nodes: nodes.len(), ..Stats::default() }))
}

fn advance(inst: &Inst, pairs: &Pairs, step: Step, rho: Label, start_anchor: bool) -> Pairs {
    if pairs.is_empty() {
        return Vec::new();
    }
    let fits = |n: usize| rho & !inst.labels[n] == 0;
    let mut out: Pairs = match step {
        Step::Next => pairs
            .iter()
            .filter_map(|&(a, c)| {
                let n = inst.succ(c as usize);
                fits(n).then_some((if start_anchor { a } else { n as u32 }, n as u32))
            })
            .collect(),
        Step::Diamond => {
            let earliest = pairs.iter().map(|&(a, _)| inst.compress(a as usize)).min().expect("non-empty");
            inst.after(earliest).filter(|&m| fits(m)).map(|m| (m as u32, m as u32)).collect()
        }
    };
    out.sort_unstable();
    out.dedup();
    out
}
