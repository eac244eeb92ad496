//! Block dynamic programme for path classes over lasso models.
//!
//! A path query is read as a sequence of blocks: the first block is evaluated at 0 and every
//! later block is reached by an `F`. Inside a block consecutive positions are linked by `X`.
//! A DP node fixes one anchor per positive (a chosen match) and the earliest possible anchor
//! per negative (or none). Earlier anchors dominate later ones because every continuation
//! starts strictly after the anchor, and all loop positions are interchangeable as anchors,
//! so anchors range over prefix positions plus one "loop" value.
//!
//! For `X`/`F` paths the anchor is a block's last position (`F` follows the last `X`); for
//! block paths `β0 & F(β1 & F(...))` it is the block's first position.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::logic::{LassoModel, Query, QueryClass};
use crate::tsys::{Label, Signature};

use super::{Prepared, QbeError, Stats, Verdict};

const NONE: u32 = u32::MAX;

/// Restrictions on the blocks the DP may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpOptions {
    /// Longest block; defaults to the longest positive lasso.
    pub max_block: Option<usize>,
    /// Longest initial block (the one evaluated at position 0).
    pub max_initial_block: Option<usize>,
    /// Most blocks after the initial one.
    pub max_blocks: Option<usize>,
    /// Require every conjunction except the one at position 0 to be non-empty.
    pub nonempty_steps: bool,
    /// Upper bound on DP nodes.
    pub node_cap: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { max_block: None, max_initial_block: None, max_blocks: None, nonempty_steps: false, node_cap: 2_000_000 }
    }
}

/// A lasso with bitmask labels.
#[derive(Clone, Debug)]
pub(crate) struct Inst {
    pub pre: usize,
    pub len: usize,
    pub labels: Vec<Label>,
}

impl Inst {
    pub fn new(m: &LassoModel, sig: &Signature) -> Self {
        Inst { pre: m.pre(), len: m.len(), labels: (0..m.len()).map(|n| sig.label(m.at(n))).collect() }
    }

    pub fn succ(&self, n: usize) -> usize {
        if n + 1 == self.len {
            self.pre
        } else {
            n + 1
        }
    }

    /// Position reached after `j` successor steps.
    pub fn step(&self, mut n: usize, j: usize) -> usize {
        for _ in 0..j {
            n = self.succ(n);
        }
        n
    }

    /// Anchor value of a position: prefix positions are kept, loop positions collapse.
    pub fn compress(&self, n: usize) -> u32 {
        n.min(self.pre) as u32
    }

    /// Positions strictly in the future of an anchor.
    pub fn after(&self, anchor: u32) -> std::ops::Range<usize> {
        let a = anchor as usize;
        if a < self.pre {
            a + 1..self.len
        } else {
            self.pre..self.len
        }
    }

    /// Whether the block matches from `s`.
    pub fn matches(&self, s: usize, block: &[Label]) -> bool {
        let mut n = s;
        for (j, &l) in block.iter().enumerate() {
            if j > 0 {
                n = self.succ(n);
            }
            if l & !self.labels[n] != 0 {
                return false;
            }
        }
        true
    }
}

/// Conjunction of a label's atoms.
pub(crate) fn label_query(sig: &Signature, l: Label) -> Query {
    Query::conj(sig.atoms_of(l))
}

/// `λ0 & X(λ1 & X(... & X(λk & tail)))`, dropping `X true` suffixes.
pub(crate) fn chain_query(sig: &Signature, block: &[Label], tail: Query) -> Query {
    let mut q = tail;
    for (j, &l) in block.iter().enumerate().rev() {
        let here = label_query(sig, l);
        q = if j + 1 == block.len() { Query::and([here, q]) } else if q == Query::Top { here } else { Query::and([here, Query::next(q)]) };
    }
    q
}

/// Builds the query of a block sequence (the first block sits at position 0).
pub(crate) fn blocks_query(sig: &Signature, blocks: &[Vec<Label>], cls: QueryClass) -> Query {
    let mut q: Option<Query> = None;
    for block in blocks.iter().rev() {
        q = Some(match (cls, q) {
            (_, None) => chain_query(sig, block, Query::Top),
            (QueryClass::PathDiamondCircBlocks, Some(rest)) => {
                Query::and([chain_query(sig, block, Query::Top), Query::diamond(rest)])
            }
            (_, Some(rest)) => chain_query(sig, block, Query::diamond(rest)),
        });
    }
    q.unwrap_or(Query::Top)
}

struct Node {
    key: Vec<u32>,
    parent: Option<usize>,
    block: Vec<Label>,
    depth: usize,
}

/// Decides separability of positive lassos from negative lassos by a query of a path class
/// (`PathDiamond`, `PathNextDiamond` or `PathDiamondCircBlocks`).
pub fn dp_path(
    positives: &[LassoModel],
    negatives: &[LassoModel],
    sig: &Signature,
    cls: QueryClass,
    opts: &DpOptions,
) -> Result<Verdict, QbeError> {
    if positives.is_empty() {
        return Err(QbeError::EmptyPositives);
    }
    let pos: Vec<Inst> = positives.iter().map(|m| Inst::new(m, sig)).collect();
    let neg: Vec<Inst> = negatives.iter().map(|m| Inst::new(m, sig)).collect();
    let start_anchor = matches!(cls, QueryClass::PathDiamondCircBlocks);
    let max_block = match cls {
        QueryClass::PathDiamond => 1,
        QueryClass::PathNextDiamond | QueryClass::PathDiamondCircBlocks => {
            opts.max_block.unwrap_or_else(|| pos.iter().map(|i| i.len).max().unwrap_or(1)).max(1)
        }
        other => panic!("dp_path called with non-path class {other}"),
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let finish = |nodes: &Vec<Node>, at: usize| -> Query {
        let mut blocks = Vec::new();
        let mut cur = Some(at);
        while let Some(i) = cur {
            blocks.push(nodes[i].block.clone());
            cur = nodes[i].parent;
        }
        blocks.reverse();
        blocks_query(sig, &blocks, cls)
    };
    let stats = |n: usize| Stats { nodes: n, ..Stats::default() };

    // Transition helper shared by the initial block and later blocks.
    let advance = |starts: &[usize], neg_anchor: &[u32], block: &[Label], initial: bool| -> Vec<u32> {
        let mut key = Vec::with_capacity(pos.len() + neg.len());
        for (inst, &s) in pos.iter().zip(starts) {
            let a = if start_anchor { s } else { inst.step(s, block.len() - 1) };
            key.push(inst.compress(a));
        }
        for (inst, &b) in neg.iter().zip(neg_anchor) {
            let found = if b == NONE {
                None
            } else if initial {
                inst.matches(0, block).then_some(0)
            } else {
                inst.after(b).find(|&s| inst.matches(s, block))
            };
            key.push(match found {
                None => NONE,
                Some(s) => inst.compress(if start_anchor { s } else { inst.step(s, block.len() - 1) }),
            });
        }
        key
    };

    let mut push = |nodes: &mut Vec<Node>, key: Vec<u32>, parent: Option<usize>, block: Vec<Label>, depth: usize| -> Result<Option<usize>, QbeError> {
        if index.contains_key(&key) {
            return Ok(None);
        }
        if nodes.len() >= opts.node_cap {
            return Err(QbeError::NodeCap(opts.node_cap));
        }
        let id = nodes.len();
        index.insert(key.clone(), id);
        nodes.push(Node { key, parent, block, depth });
        Ok(Some(id))
    };

    let block_ok = |block: &[Label], initial: bool| -> bool {
        !opts.nonempty_steps || block.iter().enumerate().all(|(j, &l)| l != 0 || (initial && j == 0))
    };

    // Initial blocks at position 0.
    let zeros = vec![0usize; pos.len()];
    let all_neg: Vec<u32> = vec![0; neg.len()];
    for len in 1..=opts.max_initial_block.map_or(max_block, |m| m.min(max_block)) {
        let block: Vec<Label> = (0..len)
            .map(|j| pos.iter().fold(!0, |acc, inst| acc & inst.labels[inst.step(0, j)]))
            .collect();
        if !block_ok(&block, true) {
            continue;
        }
        let key = advance(&zeros, &all_neg, &block, true);
        let accept = key[pos.len()..].iter().all(|&b| b == NONE);
        if let Some(id) = push(&mut nodes, key, None, block, 0)? {
            if accept {
                return Ok(Verdict::separable(finish(&nodes, id)).with_stats(stats(nodes.len())));
            }
            queue.push_back(id);
        }
    }

    while let Some(cur) = queue.pop_front() {
        if opts.max_blocks.is_some_and(|m| nodes[cur].depth >= m) {
            continue;
        }
        let key = nodes[cur].key.clone();
        let depth = nodes[cur].depth;
        let (pos_anchor, neg_anchor) = key.split_at(pos.len());
        let ranges: Vec<Vec<usize>> = pos.iter().zip(pos_anchor).map(|(i, &a)| i.after(a).collect()).collect();
        if ranges.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; pos.len()];
        loop {
            let starts: Vec<usize> = choice.iter().zip(&ranges).map(|(&c, r)| r[c]).collect();
            let mut block: Vec<Label> = Vec::with_capacity(max_block);
            let mut cursor = starts.clone();
            for j in 0..max_block {
                if j > 0 {
                    for (c, inst) in cursor.iter_mut().zip(&pos) {
                        *c = inst.succ(*c);
                    }
                }
                block.push(cursor.iter().zip(&pos).fold(!0, |acc, (&c, inst)| acc & inst.labels[c]));
                if block_ok(&block, false) {
                    let next = advance(&starts, neg_anchor, &block, false);
                    let accept = next[pos.len()..].iter().all(|&b| b == NONE);
                    if let Some(id) = push(&mut nodes, next, Some(cur), block.clone(), depth + 1)? {
                        if accept {
                            return Ok(Verdict::separable(finish(&nodes, id)).with_stats(stats(nodes.len())));
                        }
                        queue.push_back(id);
                    }
                }
            }
            // Odometer over start choices.
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < ranges[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    Ok(Verdict::not_separable().with_stats(stats(nodes.len())))
}

pub(crate) fn dp_prepared(p: &Prepared, cls: QueryClass, opts: &DpOptions) -> Result<Verdict, QbeError> {
    dp_path(&p.positives, &p.negatives, &p.sig, cls, opts)
}
