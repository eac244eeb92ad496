//! Reference deciders used to cross-check the engine.
//!
//! [`brute_force_decide`] works semantically: every query is abstracted by its truth vector
//! over all positions of the (canonical) lasso models of the examples, and the set of
//! vectors realised by a class is computed as a fixpoint of the class's constructors,
//! starting from conjunctions of atoms. Positive queries are monotone, so a vector that is
//! at least as true on positive positions and at most as true on negative positions
//! dominates another in every context; only non-dominated vectors are kept. The fixpoint is
//! reached after finitely many rounds because the vector space is finite, so the default
//! bounds are exact. Classes closed under conjunction are decided one negative at a time.
//!
//! Under a prior ontology the oracle enumerates queries syntactically
//! ([`enumerate_queries`]) and checks each one by entailment.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::horn::{canonical_model, HornError};
use crate::logic::{ExampleSet, LassoModel, Query, QueryClass};
use crate::prior::{prior_consistent, prior_entails, PriorError};
use crate::qbe::{Ontology, Problem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} lasso positions exceed the 128 supported by the vector oracle")]
    TooManyPositions(usize),
    #[error("more than {0} candidate vectors or queries")]
    TooLarge(usize),
    #[error("separability needs at least one positive example")]
    EmptyPositives,
    #[error(transparent)]
    Horn(#[from] HornError),
    #[error(transparent)]
    Prior(#[from] PriorError),
}

/// Limits on the oracle's search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Stop after this many constructor rounds (`None`: run to the fixpoint).
    pub max_rounds: Option<usize>,
    /// Upper bound on stored vectors (vector oracle) or enumerated queries (prior oracle).
    pub max_items: usize,
    /// Temporal depth of enumerated queries (prior oracle; `None`: `max maxD + |O| + |E−|`).
    pub max_depth: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_rounds: None, max_items: 200_000, max_depth: None }
    }
}

/// The oracle's answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub separable: bool,
    pub witness: Option<Query>,
}

type Vector = u128;

/// Truth vectors over the positions of a list of lassos.
struct Space {
    lassos: Vec<(usize, usize, usize)>, // (offset, pre, len)
    atoms: Vec<String>,
    atom_bits: Vec<Vector>,
    pos_mask: Vector,
    neg_mask: Vector,
    pos_zero: Vector,
    neg_zero: Vec<Vector>,
}

impl Space {
    fn new(positives: &[LassoModel], negatives: &[LassoModel], atoms: Vec<String>) -> Result<Self, OracleError> {
        let total: usize = positives.iter().chain(negatives).map(LassoModel::len).sum();
        if total > 128 {
            return Err(OracleError::TooManyPositions(total));
        }
        let mut lassos = Vec::new();
        let mut offset = 0;
        let mut space = Space {
            lassos: vec![],
            atom_bits: vec![0; atoms.len()],
            atoms,
            pos_mask: 0,
            neg_mask: 0,
            pos_zero: 0,
            neg_zero: vec![],
        };
        for (i, m) in positives.iter().chain(negatives).enumerate() {
            let span = ((1u128 << m.len()) - 1) << offset;
            if i < positives.len() {
                space.pos_mask |= span;
                space.pos_zero |= 1 << offset;
            } else {
                space.neg_mask |= span;
                space.neg_zero.push(1 << offset);
            }
            for n in 0..m.len() {
                for (k, a) in space.atoms.iter().enumerate() {
                    if m.at(n).contains(a) {
                        space.atom_bits[k] |= 1 << (offset + n);
                    }
                }
            }
            lassos.push((offset, m.pre(), m.len()));
            offset += m.len();
        }
        space.lassos = lassos;
        Ok(space)
    }

    fn conj(&self, set: u32) -> Vector {
        (0..self.atoms.len()).filter(|k| set >> k & 1 == 1).fold(!0, |acc, k| acc & self.atom_bits[k])
    }

    fn get(v: Vector, i: usize) -> bool {
        v >> i & 1 == 1
    }

    fn next(&self, v: Vector) -> Vector {
        let mut out = 0;
        for &(off, pre, len) in &self.lassos {
            for n in 0..len {
                let s = if n + 1 == len { pre } else { n + 1 };
                if Self::get(v, off + s) {
                    out |= 1 << (off + n);
                }
            }
        }
        out
    }

    fn until(&self, l: Vector, r: Vector) -> Vector {
        let mut out: Vector = 0;
        for &(off, pre, len) in &self.lassos {
            let succ = |n: usize| if n + 1 == len { pre } else { n + 1 };
            let mut u = vec![false; len];
            loop {
                let mut changed = false;
                for n in (0..len).rev() {
                    let s = succ(n);
                    let val = Self::get(r, off + s) || (Self::get(l, off + s) && u[s]);
                    if val && !u[n] {
                        u[n] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            for (n, &b) in u.iter().enumerate() {
                if b {
                    out |= 1 << (off + n);
                }
            }
        }
        out
    }

    fn diamond(&self, v: Vector) -> Vector {
        self.until(!0, v)
    }

    /// `a` dominates `b`: at least as true on positives, at most as true on negatives.
    fn dominates(&self, a: Vector, b: Vector) -> bool {
        (b & self.pos_mask) & !a == 0 && (a & self.neg_mask) & !b == 0
    }

    fn separates(&self, v: Vector) -> bool {
        v & self.pos_zero == self.pos_zero && self.neg_zero.iter().all(|&z| v & z == 0)
    }
}

/// An antichain of non-dominated vectors with a witness query for each.
struct Front<'a> {
    space: &'a Space,
    items: Vec<(Vector, Query)>,
    cap: usize,
}

impl<'a> Front<'a> {
    fn new(space: &'a Space, cap: usize) -> Self {
        Front { space, items: Vec::new(), cap }
    }

    /// Inserts unless dominated; returns whether the vector was added.
    fn insert(&mut self, v: Vector, q: Query) -> Result<bool, OracleError> {
        if self.items.iter().any(|(w, _)| self.space.dominates(*w, v)) {
            return Ok(false);
        }
        self.items.retain(|(w, _)| !self.space.dominates(v, *w));
        if self.items.len() >= self.cap {
            return Err(OracleError::TooLarge(self.cap));
        }
        self.items.push((v, q));
        Ok(true)
    }

    fn contains(&self, v: Vector) -> bool {
        self.items.iter().any(|(w, _)| *w == v)
    }

    fn find_separator(&self) -> Option<Query> {
        self.items.iter().find(|(v, _)| self.space.separates(*v)).map(|(_, q)| q.clone())
    }
}

/// Decides separability by exhaustive semantic search, independently of the engine.
pub fn brute_force_decide(p: &Problem, bounds: &Bounds) -> Result<OracleVerdict, OracleError> {
    let (e, o, cls) = (&p.examples, &p.ontology, p.cls);
    if e.positives.is_empty() {
        return Err(OracleError::EmptyPositives);
    }
    let mut atoms: BTreeSet<String> = e.signature();
    atoms.extend(o.atoms());
    let atoms: Vec<String> = atoms.into_iter().collect();
    let (positives, negatives) = match o {
        Ontology::Prior(_) => return prior_oracle(e, o, cls, &atoms, bounds),
        Ontology::None => (
            e.positives.iter().map(LassoModel::from_data).collect::<Vec<_>>(),
            e.negatives.iter().map(LassoModel::from_data).collect::<Vec<_>>(),
        ),
        Ontology::Horn(ho) => {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for d in &e.negatives {
                match canonical_model(ho, d) {
                    Ok(m) => neg.push(m.lasso),
                    Err(HornError::Inconsistent) => return Ok(OracleVerdict { separable: false, witness: None }),
                    Err(err) => return Err(err.into()),
                }
            }
            for d in &e.positives {
                match canonical_model(ho, d) {
                    Ok(m) => pos.push(m.lasso),
                    Err(HornError::Inconsistent) => {}
                    Err(err) => return Err(err.into()),
                }
            }
            (pos, neg)
        }
    };
    if positives.is_empty() {
        return Ok(OracleVerdict { separable: true, witness: Some(Query::Bot) });
    }
    let conjunctive = matches!(
        cls,
        QueryClass::BranchDiamond | QueryClass::BranchNextDiamond | QueryClass::SimpleUntil | QueryClass::FullUntil
    );
    if conjunctive && negatives.len() > 1 {
        let mut parts = Vec::new();
        for n in &negatives {
            let v = vector_oracle(&positives, std::slice::from_ref(n), &atoms, cls, bounds)?;
            match v.witness {
                Some(w) if v.separable => parts.push(w),
                _ => return Ok(OracleVerdict { separable: false, witness: None }),
            }
        }
        return Ok(OracleVerdict { separable: true, witness: Some(Query::and(parts)) });
    }
    vector_oracle(&positives, &negatives, &atoms, cls, bounds)
}

fn vector_oracle(
    positives: &[LassoModel],
    negatives: &[LassoModel],
    atoms: &[String],
    cls: QueryClass,
    bounds: &Bounds,
) -> Result<OracleVerdict, OracleError> {
    let space = Space::new(positives, negatives, atoms.to_vec())?;
    let props: Vec<(Vector, Query)> = (0..1u32 << atoms.len())
        .map(|set| {
            let q = Query::conj((0..atoms.len()).filter(|k| set >> k & 1 == 1).map(|k| atoms[k].as_str()));
            (space.conj(set), q)
        })
        .collect();
    let lefts: Vec<(Vector, Query)> = props.iter().cloned().chain([(0, Query::Bot)]).collect();
    let found = |front: &Front| front.find_separator();

    // Block paths first build their X-blocks.
    let mut blocks = Front::new(&space, bounds.max_items);
    if cls == QueryClass::PathDiamondCircBlocks {
        let mut work: Vec<(Vector, Query)> = Vec::new();
        for (v, q) in &props {
            if blocks.insert(*v, q.clone())? {
                work.push((*v, q.clone()));
            }
        }
        while let Some((v, q)) = work.pop() {
            if !blocks.contains(v) {
                continue;
            }
            let nv = space.next(v);
            for (pv, pq) in &props {
                let nq = Query::and([pq.clone(), Query::next(q.clone())]);
                if blocks.insert(pv & nv, nq.clone())? {
                    work.push((pv & nv, nq));
                }
            }
        }
    }

    let mut front = Front::new(&space, bounds.max_items);
    let base: &[(Vector, Query)] = if cls == QueryClass::PathDiamondCircBlocks { &blocks.items } else { &props };
    let mut fresh: Vec<(Vector, Query)> = Vec::new();
    for (v, q) in base.iter().cloned().chain(if cls == QueryClass::FullUntil { vec![(0, Query::Bot)] } else { vec![] }) {
        if front.insert(v, q.clone())? {
            fresh.push((v, q));
        }
    }
    let mut round = 0;
    while !fresh.is_empty() {
        if let Some(w) = found(&front) {
            return Ok(OracleVerdict { separable: true, witness: Some(w) });
        }
        if bounds.max_rounds.is_some_and(|r| round >= r) {
            break;
        }
        round += 1;
        let current: Vec<(Vector, Query)> = fresh.drain(..).filter(|(v, _)| front.contains(*v)).collect();
        let mut candidates: Vec<(Vector, Query)> = Vec::new();
        for (v, q) in &current {
            match cls {
                QueryClass::PathDiamond | QueryClass::PathNextDiamond => {
                    let mut steps = vec![(space.diamond(*v), Query::diamond(q.clone()))];
                    if cls == QueryClass::PathNextDiamond {
                        steps.push((space.next(*v), Query::next(q.clone())));
                    }
                    for (sv, sq) in steps {
                        for (pv, pq) in &props {
                            candidates.push((pv & sv, Query::and([pq.clone(), sq.clone()])));
                        }
                    }
                }
                QueryClass::PathDiamondCircBlocks => {
                    let dv = space.diamond(*v);
                    for (bv, bq) in &blocks.items {
                        candidates.push((bv & dv, Query::and([bq.clone(), Query::diamond(q.clone())])));
                    }
                }
                QueryClass::PathUntil => {
                    for (lv, lq) in &lefts {
                        let uv = space.until(*lv, *v);
                        let uq = Query::until(lq.clone(), q.clone());
                        for (pv, pq) in &props {
                            candidates.push((pv & uv, Query::and([pq.clone(), uq.clone()])));
                        }
                    }
                }
                QueryClass::BranchDiamond | QueryClass::BranchNextDiamond => {
                    candidates.push((space.diamond(*v), Query::diamond(q.clone())));
                    if cls == QueryClass::BranchNextDiamond {
                        candidates.push((space.next(*v), Query::next(q.clone())));
                    }
                }
                QueryClass::SimpleUntil => {
                    for (lv, lq) in &lefts {
                        candidates.push((space.until(*lv, *v), Query::until(lq.clone(), q.clone())));
                    }
                }
                QueryClass::FullUntil => {
                    for (w, wq) in front.items.iter() {
                        candidates.push((space.until(*v, *w), Query::until(q.clone(), wq.clone())));
                        candidates.push((space.until(*w, *v), Query::until(wq.clone(), q.clone())));
                    }
                }
            }
            if matches!(
                cls,
                QueryClass::BranchDiamond | QueryClass::BranchNextDiamond | QueryClass::SimpleUntil | QueryClass::FullUntil
            ) {
                for (w, wq) in front.items.iter() {
                    candidates.push((v & w, Query::and([q.clone(), wq.clone()])));
                }
            }
        }
        for (v, q) in candidates {
            if front.insert(v, q.clone())? {
                fresh.push((v, q));
            }
        }
    }
    Ok(match found(&front) {
        Some(w) => OracleVerdict { separable: true, witness: Some(w) },
        None => OracleVerdict { separable: false, witness: None },
    })
}

fn prior_oracle(
    e: &ExampleSet,
    o: &Ontology,
    cls: QueryClass,
    atoms: &[String],
    bounds: &Bounds,
) -> Result<OracleVerdict, OracleError> {
    let Ontology::Prior(po) = o else { unreachable!("prior oracle needs a prior ontology") };
    let mut positives = Vec::new();
    for d in &e.negatives {
        if !prior_consistent(po, d)? {
            return Ok(OracleVerdict { separable: false, witness: None });
        }
    }
    for d in &e.positives {
        if prior_consistent(po, d)? {
            positives.push(d.clone());
        }
    }
    if positives.is_empty() {
        return Ok(OracleVerdict { separable: true, witness: Some(Query::Bot) });
    }
    let depth = bounds
        .max_depth
        .unwrap_or_else(|| e.negatives.iter().map(|d| d.max_timestamp()).max().unwrap_or(0) + po.size() + e.negatives.len());
    let path_cls = match cls {
        QueryClass::PathDiamond | QueryClass::BranchDiamond => QueryClass::PathDiamond,
        other => return Err(OracleError::Prior(PriorError::UnsupportedQuery(format!("class {other}")))),
    };
    let candidates = enumerate_capped(path_cls, atoms, depth, atoms.len(), bounds.max_items)?;
    let entailed_by_all = |q: &Query| -> Result<bool, OracleError> {
        for d in &positives {
            if !prior_entails(po, d, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let good: Vec<&Query> = {
        let mut v = Vec::new();
        for q in &candidates {
            if entailed_by_all(q)? {
                v.push(q);
            }
        }
        v
    };
    let groups: Vec<Vec<&crate::logic::DataInstance>> = if cls == QueryClass::BranchDiamond {
        e.negatives.iter().map(|d| vec![d]).collect()
    } else {
        vec![e.negatives.iter().collect()]
    };
    let mut parts = Vec::new();
    'group: for group in groups {
        for q in &good {
            let mut hit = false;
            for d in &group {
                if prior_entails(po, d, q)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                parts.push((*q).clone());
                continue 'group;
            }
        }
        return Ok(OracleVerdict { separable: false, witness: None });
    }
    Ok(OracleVerdict { separable: true, witness: Some(Query::and(parts)) })
}

/// Every query of `cls` over `atoms` with at most `max_conj` atoms per conjunction and
/// temporal depth at most `max_depth`, without duplicates (conjunctions are sorted).
///
/// Path classes follow their nested shapes, with a non-empty innermost conjunction below
/// any temporal operator; branching classes allow conjunctions of temporal subqueries.
pub fn enumerate_queries(cls: QueryClass, atoms: &[String], max_depth: usize, max_conj: usize) -> Vec<Query> {
    enumerate_capped(cls, atoms, max_depth, max_conj, usize::MAX).expect("uncapped enumeration")
}

fn enumerate_capped(
    cls: QueryClass,
    atoms: &[String],
    max_depth: usize,
    max_conj: usize,
    cap: usize,
) -> Result<Vec<Query>, OracleError> {
    let mut sorted: Vec<String> = atoms.to_vec();
    sorted.sort();
    sorted.dedup();
    let props: Vec<Query> = (0..1u32 << sorted.len())
        .filter(|s| s.count_ones() as usize <= max_conj)
        .map(|s| Query::conj((0..sorted.len()).filter(|k| s >> k & 1 == 1).map(|k| sorted[k].as_str())))
        .collect();
    let nonempty: Vec<Query> = props.iter().filter(|q| **q != Query::Top).cloned().collect();
    let check = |n: usize| if n > cap { Err(OracleError::TooLarge(cap)) } else { Ok(()) };

    let mut out: Vec<Query> = Vec::new();
    match cls {
        QueryClass::PathDiamond | QueryClass::PathNextDiamond | QueryClass::PathUntil => {
            // Tails of each depth: queries placed under the next operator.
            let ops: Vec<Box<dyn Fn(Query) -> Vec<Query>>> = match cls {
                QueryClass::PathDiamond => vec![Box::new(|q| vec![Query::diamond(q)])],
                QueryClass::PathNextDiamond => {
                    vec![Box::new(|q: Query| vec![Query::diamond(q.clone()), Query::next(q)])]
                }
                _ => {
                    let lefts: Vec<Query> = props.iter().cloned().chain([Query::Bot]).collect();
                    vec![Box::new(move |q: Query| {
                        lefts
                            .iter()
                            .map(|l| match l {
                                Query::Top => Query::diamond(q.clone()),
                                Query::Bot => Query::next(q.clone()),
                                l => Query::until(l.clone(), q.clone()),
                            })
                            .collect()
                    })]
                }
            };
            // level[d] = queries of depth exactly d usable as tails (non-empty innermost).
            let mut tails: Vec<Query> = nonempty.clone();
            out.extend(props.iter().cloned());
            for _ in 0..max_depth {
                let mut next_tails = Vec::new();
                for t in &tails {
                    for op in &ops {
                        for step in op(t.clone()) {
                            for p in &props {
                                next_tails.push(Query::and([p.clone(), step.clone()]));
                                check(out.len() + next_tails.len())?;
                            }
                        }
                    }
                }
                out.extend(next_tails.iter().cloned());
                tails = next_tails;
            }
        }
        QueryClass::PathDiamondCircBlocks => {
            // blocks[d]: X-paths of depth ≤ d (non-empty innermost conjunction below X).
            let mut blocks: Vec<BTreeSet<Query>> = vec![props.iter().cloned().collect()];
            let mut tails: Vec<Query> = nonempty.clone();
            for d in 1..=max_depth {
                let mut layer = blocks[d - 1].clone();
                let mut next_tails = Vec::new();
                for t in &tails {
                    for p in &props {
                        next_tails.push(Query::and([p.clone(), Query::next(t.clone())]));
                    }
                }
                layer.extend(next_tails.iter().cloned());
                check(layer.len())?;
                blocks.push(layer);
                tails = next_tails;
            }
            // paths[d]: block paths of depth ≤ d.
            let mut paths: Vec<BTreeSet<Query>> = vec![blocks[0].clone()];
            for d in 1..=max_depth {
                let mut layer = blocks[d].clone();
                for b in &blocks[d] {
                    for rest in &paths[d - 1] {
                        if *rest != Query::Top {
                            layer.insert(Query::and([b.clone(), Query::diamond(rest.clone())]));
                        }
                    }
                    check(layer.len())?;
                }
                paths.push(layer);
            }
            out = paths.pop().expect("depth 0 exists").into_iter().collect();
        }
        QueryClass::BranchDiamond | QueryClass::BranchNextDiamond | QueryClass::SimpleUntil | QueryClass::FullUntil => {
            // levels[d]: all queries of depth ≤ d.
            let mut level: Vec<Query> = props.clone();
            for _ in 0..max_depth {
                let mut items: BTreeSet<Query> = sorted.iter().map(|a| Query::atom(a.clone())).collect();
                for q in &level {
                    match cls {
                        QueryClass::BranchDiamond => {
                            items.insert(Query::diamond(q.clone()));
                        }
                        QueryClass::BranchNextDiamond => {
                            items.insert(Query::diamond(q.clone()));
                            items.insert(Query::next(q.clone()));
                        }
                        QueryClass::SimpleUntil => {
                            for l in props.iter().chain([&Query::Bot]) {
                                items.insert(match l {
                                    Query::Top => Query::diamond(q.clone()),
                                    Query::Bot => Query::next(q.clone()),
                                    l => Query::until(l.clone(), q.clone()),
                                });
                            }
                        }
                        _ => {
                            for l in level.iter().chain([&Query::Bot]) {
                                items.insert(match l {
                                    Query::Top => Query::diamond(q.clone()),
                                    Query::Bot => Query::next(q.clone()),
                                    l => Query::until(l.clone(), q.clone()),
                                });
                            }
                        }
                    }
                    check(items.len())?;
                }
                let items: Vec<Query> = items.into_iter().collect();
                let mut conjs: BTreeSet<Query> = BTreeSet::new();
                conjs.insert(Query::Top);
                let mut frontier: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
                while let Some((chosen, from)) = frontier.pop() {
                    for i in from..items.len() {
                        let mut c = chosen.clone();
                        c.push(i);
                        let atoms_used = c.iter().filter(|&&k| items[k].is_atomic()).count();
                        let temporal = c.len() - atoms_used;
                        if atoms_used > max_conj || temporal > max_conj {
                            continue;
                        }
                        conjs.insert(Query::and(c.iter().map(|&k| items[k].clone())));
                        check(conjs.len())?;
                        frontier.push((c, i + 1));
                    }
                }
                level = conjs.into_iter().collect();
            }
            out = level;
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|q| seen.insert(q.clone()));
    Ok(out)
}
