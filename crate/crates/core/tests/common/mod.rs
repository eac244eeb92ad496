//! Shared helpers for the integration tests: random generators, literal set-builder
//! versions of the `⋖`/`∇` relations, and a SAT-based bounded search for lasso
//! countermodels of Horn ontologies, and small random transition systems.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ltl_qbe::horn::{HornOntology, TemporalOp};
use ltl_qbe::logic::{DataInstance, ExampleSet, LassoModel, Query};
use ltl_qbe::tsys::{Color, Label, TransitionSystem, BOT, SIGMA_BOT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varisat::{ExtendFormula, Lit, Solver};

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

/// A random instance over `atoms` with timestamps in `0..=max_t`.
pub fn random_instance(rng: &mut impl Rng, name: impl Into<String>, atoms: &[&str], max_t: usize, max_facts: usize) -> DataInstance {
    let mut d = DataInstance::empty(name);
    let n = rng.gen_range(0..=max_facts);
    for _ in 0..n {
        let a = atoms.choose(rng).unwrap();
        d.insert(*a, rng.gen_range(0..=max_t)).unwrap();
    }
    d
}

/// A random example set with `1..=max_pos` positives and `1..=max_neg` negatives, whose
/// timestamps stay within `0..=max_t`.
pub fn random_examples(rng: &mut impl Rng, atoms: &[&str], max_t: usize, max_pos: usize, max_neg: usize) -> ExampleSet {
    let t = rng.gen_range(0..=max_t);
    let facts = rng.gen_range(1..=(2 * (t + 1)).min(8));
    let np = rng.gen_range(1..=max_pos);
    let nn = rng.gen_range(1..=max_neg);
    ExampleSet::new(
        (0..np).map(|i| random_instance(rng, format!("p{}", i + 1), atoms, t, facts)).collect(),
        (0..nn).map(|i| random_instance(rng, format!("n{}", i + 1), atoms, t, facts)).collect(),
    )
}

/// A random positive query of temporal depth at most `depth`.
pub fn random_query(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Query {
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..8) };
    match choice {
        0 => Query::atom(*atoms.choose(rng).unwrap()),
        1 => {
            if rng.gen_bool(0.5) {
                Query::Top
            } else {
                Query::atom(*atoms.choose(rng).unwrap())
            }
        }
        2 => Query::and([Query::atom(*atoms.choose(rng).unwrap()), Query::atom(*atoms.choose(rng).unwrap())]),
        3 | 4 => Query::and([random_query(rng, atoms, depth - 1), random_query(rng, atoms, depth - 1)]),
        5 => Query::next(random_query(rng, atoms, depth - 1)),
        6 => Query::diamond(random_query(rng, atoms, depth - 1)),
        _ => Query::until(random_query(rng, atoms, depth - 1), random_query(rng, atoms, depth - 1)),
    }
}

/// A random Horn axiom in the text syntax accepted by `load_ontology`.
pub fn random_horn_axiom(rng: &mut impl Rng, atoms: &[&str]) -> String {
    let mut a = || *atoms.choose(rng).unwrap();
    let (x, y, z) = (a(), a(), a());
    match rng.gen_range(0..10) {
        0 => format!("{x} -> X {y}"),
        1 => format!("X {x} -> {y}"),
        2 => format!("{x} -> G {y}"),
        3 => format!("G {x} -> {y}"),
        4 => format!("{x} & {y} -> {z}"),
        5 => format!("F {x} -> {y}"),
        6 => format!("{x} & X {y} -> X X {z}"),
        7 => format!("{x} & {y} -> false"),
        8 => format!("X {x} & {y} -> G {z}"),
        _ => format!("{x} -> {y}"),
    }
}

/// A random Horn ontology text with `1..=max_axioms` axioms.
pub fn random_horn_text(rng: &mut impl Rng, atoms: &[&str], max_axioms: usize) -> String {
    let n = rng.gen_range(1..=max_axioms);
    (0..n).map(|_| random_horn_axiom(rng, atoms)).collect::<Vec<_>>().join("\n")
}

pub fn show(e: &ExampleSet) -> String {
    let f = |v: &[DataInstance]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    format!("E+ = [{}]  E- = [{}]", f(&e.positives), f(&e.negatives))
}

// ---------------------------------------------------------------------------
// Literal set-builder versions of ⋖ and ∇
// ---------------------------------------------------------------------------

/// `µ(x) = min { y ∈ e | x < y }`; `d ⋖ e` iff `µ` is total on `d` and onto `e`; then
/// `∇(d, e) = ⋃ { z | x < z < µ(x) }`. Both sets must be nonempty.
pub fn nabla_ref(d: &BTreeSet<usize>, e: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    if d.is_empty() || e.is_empty() {
        return None;
    }
    let mut image = BTreeSet::new();
    let mut out = BTreeSet::new();
    for &x in d {
        let y = *e.iter().find(|&&y| x < y)?;
        image.insert(y);
        out.extend(x + 1..y);
    }
    (image == *e).then_some(out)
}

/// The wrap-around version over positions `[0, p)` with loop `[m, p)`: a point of the loop
/// without a later point of `e` wraps to the least point of `e` inside the loop, and the
/// covered interval is then `(x, p) ∪ [m, y)`.
pub fn nabla_mp_ref(d: &BTreeSet<usize>, e: &BTreeSet<usize>, m: usize, p: usize) -> Option<BTreeSet<usize>> {
    if d.is_empty() || e.is_empty() {
        return None;
    }
    let mut image = BTreeSet::new();
    let mut out = BTreeSet::new();
    for &x in d {
        let succs: Vec<usize> = e.iter().copied().filter(|&y| x < y).collect();
        let y = if let Some(&y) = succs.first() {
            y
        } else if (m..p).contains(&x) {
            *e.iter().find(|&&y| y >= m)?
        } else {
            return None;
        };
        image.insert(y);
        if x < y {
            out.extend(x + 1..y);
        } else {
            out.extend(x + 1..p);
            out.extend(m..y);
        }
    }
    (image == *e).then_some(out)
}

pub fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

/// A random subset of `0..p`.
pub fn random_subset(rng: &mut impl Rng, p: usize, density: f64) -> BTreeSet<usize> {
    (0..p).filter(|_| rng.gen_bool(density)).collect()
}

// ---------------------------------------------------------------------------
// Bounded lasso countermodels via SAT
// ---------------------------------------------------------------------------

struct Encoder {
    solver: Solver<'static>,
    pre: usize,
    len: usize,
    atoms: HashMap<(String, usize), Lit>,
    truth: Lit,
}

impl Encoder {
    fn new(pre: usize, per: usize) -> Self {
        let mut solver = Solver::new();
        let truth = solver.new_lit();
        solver.add_clause(&[truth]);
        Encoder { solver, pre, len: pre + per, atoms: HashMap::new(), truth }
    }

    fn succ(&self, n: usize) -> usize {
        if n + 1 == self.len {
            self.pre
        } else {
            n + 1
        }
    }

    /// Positions strictly after `n` on the unfolded lasso.
    fn future(&self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (n + 1..self.len).collect();
        if n >= self.pre {
            out.extend(self.pre..=n);
        }
        out
    }

    fn atom(&mut self, a: &str, n: usize) -> Lit {
        if let Some(&l) = self.atoms.get(&(a.to_string(), n)) {
            return l;
        }
        let l = self.solver.new_lit();
        self.atoms.insert((a.to_string(), n), l);
        l
    }

    /// A literal equivalent to "all of `xs`" (exact definition).
    fn all(&mut self, xs: &[Lit]) -> Lit {
        let v = self.solver.new_lit();
        for &x in xs {
            self.solver.add_clause(&[!v, x]);
        }
        let mut c: Vec<Lit> = xs.iter().map(|&x| !x).collect();
        c.push(v);
        self.solver.add_clause(&c);
        v
    }

    /// A literal equivalent to "some of `xs`" (exact definition).
    fn any(&mut self, xs: &[Lit]) -> Lit {
        !self.all(&xs.iter().map(|&x| !x).collect::<Vec<_>>())
    }

    /// Exact truth of `ops atom` at `n` (`None` atom: false).
    fn horn_lit(&mut self, ops: &[TemporalOp], atom: Option<&str>, n: usize) -> Lit {
        match ops.split_first() {
            None => match atom {
                Some(a) => self.atom(a, n),
                None => !self.truth,
            },
            Some((TemporalOp::Next, rest)) => {
                let s = self.succ(n);
                self.horn_lit(rest, atom, s)
            }
            Some((TemporalOp::Box, rest)) => {
                let xs: Vec<Lit> = self.future(n).into_iter().map(|m| self.horn_lit(rest, atom, m)).collect();
                self.all(&xs)
            }
        }
    }

    /// Literal that is forced true wherever the query is true (an upper approximation whose
    /// least solution is the query's truth value).
    fn query_upper(&mut self, q: &Query, memo: &mut HashMap<(*const Query, usize), Lit>, n: usize) -> Lit {
        if let Some(&l) = memo.get(&(q as *const Query, n)) {
            return l;
        }
        // Register all positions first so that until's recursion through the loop finds them.
        let vs: Vec<Lit> = (0..self.len).map(|_| self.solver.new_lit()).collect();
        for (m, &v) in vs.iter().enumerate() {
            memo.insert((q as *const Query, m), v);
        }
        for m in 0..self.len {
            let v = vs[m];
            match q {
                Query::Top => self.solver.add_clause(&[v]),
                Query::Bot => {}
                Query::Atom(a) => {
                    let x = self.atom(a, m);
                    self.solver.add_clause(&[!x, v]);
                }
                Query::And(cs) => {
                    let mut c: Vec<Lit> = cs.iter().map(|c| !self.query_upper(c, memo, m)).collect();
                    c.push(v);
                    self.solver.add_clause(&c);
                }
                Query::Next(c) => {
                    let s = self.succ(m);
                    let x = self.query_upper(c, memo, s);
                    self.solver.add_clause(&[!x, v]);
                }
                Query::Diamond(c) => {
                    for k in self.future(m) {
                        let x = self.query_upper(c, memo, k);
                        self.solver.add_clause(&[!x, v]);
                    }
                }
                Query::Until(l, r) => {
                    let s = self.succ(m);
                    let rv = self.query_upper(r, memo, s);
                    let lv = self.query_upper(l, memo, s);
                    let us = vs[s];
                    self.solver.add_clause(&[!rv, v]);
                    self.solver.add_clause(&[!lv, !us, v]);
                }
            }
        }
        vs[n]
    }
}

/// Searches for a lasso with prefix length `pre` and loop length `per` that satisfies the
/// ontology (including its fresh atoms) and the data, and falsifies `q` at 0.
pub fn countermodel_of_shape(o: &HornOntology, d: &DataInstance, q: &Query, pre: usize, per: usize) -> Option<LassoModel> {
    assert!(pre + per > d.max_timestamp(), "the lasso must cover the data");
    let mut enc = Encoder::new(pre, per);
    for (a, t) in d.facts() {
        let x = enc.atom(a, t);
        enc.solver.add_clause(&[x]);
    }
    for n in 0..enc.len {
        for ax in o.axioms() {
            let mut clause = Vec::new();
            for b in &ax.body {
                let x = if b.diamond {
                    let fut: Vec<Lit> =
                        enc.future(n).into_iter().map(|m| enc.horn_lit(&b.ops, b.atom.as_deref(), m)).collect();
                    enc.any(&fut)
                } else {
                    enc.horn_lit(&b.ops, b.atom.as_deref(), n)
                };
                clause.push(!x);
            }
            let h = enc.horn_lit(&ax.head.ops, ax.head.atom.as_deref(), n);
            clause.push(h);
            enc.solver.add_clause(&clause);
        }
    }
    let mut memo = HashMap::new();
    let root = enc.query_upper(q, &mut memo, 0);
    enc.solver.add_clause(&[!root]);
    if !enc.solver.solve().expect("solver failure") {
        return None;
    }
    let model: BTreeSet<Lit> = enc.solver.model().expect("model").into_iter().collect();
    let at = |n: usize| -> BTreeSet<String> {
        enc.atoms
            .iter()
            .filter(|((_, m), l)| *m == n && model.contains(l))
            .map(|((a, _), _)| a.clone())
            .collect()
    };
    Some(LassoModel {
        prefix: (0..pre).map(at).collect(),
        cycle: (pre..pre + per).map(at).collect(),
    })
}

/// Tries every lasso shape with prefix `maxD+1 ..= maxD+1+extra_pre` and loop `1..=max_per`.
pub fn bounded_countermodel(
    o: &HornOntology,
    d: &DataInstance,
    q: &Query,
    extra_pre: usize,
    max_per: usize,
) -> Option<LassoModel> {
    let base = d.max_timestamp() + 1;
    for pre in base..=base + extra_pre {
        for per in 1..=max_per {
            if let Some(m) = countermodel_of_shape(o, d, q, pre, per) {
                return Some(m);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Direct model checking of Horn axioms on a lasso
// ---------------------------------------------------------------------------

/// Truth of `ops atom` at every materialised position of `m` (`None` atom: false).
pub fn horn_literal_truth(m: &LassoModel, ops: &[TemporalOp], atom: Option<&str>) -> Vec<bool> {
    match ops.split_first() {
        None => (0..m.len()).map(|n| atom.is_some_and(|a| m.at(n).contains(a))).collect(),
        Some((TemporalOp::Next, rest)) => {
            let inner = horn_literal_truth(m, rest, atom);
            (0..m.len()).map(|n| inner[m.succ(n)]).collect()
        }
        Some((TemporalOp::Box, rest)) => {
            let inner = horn_literal_truth(m, rest, atom);
            let loop_all = (m.pre()..m.len()).all(|k| inner[k]);
            (0..m.len()).map(|n| loop_all && (n + 1..m.pre().max(n + 1)).all(|k| inner[k])).collect()
        }
    }
}

/// Whether `m` contains the data and satisfies every axiom at every position.
pub fn is_horn_model(o: &HornOntology, d: &DataInstance, m: &LassoModel) -> bool {
    if d.facts().any(|(a, t)| !m.unfolded(t).contains(a)) {
        return false;
    }
    o.axioms().iter().all(|ax| {
        let body: Vec<Vec<bool>> = ax
            .body
            .iter()
            .map(|b| {
                let v = horn_literal_truth(m, &b.ops, b.atom.as_deref());
                if b.diamond {
                    (0..m.len())
                        .map(|n| (n + 1..m.len()).chain(if n >= m.pre() { m.pre()..n + 1 } else { 0..0 }).any(|k| v[k]))
                        .collect()
                } else {
                    v
                }
            })
            .collect();
        let head = horn_literal_truth(m, &ax.head.ops, ax.head.atom.as_deref());
        (0..m.len()).all(|n| !body.iter().all(|b| b[n]) || head[n])
    })
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// A worked example: the verdict stated for it and, where one is given, a query that must
/// separate it.
pub struct Golden {
    pub name: &'static str,
    pub cls: ltl_qbe::logic::QueryClass,
    pub positives: &'static [&'static str],
    pub negatives: &'static [&'static str],
    /// Horn ontology text (`None`: no ontology).
    pub ontology: Option<&'static str>,
    pub stated: bool,
    pub query: Option<&'static str>,
}

impl Golden {
    pub fn problem(&self) -> ltl_qbe::qbe::Problem {
        let e = ExampleSet::parse(self.positives, self.negatives).unwrap();
        let o = match self.ontology {
            Some(text) => ltl_qbe::qbe::Ontology::Horn(ltl_qbe::horn::load_ontology(text).unwrap()),
            None => ltl_qbe::qbe::Ontology::None,
        };
        ltl_qbe::qbe::Problem::new(self.cls, e, o)
    }
}

const SENSOR_POS: &[&str] = &["T@2, V@4", "T@1, V@4"];
const SENSOR_NEG: &[&str] = &["T@1", "V@4", "V@1, T@2"];
const HEATER_POS: &[&str] = &["H@3, V@4", "T@1, V@4"];
const UNTIL_POS: &[&str] = &["T@1, V@2", "T@1, T@2, V@3"];
const UNTIL_NEG: &[&str] = &["T@1, V@3"];
const ORDER_POS: &[&str] = &["T@2, V@4", "V@1, T@4"];
const ORDER_NEG: &[&str] = &["T@1", "V@4"];
const SHIFT_POS: &[&str] = &["A@1"];
const SHIFT_NEG: &[&str] = &["A@2"];
const ADJ_POS: &[&str] = &["A@1, B@2", "A@2, B@3"];
const ADJ_NEG: &[&str] = &["A@3, B@5"];
const AUB_POS: &[&str] = &["B@1", "A@1, B@2"];
const AUB_NEG: &[&str] = &["B@2"];
const PROD_POS: &[&str] = &["A2@4, B1@4, B2@5", "A1@2, B2@2, B1@3"];
const PROD_NEG: &[&str] = &["B1@2, B2@4"];
const NEST_POS: &[&str] = &["B@2, C@2", "A@2, B@3, B@4, C@4"];
const NEST_NEG: &[&str] = &["A@2, B@3, B@5, C@5"];
const PERSIST: &str = "X A -> A";

pub fn golden() -> Vec<Golden> {
    use ltl_qbe::logic::QueryClass::*;
    let g = |name, cls, positives, negatives, ontology, stated, query| Golden {
        name,
        cls,
        positives,
        negatives,
        ontology,
        stated,
        query,
    };
    let mut out = vec![
        g("sensor runs, path-diamond", PathDiamond, SENSOR_POS, SENSOR_NEG, None, true, Some("F(T & F F V)")),
        g("sensor runs with heater axiom, path-diamond", PathDiamond, HEATER_POS, SENSOR_NEG, Some("X H -> T"), true, Some("F(T & F F V)")),
        g("sensor runs, path-until", PathUntil, UNTIL_POS, UNTIL_NEG, None, true, Some("T U V")),
        g("unordered events, branch-diamond", BranchDiamond, ORDER_POS, ORDER_NEG, None, true, Some("F T & F V")),
        g("unordered events, path-diamond", PathDiamond, ORDER_POS, ORDER_NEG, None, false, None),
        g("shifted atom, path-next-diamond", PathNextDiamond, SHIFT_POS, SHIFT_NEG, None, true, Some("X A")),
        g("shifted atom, branch-diamond", BranchDiamond, SHIFT_POS, SHIFT_NEG, None, false, None),
        g("adjacent events, branch-next-diamond", BranchNextDiamond, ADJ_POS, ADJ_NEG, None, true, Some("F(A & X B)")),
        g("adjacent events, branch-diamond", BranchDiamond, ADJ_POS, ADJ_NEG, None, false, None),
        g("until pattern, path-until", PathUntil, AUB_POS, AUB_NEG, None, true, Some("A U B")),
        g("until pattern, branch-next-diamond", BranchNextDiamond, AUB_POS, AUB_NEG, None, false, None),
        g("product unravelling, simple-until", SimpleUntil, PROD_POS, PROD_NEG, None, true, Some("F((A1 & B2 U B1) & (A2 & B1 U B2))")),
        g("product unravelling, path-until", PathUntil, PROD_POS, PROD_NEG, None, false, None),
        g("nested until, full-until", FullUntil, NEST_POS, NEST_NEG, None, true, Some("(A U B) U C")),
        g("nested until, simple-until", SimpleUntil, NEST_POS, NEST_NEG, None, false, None),
    ];
    for cls in ltl_qbe::logic::QueryClass::ALL {
        out.push(Golden {
            name: "shifted atom under persistence axiom",
            cls,
            positives: SHIFT_POS,
            negatives: SHIFT_NEG,
            ontology: Some(PERSIST),
            stated: false,
            query: None,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Random transition systems
// ---------------------------------------------------------------------------

/// A random edge or state label: mostly plain atom sets, sometimes with `⊥`.
pub fn random_label(rng: &mut impl Rng) -> Label {
    match rng.gen_range(0..10) {
        0 => SIGMA_BOT,
        1 => BOT | rng.gen_range(0..4),
        _ => rng.gen_range(0..4),
    }
}

/// A small random transition system (optionally two-coloured) determined by `seed`.
pub fn random_system(seed: u64, colored: bool) -> TransitionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let mut ts = TransitionSystem::new(colored);
    for i in 0..n {
        ts.add_state(i.to_string(), random_label(&mut rng));
    }
    for from in 0..n {
        for _ in 0..rng.gen_range(0..=3) {
            let color = if colored && rng.gen_bool(0.5) { Color::Red } else { Color::Black };
            ts.add_edge(from, rng.gen_range(0..n), random_label(&mut rng), color);
        }
    }
    ts.initial = vec![0];
    if n > 1 && rng.gen_bool(0.3) {
        ts.initial.push(1);
    }
    ts
}
