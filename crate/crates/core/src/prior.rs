//! Ontologies in the `F`/`G` fragment with arbitrary boolean connectives.
//!
//! Axioms are boolean combinations of atoms under `G` (at all later points) and `F` (at
//! some later point), holding at every time point. Consistency and certain answers to
//! `F`-queries are decided exactly by a backward dynamic programme over full truth
//! vectors, searching for an ultimately periodic model (a countermodel, for entailment).
//!
//! A position is described by its atoms together with the truth of every `G`/`F`
//! subformula. In the loop of a lasso, every `G`/`F` subformula has the same value at all
//! positions, and the order of loop positions is irrelevant. Before the loop, the value of
//! `G φ`/`F φ` at `n` is determined by `φ` and `G φ`/`F φ` at `n+1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::logic::{eval_lasso, valid_atom, DataInstance, LassoModel, Query};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PriorError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("query `{0}` is not built from atoms, `&` and `F` only")]
    UnsupportedQuery(String),
    #[error("too many atoms and temporal subformulas ({0}); at most 24 are supported")]
    TooLarge(usize),
}

/// A formula of the `F`/`G` fragment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PriorFormula {
    True,
    False,
    Atom(String),
    Not(Box<PriorFormula>),
    And(Box<PriorFormula>, Box<PriorFormula>),
    Or(Box<PriorFormula>, Box<PriorFormula>),
    Implies(Box<PriorFormula>, Box<PriorFormula>),
    /// `G φ`: at every later time point.
    Box(Box<PriorFormula>),
    /// `F φ`: at some later time point.
    Diamond(Box<PriorFormula>),
}

impl PriorFormula {
    fn atoms_into(&self, out: &mut BTreeSet<String>) {
        match self {
            PriorFormula::True | PriorFormula::False => {}
            PriorFormula::Atom(a) => {
                out.insert(a.clone());
            }
            PriorFormula::Not(f) | PriorFormula::Box(f) | PriorFormula::Diamond(f) => f.atoms_into(out),
            PriorFormula::And(a, b) | PriorFormula::Or(a, b) | PriorFormula::Implies(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
        }
    }

    fn size(&self) -> usize {
        match self {
            PriorFormula::True | PriorFormula::False | PriorFormula::Atom(_) => 1,
            PriorFormula::Not(f) | PriorFormula::Box(f) | PriorFormula::Diamond(f) => 1 + f.size(),
            PriorFormula::And(a, b) | PriorFormula::Or(a, b) | PriorFormula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            PriorFormula::Implies(..) => 1,
            PriorFormula::Or(..) => 2,
            PriorFormula::And(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let open = self.prec() < ctx;
        if open {
            write!(f, "(")?;
        }
        match self {
            PriorFormula::True => write!(f, "true")?,
            PriorFormula::False => write!(f, "false")?,
            PriorFormula::Atom(a) => write!(f, "{a}")?,
            PriorFormula::Not(x) => {
                write!(f, "!")?;
                x.fmt_prec(f, 4)?;
            }
            PriorFormula::Box(x) | PriorFormula::Diamond(x) => {
                write!(f, "{} ", if matches!(self, PriorFormula::Box(_)) { "G" } else { "F" })?;
                x.fmt_prec(f, 4)?;
            }
            PriorFormula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 4)?;
            }
            PriorFormula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 3)?;
            }
            PriorFormula::Implies(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if open {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for PriorFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A finite set of `F`/`G` axioms, each holding at every time point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PriorOntology {
    pub axioms: Vec<PriorFormula>,
}

impl PriorOntology {
    pub fn new(axioms: Vec<PriorFormula>) -> Self {
        PriorOntology { axioms }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.axioms.iter().for_each(|a| a.atoms_into(&mut out));
        out
    }

    /// Symbol count of all axioms.
    pub fn size(&self) -> usize {
        self.axioms.iter().map(PriorFormula::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
}

impl fmt::Display for PriorOntology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Amp,
    Bar,
    Bang,
    Arrow,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    line: usize,
    end: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PriorError> {
        let col = self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end) + 1;
        Err(PriorError::Parse { line: self.line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn implication(&mut self) -> Result<PriorFormula, PriorError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.i += 1;
            let right = self.implication()?;
            return Ok(PriorFormula::Implies(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<PriorFormula, PriorError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.i += 1;
            acc = PriorFormula::Or(Box::new(acc), Box::new(self.conjunction()?));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<PriorFormula, PriorError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.i += 1;
            acc = PriorFormula::And(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PriorFormula, PriorError> {
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.i += 1;
                Ok(PriorFormula::Not(Box::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let f = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(f)
            }
            Some(Tok::Word(w)) => {
                let f = match w.as_str() {
                    "G" | "F" => {
                        self.i += 1;
                        let inner = Box::new(self.unary()?);
                        return Ok(if w == "G" { PriorFormula::Box(inner) } else { PriorFormula::Diamond(inner) });
                    }
                    "X" | "U" => return self.err(format!("`{w}` is not allowed in this fragment")),
                    "true" => PriorFormula::True,
                    "false" => PriorFormula::False,
                    a if valid_atom(a) => PriorFormula::Atom(a.to_string()),
                    _ => return self.err("invalid atom name"),
                };
                self.i += 1;
                Ok(f)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of line"),
        }
    }
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(usize, Tok)>, PriorError> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (col, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '!' => Tok::Bang,
            '-' if chars.get(i + 1).map(|x| x.1) == Some('>') => {
                i += 2;
                out.push((col, Tok::Arrow));
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut w = String::new();
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    w.push(chars[i].1);
                    i += 1;
                }
                out.push((col, Tok::Word(w)));
                continue;
            }
            _ => {
                return Err(PriorError::Parse { line: lineno, col: col + 1, msg: format!("unexpected character `{c}`") })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

/// Parses a single formula.
pub fn parse_prior_formula(text: &str) -> Result<PriorFormula, PriorError> {
    let toks = lex(text, 1)?;
    let mut p = Parser { toks, i: 0, line: 1, end: text.len() };
    let f = p.implication()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses one axiom per line; blank lines and `#` comments are ignored.
pub fn load_prior_ontology(text: &str) -> Result<PriorOntology, PriorError> {
    let mut axioms = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let toks = lex(line, ln + 1)?;
        let mut p = Parser { toks, i: 0, line: ln + 1, end: line.len() };
        let f = p.implication()?;
        if p.i != p.toks.len() {
            return p.err("trailing input");
        }
        axioms.push(f);
    }
    Ok(PriorOntology { axioms })
}

// ---------------------------------------------------------------------------------------
// Evaluation on lassos (used to validate countermodels)

/// Truth of a formula at every materialised position of a lasso.
pub fn prior_truth(m: &LassoModel, f: &PriorFormula) -> Vec<bool> {
    let len = m.len();
    match f {
        PriorFormula::True => vec![true; len],
        PriorFormula::False => vec![false; len],
        PriorFormula::Atom(a) => (0..len).map(|n| m.at(n).contains(a)).collect(),
        PriorFormula::Not(x) => prior_truth(m, x).into_iter().map(|b| !b).collect(),
        PriorFormula::And(a, b) | PriorFormula::Or(a, b) | PriorFormula::Implies(a, b) => {
            let (va, vb) = (prior_truth(m, a), prior_truth(m, b));
            va.iter()
                .zip(&vb)
                .map(|(&x, &y)| match f {
                    PriorFormula::And(..) => x && y,
                    PriorFormula::Or(..) => x || y,
                    _ => !x || y,
                })
                .collect()
        }
        PriorFormula::Box(x) => {
            // Greatest solution of g(n) = x(s(n)) ∧ g(s(n)).
            let v = prior_truth(m, x);
            let mut g = vec![true; len];
            loop {
                let mut changed = false;
                for n in (0..len).rev() {
                    let s = m.succ(n);
                    if g[n] && !(v[s] && g[s]) {
                        g[n] = false;
                        changed = true;
                    }
                }
                if !changed {
                    return g;
                }
            }
        }
        PriorFormula::Diamond(x) => {
            let v = prior_truth(m, x);
            let mut e = vec![false; len];
            loop {
                let mut changed = false;
                for n in (0..len).rev() {
                    let s = m.succ(n);
                    if !e[n] && (v[s] || e[s]) {
                        e[n] = true;
                        changed = true;
                    }
                }
                if !changed {
                    return e;
                }
            }
        }
    }
}

/// Whether the lasso satisfies every axiom at every position and contains the data.
pub fn is_prior_model(o: &PriorOntology, d: &DataInstance, m: &LassoModel) -> bool {
    d.facts().all(|(a, t)| m.unfolded(t).contains(a))
        && o.axioms.iter().all(|ax| prior_truth(m, ax).into_iter().all(|b| b))
}

// ---------------------------------------------------------------------------------------
// Compiled search

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    /// Temporal node with its slot among the temporal bits.
    Box(usize, usize),
    Diamond(usize, usize),
}

struct Compiled {
    atoms: Vec<String>,
    nodes: Vec<Node>,
    temporal: Vec<usize>,
    axioms: Vec<usize>,
    memo: HashMap<String, usize>,
}

impl Compiled {
    fn new(atoms: Vec<String>) -> Self {
        Compiled { atoms, nodes: vec![], temporal: vec![], axioms: vec![], memo: HashMap::new() }
    }

    fn push(&mut self, key: String, node: impl FnOnce(&mut Self) -> Node) -> usize {
        if let Some(&i) = self.memo.get(&key) {
            return i;
        }
        let n = node(self);
        let i = self.nodes.len();
        self.nodes.push(n);
        self.memo.insert(key, i);
        i
    }

    fn slot(&mut self) -> usize {
        self.temporal.push(self.nodes.len());
        self.temporal.len() - 1
    }

    fn formula(&mut self, f: &PriorFormula) -> usize {
        let key = format!("p:{f}");
        if let Some(&i) = self.memo.get(&key) {
            return i;
        }
        let node = match f {
            PriorFormula::True => Node::True,
            PriorFormula::False => Node::False,
            PriorFormula::Atom(a) => Node::Atom(self.atoms.iter().position(|x| x == a).expect("atom indexed")),
            PriorFormula::Not(x) => Node::Not(self.formula(x)),
            PriorFormula::And(a, b) => Node::And(self.formula(a), self.formula(b)),
            PriorFormula::Or(a, b) => Node::Or(self.formula(a), self.formula(b)),
            PriorFormula::Implies(a, b) => Node::Implies(self.formula(a), self.formula(b)),
            PriorFormula::Box(x) => {
                let c = self.formula(x);
                Node::Box(c, self.slot())
            }
            PriorFormula::Diamond(x) => {
                let c = self.formula(x);
                Node::Diamond(c, self.slot())
            }
        };
        self.push(key, |_| node)
    }

    fn query(&mut self, q: &Query) -> usize {
        let key = format!("q:{q}");
        if let Some(&i) = self.memo.get(&key) {
            return i;
        }
        let node = match q {
            Query::Top => Node::True,
            Query::Bot => Node::False,
            Query::Atom(a) => Node::Atom(self.atoms.iter().position(|x| x == a).expect("atom indexed")),
            Query::And(qs) => {
                let mut acc = self.query(&qs[0]);
                for sub in &qs[1..] {
                    let r = self.query(sub);
                    let n = self.nodes.len();
                    self.nodes.push(Node::And(acc, r));
                    acc = n;
                }
                return self.push(key, |c| c.nodes[acc].clone());
            }
            Query::Diamond(x) => {
                let c = self.query(x);
                Node::Diamond(c, self.slot())
            }
            Query::Next(_) | Query::Until(..) => unreachable!("checked by caller"),
        };
        self.push(key, |_| node)
    }

    /// Evaluates node `i` at a valuation (atom bits then temporal bits).
    fn eval(&self, i: usize, v: u32) -> bool {
        let na = self.atoms.len();
        match self.nodes[i] {
            Node::True => true,
            Node::False => false,
            Node::Atom(a) => v >> a & 1 == 1,
            Node::Not(x) => !self.eval(x, v),
            Node::And(a, b) => self.eval(a, v) && self.eval(b, v),
            Node::Or(a, b) => self.eval(a, v) || self.eval(b, v),
            Node::Implies(a, b) => !self.eval(a, v) || self.eval(b, v),
            Node::Box(_, s) | Node::Diamond(_, s) => v >> (na + s) & 1 == 1,
        }
    }

    fn axioms_hold(&self, v: u32) -> bool {
        self.axioms.iter().all(|&a| self.eval(a, v))
    }

    /// Temporal bits at the predecessor of a position with valuation `v`.
    fn step(&self, v: u32) -> u32 {
        let na = self.atoms.len();
        let mut t = 0u32;
        for (s, &ni) in self.temporal.iter().enumerate() {
            let bit = match self.nodes[ni] {
                Node::Box(c, _) => self.eval(c, v) && v >> (na + s) & 1 == 1,
                Node::Diamond(c, _) => self.eval(c, v) || v >> (na + s) & 1 == 1,
                _ => unreachable!(),
            };
            if bit {
                t |= 1 << s;
            }
        }
        t
    }

    fn decode(&self, v: u32) -> BTreeSet<String> {
        (0..self.atoms.len()).filter(|&a| v >> a & 1 == 1).map(|a| self.atoms[a].clone()).collect()
    }
}

/// How a reachable valuation was obtained, for countermodel reconstruction.
#[derive(Clone, Copy, Debug)]
enum Origin {
    /// A loop position; the loop's temporal bits are the valuation's own.
    Loop,
    /// A position followed by the given valuation.
    Before(u32),
}

fn search(
    o: &PriorOntology,
    d: &DataInstance,
    q: Option<&Query>,
) -> Result<Option<LassoModel>, PriorError> {
    let mut atoms = o.atoms();
    atoms.extend(d.atoms());
    if let Some(q) = q {
        atoms.extend(q.atoms());
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    let mut c = Compiled::new(atoms);
    let axioms: Vec<usize> = o.axioms.iter().map(|a| c.formula(a)).collect();
    c.axioms = axioms;
    let qi = q.map(|q| c.query(q));
    let na = c.atoms.len();
    let nt = c.temporal.len();
    if na + nt > 24 {
        return Err(PriorError::TooLarge(na + nt));
    }
    let atom_space = 1u32 << na;
    let full = |a: u32, t: u32| a | (t << na);

    // Loop valuations per temporal vector.
    let mut origin: HashMap<u32, Origin> = HashMap::new();
    let mut loops: HashMap<u32, Vec<u32>> = HashMap::new();
    for tau in 0..(1u32 << nt) {
        let mut allowed = Vec::new();
        for a in 0..atom_space {
            let v = full(a, tau);
            if !c.axioms_hold(v) {
                continue;
            }
            let ok = c.temporal.iter().enumerate().all(|(s, &ni)| {
                let on = tau >> s & 1 == 1;
                match c.nodes[ni] {
                    Node::Box(x, _) => !on || c.eval(x, v),
                    Node::Diamond(x, _) => on || !c.eval(x, v),
                    _ => unreachable!(),
                }
            });
            if ok {
                allowed.push(v);
            }
        }
        let witnessed = c.temporal.iter().enumerate().all(|(s, &ni)| {
            let on = tau >> s & 1 == 1;
            match c.nodes[ni] {
                Node::Box(x, _) => on || allowed.iter().any(|&v| !c.eval(x, v)),
                Node::Diamond(x, _) => !on || allowed.iter().any(|&v| c.eval(x, v)),
                _ => unreachable!(),
            }
        });
        if witnessed && !allowed.is_empty() {
            for &v in &allowed {
                origin.insert(v, Origin::Loop);
            }
            loops.insert(tau, allowed);
        }
    }

    // Valuations of positions after the data: loop positions or free prefix positions.
    let mut frontier: Vec<u32> = origin.keys().copied().collect();
    frontier.sort_unstable();
    while let Some(next) = frontier.pop() {
        let t = c.step(next);
        for a in 0..atom_space {
            let v = full(a, t);
            if !origin.contains_key(&v) && c.axioms_hold(v) {
                origin.insert(v, Origin::Before(next));
                frontier.push(v);
            }
        }
    }
    let free: Vec<u32> = {
        let mut f: Vec<u32> = origin.keys().copied().collect();
        f.sort_unstable();
        f
    };

    // Data positions, from the last timestamp down to 0.
    let max_d = d.max_timestamp();
    let required = |n: usize| -> u32 {
        d.atoms_at(n).iter().map(|a| 1u32 << c.atoms.iter().position(|x| x == a).unwrap()).sum()
    };
    let mut layers: Vec<HashMap<u32, u32>> = vec![HashMap::new(); max_d + 1];
    let mut succ_vals: Vec<u32> = free;
    for n in (0..=max_d).rev() {
        let req = required(n);
        let mut layer: HashMap<u32, u32> = HashMap::new();
        for &next in &succ_vals {
            let t = c.step(next);
            for a in 0..atom_space {
                if a & req != req {
                    continue;
                }
                let v = full(a, t);
                if !layer.contains_key(&v) && c.axioms_hold(v) {
                    layer.insert(v, next);
                }
            }
        }
        succ_vals = {
            let mut s: Vec<u32> = layer.keys().copied().collect();
            s.sort_unstable();
            s
        };
        layers[n] = layer;
    }
    let start = succ_vals.into_iter().find(|&v| qi.is_none_or(|qi| !c.eval(qi, v)));
    let Some(start) = start else {
        return Ok(None);
    };

    // Reconstruct the lasso.
    let mut prefix_vals = vec![start];
    let mut cur = start;
    for layer in layers.iter().take(max_d + 1) {
        cur = layer[&cur];
        prefix_vals.push(cur);
    }
    // `cur` is the valuation right after the data.
    prefix_vals.pop();
    loop {
        match origin[&cur] {
            Origin::Loop => break,
            Origin::Before(next) => {
                prefix_vals.push(cur);
                cur = next;
            }
        }
    }
    let tau = cur >> na;
    let allowed = &loops[&tau];
    let mut cycle = vec![cur];
    for (s, &ni) in c.temporal.iter().enumerate() {
        let on = tau >> s & 1 == 1;
        let need = match c.nodes[ni] {
            Node::Box(x, _) if !on => allowed.iter().find(|&&v| !c.eval(x, v)),
            Node::Diamond(x, _) if on => allowed.iter().find(|&&v| c.eval(x, v)),
            _ => None,
        };
        if let Some(&v) = need {
            if !cycle.contains(&v) {
                cycle.push(v);
            }
        }
    }
    let model = LassoModel {
        prefix: prefix_vals.iter().map(|&v| c.decode(v)).collect(),
        cycle: cycle.iter().map(|&v| c.decode(v)).collect(),
    };
    debug_assert!(is_prior_model(o, d, &model), "reconstructed model violates the ontology");
    if let Some(q) = q {
        debug_assert!(!eval_lasso(&model, q, 0).unwrap(), "reconstructed model satisfies the query");
    }
    Ok(Some(model))
}

fn check_query(q: &Query) -> Result<(), PriorError> {
    fn ok(q: &Query) -> bool {
        match q {
            Query::Top | Query::Bot | Query::Atom(_) => true,
            Query::And(qs) => qs.iter().all(ok),
            Query::Diamond(x) => ok(x),
            Query::Next(_) | Query::Until(..) => false,
        }
    }
    if ok(q) {
        Ok(())
    } else {
        Err(PriorError::UnsupportedQuery(q.to_string()))
    }
}

/// An ultimately periodic model of the ontology and the data, if one exists.
pub fn prior_model(o: &PriorOntology, d: &DataInstance) -> Result<Option<LassoModel>, PriorError> {
    search(o, d, None)
}

/// Whether the ontology is consistent with the data.
pub fn prior_consistent(o: &PriorOntology, d: &DataInstance) -> Result<bool, PriorError> {
    Ok(search(o, d, None)?.is_some())
}

/// An ultimately periodic model of the ontology and data in which `q` is false at 0.
pub fn prior_countermodel(
    o: &PriorOntology,
    d: &DataInstance,
    q: &Query,
) -> Result<Option<LassoModel>, PriorError> {
    check_query(q)?;
    search(o, d, Some(q))
}

/// Whether `q` is true at 0 in every model of the ontology and the data.
pub fn prior_entails(o: &PriorOntology, d: &DataInstance, q: &Query) -> Result<bool, PriorError> {
    Ok(prior_countermodel(o, d, q)?.is_none())
}
