//! Least-model computation for Horn ontologies over the natural numbers.
//!
//! Axioms are compiled into four kinds of rules over internal atoms:
//!
//! * `Conj`: `a1 ∧ ... ∧ ak → b` at the same time point,
//! * `Next`: `a` at `n` gives `b` at `n+1`,
//! * `Back`: `a` at `n+1` gives `b` at `n` (this is how `X`-body literals are read),
//! * `Box`:  `a` at every point after `n` gives `b` at `n`.
//!
//! `Box` rules are handled by thresholds: `b` is injected at every point from `t` on,
//! where `t` is the last point at which `a` is missing in the current model. Starting
//! with no injections, the model and the thresholds are recomputed until they are stable.
//!
//! For fixed thresholds the least model is ultimately periodic. It is obtained as the
//! least fixpoint over a guessed lasso shape `(M, p)`, and accepted only when it agrees
//! with a plain finite-window least fixpoint (an under-approximation) on `[0, M + 2p]`.
//! The window doubles until a guess is certified.

use std::collections::HashMap;

use crate::logic::DataInstance;

use super::ontology::{HornLiteral, HornOntology, TemporalOp};
use super::HornError;

const INITIAL_MARGIN: usize = 64;
const WINDOW_CAP: usize = 1 << 16;

#[derive(Debug, Clone)]
struct ConjRule {
    body: Vec<usize>,
    head: usize,
}

/// The compiled rule program.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    pub names: Vec<String>,
    /// Internal atoms that correspond to ontology or data atoms.
    pub visible: Vec<bool>,
    index: HashMap<String, usize>,
    conj: Vec<ConjRule>,
    next: Vec<(usize, usize)>,
    back: Vec<(usize, usize)>,
    boxes: Vec<(usize, usize)>,
    pub bot: usize,
    conj_by_atom: Vec<Vec<usize>>,
    next_by_atom: Vec<Vec<usize>>,
    back_by_atom: Vec<Vec<usize>>,
}

impl Program {
    fn atom(&mut self, name: &str, visible: bool) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.visible.push(visible);
        self.index.insert(name.to_string(), i);
        i
    }

    fn aux(&mut self) -> usize {
        let name = format!("${}", self.names.len());
        self.atom(&name, false)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn compile(o: &HornOntology, d: &DataInstance) -> Program {
        let mut p = Program {
            names: vec![],
            visible: vec![],
            index: HashMap::new(),
            conj: vec![],
            next: vec![],
            back: vec![],
            boxes: vec![],
            bot: 0,
            conj_by_atom: vec![],
            next_by_atom: vec![],
            back_by_atom: vec![],
        };
        p.bot = p.atom("$bot", false);
        for a in d.atoms().iter().chain(o.atoms().iter()) {
            p.atom(a, true);
        }
        let mut memo: HashMap<(Vec<TemporalOp>, String), usize> = HashMap::new();
        for ax in o.axioms() {
            let mut body = Vec::new();
            let mut dead = false;
            for lit in &ax.body {
                match p.body_literal(lit, &mut memo) {
                    Some(i) => body.push(i),
                    None => dead = true,
                }
            }
            if dead {
                continue;
            }
            body.sort_unstable();
            body.dedup();
            let Some(head_atom) = &ax.head.atom else {
                // X false and G false are unsatisfiable, so the body itself is refuted.
                p.conj.push(ConjRule { body, head: p.bot });
                continue;
            };
            let base = p.atom(head_atom, true);
            if ax.head.ops.is_empty() {
                p.conj.push(ConjRule { body, head: base });
                continue;
            }
            let mut cur = if body.len() == 1 {
                body[0]
            } else {
                let h = p.aux();
                p.conj.push(ConjRule { body, head: h });
                h
            };
            for op in &ax.head.ops {
                let y = p.aux();
                p.next.push((cur, y));
                if *op == TemporalOp::Box {
                    p.next.push((y, y));
                }
                cur = y;
            }
            p.conj.push(ConjRule { body: vec![cur], head: base });
        }
        let n = p.names.len();
        p.conj_by_atom = vec![vec![]; n];
        p.next_by_atom = vec![vec![]; n];
        p.back_by_atom = vec![vec![]; n];
        for (i, r) in p.conj.iter().enumerate() {
            for &b in &r.body {
                p.conj_by_atom[b].push(i);
            }
        }
        for (i, &(a, _)) in p.next.iter().enumerate() {
            p.next_by_atom[a].push(i);
        }
        for (i, &(a, _)) in p.back.iter().enumerate() {
            p.back_by_atom[a].push(i);
        }
        p
    }

    /// Internal atom true exactly where the literal holds; `None` for literals over `false`.
    fn body_literal(
        &mut self,
        lit: &HornLiteral,
        memo: &mut HashMap<(Vec<TemporalOp>, String), usize>,
    ) -> Option<usize> {
        let atom = lit.atom.as_ref()?;
        let mut cur = self.atom(atom, true);
        for k in (0..lit.ops.len()).rev() {
            let key = (lit.ops[k..].to_vec(), atom.clone());
            if let Some(&i) = memo.get(&key) {
                cur = i;
                continue;
            }
            let y = self.aux();
            match lit.ops[k] {
                TemporalOp::Next => self.back.push((cur, y)),
                TemporalOp::Box => self.boxes.push((cur, y)),
            }
            memo.insert(key, y);
            cur = y;
        }
        Some(cur)
    }
}

/// Atom sets over a block of time points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grid {
    words: usize,
    bits: Vec<u64>,
}

impl Grid {
    fn new(len: usize, atoms: usize) -> Self {
        let words = atoms.div_ceil(64).max(1);
        Grid { words, bits: vec![0; words * len] }
    }

    pub fn get(&self, pos: usize, a: usize) -> bool {
        self.bits[pos * self.words + a / 64] >> (a % 64) & 1 == 1
    }

    fn set(&mut self, pos: usize, a: usize) -> bool {
        let w = &mut self.bits[pos * self.words + a / 64];
        let m = 1u64 << (a % 64);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }

    pub fn row(&self, pos: usize) -> &[u64] {
        &self.bits[pos * self.words..(pos + 1) * self.words]
    }

}

/// The shape of the materialised positions: a plain window or a lasso.
#[derive(Clone, Copy)]
enum Shape {
    Window(usize),
    Lasso { pre: usize, per: usize },
}

impl Shape {
    fn len(self) -> usize {
        match self {
            Shape::Window(w) => w,
            Shape::Lasso { pre, per } => pre + per,
        }
    }

    fn succ(self, n: usize) -> Option<usize> {
        match self {
            Shape::Window(w) => (n + 1 < w).then_some(n + 1),
            Shape::Lasso { pre, per } => Some(if n + 1 == pre + per { pre } else { n + 1 }),
        }
    }

    fn preds(self, n: usize, out: &mut Vec<usize>) {
        out.clear();
        if n >= 1 {
            out.push(n - 1);
        }
        if let Shape::Lasso { pre, per } = self {
            if n == pre {
                out.push(pre + per - 1);
            }
        }
    }
}

/// Least fixpoint of the program over the given shape, with `Box` heads injected from
/// the given thresholds on. Returns `None` if `false` is derived.
fn lfp(p: &Program, d: &DataInstance, shape: Shape, thresholds: &[Option<usize>]) -> Option<Grid> {
    let len = shape.len();
    let mut g = Grid::new(len, p.len());
    let mut work: Vec<(usize, usize)> = Vec::new();
    let push = |g: &mut Grid, work: &mut Vec<(usize, usize)>, n: usize, a: usize| {
        if g.set(n, a) {
            work.push((n, a));
        }
    };
    for (a, t) in d.facts() {
        if t < len {
            let i = p.index_of(a).expect("data atoms are compiled");
            push(&mut g, &mut work, t, i);
        }
    }
    for (k, &(_, to)) in p.boxes.iter().enumerate() {
        if let Some(t) = thresholds[k] {
            for n in t.min(len)..len {
                push(&mut g, &mut work, n, to);
            }
        }
    }
    let mut preds = Vec::new();
    while let Some((n, a)) = work.pop() {
        if a == p.bot {
            return None;
        }
        for &ri in &p.conj_by_atom[a] {
            let r = &p.conj[ri];
            if r.body.iter().all(|&b| g.get(n, b)) {
                push(&mut g, &mut work, n, r.head);
            }
        }
        if let Some(s) = shape.succ(n) {
            for &ri in &p.next_by_atom[a] {
                push(&mut g, &mut work, s, p.next[ri].1);
            }
        }
        shape.preds(n, &mut preds);
        for &m in &preds {
            for &ri in &p.back_by_atom[a] {
                push(&mut g, &mut work, m, p.back[ri].1);
            }
        }
    }
    Some(g)
}

/// The exact least model for fixed thresholds, as a lasso grid with its `(pre, per)`.
pub(crate) struct LassoGrid {
    pub grid: Grid,
    pub pre: usize,
    pub per: usize,
}

impl LassoGrid {
    fn thresholds(&self, p: &Program) -> Vec<Option<usize>> {
        p.boxes
            .iter()
            .map(|&(from, _)| {
                if (self.pre..self.pre + self.per).any(|n| !self.grid.get(n, from)) {
                    None
                } else {
                    Some((0..self.pre).rev().find(|&n| !self.grid.get(n, from)).unwrap_or(0))
                }
            })
            .collect()
    }
}

fn exact_lfp(p: &Program, d: &DataInstance, thr: &[Option<usize>]) -> Result<LassoGrid, HornError> {
    let max_d = d.max_timestamp();
    let t_max = thr.iter().flatten().copied().max().unwrap_or(0);
    let lo = (max_d + 1).max(t_max);
    let mut w = lo + INITIAL_MARGIN;
    loop {
        if w > lo + WINDOW_CAP {
            return Err(HornError::WindowOverflow(w));
        }
        let Some(under) = lfp(p, d, Shape::Window(w), thr) else {
            return Err(HornError::Inconsistent);
        };
        let hi = w * 3 / 4;
        for per in 1..hi.saturating_sub(lo) / 3 + 1 {
            // Smallest M >= lo with rows repeating with period `per` on [M, hi).
            let mut m = hi - per;
            while m > lo && under.row(m - 1) == under.row(m - 1 + per) {
                m -= 1;
            }
            if m + 2 * per > hi {
                continue;
            }
            let Some(lasso) = lfp(p, d, Shape::Lasso { pre: m, per }, thr) else {
                // The lasso over-approximates only if uncertified; ⊥ here needs
                // certification like anything else, so try other shapes first.
                continue;
            };
            let fold = |n: usize| if n < m { n } else { m + (n - m) % per };
            if (0..=m + 2 * per).all(|n| lasso.row(fold(n)) == under.row(n)) {
                return Ok(LassoGrid { grid: lasso, pre: m, per });
            }
        }
        w *= 2;
    }
}

/// The least model of the ontology and the data as a lasso over internal atoms.
pub(crate) fn least_model(p: &Program, d: &DataInstance) -> Result<LassoGrid, HornError> {
    let mut thr = vec![None; p.boxes.len()];
    loop {
        let model = exact_lfp(p, d, &thr)?;
        let next = model.thresholds(p);
        if next == thr {
            return Ok(model);
        }
        thr = next;
    }
}
