//! Finite labelled transition systems with label subsumption.
//!
//! States carry sets of atoms; edges carry sets of atoms possibly containing the extra
//! letter `⊥`, and optionally a colour (black or red). A transition system stands for the
//! set of its finite runs (for containment) or of its finite computation subtrees (for
//! simulation).

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// A set of atoms (bit `i` = the `i`-th signature atom) possibly containing `⊥`.
pub type Label = u128;

/// The `⊥` letter.
pub const BOT: Label = 1 << 127;
/// `Σ ∪ {⊥}`: subsumes every label.
pub const SIGMA_BOT: Label = u128::MAX;
/// Largest supported signature.
pub const MAX_ATOMS: usize = 127;

/// `a ⊆ b`.
pub fn subsumed(a: Label, b: Label) -> bool {
    a & !b == 0
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TsysError {
    #[error("product of an empty list of systems")]
    EmptyProduct,
    #[error("containment is only defined for uncoloured systems")]
    Colored,
    #[error("systems disagree on colouring")]
    MixedColoring,
    #[error("signature with {0} atoms exceeds the supported {MAX_ATOMS}")]
    SignatureTooLarge(usize),
}

/// An ordered atom signature used to encode labels as bitmasks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<String>,
}

impl Signature {
    pub fn new(atoms: impl IntoIterator<Item = String>) -> Result<Self, TsysError> {
        let set: BTreeSet<String> = atoms.into_iter().collect();
        if set.len() > MAX_ATOMS {
            return Err(TsysError::SignatureTooLarge(set.len()));
        }
        Ok(Signature { atoms: set.into_iter().collect() })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index(&self, a: &str) -> Option<usize> {
        self.atoms.binary_search_by(|x| x.as_str().cmp(a)).ok()
    }

    /// Label of a set of atoms; atoms outside the signature are ignored.
    pub fn label<'a>(&self, atoms: impl IntoIterator<Item = &'a String>) -> Label {
        atoms.into_iter().filter_map(|a| self.index(a)).fold(0, |acc, i| acc | 1 << i)
    }

    /// Atoms of a label (without `⊥`).
    pub fn atoms_of(&self, l: Label) -> Vec<&str> {
        (0..self.atoms.len()).filter(|i| l >> i & 1 == 1).map(|i| self.atoms[i].as_str()).collect()
    }

    /// Human-readable rendering; `Σ⊥` for labels subsuming everything in the signature.
    pub fn render(&self, l: Label) -> String {
        let full: Label = if self.atoms.is_empty() { 0 } else { (1u128 << self.atoms.len()) - 1 };
        if l & BOT != 0 && subsumed(full, l) {
            return "Σ⊥".into();
        }
        let mut parts: Vec<String> = self.atoms_of(l).into_iter().map(String::from).collect();
        if l & BOT != 0 {
            parts.push("⊥".into());
        }
        format!("{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub to: usize,
    pub label: Label,
    pub color: Color,
}

/// A finite labelled transition system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitionSystem {
    pub colored: bool,
    pub labels: Vec<Label>,
    pub edges: Vec<Vec<Edge>>,
    pub initial: Vec<usize>,
    /// Display names of states (for DOT export and debugging).
    pub names: Vec<String>,
}

impl TransitionSystem {
    pub fn new(colored: bool) -> Self {
        TransitionSystem { colored, ..Default::default() }
    }

    pub fn add_state(&mut self, name: impl Into<String>, label: Label) -> usize {
        self.labels.push(label);
        self.edges.push(Vec::new());
        self.names.push(name.into());
        self.labels.len() - 1
    }

    /// Adds an edge; an existing edge with the same target and colour is replaced.
    pub fn add_edge(&mut self, from: usize, to: usize, label: Label, color: Color) {
        let list = &mut self.edges[from];
        if let Some(e) = list.iter_mut().find(|e| e.to == to && e.color == color) {
            e.label = label;
        } else {
            list.push(Edge { to, label, color });
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Graphviz rendering (not a stable format).
    pub fn to_dot(&self, sig: &Signature) -> String {
        let mut s = String::from("digraph ts {\n");
        for i in 0..self.len() {
            let shape = if self.initial.contains(&i) { "doublecircle" } else { "circle" };
            let _ = writeln!(
                s,
                "  s{i} [shape={shape}, label=\"{}\\n{}\"];",
                self.names[i],
                sig.render(self.labels[i])
            );
        }
        for (i, es) in self.edges.iter().enumerate() {
            for e in es {
                let color = if e.color == Color::Red { "red" } else { "black" };
                let _ = writeln!(s, "  s{i} -> s{} [color={color}, label=\"{}\"];", e.to, sig.render(e.label));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Synchronous product of systems: states are reachable tuples, labels are intersected,
/// and coloured edges combine only with edges of the same colour.
pub fn product(systems: &[TransitionSystem]) -> Result<TransitionSystem, TsysError> {
    let first = systems.first().ok_or(TsysError::EmptyProduct)?;
    if systems.iter().any(|s| s.colored != first.colored) {
        return Err(TsysError::MixedColoring);
    }
    if systems.len() == 1 {
        return Ok(first.clone());
    }
    let mut out = TransitionSystem::new(first.colored);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    let intern = |tuple: Vec<usize>,
                  out: &mut TransitionSystem,
                  index: &mut HashMap<Vec<usize>, usize>,
                  queue: &mut VecDeque<Vec<usize>>|
     -> usize {
        if let Some(&i) = index.get(&tuple) {
            return i;
        }
        let label = tuple.iter().zip(systems).fold(SIGMA_BOT, |acc, (&x, s)| acc & s.labels[x]);
        let name = format!(
            "({})",
            tuple.iter().zip(systems).map(|(&x, s)| s.names[x].clone()).collect::<Vec<_>>().join(",")
        );
        let i = out.add_state(name, label);
        index.insert(tuple.clone(), i);
        queue.push_back(tuple);
        i
    };
    // Initial tuples: all combinations of initial states.
    let mut inits: Vec<Vec<usize>> = vec![vec![]];
    for s in systems {
        inits = inits
            .into_iter()
            .flat_map(|t| s.initial.iter().map(move |&x| [t.clone(), vec![x]].concat()))
            .collect();
    }
    for t in inits {
        let i = intern(t, &mut out, &mut index, &mut queue);
        out.initial.push(i);
    }
    while let Some(tuple) = queue.pop_front() {
        let from = index[&tuple];
        for color in [Color::Black, Color::Red] {
            // Combinations of component edges of this colour.
            let mut combos: Vec<(Vec<usize>, Label)> = vec![(vec![], SIGMA_BOT)];
            for (&x, s) in tuple.iter().zip(systems) {
                let es: Vec<&Edge> = s.edges[x].iter().filter(|e| e.color == color).collect();
                if es.is_empty() {
                    combos.clear();
                    break;
                }
                combos = combos
                    .into_iter()
                    .flat_map(|(t, l)| es.iter().map(move |e| ([t.clone(), vec![e.to]].concat(), l & e.label)))
                    .collect();
            }
            for (target, label) in combos {
                let to = intern(target, &mut out, &mut index, &mut queue);
                out.add_edge(from, to, label, color);
            }
        }
    }
    Ok(out)
}

/// Disjoint union; all initial states are kept.
pub fn disjoint_union(systems: &[TransitionSystem]) -> Result<TransitionSystem, TsysError> {
    let Some(first) = systems.first() else {
        return Ok(TransitionSystem::new(false));
    };
    if systems.iter().any(|s| s.colored != first.colored) {
        return Err(TsysError::MixedColoring);
    }
    let mut out = TransitionSystem::new(first.colored);
    for (k, s) in systems.iter().enumerate() {
        let off = out.len();
        for i in 0..s.len() {
            out.add_state(format!("{k}:{}", s.names[i]), s.labels[i]);
        }
        for (i, es) in s.edges.iter().enumerate() {
            for e in es {
                out.add_edge(off + i, off + e.to, e.label, e.color);
            }
        }
        out.initial.extend(s.initial.iter().map(|&x| off + x));
    }
    Ok(out)
}

/// The greatest simulation between the pairs reachable from initial pairs, with the
/// refinement round at which each non-simulated pair was eliminated.
pub struct Simulation<'a> {
    s: &'a TransitionSystem,
    t: &'a TransitionSystem,
    pairs: HashMap<(usize, usize), usize>,
    keys: Vec<(usize, usize)>,
    /// For each pair and each edge of its `s`-state, the matching successor pairs.
    moves: Vec<Vec<Vec<usize>>>,
    rank: Vec<u32>,
}

const ALIVE: u32 = u32::MAX;

impl<'a> Simulation<'a> {
    pub fn compute(s: &'a TransitionSystem, t: &'a TransitionSystem) -> Self {
        let mut sim = Simulation { s, t, pairs: HashMap::new(), keys: vec![], moves: vec![], rank: vec![] };
        let mut queue = VecDeque::new();
        for &x in &s.initial {
            for &y in &t.initial {
                sim.intern(x, y, &mut queue);
            }
        }
        while let Some(p) = queue.pop_front() {
            let (x, y) = sim.keys[p];
            if !subsumed(s.labels[x], t.labels[y]) {
                continue;
            }
            let mut per_edge = Vec::with_capacity(s.edges[x].len());
            for e in &s.edges[x] {
                let mut succ = Vec::new();
                for f in &t.edges[y] {
                    if f.color == e.color && subsumed(e.label, f.label) {
                        succ.push(sim.intern(e.to, f.to, &mut queue));
                    }
                }
                per_edge.push(succ);
            }
            sim.moves[p] = per_edge;
        }
        sim.refine();
        sim
    }

    fn intern(&mut self, x: usize, y: usize, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&p) = self.pairs.get(&(x, y)) {
            return p;
        }
        let p = self.keys.len();
        self.keys.push((x, y));
        self.pairs.insert((x, y), p);
        self.moves.push(vec![]);
        self.rank.push(ALIVE);
        queue.push_back(p);
        p
    }

    /// Eliminates pairs in rounds; a pair dies in round `r + 1` once some edge of its
    /// `s`-state has only successor pairs that died by round `r`.
    fn refine(&mut self) {
        let n = self.keys.len();
        let mut preds: Vec<Vec<(usize, usize)>> = vec![vec![]; n];
        let mut live_count: Vec<Vec<usize>> = Vec::with_capacity(n);
        for p in 0..n {
            for (ei, succ) in self.moves[p].iter().enumerate() {
                for &q in succ {
                    preds[q].push((p, ei));
                }
            }
            live_count.push(self.moves[p].iter().map(Vec::len).collect());
        }
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (p, &(x, y)) in self.keys.iter().enumerate() {
            if !subsumed(self.s.labels[x], self.t.labels[y]) {
                self.rank[p] = 0;
                queue.push_back(p);
            } else if live_count[p].contains(&0) {
                self.rank[p] = 1;
            }
        }
        // Pairs of rank 1 go after all rank-0 pairs.
        for p in 0..n {
            if self.rank[p] == 1 {
                queue.push_back(p);
            }
        }
        while let Some(q) = queue.pop_front() {
            let r = self.rank[q];
            for &(p, ei) in &preds[q] {
                if self.rank[p] != ALIVE {
                    continue;
                }
                live_count[p][ei] -= 1;
                if live_count[p][ei] == 0 {
                    self.rank[p] = r + 1;
                    queue.push_back(p);
                }
            }
        }
    }

    fn rank_of(&self, x: usize, y: usize) -> u32 {
        self.pairs.get(&(x, y)).map(|&p| self.rank[p]).unwrap_or(ALIVE)
    }

    /// Whether `x` is simulated by `y`.
    /// Number of explored state pairs.
    pub fn pairs(&self) -> usize {
        self.keys.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rank_of(x, y) == ALIVE
    }

    /// Whether every initial state of `s` is simulated by some initial state of `t`.
    pub fn holds(&self) -> bool {
        self.s.initial.iter().all(|&x| self.t.initial.iter().any(|&y| self.related(x, y)))
    }

    /// A finite subtree of `s` that does not embed into `t` at any initial state.
    pub fn failing_subtree(&self) -> Option<Tree> {
        let x = *self.s.initial.iter().find(|&&x| !self.t.initial.iter().any(|&y| self.related(x, y)))?;
        Some(self.subtree(x, &self.t.initial))
    }

    fn subtree(&self, x: usize, ys: &[usize]) -> Tree {
        let mut groups: Vec<(usize, BTreeSet<usize>)> = Vec::new();
        for &y in ys {
            let p = self.pairs[&(x, y)];
            let r = self.rank[p];
            debug_assert!(r != ALIVE);
            if r == 0 {
                continue;
            }
            let ei = (0..self.moves[p].len())
                .find(|&ei| self.moves[p][ei].iter().all(|&q| self.rank[q] < r))
                .expect("a refuting edge exists for every eliminated pair");
            let targets = self.moves[p][ei].iter().map(|&q| self.keys[q].1);
            match groups.iter_mut().find(|g| g.0 == ei) {
                Some(g) => g.1.extend(targets),
                None => groups.push((ei, targets.collect())),
            }
        }
        groups.sort_by_key(|g| g.0);
        let children = groups
            .into_iter()
            .map(|(ei, ys2)| {
                let e = self.s.edges[x][ei];
                let ys2: Vec<usize> = ys2.into_iter().collect();
                TreeEdge { label: e.label, color: e.color, child: self.subtree(e.to, &ys2) }
            })
            .collect();
        Tree { state: x, label: self.s.labels[x], children }
    }
}

/// Whether every finite computation subtree of `s` embeds into `t`.
pub fn simulates(s: &TransitionSystem, t: &TransitionSystem) -> bool {
    Simulation::compute(s, t).holds()
}

/// A finite subtree of `s` not embeddable into `t`, or `None` if `t` simulates `s`.
pub fn extract_failing_subtree(s: &TransitionSystem, t: &TransitionSystem) -> Option<Tree> {
    Simulation::compute(s, t).failing_subtree()
}

/// A finite labelled tree (a piece of a computation tree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    /// The state of the system the node was taken from.
    pub state: usize,
    pub label: Label,
    pub children: Vec<TreeEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub label: Label,
    pub color: Color,
    pub child: Tree,
}

impl Tree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.child.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| 1 + c.child.depth()).max().unwrap_or(0)
    }

    /// Direct recursive check that the tree maps homomorphically into `t` at `y`.
    pub fn embeds_at(&self, t: &TransitionSystem, y: usize) -> bool {
        subsumed(self.label, t.labels[y])
            && self.children.iter().all(|c| {
                t.edges[y]
                    .iter()
                    .any(|f| f.color == c.color && subsumed(c.label, f.label) && c.child.embeds_at(t, f.to))
            })
    }

    /// Whether the tree embeds into `t` at some initial state.
    pub fn embeds(&self, t: &TransitionSystem) -> bool {
        t.initial.iter().any(|&y| self.embeds_at(t, y))
    }
}

/// A finite run: states and the labels of the edges between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<usize>,
    pub state_labels: Vec<Label>,
    pub edge_labels: Vec<Label>,
}

impl Run {
    /// Whether `t` has a run of the same length subsuming this one from an initial state.
    pub fn embeds(&self, t: &TransitionSystem) -> bool {
        let mut cur: BTreeSet<usize> =
            t.initial.iter().copied().filter(|&y| subsumed(self.state_labels[0], t.labels[y])).collect();
        for (i, &b) in self.edge_labels.iter().enumerate() {
            let lab = self.state_labels[i + 1];
            cur = cur
                .iter()
                .flat_map(|&y| t.edges[y].iter())
                .filter(|f| subsumed(b, f.label) && subsumed(lab, t.labels[f.to]))
                .map(|f| f.to)
                .collect();
        }
        !cur.is_empty()
    }
}

/// Searches for a shortest run of `s` with no subsuming run in `t`.
fn containment_search(s: &TransitionSystem, t: &TransitionSystem) -> Result<Option<Run>, TsysError> {
    if s.colored || t.colored {
        return Err(TsysError::Colored);
    }
    type Node = (usize, Vec<usize>);
    let mut seen: HashSet<Node> = HashSet::new();
    let mut parent: HashMap<Node, (Node, Label)> = HashMap::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    let rebuild = |end: (usize, Option<(Node, Label)>), parent: &HashMap<Node, (Node, Label)>| -> Run {
        let mut states = vec![end.0];
        let mut edges = vec![];
        let mut cur = end.1;
        while let Some((node, lab)) = cur {
            states.push(node.0);
            edges.push(lab);
            cur = parent.get(&node).cloned();
        }
        states.reverse();
        edges.reverse();
        Run { state_labels: states.iter().map(|&x| s.labels[x]).collect(), states, edge_labels: edges }
    };
    for &x in &s.initial {
        let ys: Vec<usize> = t.initial.iter().copied().filter(|&y| subsumed(s.labels[x], t.labels[y])).collect();
        if ys.is_empty() {
            return Ok(Some(rebuild((x, None), &parent)));
        }
        let node = (x, ys);
        if seen.insert(node.clone()) {
            queue.push_back(node);
        }
    }
    while let Some(node) = queue.pop_front() {
        let (x, ys) = &node;
        for e in &s.edges[*x] {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &y in ys {
                for f in &t.edges[y] {
                    if subsumed(e.label, f.label) && subsumed(s.labels[e.to], t.labels[f.to]) {
                        next.insert(f.to);
                    }
                }
            }
            if next.is_empty() {
                return Ok(Some(rebuild((e.to, Some((node.clone(), e.label))), &parent)));
            }
            let child = (e.to, next.into_iter().collect::<Vec<_>>());
            if seen.insert(child.clone()) {
                parent.insert(child.clone(), (node.clone(), e.label));
                queue.push_back(child);
            }
        }
    }
    Ok(None)
}

/// Whether every run of `s` has a subsuming run of `t` of the same length.
pub fn contained_in(s: &TransitionSystem, t: &TransitionSystem) -> Result<bool, TsysError> {
    Ok(containment_search(s, t)?.is_none())
}

/// A shortest run of `s` without a subsuming run in `t` (`None` if containment holds).
pub fn extract_failing_run(s: &TransitionSystem, t: &TransitionSystem) -> Result<Option<Run>, TsysError> {
    containment_search(s, t)
}
