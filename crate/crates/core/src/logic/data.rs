//! Data instances, example sets and ultimately periodic (lasso) models.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{valid_atom, LogicError};

/// A finite set of timestamped atoms `A@n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DataInstance {
    pub name: String,
    facts: BTreeSet<(String, usize)>,
}

impl DataInstance {
    /// Builds an instance, validating atom names. Duplicate facts collapse.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        facts: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, LogicError> {
        let mut set = BTreeSet::new();
        for (a, t) in facts {
            let a = a.into();
            if !valid_atom(&a) {
                return Err(LogicError::InvalidAtom(a));
            }
            set.insert((a, t));
        }
        Ok(DataInstance { name: name.into(), facts: set })
    }

    /// Parses a comma-separated list such as `"T@2, V@4"`.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, LogicError> {
        let mut facts = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, t) = item
                .split_once('@')
                .ok_or_else(|| LogicError::MalformedFact(item.to_string()))?;
            let t: usize = t
                .trim()
                .parse()
                .map_err(|_| LogicError::MalformedFact(item.to_string()))?;
            facts.push((a.trim().to_string(), t));
        }
        Self::new(name, facts)
    }

    /// The empty instance.
    pub fn empty(name: impl Into<String>) -> Self {
        DataInstance { name: name.into(), facts: BTreeSet::new() }
    }

    pub fn facts(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.facts.iter().map(|(a, t)| (a.as_str(), *t))
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Largest timestamp, or 0 for the empty instance.
    pub fn max_timestamp(&self) -> usize {
        self.facts.iter().map(|(_, t)| *t).max().unwrap_or(0)
    }

    pub fn holds(&self, atom: &str, t: usize) -> bool {
        self.facts.contains(&(atom.to_string(), t))
    }

    /// Atoms true at timestamp `t`.
    pub fn atoms_at(&self, t: usize) -> BTreeSet<String> {
        self.facts.iter().filter(|(_, s)| *s == t).map(|(a, _)| a.clone()).collect()
    }

    /// All atoms occurring in the instance.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.facts.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Shifts every fact `k` steps into the future.
    pub fn shifted(&self, k: usize) -> Self {
        DataInstance {
            name: self.name.clone(),
            facts: self.facts.iter().map(|(a, t)| (a.clone(), t + k)).collect(),
        }
    }

    /// Adds a fact (no validation of already-checked names is repeated).
    pub fn insert(&mut self, atom: impl Into<String>, t: usize) -> Result<(), LogicError> {
        let a = atom.into();
        if !valid_atom(&a) {
            return Err(LogicError::InvalidAtom(a));
        }
        self.facts.insert((a, t));
        Ok(())
    }

    /// Union of facts with another instance.
    pub fn union(&self, other: &DataInstance) -> Self {
        let mut facts = self.facts.clone();
        facts.extend(other.facts.iter().cloned());
        DataInstance { name: self.name.clone(), facts }
    }
}

impl std::fmt::Display for DataInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.facts.iter().map(|(a, t)| format!("{a}@{t}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Positive and negative examples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleSet {
    pub positives: Vec<DataInstance>,
    pub negatives: Vec<DataInstance>,
}

impl ExampleSet {
    pub fn new(positives: Vec<DataInstance>, negatives: Vec<DataInstance>) -> Self {
        ExampleSet { positives, negatives }
    }

    /// Convenience constructor from fact lists like `"T@2, V@4"`.
    pub fn parse(positives: &[&str], negatives: &[&str]) -> Result<Self, LogicError> {
        let pos = positives
            .iter()
            .enumerate()
            .map(|(i, s)| DataInstance::parse(format!("p{}", i + 1), s))
            .collect::<Result<_, _>>()?;
        let neg = negatives
            .iter()
            .enumerate()
            .map(|(i, s)| DataInstance::parse(format!("n{}", i + 1), s))
            .collect::<Result<_, _>>()?;
        Ok(ExampleSet::new(pos, neg))
    }

    /// Atoms occurring in any example.
    pub fn signature(&self) -> BTreeSet<String> {
        self.positives.iter().chain(&self.negatives).flat_map(|d| d.atoms()).collect()
    }

    /// Largest timestamp over all examples.
    pub fn max_timestamp(&self) -> usize {
        self.positives.iter().chain(&self.negatives).map(|d| d.max_timestamp()).max().unwrap_or(0)
    }
}

/// An ultimately periodic sequence of atom sets: `prefix · loop^ω`.
///
/// Positions `0..prefix.len()+loop.len()` are materialised; the successor of the last
/// position is the first loop position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LassoModel {
    pub prefix: Vec<BTreeSet<String>>,
    #[serde(rename = "loop")]
    pub cycle: Vec<BTreeSet<String>>,
}

impl LassoModel {
    pub fn new(
        prefix: Vec<BTreeSet<String>>,
        cycle: Vec<BTreeSet<String>>,
    ) -> Result<Self, LogicError> {
        if cycle.is_empty() {
            return Err(LogicError::EmptyLoop);
        }
        Ok(LassoModel { prefix, cycle })
    }

    /// The lasso of a plain data instance: prefix `0..=maxD`, loop `[∅]`.
    pub fn from_data(d: &DataInstance) -> Self {
        let prefix = (0..=d.max_timestamp()).map(|t| d.atoms_at(t)).collect();
        LassoModel { prefix, cycle: vec![BTreeSet::new()] }
    }

    pub fn pre(&self) -> usize {
        self.prefix.len()
    }

    pub fn per(&self) -> usize {
        self.cycle.len()
    }

    /// Number of materialised positions.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Successor of a materialised position.
    pub fn succ(&self, n: usize) -> usize {
        if n + 1 == self.len() {
            self.pre()
        } else {
            n + 1
        }
    }

    /// Atoms at a materialised position.
    pub fn at(&self, n: usize) -> &BTreeSet<String> {
        if n < self.pre() {
            &self.prefix[n]
        } else {
            &self.cycle[n - self.pre()]
        }
    }

    /// Materialised position representing arbitrary time point `t`.
    pub fn fold(&self, t: usize) -> usize {
        if t < self.pre() {
            t
        } else {
            self.pre() + (t - self.pre()) % self.per()
        }
    }

    /// Atoms at arbitrary time point `t` of the unfolded sequence.
    pub fn unfolded(&self, t: usize) -> &BTreeSet<String> {
        self.at(self.fold(t))
    }

    /// All atoms occurring in the lasso.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.prefix.iter().chain(&self.cycle).flatten().cloned().collect()
    }

    /// Restricts every position to atoms satisfying `keep`.
    pub fn project(&self, keep: impl Fn(&str) -> bool) -> Self {
        let f = |s: &BTreeSet<String>| s.iter().filter(|a| keep(a)).cloned().collect();
        LassoModel {
            prefix: self.prefix.iter().map(f).collect(),
            cycle: self.cycle.iter().map(f).collect(),
        }
    }
}

impl std::fmt::Display for LassoModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &[BTreeSet<String>]| -> String {
            v.iter()
                .map(|s| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{}] ([{}])^w", show(&self.prefix), show(&self.cycle))
    }
}
