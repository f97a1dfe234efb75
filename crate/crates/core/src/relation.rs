//! Homogeneous relations stored as one equivalence partition per element.
//!
//! For every element `s` the other `n - 1` elements are split into the
//! classes of `H_s`; `H(s|xy)` holds iff `x` and `y` share a class. The table
//! is dense (`n * n` class ids), so every query is O(1).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;

/// Class id stored on the diagonal, where `s == x`.
const NO_CLASS: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("expected {expected} partitions, got {found}")]
    PartitionCount { expected: usize, found: usize },
    #[error("element {x} appears more than once in the partition of {s}")]
    ElementRepeated { s: usize, x: usize },
    #[error("element {x} is missing from the partition of {s}")]
    ElementMissing { s: usize, x: usize },
    #[error("element {s} appears in its own partition")]
    SelfInClass { s: usize },
    #[error("element {x} in the partition of {s} is outside 0..{n}")]
    IndexOutOfRange { s: usize, x: usize, n: usize },
    #[error("triple ({s}|{x}{y}) is not reflectless")]
    NotReflectless { s: usize, x: usize, y: usize },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("set is over a ground set of size {found}, expected {expected}")]
    WrongUniverse { expected: usize, found: usize },
    #[error("part {0} of the partition is not a homogeneous set")]
    PartNotHomogeneous(usize),
    #[error("parts do not form a partition of the ground set: {0}")]
    NotAPartition(String),
    #[error("quotient depends on the representative chosen for part {0}")]
    RepresentativeDependent(usize),
    #[error("invalid relation JSON: {0}")]
    Json(String),
}

/// A homogeneous relation on the ground set `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    table: Vec<u32>,
    class_counts: Vec<u32>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Relation").field("n", &self.n).field("classes", &self.to_json_value().classes).finish()
    }
}

/// Interchange form: `classes[s]` is the partition of `V ∖ {s}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationJson {
    pub n: usize,
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl Relation {
    /// Validates one candidate partition of `V ∖ {s}` per element.
    ///
    /// Empty classes are ignored. Class ids are renumbered by first
    /// appearance in increasing element order, so two relations with the
    /// same equivalences compare equal regardless of how classes were listed.
    pub fn build(n: usize, partitions: &[Vec<Vec<usize>>]) -> Result<Relation, RelationError> {
        if n == 0 {
            return Err(RelationError::EmptyGroundSet);
        }
        if partitions.len() != n {
            return Err(RelationError::PartitionCount { expected: n, found: partitions.len() });
        }
        let mut raw = vec![NO_CLASS; n * n];
        for (s, classes) in partitions.iter().enumerate() {
            for (c, class) in classes.iter().enumerate() {
                for &x in class {
                    if x >= n {
                        return Err(RelationError::IndexOutOfRange { s, x, n });
                    }
                    if x == s {
                        return Err(RelationError::SelfInClass { s });
                    }
                    if raw[s * n + x] != NO_CLASS {
                        return Err(RelationError::ElementRepeated { s, x });
                    }
                    raw[s * n + x] = c as u32;
                }
            }
            if let Some(x) = (0..n).find(|&x| x != s && raw[s * n + x] == NO_CLASS) {
                return Err(RelationError::ElementMissing { s, x });
            }
        }
        Ok(Self::from_class_ids(n, |s, x| raw[s * n + x] as usize))
    }

    /// Builds a relation from a key function: `H(s|xy)` iff `key(s, x) == key(s, y)`.
    ///
    /// `key` is only called with `s != x`. Any key type with equality works;
    /// keys are compressed to dense class ids.
    pub fn from_class_fn<K: PartialEq>(n: usize, mut key: impl FnMut(usize, usize) -> K) -> Relation {
        assert!(n >= 1, "relation needs a nonempty ground set");
        let mut table = vec![NO_CLASS; n * n];
        let mut class_counts = vec![0u32; n];
        let mut seen: Vec<K> = Vec::new();
        for s in 0..n {
            seen.clear();
            for x in (0..n).filter(|&x| x != s) {
                let k = key(s, x);
                let id = match seen.iter().position(|q| *q == k) {
                    Some(id) => id,
                    None => {
                        seen.push(k);
                        seen.len() - 1
                    }
                };
                table[s * n + x] = id as u32;
            }
            class_counts[s] = seen.len() as u32;
        }
        Relation { n, table, class_counts }
    }

    /// Same as [`Relation::from_class_fn`] for integer keys, without the
    /// linear scan over previously seen keys.
    pub fn from_class_ids(n: usize, mut key: impl FnMut(usize, usize) -> usize) -> Relation {
        assert!(n >= 1, "relation needs a nonempty ground set");
        let mut table = vec![NO_CLASS; n * n];
        let mut class_counts = vec![0u32; n];
        let mut remap: Vec<u32> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        for s in 0..n {
            let mut next = 0u32;
            for x in (0..n).filter(|&x| x != s) {
                let k = key(s, x);
                if k >= remap.len() {
                    remap.resize(k + 1, NO_CLASS);
                }
                if remap[k] == NO_CLASS {
                    remap[k] = next;
                    touched.push(k);
                    next += 1;
                }
                table[s * n + x] = remap[k];
            }
            for k in touched.drain(..) {
                remap[k] = NO_CLASS;
            }
            class_counts[s] = next;
        }
        Relation { n, table, class_counts }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Class id of `x` in the partition of `s`. Requires `s != x`.
    #[inline]
    pub fn class_of(&self, s: usize, x: usize) -> u32 {
        debug_assert!(s != x);
        self.table[s * self.n + x]
    }

    /// Number of classes of `H_s`.
    pub fn class_count(&self, s: usize) -> usize {
        self.class_counts[s] as usize
    }

    /// The classes of `H_s`, each sorted, ordered by smallest member.
    pub fn classes(&self, s: usize) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.class_count(s)];
        for x in (0..self.n).filter(|&x| x != s) {
            classes[self.class_of(s, x) as usize].push(x);
        }
        classes
    }

    /// `H(s|xy)`. Reflexive queries (`x == y`) are true.
    pub fn holds(&self, s: usize, x: usize, y: usize) -> Result<bool, RelationError> {
        if s == x || s == y {
            return Err(RelationError::NotReflectless { s, x, y });
        }
        Ok(self.class_of(s, x) == self.class_of(s, y))
    }

    fn check_set(&self, set: &ElementSet) -> Result<(), RelationError> {
        if set.universe() != self.n {
            return Err(RelationError::WrongUniverse { expected: self.n, found: set.universe() });
        }
        if set.is_empty() {
            return Err(RelationError::EmptySet);
        }
        Ok(())
    }

    /// Does `s ∉ set` distinguish two members of `set`?
    #[inline]
    pub fn splits(&self, s: usize, set: &ElementSet) -> bool {
        let mut members = set.iter();
        match members.next() {
            None => false,
            Some(first) => {
                let c = self.class_of(s, first);
                members.any(|x| self.class_of(s, x) != c)
            }
        }
    }

    /// Every element outside `set` that distinguishes two of its members.
    pub fn splitters(&self, set: &ElementSet) -> Result<ElementSet, RelationError> {
        self.check_set(set)?;
        let found = (0..self.n).filter(|&s| !set.contains(s) && self.splits(s, set));
        Ok(ElementSet::new(self.n, found))
    }

    /// Number of splitters; the empty set counts as `-n`.
    pub fn splitter_count(&self, set: &ElementSet) -> i64 {
        if set.is_empty() {
            return -(self.n as i64);
        }
        (0..self.n).filter(|&s| !set.contains(s) && self.splits(s, set)).count() as i64
    }

    pub fn is_homogeneous_set(&self, set: &ElementSet) -> Result<bool, RelationError> {
        self.check_set(set)?;
        Ok((0..self.n).all(|s| set.contains(s) || !self.splits(s, set)))
    }

    /// The induced relation on `set`, re-indexed to `0..|set|`.
    pub fn restrict(&self, set: &ElementSet) -> Result<Restriction, RelationError> {
        self.check_set(set)?;
        let original: Vec<usize> = set.to_vec();
        let relation =
            Relation::from_class_ids(original.len(), |s, x| self.class_of(original[s], original[x]) as usize);
        Ok(Restriction { relation, original, parent_len: self.n })
    }

    /// The quotient by a partition into homogeneous sets, using the
    /// smallest member of each part as its representative.
    ///
    /// Soundness needs axiom A2; see [`Relation::quotient_strict`] for a
    /// version that verifies the result is independent of representatives.
    pub fn quotient(&self, partition: &CongruencePartition) -> Result<Relation, RelationError> {
        if partition.universe != self.n {
            return Err(RelationError::WrongUniverse { expected: self.n, found: partition.universe });
        }
        for (i, part) in partition.parts.iter().enumerate() {
            if !self.is_homogeneous_set(part)? {
                return Err(RelationError::PartNotHomogeneous(i));
            }
        }
        let reps = partition.representatives();
        Ok(Relation::from_class_ids(reps.len(), |p, q| self.class_of(reps[p], reps[q]) as usize))
    }

    /// Like [`Relation::quotient`], but fails when another choice of
    /// representative for some part would give a different relation.
    pub fn quotient_strict(&self, partition: &CongruencePartition) -> Result<Relation, RelationError> {
        let quotient = self.quotient(partition)?;
        let reps = partition.representatives();
        for (p, part) in partition.parts.iter().enumerate() {
            for a in part.iter() {
                let alt = Relation::from_class_ids(reps.len(), |i, j| {
                    let s = if i == p { a } else { reps[i] };
                    self.class_of(s, reps[j]) as usize
                });
                if alt != quotient {
                    return Err(RelationError::RepresentativeDependent(p));
                }
            }
        }
        Ok(quotient)
    }

    pub fn to_json_value(&self) -> RelationJson {
        RelationJson { n: self.n, classes: (0..self.n).map(|s| self.classes(s)).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("relation serializes")
    }

    pub fn from_json(text: &str) -> Result<Relation, RelationError> {
        let raw: RelationJson = serde_json::from_str(text).map_err(|e| RelationError::Json(e.to_string()))?;
        Relation::build(raw.n, &raw.classes)
    }
}

/// A relation induced on a subset, with the map back to original ids.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub relation: Relation,
    /// `original[i]` is the element of the parent ground set renamed to `i`.
    pub original: Vec<usize>,
    pub parent_len: usize,
}

impl Restriction {
    /// Translates a set of the parent relation that lies inside the restriction.
    pub fn lift_in(&self, set: &ElementSet) -> Option<ElementSet> {
        let mut local = Vec::with_capacity(set.len());
        for v in set.iter() {
            local.push(self.original.binary_search(&v).ok()?);
        }
        Some(ElementSet::new(self.original.len(), local))
    }

    pub fn lift_out(&self, set: &ElementSet) -> ElementSet {
        ElementSet::new(self.parent_len, set.iter().map(|i| self.original[i]))
    }
}

/// Disjoint nonempty parts covering the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruencePartition {
    universe: usize,
    parts: Vec<ElementSet>,
}

impl CongruencePartition {
    pub fn new(universe: usize, parts: Vec<Vec<usize>>) -> Result<Self, RelationError> {
        let mut owner = vec![usize::MAX; universe];
        let mut sets = Vec::with_capacity(parts.len());
        for (i, part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(RelationError::NotAPartition(format!("part {i} is empty")));
            }
            for &v in &part {
                if v >= universe {
                    return Err(RelationError::NotAPartition(format!("element {v} outside 0..{universe}")));
                }
                if owner[v] != usize::MAX {
                    return Err(RelationError::NotAPartition(format!("element {v} in parts {} and {i}", owner[v])));
                }
                owner[v] = i;
            }
            sets.push(ElementSet::new(universe, part));
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(RelationError::NotAPartition(format!("element {v} is not covered")));
        }
        Ok(CongruencePartition { universe, parts: sets })
    }

    pub fn singletons(universe: usize) -> Self {
        CongruencePartition {
            universe,
            parts: (0..universe).map(|v| ElementSet::singleton(universe, v)).collect(),
        }
    }

    pub fn parts(&self) -> &[ElementSet] {
        &self.parts
    }

    /// Smallest member of each part.
    pub fn representatives(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.first().expect("parts are nonempty")).collect()
    }
}
