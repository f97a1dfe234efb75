//! Element sets over a dense ground set `0..n` and canonical set families.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeSeq, Serializer};

const WORD: usize = 64;

/// A subset of the ground set `0..universe`.
///
/// Members are kept sorted, so iteration is proportional to the size of the
/// set, while a bit mask over the universe gives O(1) membership. Equality,
/// ordering and hashing only look at the members.
#[derive(Clone)]
pub struct ElementSet {
    universe: usize,
    members: Vec<usize>,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            members: Vec::new(),
            bits: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        Self::from_sorted_unchecked(universe, (0..universe).collect())
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        Self::from_sorted_unchecked(universe, vec![v])
    }

    /// Builds a set from arbitrary members; duplicates are merged.
    ///
    /// Panics if a member is outside the universe.
    pub fn new<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut members: Vec<usize> = it.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            assert!(last < universe, "element {last} outside ground set of size {universe}");
        }
        Self::from_sorted_unchecked(universe, members)
    }

    fn from_sorted_unchecked(universe: usize, members: Vec<usize>) -> Self {
        let mut bits = vec![0u64; universe.div_ceil(WORD)];
        for &m in &members {
            bits[m / WORD] |= 1 << (m % WORD);
        }
        ElementSet { universe, members, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn first(&self) -> Option<usize> {
        self.members.first().copied()
    }

    /// Elements of the universe outside this set.
    pub fn complement(&self) -> ElementSet {
        Self::from_sorted_unchecked(
            self.universe,
            (0..self.universe).filter(|&v| !self.contains(v)).collect(),
        )
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a ^ b)
    }

    fn combine(&self, other: &ElementSet, op: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert_eq!(self.universe, other.universe, "sets over different ground sets");
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(&a, &b)| op(a, b)).collect();
        let mut members = Vec::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let t = word.trailing_zeros() as usize;
                members.push(w * WORD + t);
                word &= word - 1;
            }
        }
        ElementSet { universe: self.universe, members, bits }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.len() <= other.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(&a, &b)| a & b != 0)
    }

    /// `A ∩ B`, `A ∖ B` and `B ∖ A` are all nonempty.
    pub fn overlaps(&self, other: &ElementSet) -> bool {
        let mut inter = false;
        let mut left = false;
        let mut right = false;
        for (&a, &b) in self.bits.iter().zip(&other.bits) {
            inter |= a & b != 0;
            left |= a & !b != 0;
            right |= b & !a != 0;
            if inter && left && right {
                return true;
            }
        }
        false
    }

    /// Trivial sets are the whole ground set and the singletons.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1 || self.len() == self.universe
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.clone()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(m)?;
        }
        seq.end()
    }
}

/// A canonical collection of distinct element sets.
///
/// Sets are kept sorted lexicographically by their sorted members, which
/// makes families directly comparable and their JSON output stable.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SetFamily {
    sets: Vec<ElementSet>,
    total_size: usize,
}

impl SetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_sets<I: IntoIterator<Item = ElementSet>>(it: I) -> Self {
        let mut sets: Vec<ElementSet> = it.into_iter().collect();
        sets.sort();
        sets.dedup();
        let total_size = sets.iter().map(ElementSet::len).sum();
        SetFamily { sets, total_size }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sum of the cardinalities of all member sets.
    pub fn total_size(&self) -> usize {
        self.total_size
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.sets.iter()
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn into_sets(self) -> Vec<ElementSet> {
        self.sets
    }

    /// Members as plain sorted vectors, in canonical order.
    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(ElementSet::to_vec).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.sets.iter()).finish()
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.sets.serialize(serializer)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

impl FromIterator<ElementSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = ElementSet>>(iter: I) -> Self {
        SetFamily::from_sets(iter)
    }
}
