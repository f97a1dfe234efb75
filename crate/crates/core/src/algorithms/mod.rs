//! Smallest and maximal homogeneous sets, and the triviality test.

mod partition;

pub use partition::RefinablePartition;

use thiserror::Error;

use crate::relation::Relation;
use crate::set::{ElementSet, SetFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgorithmError {
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("pivot {0} lies inside the set being partitioned")]
    PivotInside(usize),
    #[error("element {0} outside the ground set")]
    OutOfRange(usize),
}

/// The smallest homogeneous set containing `seeds`.
///
/// Grows `M` from one seed; `F` holds every element known to split `M`. When
/// `y` joins `M`, the new splitters are exactly the `z` that distinguish `y`
/// from the first seed `x`. Each element enters `F` once, so the cost is
/// O(n · |result|).
pub fn shs(r: &Relation, seeds: &ElementSet) -> Result<ElementSet, AlgorithmError> {
    let n = r.len();
    let x = seeds.first().ok_or(AlgorithmError::EmptySet)?;
    if let Some(&bad) = seeds.as_slice().last().filter(|&&v| v >= n) {
        return Err(AlgorithmError::OutOfRange(bad));
    }
    let mut known = vec![false; n];
    let mut members = vec![x];
    let mut pending: Vec<usize> = seeds.iter().filter(|&v| v != x).collect();
    for v in seeds.iter() {
        known[v] = true;
    }
    while let Some(y) = pending.pop() {
        members.push(y);
        for z in 0..n {
            if !known[z] && r.class_of(z, x) != r.class_of(z, y) {
                known[z] = true;
                pending.push(z);
            }
        }
    }
    Ok(ElementSet::new(n, members))
}

/// Groups `z` by the classes of `H_y`, in order of first appearance.
pub fn partition_by_pivot_classes(
    r: &Relation,
    y: usize,
    z: &ElementSet,
) -> Result<Vec<ElementSet>, AlgorithmError> {
    if y >= r.len() {
        return Err(AlgorithmError::OutOfRange(y));
    }
    if z.contains(y) {
        return Err(AlgorithmError::PivotInside(y));
    }
    let mut buckets = PivotBuckets::new(r.len());
    let mut parts = Vec::new();
    buckets.split(r, y, z.as_slice(), &mut parts);
    Ok(parts.into_iter().map(|p| ElementSet::new(r.len(), p)).collect())
}

/// Scratch space for bucketing by pivot class in O(|Z|).
struct PivotBuckets {
    slot: Vec<usize>,
    used: Vec<u32>,
}

impl PivotBuckets {
    fn new(n: usize) -> Self {
        PivotBuckets { slot: vec![usize::MAX; n.max(1)], used: Vec::new() }
    }

    fn split(&mut self, r: &Relation, y: usize, z: &[usize], out: &mut Vec<Vec<usize>>) -> usize {
        let base = out.len();
        for &e in z {
            let c = r.class_of(y, e);
            let s = &mut self.slot[c as usize];
            if *s == usize::MAX {
                *s = out.len();
                out.push(Vec::new());
                self.used.push(c);
            }
            out[*s].push(e);
        }
        for c in self.used.drain(..) {
            self.slot[c as usize] = usize::MAX;
        }
        out.len() - base
    }
}

/// Counters collected by [`mhs_with_stats`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MhsStats {
    /// Refinement rounds, including the last one that found nothing.
    pub rounds: usize,
    /// Elements placed into some `Z` set, summed over pivots.
    pub pivot_work: usize,
    /// Elements moved by refining sets.
    pub refine_work: usize,
}

impl MhsStats {
    pub fn total(&self) -> usize {
        self.pivot_work + self.refine_work
    }
}

/// The partition of `V ∖ {x}` into maximal homogeneous sets avoiding `x`.
pub fn mhs(r: &Relation, x: usize) -> SetFamily {
    mhs_with_stats(r, x).0
}

/// [`mhs`] plus work counters.
///
/// Starts from the classes of `H_x` and refines by pivots. A pivot `y` splits
/// every class except its own along the classes of `H_y`. Per round, each
/// group (a class of the previous round) re-examines only pairs `(y, z)`
/// where `z` sits in the same group as `y` but in another class, so every
/// pair is charged once overall and the run takes O(n²).
pub fn mhs_with_stats(r: &Relation, x: usize) -> (SetFamily, MhsStats) {
    let n = r.len();
    let mut stats = MhsStats::default();
    if n <= 1 {
        return (SetFamily::new(), stats);
    }
    let mut partition = RefinablePartition::new(n, &r.classes(x));
    let mut buckets = PivotBuckets::new(n);
    let mut pool: Vec<Vec<usize>> = Vec::new();
    let mut z: Vec<usize> = Vec::new();
    loop {
        stats.rounds += 1;
        pool.clear();
        for group in partition.groups() {
            if group.len() < 2 {
                continue;
            }
            for &class in &group {
                z.clear();
                for &other in group.iter().filter(|&&c| c != class) {
                    z.extend_from_slice(partition.class_members(other));
                }
                for &y in partition.class_members(class) {
                    stats.pivot_work += z.len();
                    let before = pool.len();
                    if buckets.split(r, y, &z, &mut pool) == 1 {
                        // y sees all of Z alike; Z is a union of classes
                        pool.truncate(before);
                    }
                }
            }
        }
        partition.close_groups();
        if pool.is_empty() {
            break;
        }
        for refiner in &pool {
            partition.refine(refiner);
        }
    }
    stats.refine_work = partition.moved();
    let family = partition.classes().into_iter().map(|c| ElementSet::new(n, c)).collect();
    (family, stats)
}

/// Whether the only homogeneous sets are `V` and the singletons.
///
/// Two MHS runs rule out nontrivial sets avoiding `x` or `y`; any remaining
/// one contains both, hence contains SHS({x, y}).
pub fn is_trivial(r: &Relation) -> bool {
    let n = r.len();
    if n < 2 {
        return true;
    }
    for pivot in [0, 1] {
        if mhs(r, pivot).iter().any(|set| set.len() >= 2) {
            return false;
        }
    }
    let pair = ElementSet::new(n, [0, 1]);
    shs(r, &pair).expect("seed set is nonempty").len() == n
}
