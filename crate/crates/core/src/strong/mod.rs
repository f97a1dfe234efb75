//! Strong homogeneous sets.
//!
//! Let `Z` be the family of homogeneous sets that contain some `x`, avoid some
//! `y`, and are maximal for that property. The strong sets are exactly the
//! supports and atoms of the overlap classes of `Z`, plus the trivial sets.
//! For a [`Relation`], `Z` is the union of the MHS partitions of every
//! element. Families that are not relations (bimodules) go through
//! [`HomogeneitySystem`], which only needs a closure test and a smallest
//! closed superset.

mod tree;

pub use tree::{decompose, type_nodes, NodeKind, StrongTree, TreeNode, Typing};

use std::thread;

use thiserror::Error;

use crate::algorithms::{mhs, shs, RefinablePartition};
use crate::instances::BimoduleInstance;
use crate::relation::Relation;
use crate::set::{ElementSet, SetFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("sets {a:?} and {b:?} overlap")]
    OverlappingSets { a: Vec<usize>, b: Vec<usize> },
    #[error("family is missing the trivial set {0:?}")]
    MissingTrivial(Vec<usize>),
    #[error("children of node {members:?} fit neither prime, degenerate nor linear")]
    NotWeaklyPartitive { members: Vec<usize> },
    #[error("union of overlapping sets {a:?} and {b:?} is not in the family")]
    ClosureViolation { a: Vec<usize>, b: Vec<usize> },
    #[error("tree has {tree} elements but the relation has {relation}")]
    SizeMismatch { tree: usize, relation: usize },
}

/// `Z` as the union of `mhs(x)` over all elements, deduplicated.
pub fn z_family(r: &Relation) -> SetFamily {
    (0..r.len()).flat_map(|x| mhs(r, x).into_sets()).collect()
}

/// [`z_family`] with the independent MHS runs spread over `threads` workers.
/// The result does not depend on the thread count.
pub fn z_family_threaded(r: &Relation, threads: usize) -> SetFamily {
    let n = r.len();
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        return z_family(r);
    }
    let chunk = n.div_ceil(threads);
    let parts: Vec<Vec<ElementSet>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|lo| {
                scope.spawn(move || {
                    (lo..(lo + chunk).min(n)).flat_map(|x| mhs(r, x).into_sets()).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("mhs worker panicked")).collect()
    });
    parts.into_iter().flatten().collect()
}

/// An equivalence class of the transitive closure of "overlaps".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapClass {
    pub members: Vec<ElementSet>,
    pub support: ElementSet,
    pub atoms: Vec<ElementSet>,
}

impl OverlapClass {
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Overlap classes of a family, with supports and atoms.
///
/// Pairs are tested by a sweep over sets sorted by smallest member: once a
/// set starts after the largest member of another, the two cannot meet.
/// Classes come out ordered by their first member set.
pub fn overlap_classes(family: &SetFamily) -> Vec<OverlapClass> {
    let sets = family.sets();
    let mut uf = UnionFind::new(sets.len());
    // sets are already sorted lexicographically, hence by minimum
    let candidates: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].len() >= 2).collect();
    for (a, &i) in candidates.iter().enumerate() {
        let last = *sets[i].as_slice().last().expect("nonempty");
        for &j in &candidates[a + 1..] {
            if sets[j].first().expect("nonempty") > last {
                break;
            }
            if sets[i].overlaps(&sets[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    for i in 0..sets.len() {
        let root = uf.find(i);
        by_root[root].push(i);
    }
    by_root
        .into_iter()
        .filter(|ids| !ids.is_empty())
        .map(|ids| {
            let members: Vec<ElementSet> = ids.into_iter().map(|i| sets[i].clone()).collect();
            let support = members.iter().skip(1).fold(members[0].clone(), |acc, s| acc.union(s));
            let atoms = atoms_of(&support, &members);
            OverlapClass { members, support, atoms }
        })
        .collect()
}

/// The coarsest partition of `support` that no member set overlaps:
/// refine `{support}` by every member.
pub fn atoms_of(support: &ElementSet, members: &[ElementSet]) -> Vec<ElementSet> {
    let n = support.universe();
    let mut partition = RefinablePartition::new(n, &[support.to_vec()]);
    for m in members {
        partition.refine(m.as_slice());
    }
    let mut atoms: Vec<ElementSet> = partition.classes().into_iter().map(|c| ElementSet::new(n, c)).collect();
    atoms.sort();
    atoms
}

/// Strong sets from the family `z` of maximal closed sets avoiding one
/// element: supports of the overlap classes, atoms that pass the filter
/// below, `V` and the singletons.
///
/// Supports are always strong. Atoms are only guaranteed to be when the
/// closed sets are also closed under difference, so each atom is kept only
/// if it is closed and no member of `z` overlaps it. That test is exact: if
/// a closed `T` overlaps `S` at `x ∈ S ∩ T`, `y ∈ S ∖ T`, then the member of
/// `z` containing `x` and avoiding `y` contains `T` and overlaps `S`.
pub fn strong_from_z_family<S: HomogeneitySystem + ?Sized>(sys: &S, z: &SetFamily) -> SetFamily {
    let n = sys.ground_len();
    let mut out: Vec<ElementSet> = Vec::with_capacity(2 * n);
    out.push(ElementSet::full(n));
    out.extend((0..n).map(|v| ElementSet::singleton(n, v)));
    for class in overlap_classes(z) {
        out.push(class.support);
        for atom in class.atoms {
            if atom.len() >= 2 && sys.is_closed(&atom) && !z.iter().any(|m| m.overlaps(&atom)) {
                out.push(atom);
            }
        }
    }
    SetFamily::from_sets(out)
}

pub fn strong_sets(r: &Relation) -> SetFamily {
    strong_from_z_family(r, &z_family(r))
}

pub fn strong_sets_threaded(r: &Relation, threads: usize) -> SetFamily {
    strong_from_z_family(r, &z_family_threaded(r, threads))
}

/// A family of "closed" sets given by a membership test and a closure
/// operator. The family must contain `V` and be closed under intersection,
/// so that `smallest_containing` is well defined.
pub trait HomogeneitySystem {
    fn ground_len(&self) -> usize;
    fn is_closed(&self, set: &ElementSet) -> bool;
    fn smallest_containing(&self, seeds: &ElementSet) -> ElementSet;
}

impl HomogeneitySystem for Relation {
    fn ground_len(&self) -> usize {
        self.len()
    }

    fn is_closed(&self, set: &ElementSet) -> bool {
        self.is_homogeneous_set(set).unwrap_or(false)
    }

    fn smallest_containing(&self, seeds: &ElementSet) -> ElementSet {
        shs(self, seeds).expect("seed set is nonempty")
    }
}

impl HomogeneitySystem for BimoduleInstance {
    fn ground_len(&self) -> usize {
        self.len()
    }

    fn is_closed(&self, set: &ElementSet) -> bool {
        self.is_bimodule(set)
    }

    fn smallest_containing(&self, seeds: &ElementSet) -> ElementSet {
        self.smallest_bimodule(seeds)
    }
}

/// `pair_closures[x][v]` = smallest closed set containing `{x, v}`.
fn pair_closures<S: HomogeneitySystem + ?Sized>(sys: &S) -> Vec<Vec<ElementSet>> {
    let n = sys.ground_len();
    (0..n)
        .map(|x| (0..n).map(|v| sys.smallest_containing(&ElementSet::new(n, [x, v]))).collect())
        .collect()
}

/// Checks that the union of any two overlapping closed sets is closed.
///
/// If `A` and `B` overlap and some outsider breaks `A ∪ B`, it separates
/// `u ∈ A ∖ B` from `v ∈ B ∖ A`; for `x ∈ A ∩ B` the closures of `{x, u}` and
/// `{x, v}` then overlap with a non-closed union. Testing those pairs is
/// therefore exact, in polynomially many checks.
pub fn check_overlap_union_closure<S: HomogeneitySystem + ?Sized>(sys: &S) -> Result<(), TreeError> {
    check_with_closures(sys, &pair_closures(sys))
}

fn check_with_closures<S: HomogeneitySystem + ?Sized>(
    sys: &S,
    closures: &[Vec<ElementSet>],
) -> Result<(), TreeError> {
    for row in closures {
        let distinct = SetFamily::from_sets(row.iter().cloned());
        let distinct = distinct.sets();
        for (i, a) in distinct.iter().enumerate() {
            for b in &distinct[i + 1..] {
                if a.overlaps(b) && !sys.is_closed(&a.union(b)) {
                    return Err(TreeError::ClosureViolation { a: a.to_vec(), b: b.to_vec() });
                }
            }
        }
    }
    Ok(())
}

/// `Z` from pair closures: the maximal closed set containing `x` and avoiding
/// `y` is `{x} ∪ {v : y ∉ closure({x, v})}`. Only valid once
/// [`check_overlap_union_closure`] has passed.
fn z_from_closures(n: usize, closures: &[Vec<ElementSet>]) -> SetFamily {
    let mut out = Vec::new();
    for (x, row) in closures.iter().enumerate() {
        for y in (0..n).filter(|&y| y != x) {
            out.push(ElementSet::new(n, (0..n).filter(|&v| v == x || !row[v].contains(y))));
        }
    }
    SetFamily::from_sets(out)
}

/// `Z` for an arbitrary [`HomogeneitySystem`], after checking closure under
/// union of overlapping sets.
pub fn z_family_by_closure<S: HomogeneitySystem + ?Sized>(sys: &S) -> Result<SetFamily, TreeError> {
    let closures = pair_closures(sys);
    check_with_closures(sys, &closures)?;
    Ok(z_from_closures(sys.ground_len(), &closures))
}

pub fn strong_sets_of_system<S: HomogeneitySystem + ?Sized>(sys: &S) -> Result<SetFamily, TreeError> {
    let z = z_family_by_closure(sys)?;
    Ok(strong_from_z_family(sys, &z))
}

/// Strong bimodules, or the overlapping pair whose union is not a bimodule.
pub fn strong_bimodules(instance: &BimoduleInstance) -> Result<SetFamily, TreeError> {
    strong_sets_of_system(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Graph;

    fn set(n: usize, v: &[usize]) -> ElementSet {
        ElementSet::new(n, v.iter().copied())
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Relation {
        Relation::from_class_fn(n, |s, x| edges.contains(&(s.min(x), s.max(x))))
    }

    fn g1() -> Relation {
        graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)])
    }

    #[test]
    fn overlap_class_examples() {
        let f = SetFamily::from_sets([set(6, &[0, 1]), set(6, &[1, 2])]);
        let classes = overlap_classes(&f);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].support, set(6, &[0, 1, 2]));
        assert_eq!(classes[0].atoms, vec![set(6, &[0]), set(6, &[1]), set(6, &[2])]);

        let f = SetFamily::from_sets([set(6, &[0, 1]), set(6, &[2, 3])]);
        let classes = overlap_classes(&f);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(OverlapClass::is_trivial));
        assert_eq!(classes[0].atoms, vec![set(6, &[0, 1])]);

        let f = SetFamily::from_sets([set(6, &[0, 1]), set(6, &[1, 2]), set(6, &[4, 5])]);
        let supports: Vec<Vec<usize>> = overlap_classes(&f).iter().map(|c| c.support.to_vec()).collect();
        assert_eq!(supports, vec![vec![0, 1, 2], vec![4, 5]]);
    }

    #[test]
    fn atoms_example() {
        let atoms = atoms_of(&set(4, &[0, 1, 2, 3]), &[set(4, &[0, 1, 2]), set(4, &[2, 3])]);
        assert_eq!(atoms, vec![set(4, &[0, 1]), set(4, &[2]), set(4, &[3])]);
    }

    #[test]
    fn z_family_of_small_graphs() {
        let z = z_family(&g1());
        assert_eq!(z.to_vecs(), vec![vec![0], vec![0, 1], vec![0, 1, 3], vec![1], vec![2], vec![3]]);
        let k3 = Relation::from_class_fn(3, |_, _| ());
        assert_eq!(z_family(&k3).to_vecs(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(z_family(&Relation::from_class_fn(1, |_, _| ())).is_empty());
        assert_eq!(z_family_threaded(&g1(), 3), z);
    }

    #[test]
    fn strong_sets_of_small_graphs() {
        assert_eq!(
            strong_sets(&g1()).to_vecs(),
            vec![vec![0], vec![0, 1], vec![0, 1, 2, 3], vec![0, 1, 3], vec![1], vec![2], vec![3]]
        );
        let k4 = Relation::from_class_fn(4, |_, _| ());
        assert_eq!(strong_sets(&k4).len(), 5);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(strong_sets(&p4).len(), 5);
    }

    #[test]
    fn relation_through_generic_pipeline() {
        for r in [g1(), graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)])] {
            assert_eq!(strong_sets_of_system(&r).unwrap(), strong_sets(&r));
            assert_eq!(z_family_by_closure(&r).unwrap(), z_family(&r));
        }
    }

    #[test]
    fn bimodule_closure_violation_is_reported() {
        // black 0, 1; whites 2, 3. Edges 0-2, 1-3 only.
        let g = Graph::bipartite(4, &[0, 1], vec![(0, 2), (1, 3)]);
        let b = crate::instances::from_bipartite_bimodular(&g).unwrap();
        let result = strong_bimodules(&b);
        let oracle_closed = {
            let all: Vec<ElementSet> = (1u32..16)
                .map(|m| ElementSet::new(4, (0..4).filter(|&i| m >> i & 1 == 1)))
                .filter(|s| b.is_bimodule(s))
                .collect();
            all.iter().all(|a| all.iter().all(|c| !a.overlaps(c) || b.is_bimodule(&a.union(c))))
        };
        assert_eq!(result.is_ok(), oracle_closed);
    }
}
