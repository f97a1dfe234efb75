//! Exhaustive and sampled checkers for the relation axioms.
//!
//! Tuple scans run in lexicographic order and stop at the first failure, so
//! the reported witness is the smallest one and is stable across runs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{self, mask_to_set, OracleError};
use crate::relation::Relation;

/// Anything answering `H(s|xy)` on reflectless triples.
pub trait TernaryRelation {
    fn ground_len(&self) -> usize;
    fn h(&self, s: usize, x: usize, y: usize) -> bool;
}

impl TernaryRelation for Relation {
    fn ground_len(&self) -> usize {
        self.len()
    }

    #[inline]
    fn h(&self, s: usize, x: usize, y: usize) -> bool {
        self.class_of(s, x) == self.class_of(s, y)
    }
}

/// A relation given as the explicit set of triples `(s, x, y)` on which it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRelation {
    pub n: usize,
    pub triples: Vec<[usize; 3]>,
    #[serde(skip)]
    index: HashSet<[usize; 3]>,
}

impl TripleRelation {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Self {
        let index = triples.iter().copied().collect();
        TripleRelation { n, triples, index }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            triples: Vec<[usize; 3]>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        Ok(TripleRelation::new(raw.n, raw.triples))
    }

    /// Converts to the partition form once [`check_base`] passes.
    pub fn to_relation(&self) -> Option<Relation> {
        if !check_base(self).holds || self.n == 0 {
            return None;
        }
        let n = self.n;
        // class id = smallest element related to x
        Some(Relation::from_class_ids(n, |s, x| (0..n).find(|&y| y != s && self.h(s, x, y)).unwrap_or(x)))
    }
}

impl TernaryRelation for TripleRelation {
    fn ground_len(&self) -> usize {
        self.n
    }

    fn h(&self, s: usize, x: usize, y: usize) -> bool {
        self.index.contains(&[s, x, y])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
        }
    }
}

/// Counterexample attached to a failed report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Elements(Vec<usize>),
    Sets(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn ok(axiom: &str) -> Self {
        AxiomReport { axiom: axiom.to_string(), holds: true, witness: None }
    }

    fn fail(axiom: &str, witness: Witness) -> Self {
        AxiomReport { axiom: axiom.to_string(), holds: false, witness: Some(witness) }
    }

    fn from_first(axiom: &str, witness: Option<Vec<usize>>) -> Self {
        match witness {
            None => Self::ok(axiom),
            Some(w) => Self::fail(axiom, Witness::Elements(w)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("exhaustive check needs n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
}

impl From<OracleError> for AxiomError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { n, limit } => AxiomError::TooLarge { n, limit },
            OracleError::NotBipartite => unreachable!("relations have no colouring"),
        }
    }
}

/// Symmetry, reflexivity and transitivity of every `H_s`.
///
/// Witness: `[s, x, y]` for symmetry, `[s, x]` for reflexivity,
/// `[s, x, y, z]` for transitivity.
pub fn check_base<R: TernaryRelation + ?Sized>(r: &R) -> AxiomReport {
    let n = r.ground_len();
    for s in 0..n {
        for x in (0..n).filter(|&x| x != s) {
            if !r.h(s, x, x) {
                return AxiomReport::fail("reflexivity", Witness::Elements(vec![s, x]));
            }
            for y in (0..n).filter(|&y| y != s) {
                if r.h(s, x, y) != r.h(s, y, x) {
                    return AxiomReport::fail("symmetry", Witness::Elements(vec![s, x, y]));
                }
            }
        }
    }
    for s in 0..n {
        for x in (0..n).filter(|&x| x != s) {
            for y in (0..n).filter(|&y| y != s && r.h(s, x, y)) {
                for z in (0..n).filter(|&z| z != s && r.h(s, y, z)) {
                    if !r.h(s, x, z) {
                        return AxiomReport::fail("transitivity", Witness::Elements(vec![s, x, y, z]));
                    }
                }
            }
        }
    }
    AxiomReport::ok("base")
}

/// Exhaustive scan for A1–A4. All four are symmetric in the pair `(x, y)`,
/// so only `x < y` is visited; the smallest witness always has `x < y`.
pub fn check_axiom<R: TernaryRelation + ?Sized>(r: &R, which: Axiom) -> AxiomReport {
    let n = r.ground_len();
    let witness = match which {
        Axiom::A1 | Axiom::A4 => first_triple(n, |x, y, z| {
            let premise = match which {
                Axiom::A1 => r.h(x, y, z) && r.h(y, x, z),
                _ => !r.h(x, y, z) && !r.h(y, x, z),
            };
            premise && !r.h(z, x, y)
        }),
        Axiom::A2 => first_quad(n, |s, t, x, y| {
            r.h(x, s, t) && r.h(y, s, t) && r.h(t, x, y) && !r.h(s, x, y)
        }),
        Axiom::A3 => first_quad(n, |s, t, x, y| {
            r.h(x, s, t) && r.h(y, s, t) && r.h(t, s, x) && r.h(t, s, y) && !r.h(s, x, y)
        }),
    };
    AxiomReport::from_first(which.name(), witness)
}

/// First `[x, y, z]`, pairwise distinct with `x < y`, violating the test.
fn first_triple(n: usize, violates: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in x + 1..n {
            for z in (0..n).filter(|&z| z != x && z != y) {
                if violates(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// First `[s, t, x, y]`, pairwise distinct with `x < y`, violating the test.
fn first_quad(n: usize, violates: impl Fn(usize, usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for s in 0..n {
        for t in (0..n).filter(|&t| t != s) {
            for x in (0..n).filter(|&x| x != s && x != t) {
                for y in (x + 1..n).filter(|&y| y != s && y != t) {
                    if violates(s, t, x, y) {
                        return Some(vec![s, t, x, y]);
                    }
                }
            }
        }
    }
    None
}

/// How to pick the pairs for [`check_submodularity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmodularMode {
    /// Every pair of overlapping subsets; needs n <= 12.
    Exhaustive,
    /// Random overlapping pairs from a fixed seed.
    Sampled { pairs: usize, seed: u64 },
}

impl SubmodularMode {
    pub const DEFAULT_PAIRS: usize = 10_000;

    pub fn sampled_default() -> Self {
        SubmodularMode::Sampled { pairs: Self::DEFAULT_PAIRS, seed: 0 }
    }
}

pub const EXHAUSTIVE_LIMIT: usize = 12;

/// `s(X) + s(Y) >= s(X ∪ Y) + s(X ∩ Y)` for overlapping `X`, `Y`, where `s`
/// counts splitters. Non-overlapping pairs are skipped: for nested or equal
/// sets the inequality is an identity, and disjoint sets are outside the
/// claim. A failure means the splitter count is wrong.
pub fn check_submodularity(r: &Relation, mode: SubmodularMode) -> Result<AxiomReport, AxiomError> {
    const NAME: &str = "submodularity";
    let n = r.len();
    match mode {
        SubmodularMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(AxiomError::TooLarge { n, limit: EXHAUSTIVE_LIMIT });
            }
            let full = (1u32 << n) - 1;
            let counts: Vec<i64> = (0..=full).map(|m| r.splitter_count(&mask_to_set(n, m))).collect();
            for x in 1..=full {
                for y in x + 1..=full {
                    let (i, u) = (x & y, x | y);
                    if i == 0 || i == x || i == y {
                        continue;
                    }
                    if counts[x as usize] + counts[y as usize] < counts[u as usize] + counts[i as usize] {
                        let w = vec![mask_to_set(n, x).to_vec(), mask_to_set(n, y).to_vec()];
                        return Ok(AxiomReport::fail(NAME, Witness::Sets(w)));
                    }
                }
            }
            Ok(AxiomReport::ok(NAME))
        }
        SubmodularMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            while checked < pairs && n >= 3 {
                let x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let y: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let sx = crate::set::ElementSet::new(n, (0..n).filter(|&v| x[v]));
                let sy = crate::set::ElementSet::new(n, (0..n).filter(|&v| y[v]));
                if !sx.overlaps(&sy) {
                    continue;
                }
                checked += 1;
                let lhs = r.splitter_count(&sx) + r.splitter_count(&sy);
                let rhs = r.splitter_count(&sx.union(&sy)) + r.splitter_count(&sx.intersection(&sy));
                if lhs < rhs {
                    return Ok(AxiomReport::fail(NAME, Witness::Sets(vec![sx.to_vec(), sy.to_vec()])));
                }
            }
            Ok(AxiomReport::ok(NAME))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureLevel {
    /// Closed under union, intersection and difference of overlapping sets.
    WeaklyPartitive,
    /// Additionally closed under symmetric difference.
    Partitive,
}

impl ClosureLevel {
    pub fn name(self) -> &'static str {
        match self {
            ClosureLevel::WeaklyPartitive => "weakly_partitive",
            ClosureLevel::Partitive => "partitive",
        }
    }
}

/// Enumerates the homogeneous sets and checks closure on every overlapping
/// pair. Witness: the pair `[A, B]`.
pub fn check_family_closure(r: &Relation, level: ClosureLevel) -> Result<AxiomReport, AxiomError> {
    let n = r.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(AxiomError::TooLarge { n, limit: EXHAUSTIVE_LIMIT });
    }
    let masks = oracle::homogeneous_masks(r)?;
    let mut member = vec![false; 1 << n];
    for &m in &masks {
        member[m as usize] = true;
    }
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let (inter, union) = (a & b, a | b);
            if inter == 0 || inter == a || inter == b {
                continue;
            }
            let mut derived = vec![inter, union, a & !b, b & !a];
            if level == ClosureLevel::Partitive {
                derived.push(a ^ b);
            }
            if derived.iter().any(|&d| !member[d as usize]) {
                let w = vec![mask_to_set(n, a).to_vec(), mask_to_set(n, b).to_vec()];
                return Ok(AxiomReport::fail(level.name(), Witness::Sets(w)));
            }
        }
    }
    Ok(AxiomReport::ok(level.name()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Relation {
        Relation::from_class_fn(n, |s, x| edges.contains(&(s.min(x), s.max(x))))
    }

    fn g1() -> Relation {
        graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)])
    }

    #[test]
    fn base_axioms() {
        assert!(check_base(&g1()).holds);
        // H(0|12) without H(0|21)
        let asym = TripleRelation::new(3, vec![[0, 1, 1], [0, 2, 2], [1, 0, 0], [1, 2, 2], [2, 0, 0], [2, 1, 1], [0, 1, 2]]);
        let report = check_base(&asym);
        assert_eq!(report.axiom, "symmetry");
        assert_eq!(report.witness, Some(Witness::Elements(vec![0, 1, 2])));

        let mut triples = Vec::new();
        for s in 0..4 {
            for x in (0..4).filter(|&x| x != s) {
                triples.push([s, x, x]);
            }
        }
        // for s = 0: 1~2 and 2~3, but not 1~3
        triples.extend([[0, 1, 2], [0, 2, 1], [0, 2, 3], [0, 3, 2]]);
        let report = check_base(&TripleRelation::new(4, triples));
        assert_eq!(report.axiom, "transitivity");
        assert!(!report.holds);

        let no_reflex = TripleRelation::new(2, vec![]);
        assert_eq!(check_base(&no_reflex).axiom, "reflexivity");
    }

    #[test]
    fn triples_convert_to_partitions() {
        let r = g1();
        let mut triples = Vec::new();
        for s in 0..4 {
            for x in (0..4).filter(|&x| x != s) {
                for y in (0..4).filter(|&y| y != s) {
                    if r.h(s, x, y) {
                        triples.push([s, x, y]);
                    }
                }
            }
        }
        let raw = TripleRelation::new(4, triples);
        assert!(check_base(&raw).holds);
        assert_eq!(raw.to_relation().unwrap(), r);
        let json = serde_json::to_string(&raw).unwrap();
        assert_eq!(TripleRelation::from_json(&json).unwrap(), raw);
    }

    #[test]
    fn graph_axioms() {
        for a in Axiom::ALL {
            assert!(check_axiom(&g1(), a).holds, "{a:?}");
        }
        let cycle = Relation::from_class_fn(3, |s, x| ((s + 1) % 3 == x, (x + 1) % 3 == s));
        assert!(check_axiom(&cycle, Axiom::A2).holds);
        assert!(check_axiom(&cycle, Axiom::A3).holds);
    }

    #[test]
    fn a1_failure_has_smallest_witness() {
        // H(0|12), H(1|02) but not H(2|01)
        let r = Relation::build(3, &[vec![vec![1, 2]], vec![vec![0, 2]], vec![vec![0], vec![1]]]).unwrap();
        let report = check_axiom(&r, Axiom::A1);
        assert_eq!(report.witness, Some(Witness::Elements(vec![0, 1, 2])));
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"axiom":"A1","holds":false,"witness":[0,1,2]}"#
        );
    }

    #[test]
    fn submodularity() {
        assert!(check_submodularity(&g1(), SubmodularMode::Exhaustive).unwrap().holds);
        assert!(check_submodularity(&g1(), SubmodularMode::sampled_default()).unwrap().holds);
        let big = Relation::from_class_fn(13, |_, _| ());
        assert_eq!(
            check_submodularity(&big, SubmodularMode::Exhaustive),
            Err(AxiomError::TooLarge { n: 13, limit: 12 })
        );
    }

    #[test]
    fn closure_levels() {
        let r = g1();
        assert!(check_family_closure(&r, ClosureLevel::Partitive).unwrap().holds);
        let tournament = Relation::from_class_fn(3, |s, x| s < x);
        assert!(check_family_closure(&tournament, ClosureLevel::WeaklyPartitive).unwrap().holds);
        // {0,1} and {1,2} overlap, but {0,2} is not a module
        assert!(!check_family_closure(&tournament, ClosureLevel::Partitive).unwrap().holds);
    }
}
