//! Brute-force reference answers by subset enumeration.
//!
//! Subsets are `u32` bitmasks, so the ground set is capped well below 32.
//! Everything here is exponential and meant for tests and small inputs.

use thiserror::Error;

use crate::instances::{from_bipartite_bimodular, BimoduleInstance, Graph};
use crate::relation::Relation;
use crate::set::{ElementSet, SetFamily};

/// Largest ground set for plain enumeration of homogeneous sets.
pub const ENUMERATE_LIMIT: usize = 20;
/// Largest ground set for the derived oracles.
pub const ORACLE_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force needs n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is not a coloured bipartite graph")]
    NotBipartite,
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

pub fn mask_to_set(n: usize, mask: u32) -> ElementSet {
    ElementSet::new(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

pub fn set_to_mask(set: &ElementSet) -> u32 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

/// Every nonempty homogeneous set as a bitmask, in increasing mask order.
pub fn homogeneous_masks(r: &Relation) -> Result<Vec<u32>, OracleError> {
    let n = r.len();
    guard(n, ENUMERATE_LIMIT)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    // class_masks[s][c]: members of class c of H_s
    let class_masks: Vec<Vec<u32>> = (0..n)
        .map(|s| {
            let mut masks = vec![0u32; r.class_count(s)];
            for x in (0..n).filter(|&x| x != s) {
                masks[r.class_of(s, x) as usize] |= 1 << x;
            }
            masks
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut out = Vec::new();
    for mask in 1..=full {
        let first = mask.trailing_zeros() as usize;
        let homogeneous = (0..n).all(|s| {
            if mask >> s & 1 == 1 {
                return true;
            }
            let class = class_masks[s][r.class_of(s, first) as usize];
            mask & class == mask
        });
        if homogeneous {
            out.push(mask);
        }
    }
    Ok(out)
}

pub fn enumerate_homogeneous_sets(r: &Relation) -> Result<SetFamily, OracleError> {
    let n = r.len();
    Ok(homogeneous_masks(r)?.into_iter().map(|m| mask_to_set(n, m)).collect())
}

/// Intersection of all homogeneous supersets of `seeds`.
pub fn brute_shs(r: &Relation, seeds: &ElementSet) -> Result<ElementSet, OracleError> {
    let n = r.len();
    guard(n, ORACLE_LIMIT)?;
    let want = set_to_mask(seeds);
    let meet = homogeneous_masks(r)?
        .into_iter()
        .filter(|m| m & want == want)
        .fold(u32::MAX, |acc, m| acc & m);
    Ok(mask_to_set(n, meet))
}

/// Inclusion-maximal homogeneous sets not containing `x`.
pub fn brute_mhs(r: &Relation, x: usize) -> Result<SetFamily, OracleError> {
    let n = r.len();
    guard(n, ORACLE_LIMIT)?;
    let avoiding: Vec<u32> = homogeneous_masks(r)?.into_iter().filter(|m| m >> x & 1 == 0).collect();
    Ok(maximal(&avoiding).into_iter().map(|m| mask_to_set(n, m)).collect())
}

fn maximal(masks: &[u32]) -> Vec<u32> {
    masks
        .iter()
        .copied()
        .filter(|&a| !masks.iter().any(|&b| b != a && a & b == a))
        .collect()
}

/// Members of `masks` overlapping no other member.
pub fn strong_masks(masks: &[u32]) -> Vec<u32> {
    masks
        .iter()
        .copied()
        .filter(|&a| {
            !masks.iter().any(|&b| {
                let i = a & b;
                i != 0 && i != a && i != b
            })
        })
        .collect()
}

pub fn brute_strong_sets(r: &Relation) -> Result<SetFamily, OracleError> {
    let n = r.len();
    guard(n, ORACLE_LIMIT)?;
    let masks = homogeneous_masks(r)?;
    Ok(strong_masks(&masks).into_iter().map(|m| mask_to_set(n, m)).collect())
}

/// Whether the homogeneous sets are exactly `V` and the singletons.
pub fn brute_is_trivial(r: &Relation) -> Result<bool, OracleError> {
    let n = r.len();
    let count = homogeneous_masks(r)?.len();
    Ok(count == if n <= 1 { n } else { n + 1 })
}

fn bimodule_masks(instance: &BimoduleInstance) -> Vec<u32> {
    let n = instance.len();
    if n == 0 {
        return Vec::new();
    }
    let full: u32 = (1 << n) - 1;
    (1..=full).filter(|&m| instance.is_bimodule(&mask_to_set(n, m))).collect()
}

/// Every nonempty bimodule of a coloured bipartite graph.
pub fn brute_bimodules(g: &Graph) -> Result<SetFamily, OracleError> {
    guard(g.n, ORACLE_LIMIT)?;
    let instance = from_bipartite_bimodular(g).map_err(|_| OracleError::NotBipartite)?;
    Ok(bimodule_masks(&instance).into_iter().map(|m| mask_to_set(g.n, m)).collect())
}

pub fn brute_strong_bimodules(g: &Graph) -> Result<SetFamily, OracleError> {
    guard(g.n, ORACLE_LIMIT)?;
    let instance = from_bipartite_bimodular(g).map_err(|_| OracleError::NotBipartite)?;
    let masks = bimodule_masks(&instance);
    Ok(strong_masks(&masks).into_iter().map(|m| mask_to_set(g.n, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Relation {
        let edges = [(0, 1), (0, 2), (1, 2), (2, 3)];
        Relation::from_class_fn(4, |s, x| edges.contains(&(s.min(x), s.max(x))))
    }

    #[test]
    fn g1_family() {
        let family = enumerate_homogeneous_sets(&g1()).unwrap();
        assert_eq!(
            family.to_vecs(),
            vec![vec![0], vec![0, 1], vec![0, 1, 2, 3], vec![0, 1, 3], vec![1], vec![2], vec![3]]
        );
        assert_eq!(brute_mhs(&g1(), 2).unwrap().to_vecs(), vec![vec![0, 1, 3]]);
        assert_eq!(brute_shs(&g1(), &ElementSet::new(4, [0, 3])).unwrap().to_vec(), vec![0, 1, 3]);
        assert!(!brute_is_trivial(&g1()).unwrap());
    }

    #[test]
    fn limits() {
        let big = Relation::from_class_fn(13, |_, _| ());
        assert_eq!(brute_strong_sets(&big), Err(OracleError::TooLarge { n: 13, limit: 12 }));
        let g = Graph::undirected(3, vec![(0, 1)]);
        assert_eq!(brute_bimodules(&g), Err(OracleError::NotBipartite));
    }
}
