//! Seeded random instance generators. Same seed, same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instances::Graph;
use crate::relation::Relation;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph: each pair is an edge with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::undirected(n, edges)
}

/// Random tournament: one arc per pair, direction by coin flip.
pub fn tournament(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Graph::directed(n, arcs)
}

/// Random digraph: each ordered pair is an arc with probability `p`.
pub fn digraph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            if rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Graph::directed(n, arcs)
}

/// Random bipartite graph: fair-coin sides, cross pairs kept with probability `p`.
pub fn bipartite(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let black: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut side = vec![false; n];
    for &b in &black {
        side[b] = true;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::bipartite(n, &black, edges)
}

/// Complete symmetric 2-structure with colours `c0..c{k-1}` drawn uniformly.
pub fn two_structure(n: usize, colors: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let k = colors.max(1);
    let mut colored = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            colored.push((u, v, format!("c{}", rng.gen_range(0..k))));
        }
    }
    Graph::two_structure(n, colored)
}

/// Arbitrary relation: each `H_s` is a random partition into at most
/// `max_classes` classes. Usually fails the axioms; useful for stress tests.
pub fn random_relation<R: Rng>(n: usize, max_classes: usize, rng: &mut R) -> Relation {
    let k = max_classes.max(1);
    let labels: Vec<usize> = (0..n * n).map(|_| rng.gen_range(0..k)).collect();
    Relation::from_class_ids(n, |s, x| labels[s * n + x])
}

/// Relation of a random graph whose vertices are shuffled, so planted
/// structure does not line up with vertex ids.
pub fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.n).collect();
    perm.shuffle(&mut rng(seed));
    let mut out = g.clone();
    out.edges = g.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    if !g.black.is_empty() {
        for v in 0..g.n {
            out.black[perm[v]] = g.black[v];
        }
    }
    out
}
