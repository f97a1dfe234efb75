//! Relations built from combinatorial structures.
//!
//! Each builder materialises the full class table; homogeneous sets of the
//! result are the modules (or their analogue) of the input structure.

mod bimodule;
mod graph;

use std::collections::{HashMap, VecDeque};

pub use bimodule::BimoduleInstance;
pub use graph::{parse_graph, Graph, GraphError, GraphKind};

use crate::relation::Relation;

fn expect_kind(g: &Graph, allowed: &[GraphKind]) -> Result<(), GraphError> {
    if !allowed.contains(&g.kind) {
        return Err(GraphError::Malformed(format!("expected a {} graph, got {}", allowed[0], g.kind)));
    }
    g.validate()
}

/// `H(x|yz)` iff `x` is adjacent to both or to neither.
pub fn from_undirected(g: &Graph) -> Result<Relation, GraphError> {
    expect_kind(g, &[GraphKind::Undirected])?;
    let adj = g.adjacency();
    let n = g.n;
    Ok(Relation::from_class_ids(n, |s, x| adj[s * n + x] as usize))
}

/// Classes of `H_x` are keyed by (arc x→y, arc y→x).
pub fn from_directed(g: &Graph) -> Result<Relation, GraphError> {
    expect_kind(g, &[GraphKind::Directed])?;
    let adj = g.adjacency();
    let n = g.n;
    Ok(Relation::from_class_ids(n, |s, x| 2 * adj[s * n + x] as usize + adj[x * n + s] as usize))
}

/// How edge colours of a 2-structure are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorMode {
    /// One colour per unordered pair.
    #[default]
    Symmetric,
    /// One colour per ordered pair; classes of `H_x` are keyed by the pair
    /// of colours on (x,y) and (y,x).
    Ordered,
}

/// `H(x|yz)` iff edges `xy` and `xz` carry the same colour.
pub fn from_two_structure(g: &Graph, mode: ColorMode) -> Result<Relation, GraphError> {
    expect_kind(g, &[GraphKind::TwoStructure])?;
    let n = g.n;
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut color = vec![usize::MAX; n * n];
    for (&(u, v), c) in g.edges.iter().zip(&g.colors) {
        let next = ids.len();
        let id = *ids.entry(c.as_str()).or_insert(next);
        let slots: &[(usize, usize)] = match mode {
            ColorMode::Symmetric => &[(u, v), (v, u)],
            ColorMode::Ordered => &[(u, v)],
        };
        for &(a, b) in slots {
            if color[a * n + b] != usize::MAX {
                return Err(GraphError::Malformed(format!("pair {u} {v} coloured twice")));
            }
            color[a * n + b] = id;
        }
    }
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            if color[u * n + v] == usize::MAX {
                return Err(GraphError::IncompleteColoring { u: u.min(v), v: u.max(v) });
            }
        }
    }
    let k = ids.len().max(1);
    Ok(match mode {
        ColorMode::Symmetric => Relation::from_class_ids(n, |s, x| color[s * n + x]),
        ColorMode::Ordered => Relation::from_class_ids(n, |s, x| color[s * n + x] * k + color[x * n + s]),
    })
}

/// The bimodule instance of a bipartite graph.
pub fn from_bipartite_bimodular(g: &Graph) -> Result<BimoduleInstance, GraphError> {
    if g.kind != GraphKind::Bipartite {
        return Err(GraphError::Malformed(format!("expected a bipartite graph, got {}", g.kind)));
    }
    g.validate()?;
    Ok(BimoduleInstance::new(g))
}

/// Breadth-first distances from `s`; unreachable vertices get `usize::MAX`.
pub(crate) fn bfs(neighbors: &[Vec<usize>], s: usize, blocked: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; neighbors.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &neighbors[u] {
            if dist[v] == usize::MAX && !blocked[v] {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Two classes per element: vertices within distance `k`, and the rest.
pub fn distance_k_relation(g: &Graph, k: usize) -> Result<Relation, GraphError> {
    if k < 1 {
        return Err(GraphError::BadK(k));
    }
    expect_kind(g, &[GraphKind::Undirected, GraphKind::Bipartite])?;
    let neighbors = g.neighbors();
    let free = vec![false; g.n];
    let dist: Vec<Vec<usize>> = (0..g.n).map(|s| bfs(&neighbors, s, &free)).collect();
    Ok(Relation::from_class_ids(g.n, |s, x| (dist[s][x] <= k) as usize))
}

/// What a path between two vertices must avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Avoid {
    /// The vertex `s` itself.
    Vertex,
    /// `s` and all its neighbours.
    Neighborhood,
}

/// `H(s|xy)` iff some path joins `x` and `y` while avoiding `s` (or its
/// closed neighbourhood). Neighbours of `s` are isolated in neighbourhood
/// mode, each in its own class.
pub fn path_avoiding_relation(g: &Graph, mode: Avoid) -> Result<Relation, GraphError> {
    expect_kind(g, &[GraphKind::Undirected, GraphKind::Bipartite])?;
    let n = g.n;
    let neighbors = g.neighbors();
    let mut component = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        let mut blocked = vec![false; n];
        blocked[s] = true;
        if mode == Avoid::Neighborhood {
            for &v in &neighbors[s] {
                blocked[v] = true;
            }
        }
        let mut next = 0;
        for x in (0..n).filter(|&x| x != s) {
            if component[s][x] != usize::MAX {
                continue;
            }
            if blocked[x] {
                component[s][x] = next;
            } else {
                let dist = bfs(&neighbors, x, &blocked);
                for (v, &d) in dist.iter().enumerate() {
                    if d != usize::MAX {
                        component[s][v] = next;
                    }
                }
            }
            next += 1;
        }
    }
    Ok(Relation::from_class_ids(n, |s, x| component[s][x]))
}
