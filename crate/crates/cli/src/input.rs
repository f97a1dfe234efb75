use std::fs;
use std::path::Path;

use homodec::axioms::TripleRelation;
use homodec::instances::{
    distance_k_relation, from_bipartite_bimodular, from_directed, from_two_structure, from_undirected, parse_graph,
    path_avoiding_relation, Avoid, BimoduleInstance, ColorMode, Graph, GraphKind,
};
use homodec::Relation;

use crate::Failure;

/// How an undirected graph becomes a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Derive {
    /// Adjacency: the homogeneous sets are the modules.
    Modules,
    /// Two classes per vertex: within distance `--k`, and beyond.
    Distance,
    /// Connected components once the vertex is removed.
    AvoidVertex,
    /// Connected components once the closed neighbourhood is removed.
    AvoidNeighborhood,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputOpts {
    /// Edge-list file, relation JSON, or `-` for stdin.
    pub input: String,
    /// Relation derived from an undirected graph.
    #[arg(long, value_enum, default_value = "modules")]
    pub derive: Derive,
    /// Distance bound for `--derive distance`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Read 2-structure colours per ordered pair.
    #[arg(long)]
    pub ordered_colors: bool,
}

/// A loaded input: either a relation, or a bipartite graph handled as bimodules.
pub enum Loaded {
    Relation { relation: Relation, kind: Option<GraphKind> },
    Bimodules { graph: Graph, instance: BimoduleInstance },
}

pub fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| Failure::Runtime(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(Path::new(path)).map_err(|e| Failure::Runtime(format!("reading {path}: {e}")))
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn load(opts: &InputOpts) -> Result<Loaded, Failure> {
    let text = read_text(&opts.input)?;
    if looks_like_json(&text) {
        return load_json(&text).map(|relation| Loaded::Relation { relation, kind: None });
    }
    let graph = parse_graph(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    let kind = graph.kind;
    let relation = match (kind, opts.derive) {
        (GraphKind::Bipartite, Derive::Modules) => {
            let instance = from_bipartite_bimodular(&graph).map_err(|e| Failure::Parse(e.to_string()))?;
            return Ok(Loaded::Bimodules { graph, instance });
        }
        (GraphKind::Undirected, Derive::Modules) => from_undirected(&graph),
        (GraphKind::Directed, Derive::Modules) => from_directed(&graph),
        (GraphKind::TwoStructure, Derive::Modules) => {
            let mode = if opts.ordered_colors { ColorMode::Ordered } else { ColorMode::Symmetric };
            from_two_structure(&graph, mode)
        }
        (_, Derive::Distance) => distance_k_relation(&graph, opts.k),
        (_, Derive::AvoidVertex) => path_avoiding_relation(&graph, Avoid::Vertex),
        (_, Derive::AvoidNeighborhood) => path_avoiding_relation(&graph, Avoid::Neighborhood),
    }
    .map_err(|e| Failure::Parse(e.to_string()))?;
    let kind = (opts.derive == Derive::Modules).then_some(kind);
    Ok(Loaded::Relation { relation, kind })
}

/// Relation JSON `{"n", "classes"}` or triple JSON `{"n", "triples"}`.
pub fn load_json(text: &str) -> Result<Relation, Failure> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
    if value.get("triples").is_some() {
        let triples = load_triples(text)?;
        return triples.to_relation().ok_or_else(|| {
            Failure::Parse("triples do not form an equivalence per element; run `check --axiom base`".into())
        });
    }
    Relation::from_json(text).map_err(|e| Failure::Parse(e.to_string()))
}

pub fn load_triples(text: &str) -> Result<TripleRelation, Failure> {
    let raw = TripleRelation::from_json(text).map_err(|e| Failure::Parse(e.to_string()))?;
    if let Some(t) = raw.triples.iter().find(|t| t.iter().any(|&v| v >= raw.n)) {
        return Err(Failure::Parse(format!("triple {t:?} outside 0..{}", raw.n)));
    }
    Ok(raw)
}

/// Comma or space separated ids, checked against `n`.
pub fn parse_ids(raw: &[String], n: usize) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for tok in raw.iter().flat_map(|s| s.split(',')).filter(|t| !t.is_empty()) {
        let v: usize = tok.trim().parse().map_err(|_| Failure::Parse(format!("bad element id `{tok}`")))?;
        if v >= n {
            return Err(Failure::Parse(format!("element {v} outside 0..{n}")));
        }
        out.push(v);
    }
    Ok(out)
}
