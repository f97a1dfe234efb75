//! Graphs and the edge-list text format.
//!
//! ```text
//! # comment
//! <n> <m> <kind>            kind: undirected | directed | bipartite | 2structure
//! colors: <black ids...>    bipartite only, before the edges
//! <u> <v> [<color>]         m lines; color only for 2structure
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {v} outside 0..{n}")]
    IndexOutOfRange { line: usize, v: usize, n: usize },
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("2-structure leaves pair {u} {v} uncoloured")]
    IncompleteColoring { u: usize, v: usize },
    #[error("edge {u} {v} joins two vertices of the same colour")]
    NotBipartite { u: usize, v: usize },
    #[error("distance bound must be at least 1, got {0}")]
    BadK(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Undirected,
    Directed,
    Bipartite,
    TwoStructure,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Undirected => "undirected",
            GraphKind::Directed => "directed",
            GraphKind::Bipartite => "bipartite",
            GraphKind::TwoStructure => "2structure",
        }
    }

    fn symmetric(self) -> bool {
        self != GraphKind::Directed
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "undirected" => Ok(GraphKind::Undirected),
            "directed" => Ok(GraphKind::Directed),
            "bipartite" => Ok(GraphKind::Bipartite),
            "2structure" => Ok(GraphKind::TwoStructure),
            other => Err(format!("unknown graph kind `{other}`")),
        }
    }
}

/// A loop-free graph with its declared kind.
///
/// `edges` keeps input order. `colors` is parallel to `edges` and only used
/// by 2-structures; `black` marks the black side of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub kind: GraphKind,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<String>,
    pub black: Vec<bool>,
}

impl Graph {
    pub fn undirected(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph { n, kind: GraphKind::Undirected, edges, colors: Vec::new(), black: Vec::new() }
    }

    pub fn directed(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        Graph { n, kind: GraphKind::Directed, edges: arcs, colors: Vec::new(), black: Vec::new() }
    }

    pub fn bipartite(n: usize, black: &[usize], edges: Vec<(usize, usize)>) -> Self {
        let mut mask = vec![false; n];
        for &b in black {
            mask[b] = true;
        }
        Graph { n, kind: GraphKind::Bipartite, edges, colors: Vec::new(), black: mask }
    }

    pub fn two_structure(n: usize, colored: Vec<(usize, usize, String)>) -> Self {
        let (edges, colors) = colored.into_iter().map(|(u, v, c)| ((u, v), c)).unzip();
        Graph { n, kind: GraphKind::TwoStructure, edges, colors, black: Vec::new() }
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black.get(v).copied().unwrap_or(false)
    }

    /// Dense adjacency matrix; symmetric unless the graph is directed.
    pub fn adjacency(&self) -> Vec<bool> {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for &(u, v) in &self.edges {
            adj[u * n + v] = true;
            if self.kind.symmetric() {
                adj[v * n + u] = true;
            }
        }
        adj
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            out[u].push(v);
            if self.kind.symmetric() {
                out[v].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        out
    }

    /// Checks loops, ranges and the colour constraints of the declared kind.
    pub fn validate(&self) -> Result<(), GraphError> {
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(GraphError::Malformed(format!("edge {u} {v} outside 0..{}", self.n)));
            }
            if u == v {
                return Err(GraphError::Malformed(format!("self-loop at {u}")));
            }
        }
        if self.kind == GraphKind::TwoStructure && self.colors.len() != self.edges.len() {
            return Err(GraphError::Malformed("every 2-structure edge needs a colour".into()));
        }
        if self.kind == GraphKind::Bipartite {
            if self.black.len() != self.n {
                return Err(GraphError::Malformed("bipartite colouring does not cover all vertices".into()));
            }
            if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| self.black[u] == self.black[v]) {
                return Err(GraphError::NotBipartite { u, v });
            }
        }
        Ok(())
    }

    /// Canonical edge-list text; [`parse_graph`] reads it back unchanged.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.edges.len(), self.kind);
        if self.kind == GraphKind::Bipartite {
            out.push_str("colors:");
            for v in (0..self.n).filter(|&v| self.is_black(v)) {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            match self.colors.get(i) {
                Some(c) if self.kind == GraphKind::TwoStructure => out.push_str(&format!("{u} {v} {c}\n")),
                _ => out.push_str(&format!("{u} {v}\n")),
            }
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

/// Reads the edge-list format. Vertex ids are used as given.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(parse_err(hline, "header must be `<n> <m> <kind>`"));
    }
    let n = parse_usize(toks[0], hline, "vertex count")?;
    let m = parse_usize(toks[1], hline, "edge count")?;
    let kind: GraphKind = toks[2].parse().map_err(|e: String| parse_err(hline, e))?;
    if n == 0 {
        return Err(parse_err(hline, "graph needs at least one vertex"));
    }

    let mut black = Vec::new();
    if kind == GraphKind::Bipartite {
        let (cline, colors) = lines.next().ok_or_else(|| parse_err(hline + 1, "missing `colors:` line"))?;
        let rest = colors
            .strip_prefix("colors:")
            .ok_or_else(|| parse_err(cline, "bipartite graphs need a `colors:` line before the edges"))?;
        black = vec![false; n];
        for tok in rest.split_whitespace() {
            let v = parse_usize(tok, cline, "vertex id")?;
            if v >= n {
                return Err(GraphError::IndexOutOfRange { line: cline, v, n });
            }
            black[v] = true;
        }
    }

    let mut edges = Vec::with_capacity(m);
    let mut colors = Vec::new();
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = hline;
    for _ in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| parse_err(last_line + 1, format!("expected {m} edges, found {}", edges.len())))?;
        last_line = line;
        let toks: Vec<&str> = text.split_whitespace().collect();
        let want = if kind == GraphKind::TwoStructure { 3 } else { 2 };
        if toks.len() != want {
            return Err(parse_err(line, format!("expected {want} fields, found {}", toks.len())));
        }
        let u = parse_usize(toks[0], line, "vertex id")?;
        let v = parse_usize(toks[1], line, "vertex id")?;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::IndexOutOfRange { line, v: w, n });
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        let key = if kind.symmetric() { (u.min(v), u.max(v)) } else { (u, v) };
        if !seen.insert(key) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        if kind == GraphKind::Bipartite && black[u] == black[v] {
            return Err(GraphError::NotBipartite { u, v });
        }
        edges.push((u, v));
        if kind == GraphKind::TwoStructure {
            colors.push(toks[2].to_string());
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, format!("more than the declared {m} edges")));
    }
    Ok(Graph { n, kind, edges, colors, black })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_g1() {
        let g = parse_graph("4 4 undirected\n0 1\n0 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g, Graph::undirected(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]));
        let k3 = parse_graph("3 3 undirected\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(k3.edges.len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_graph("2 1 undirected\n0 5\n"),
            Err(GraphError::IndexOutOfRange { line: 2, v: 5, n: 2 })
        );
        assert_eq!(
            parse_graph("3 2 undirected\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge { line: 3, u: 1, v: 0 })
        );
        assert!(parse_graph("3 2 directed\n0 1\n1 0\n").is_ok());
        assert!(matches!(parse_graph("3 2 undirected\n0 1\n"), Err(GraphError::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 1 undirected\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 1 wobbly\n0 1\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 1 undirected\n0 1\n1 2\n"), Err(GraphError::Parse { line: 3, .. })));
        assert!(matches!(parse_graph(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn comments_and_kinds() {
        let text = "# bipartite path\n4 3 bipartite\ncolors: 1 3\n0 1 # w-b\n1 2\n2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.black, vec![false, true, false, true]);
        assert_eq!(
            parse_graph("3 1 bipartite\ncolors: 0\n1 2\n"),
            Err(GraphError::NotBipartite { u: 1, v: 2 })
        );
        let t = parse_graph("3 3 2structure\n0 1 a\n0 2 a\n1 2 b\n").unwrap();
        assert_eq!(t.colors, vec!["a", "a", "b"]);
    }

    #[test]
    fn edge_list_round_trip() {
        for text in [
            "4 4 undirected\n0 1\n0 2\n1 2\n2 3\n",
            "3 2 directed\n2 0\n0 1\n",
            "4 2 bipartite\ncolors: 1 3\n0 1\n2 3\n",
            "3 3 2structure\n0 1 a\n0 2 a\n1 2 b\n",
            "2 0 bipartite\ncolors:\n",
        ] {
            assert_eq!(parse_graph(text).unwrap().to_edge_list(), text);
        }
    }
}
