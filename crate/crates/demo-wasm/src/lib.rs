//! Browser bindings: decompose, SHS and MHS on an edge list typed into the page.

use homodec::algorithms::{mhs, shs};
use homodec::instances::{
    from_bipartite_bimodular, from_directed, from_two_structure, from_undirected, parse_graph, ColorMode, GraphKind,
};
use homodec::strong::{decompose, strong_bimodules, Typing};
use homodec::{ElementSet, Relation, StrongTree};
use wasm_bindgen::prelude::*;

fn relation(text: &str) -> Result<Relation, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    match g.kind {
        GraphKind::Undirected => from_undirected(&g),
        GraphKind::Directed => from_directed(&g),
        GraphKind::TwoStructure => from_two_structure(&g, ColorMode::Symmetric),
        GraphKind::Bipartite => return Err("this query needs a non-bipartite graph".into()),
    }
    .map_err(|e| e.to_string())
}

fn ids(raw: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in raw.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| format!("bad vertex `{tok}`"))?;
        if v >= n {
            return Err(format!("vertex {v} outside 0..{n}"));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("give at least one vertex".into());
    }
    Ok(out)
}

/// Tree JSON for any edge-list kind; bipartite graphs give the bimodule tree.
pub fn decompose_text(text: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    if g.kind == GraphKind::Bipartite {
        let instance = from_bipartite_bimodular(&g).map_err(|e| e.to_string())?;
        let strong = strong_bimodules(&instance).map_err(|e| e.to_string())?;
        return StrongTree::build(g.n, &strong).map(|t| t.to_json()).map_err(|e| e.to_string());
    }
    let r = relation(text)?;
    decompose(&r, Typing::Assume, 1).map(|t| t.to_json()).map_err(|e| e.to_string())
}

/// Smallest homogeneous set containing the listed vertices, as a JSON array.
pub fn shs_text(text: &str, seeds: &str) -> Result<String, String> {
    let r = relation(text)?;
    let seeds = ElementSet::new(r.len(), ids(seeds, r.len())?);
    let set = shs(&r, &seeds).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&set).expect("set serializes"))
}

/// Maximal homogeneous sets avoiding `x`, as a JSON array of arrays.
pub fn mhs_text(text: &str, x: &str) -> Result<String, String> {
    let r = relation(text)?;
    let x = match ids(x, r.len())?[..] {
        [x] => x,
        _ => return Err("give exactly one vertex".into()),
    };
    Ok(serde_json::to_string(&mhs(&r, x)).expect("family serializes"))
}

#[wasm_bindgen(js_name = decompose)]
pub fn decompose_js(text: &str) -> Result<String, JsValue> {
    decompose_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = shs)]
pub fn shs_js(text: &str, seeds: &str) -> Result<String, JsValue> {
    shs_text(text, seeds).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = mhs)]
pub fn mhs_js(text: &str, x: &str) -> Result<String, JsValue> {
    mhs_text(text, x).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = randomGraph)]
pub fn random_graph(n: usize, p: f64, seed: u32) -> String {
    homodec::generate::gnp(n.min(64), p.clamp(0.0, 1.0), u64::from(seed)).to_edge_list()
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1: &str = "4 4 undirected\n0 1\n0 2\n1 2\n2 3\n";

    #[test]
    fn operations() {
        assert!(decompose_text(G1).unwrap().starts_with(r#"{"node":{"members":[0,1,2,3],"kind":"degenerate""#));
        assert_eq!(shs_text(G1, "0 3").unwrap(), "[0,1,3]");
        assert_eq!(mhs_text(G1, "2").unwrap(), "[[0,1,3]]");
        assert!(mhs_text(G1, "1,2").is_err());
        assert!(shs_text(G1, "9").is_err());
        assert!(decompose_text("oops").is_err());
    }

    #[test]
    fn bipartite_and_random() {
        let k22 = "4 4 bipartite\ncolors: 0 1\n0 2\n0 3\n1 2\n1 3\n";
        assert!(decompose_text(k22).unwrap().contains("unclassified"));
        assert!(shs_text(k22, "0").is_err());
        let g = random_graph(10, 0.4, 3);
        assert_eq!(g, random_graph(10, 0.4, 3));
        assert!(decompose_text(&g).is_ok());
    }
}
