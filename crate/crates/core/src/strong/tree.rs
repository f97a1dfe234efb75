use std::fmt::Write as _;

use serde::Serialize;

use super::{strong_sets_threaded, TreeError};
use crate::relation::Relation;
use crate::set::{ElementSet, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Prime,
    Degenerate,
    Linear,
    Unclassified,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Prime => "prime",
            NodeKind::Degenerate => "degenerate",
            NodeKind::Linear => "linear",
            NodeKind::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub members: ElementSet,
    pub kind: NodeKind,
    /// Node indices, sorted by smallest member.
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    /// For linear nodes: positions in `children`, in linear order.
    pub order: Option<Vec<usize>>,
}

/// Inclusion tree of a laminar family containing `V` and all singletons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongTree {
    nodes: Vec<TreeNode>,
    root: usize,
}

#[derive(Serialize)]
struct NodeJson<'a> {
    members: &'a ElementSet,
    kind: NodeKind,
    children: Vec<NodeJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<&'a [usize]>,
}

#[derive(Serialize)]
struct TreeJson<'a> {
    node: NodeJson<'a>,
}

impl StrongTree {
    /// Builds the inclusion tree. Sets are inserted from largest to smallest;
    /// each element remembers the deepest node holding it, so the parent of
    /// a new set is the owner of any of its members, and all members must
    /// agree on it.
    pub fn build(n: usize, family: &SetFamily) -> Result<StrongTree, TreeError> {
        let full = ElementSet::full(n);
        if !family.contains(&full) {
            return Err(TreeError::MissingTrivial(full.to_vec()));
        }
        if let Some(v) = (0..n).find(|&v| !family.contains(&ElementSet::singleton(n, v))) {
            return Err(TreeError::MissingTrivial(vec![v]));
        }
        let mut order: Vec<&ElementSet> = family.iter().collect();
        order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        let mut nodes: Vec<TreeNode> = Vec::with_capacity(order.len());
        let mut owner = vec![0usize; n];
        for set in order {
            if set.universe() != n {
                return Err(TreeError::SizeMismatch { tree: n, relation: set.universe() });
            }
            let id = nodes.len();
            let parent = if id == 0 {
                None
            } else {
                let p = owner[set.first().expect("family sets are nonempty")];
                if let Some(v) = set.iter().find(|&v| owner[v] != p) {
                    let other = &nodes[owner[v]].members;
                    let clash = if other.overlaps(set) { other } else { &nodes[p].members };
                    return Err(TreeError::OverlappingSets { a: clash.to_vec(), b: set.to_vec() });
                }
                nodes[p].children.push(id);
                Some(p)
            };
            for v in set.iter() {
                owner[v] = id;
            }
            let kind = if set.len() == 1 { NodeKind::Leaf } else { NodeKind::Unclassified };
            nodes.push(TreeNode { members: set.clone(), kind, children: Vec::new(), parent, order: None });
        }
        for id in 0..nodes.len() {
            let mut children = std::mem::take(&mut nodes[id].children);
            children.sort_by_key(|&c| nodes[c].members.first());
            nodes[id].children = children;
        }
        Ok(StrongTree { nodes, root: 0 })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ground_len(&self) -> usize {
        self.nodes[self.root].members.len()
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// The node member sets as a canonical family.
    pub fn family(&self) -> SetFamily {
        self.nodes.iter().map(|n| n.members.clone()).collect()
    }

    fn node_json(&self, id: usize) -> NodeJson<'_> {
        let node = &self.nodes[id];
        NodeJson {
            members: &node.members,
            kind: node.kind,
            children: node.children.iter().map(|&c| self.node_json(c)).collect(),
            order: node.order.as_deref(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeJson { node: self.node_json(self.root) }).expect("tree serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&TreeJson { node: self.node_json(self.root) }).expect("tree serializes")
    }

    /// Indented outline, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let members: Vec<String> = node.members.iter().map(|v| v.to_string()).collect();
            let _ = write!(out, "{}{} {{{}}}", "  ".repeat(depth), node.kind.as_str(), members.join(","));
            if let Some(order) = &node.order {
                let mins: Vec<String> =
                    order.iter().map(|&i| self.nodes[node.children[i]].members.first().unwrap_or(0).to_string()).collect();
                let _ = write!(out, " order {}", mins.join("<"));
            }
            out.push('\n');
            for &c in node.children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

/// What to do about node kinds when decomposing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Typing {
    /// Leave internal nodes unclassified.
    Off,
    /// Type nodes, trusting the caller that the relation satisfies A2.
    Assume,
    /// Check A2 exhaustively first; leave nodes unclassified if it fails.
    CheckA2,
}

/// Strong sets, inclusion tree and (optionally) node kinds.
pub fn decompose(r: &Relation, typing: Typing, threads: usize) -> Result<StrongTree, TreeError> {
    let strong = strong_sets_threaded(r, threads);
    let mut tree = StrongTree::build(r.len(), &strong)?;
    let typed = match typing {
        Typing::Off => false,
        Typing::Assume => true,
        Typing::CheckA2 => crate::axioms::check_axiom(r, crate::axioms::Axiom::A2).holds,
    };
    if typed {
        type_nodes(&mut tree, r)?;
    }
    Ok(tree)
}

/// Labels internal nodes prime, degenerate or linear.
///
/// Each child is represented by its smallest member, so a union of children
/// is homogeneous iff no other child's representative separates their
/// representatives. That reading needs A2; callers without it should not
/// type the tree. Two-child nodes are degenerate.
pub fn type_nodes(tree: &mut StrongTree, r: &Relation) -> Result<(), TreeError> {
    if tree.ground_len() != r.len() {
        return Err(TreeError::SizeMismatch { tree: tree.ground_len(), relation: r.len() });
    }
    for id in 0..tree.nodes.len() {
        let children = &tree.nodes[id].children;
        if children.is_empty() {
            tree.nodes[id].kind = NodeKind::Leaf;
            continue;
        }
        let reps: Vec<usize> =
            children.iter().map(|&c| tree.nodes[c].members.first().expect("nonempty")).collect();
        let (kind, order) = classify_children(r, &reps).ok_or_else(|| TreeError::NotWeaklyPartitive {
            members: tree.nodes[id].members.to_vec(),
        })?;
        tree.nodes[id].kind = kind;
        tree.nodes[id].order = order;
    }
    Ok(())
}

fn classify_children(r: &Relation, reps: &[usize]) -> Option<(NodeKind, Option<Vec<usize>>)> {
    let k = reps.len();
    if k == 2 {
        return Some((NodeKind::Degenerate, None));
    }
    let mut adjacent = vec![Vec::new(); k];
    let mut edges = 0;
    for i in 0..k {
        for j in i + 1..k {
            let together = (0..k)
                .filter(|&l| l != i && l != j)
                .all(|l| r.class_of(reps[l], reps[i]) == r.class_of(reps[l], reps[j]));
            if together {
                adjacent[i].push(j);
                adjacent[j].push(i);
                edges += 1;
            }
        }
    }
    if edges == 0 {
        return Some((NodeKind::Prime, None));
    }
    if edges == k * (k - 1) / 2 {
        return Some((NodeKind::Degenerate, None));
    }
    let order = hamiltonian_path(&adjacent, edges)?;
    consecutive_runs_homogeneous(r, reps, &order).then_some((NodeKind::Linear, Some(order)))
}

/// The homogeneous-pair graph of a linear node is a path; walk it from the
/// endpoint with the smaller index.
fn hamiltonian_path(adjacent: &[Vec<usize>], edges: usize) -> Option<Vec<usize>> {
    let k = adjacent.len();
    if edges != k - 1 || adjacent.iter().any(|a| a.len() > 2 || a.is_empty()) {
        return None;
    }
    let start = (0..k).find(|&i| adjacent[i].len() == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adjacent[cur].iter().find(|&&v| v != prev) {
        if order.len() == k {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == k).then_some(order)
}

/// Every run `order[i..=j]` must be homogeneous in the quotient.
fn consecutive_runs_homogeneous(r: &Relation, reps: &[usize], order: &[usize]) -> bool {
    let k = order.len();
    let mut position = vec![0; k];
    for (p, &c) in order.iter().enumerate() {
        position[c] = p;
    }
    for i in 0..k {
        let first = reps[order[i]];
        let mut ok = vec![true; k];
        for j in i + 1..k {
            let added = reps[order[j]];
            for l in 0..k {
                let p = position[l];
                if p >= i && p <= j {
                    continue;
                }
                ok[l] &= r.class_of(reps[l], added) == r.class_of(reps[l], first);
                if !ok[l] {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strong::strong_sets;

    fn set(n: usize, v: &[usize]) -> ElementSet {
        ElementSet::new(n, v.iter().copied())
    }

    fn trivial(n: usize) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
        v.push(ElementSet::full(n));
        v
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Relation {
        Relation::from_class_fn(n, |s, x| edges.contains(&(s.min(x), s.max(x))))
    }

    #[test]
    fn build_g1_tree() {
        let g1 = graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let tree = decompose(&g1, Typing::Assume, 1).unwrap();
        assert_eq!(
            tree.to_json(),
            concat!(
                r#"{"node":{"members":[0,1,2,3],"kind":"degenerate","children":["#,
                r#"{"members":[0,1,3],"kind":"degenerate","children":["#,
                r#"{"members":[0,1],"kind":"degenerate","children":["#,
                r#"{"members":[0],"kind":"leaf","children":[]},{"members":[1],"kind":"leaf","children":[]}]},"#,
                r#"{"members":[3],"kind":"leaf","children":[]}]},"#,
                r#"{"members":[2],"kind":"leaf","children":[]}]}}"#
            )
        );
        assert_eq!(tree.len(), strong_sets(&g1).len());
    }

    #[test]
    fn trivial_family_gives_flat_tree() {
        let tree = StrongTree::build(3, &SetFamily::from_sets(trivial(3))).unwrap();
        assert_eq!(tree.node(tree.root()).children.len(), 3);
        assert_eq!(tree.node(tree.root()).kind, NodeKind::Unclassified);
    }

    #[test]
    fn overlapping_and_incomplete_families_are_rejected() {
        let mut sets = trivial(3);
        sets.push(set(3, &[0, 1]));
        sets.push(set(3, &[1, 2]));
        assert!(matches!(
            StrongTree::build(3, &SetFamily::from_sets(sets)),
            Err(TreeError::OverlappingSets { .. })
        ));
        let missing = SetFamily::from_sets([ElementSet::full(2), set(2, &[0])]);
        assert_eq!(StrongTree::build(2, &missing), Err(TreeError::MissingTrivial(vec![1])));
    }

    #[test]
    fn complete_graph_is_degenerate_and_p4_prime() {
        let k4 = Relation::from_class_fn(4, |_, _| ());
        let tree = decompose(&k4, Typing::Assume, 1).unwrap();
        assert_eq!(tree.node(tree.root()).kind, NodeKind::Degenerate);
        assert_eq!(tree.len(), 5);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let tree = decompose(&p4, Typing::CheckA2, 1).unwrap();
        assert_eq!(tree.node(tree.root()).kind, NodeKind::Prime);
    }

    #[test]
    fn transitive_tournament_is_linear() {
        let t = Relation::from_class_fn(3, |s, x| s < x);
        let tree = decompose(&t, Typing::Assume, 1).unwrap();
        let root = tree.node(tree.root());
        assert_eq!(root.kind, NodeKind::Linear);
        assert_eq!(root.order.as_deref(), Some(&[0, 1, 2][..]));
        assert!(tree.to_text().starts_with("linear {0,1,2} order 0<1<2\n"));
    }

    #[test]
    fn untyped_when_off() {
        let k4 = Relation::from_class_fn(4, |_, _| ());
        let tree = decompose(&k4, Typing::Off, 1).unwrap();
        assert_eq!(tree.node(tree.root()).kind, NodeKind::Unclassified);
        assert!(!tree.to_json().contains("order"));
    }
}
