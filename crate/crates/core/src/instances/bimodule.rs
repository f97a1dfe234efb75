use crate::instances::graph::Graph;
use crate::set::ElementSet;

/// Bimodules of a bipartite graph.
///
/// A black vertex outside `M` must see all white vertices of `M` alike, and
/// a white vertex outside `M` all black vertices of `M`. A black vertex says
/// nothing about pairs of black vertices, so "s does not split x, y" is not
/// an equivalence on `V ∖ {s}` and this is not a [`crate::Relation`].
#[derive(Debug, Clone)]
pub struct BimoduleInstance {
    n: usize,
    black: Vec<bool>,
    adj: Vec<bool>,
}

impl BimoduleInstance {
    pub(crate) fn new(g: &Graph) -> Self {
        BimoduleInstance { n: g.n, black: (0..g.n).map(|v| g.is_black(v)).collect(), adj: g.adjacency() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black[v]
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Does `s` distinguish `x` and `y`?
    pub fn splits(&self, s: usize, x: usize, y: usize) -> bool {
        s != x
            && s != y
            && self.black[x] == self.black[y]
            && self.black[s] != self.black[x]
            && self.adjacent(s, x) != self.adjacent(s, y)
    }

    /// Does the outside vertex `s` distinguish two members of `set`?
    pub fn splits_set(&self, s: usize, set: &ElementSet) -> bool {
        let mut seen: Option<bool> = None;
        for x in set.iter().filter(|&x| self.black[x] != self.black[s]) {
            let a = self.adjacent(s, x);
            match seen {
                None => seen = Some(a),
                Some(b) if a != b => return true,
                _ => {}
            }
        }
        false
    }

    pub fn is_bimodule(&self, set: &ElementSet) -> bool {
        !set.is_empty() && (0..self.n).all(|s| set.contains(s) || !self.splits_set(s, set))
    }

    /// The smallest bimodule containing `seeds`.
    ///
    /// Bimodules are closed under intersection, so it is unique: grow the set
    /// by every outside vertex that distinguishes it until none is left.
    pub fn smallest_bimodule(&self, seeds: &ElementSet) -> ElementSet {
        let n = self.n;
        let mut in_set = vec![false; n];
        let mut queued = vec![false; n];
        let mut queue: Vec<usize> = seeds.iter().collect();
        for &v in &queue {
            queued[v] = true;
        }
        // first member of each colour; every non-queued outsider sees all
        // members of the opposite colour like it sees the representative
        let mut rep_black = None;
        let mut rep_white = None;
        while let Some(y) = queue.pop() {
            in_set[y] = true;
            let rep = if self.black[y] { &mut rep_black } else { &mut rep_white };
            match *rep {
                None => *rep = Some(y),
                Some(r) => {
                    for s in 0..n {
                        if !queued[s] && self.black[s] != self.black[y] && self.adjacent(s, y) != self.adjacent(s, r) {
                            queued[s] = true;
                            queue.push(s);
                        }
                    }
                }
            }
        }
        ElementSet::new(n, (0..n).filter(|&v| in_set[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_with_one_edge() {
        // black 0, whites 1 and 2, edge 0-1
        let g = Graph::bipartite(3, &[0], vec![(0, 1)]);
        let b = BimoduleInstance::new(&g);
        assert!(b.is_bimodule(&ElementSet::new(3, [0, 1])));
        assert!(!b.is_bimodule(&ElementSet::new(3, [1, 2])));
        assert!(b.splits(0, 1, 2));
        assert!(!b.splits(1, 0, 2));
        assert_eq!(b.smallest_bimodule(&ElementSet::new(3, [1, 2])).to_vec(), vec![0, 1, 2]);
        assert_eq!(b.smallest_bimodule(&ElementSet::new(3, [2])).to_vec(), vec![2]);
    }

    #[test]
    fn complete_bipartite_has_every_subset() {
        let g = Graph::bipartite(4, &[0, 1], vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let b = BimoduleInstance::new(&g);
        for mask in 1u32..16 {
            assert!(b.is_bimodule(&ElementSet::new(4, (0..4).filter(|&i| mask >> i & 1 == 1))));
        }
    }
}
