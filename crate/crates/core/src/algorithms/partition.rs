//! Ordered partition refinement over a working subset of the ground set.
//!
//! Elements live in one array and each class is a contiguous range of it, so
//! the order of classes is the order of their ranges. Splitting a class by a
//! refining set moves the marked elements to the front of the range; the new
//! class therefore sits right before its origin. Groups (the classes of the
//! previous round) are runs of classes marked by boundary flags.

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Class {
    start: usize,
    end: usize,
    /// Class created from this one during the current refinement.
    split: usize,
    /// Set on classes created during the current refinement.
    fresh: bool,
}

#[derive(Debug, Clone)]
pub struct RefinablePartition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Class>,
    group_start: Vec<bool>,
    moved: usize,
}

impl RefinablePartition {
    /// Starts from the given classes, in order, over a ground set of size `n`.
    /// Empty classes are skipped. The whole working subset is one group.
    pub fn new(n: usize, classes: &[Vec<usize>]) -> Self {
        let mut p = RefinablePartition {
            elems: Vec::new(),
            pos: vec![NONE; n],
            class_of: vec![NONE; n],
            classes: Vec::new(),
            group_start: Vec::new(),
            moved: 0,
        };
        for class in classes.iter().filter(|c| !c.is_empty()) {
            let id = p.classes.len();
            let start = p.elems.len();
            for &e in class {
                assert!(p.pos[e] == NONE, "element {e} listed twice");
                p.pos[e] = p.elems.len();
                p.class_of[e] = id;
                p.elems.push(e);
            }
            p.classes.push(Class { start, end: p.elems.len(), split: NONE, fresh: false });
        }
        p.group_start = vec![false; p.elems.len()];
        if let Some(first) = p.group_start.first_mut() {
            *first = true;
        }
        p
    }

    pub fn working_len(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.pos.len() && self.pos[e] != NONE
    }

    /// Class handle of a working element.
    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e]
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        let c = &self.classes[class];
        &self.elems[c.start..c.end]
    }

    /// Class handles in list order.
    pub fn class_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = 0;
        while p < self.elems.len() {
            let c = self.class_of[self.elems[p]];
            out.push(c);
            p = self.classes[c].end;
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.class_order().len()
    }

    /// Classes as element lists, in list order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.class_order().into_iter().map(|c| self.class_members(c).to_vec()).collect()
    }

    /// Groups as lists of class handles, in list order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for c in self.class_order() {
            if self.group_start[self.classes[c].start] || out.is_empty() {
                out.push(Vec::new());
            }
            out.last_mut().expect("pushed above").push(c);
        }
        out
    }

    /// Moves the group boundaries onto the current class boundaries.
    pub fn close_groups(&mut self) {
        for c in self.class_order() {
            self.group_start[self.classes[c].start] = true;
        }
    }

    /// Elements moved by refinements so far.
    pub fn moved(&self) -> usize {
        self.moved
    }

    /// Splits every class `C` that properly overlaps `refiner` into the
    /// adjacent classes `C ∩ R` (new, placed first) and `C ∖ R`.
    ///
    /// Elements of `refiner` outside the working subset are ignored. Runs in
    /// O(|R|). Returns `(origin, created)` for each class actually split.
    pub fn refine(&mut self, refiner: &[usize]) -> Vec<(usize, usize)> {
        for &e in refiner {
            if !self.contains(e) {
                continue;
            }
            let c = self.class_of[e];
            if self.classes[c].fresh {
                continue;
            }
            if self.classes[c].split == NONE {
                let start = self.classes[c].start;
                let id = self.classes.len();
                self.classes.push(Class { start, end: start, split: NONE, fresh: true });
                self.classes[c].split = id;
            }
            let nc = self.classes[c].split;
            let q = self.classes[c].start;
            let p = self.pos[e];
            let other = self.elems[q];
            self.elems.swap(p, q);
            self.pos[other] = p;
            self.pos[e] = q;
            self.class_of[e] = nc;
            self.classes[nc].end = q + 1;
            self.classes[c].start = q + 1;
            self.moved += 1;
        }
        let mut splits = Vec::new();
        for &e in refiner {
            if !self.contains(e) {
                continue;
            }
            let nc = self.class_of[e];
            if !self.classes[nc].fresh {
                continue;
            }
            self.classes[nc].fresh = false;
            // find the origin: the class right after the new one
            let after = self.classes[nc].end;
            let origin = if after < self.elems.len() { self.class_of[self.elems[after]] } else { NONE };
            let origin_emptied = origin == NONE || self.classes[origin].split != nc;
            if origin_emptied {
                // whole class was inside R; nothing split. The old handle is
                // dead and the new one takes its place.
                continue;
            }
            self.classes[origin].split = NONE;
            splits.push((origin, nc));
        }
        splits
    }
}
