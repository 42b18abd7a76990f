use serde::Serialize;

use super::{is_sortable, orientation_of, sorting_word, CoxeterElement};
use crate::coxeter::{WeakOrder, Word};
use crate::error::{Error, Result};
use crate::lattice::{congruence_from_edges, is_isomorphism, Congruence, EdgeSet, HasseLattice, LocalForcing};

/// Cover edges `s_j < s_j s_i < ...` up to `m(i, j) - 1` letters, for every
/// diagram edge with `i` before `j`.
pub fn cambrian_generating_edges(weak: &WeakOrder, c: &CoxeterElement) -> EdgeSet {
    let system = weak.system();
    let orientation = orientation_of(system, c);
    let lattice = weak.lattice();
    let mut edges = EdgeSet::empty(lattice.edge_count());
    for &(i, j) in orientation.arrows() {
        let m = system.matrix().m(i, j) as usize;
        let mut current = weak.left_mul(j, weak.identity());
        for step in 1..m - 1 {
            let s = if step % 2 == 1 { i } else { j };
            let next = weak.right_mul(current, s);
            let e = lattice
                .edge_index(current, next)
                .expect("alternating words below the join are reduced");
            edges.insert(e);
            current = next;
        }
    }
    edges
}

/// Finest congruence contracting the generating edges of `c`.
pub fn cambrian_congruence(weak: &WeakOrder, c: &CoxeterElement) -> Result<Congruence> {
    let forcing = LocalForcing::new(weak.lattice())?;
    cambrian_congruence_with(weak, &forcing, c)
}

/// As [`cambrian_congruence`], reusing precomputed polygonal intervals.
pub fn cambrian_congruence_with(weak: &WeakOrder, forcing: &LocalForcing, c: &CoxeterElement) -> Result<Congruence> {
    let seed = cambrian_generating_edges(weak, c);
    congruence_from_edges(weak.lattice(), &forcing.closure(&seed))
}

/// Sortable elements organised by the predecessor relation.
#[derive(Debug, Clone, Serialize)]
pub struct SearchTree {
    /// Element indices in the order visited (depth first, children by
    /// generator index).
    pub nodes: Vec<usize>,
    /// Parent of each node, as a position in `nodes`.
    pub parent: Vec<Option<usize>>,
    pub words: Vec<Word>,
}

impl SearchTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Element indices in increasing order.
    pub fn sorted_elements(&self) -> Vec<usize> {
        let mut v = self.nodes.clone();
        v.sort_unstable();
        v
    }

    /// Tree edges as weak-order cover edges.
    pub fn edge_set(&self, weak: &WeakOrder) -> EdgeSet {
        let lattice = weak.lattice();
        EdgeSet::from_edges(
            lattice.edge_count(),
            self.parent.iter().enumerate().filter_map(|(k, p)| {
                p.map(|p| {
                    lattice
                        .edge_index(self.nodes[p], self.nodes[k])
                        .expect("tree edges are covers")
                })
            }),
        )
    }
}

/// Traverses the sortable elements from the identity. A child of `v` is a
/// sortable `v s` whose sorting word ends in `s`, so deleting that letter
/// recovers `v`.
pub fn sortable_elements(weak: &WeakOrder, c: &CoxeterElement) -> SearchTree {
    let system = weak.system();
    let n = system.rank();
    let mut tree = SearchTree {
        nodes: vec![weak.identity()],
        parent: vec![None],
        words: vec![Word::default()],
    };
    let mut stack = vec![0usize];
    while let Some(pos) = stack.pop() {
        let v = tree.nodes[pos];
        let mut children = Vec::new();
        for s in 0..n {
            if weak.element(v).has_right_descent(s) {
                continue;
            }
            let u = weak.right_mul(v, s);
            let sw = sorting_word(system, weak.element(u), c.letters());
            if sw.is_decreasing() && sw.letters.letters().last() == Some(&s) {
                children.push((u, sw.letters));
            }
        }
        // Reverse so the smallest generator is explored first.
        for (u, word) in children.into_iter().rev() {
            tree.nodes.push(u);
            tree.parent.push(Some(pos));
            tree.words.push(word);
            stack.push(tree.nodes.len() - 1);
        }
    }
    tree
}

/// Sortable elements found by testing every element.
pub fn sortable_by_filter(weak: &WeakOrder, c: &CoxeterElement) -> Vec<usize> {
    (0..weak.len())
        .filter(|&k| is_sortable(weak.system(), weak.element(k), c))
        .collect()
}

/// The Cambrian lattice as the subposet of sortable elements.
///
/// Checks that it is a lattice and that it is isomorphic to the quotient of
/// the weak order by the Cambrian congruence via class bottoms.
pub fn cambrian_lattice(weak: &WeakOrder, c: &CoxeterElement) -> Result<CambrianLattice> {
    let congruence = cambrian_congruence(weak, c)?;
    CambrianLattice::assemble(weak, c, congruence)
}

/// Sortable elements, their subposet, and the Cambrian congruence.
#[derive(Debug, Clone)]
pub struct CambrianLattice {
    /// Sortable element indices, increasing.
    pub sortables: Vec<usize>,
    /// Induced subposet on `sortables` (same order).
    pub lattice: HasseLattice,
    pub congruence: Congruence,
    /// `class_to_node[k]` is the node of class `k`.
    pub class_to_node: Vec<usize>,
}

impl CambrianLattice {
    pub fn assemble(weak: &WeakOrder, c: &CoxeterElement, congruence: Congruence) -> Result<Self> {
        let sortables = sortable_elements(weak, c).sorted_elements();
        let lattice = weak.lattice().induced_subposet(&sortables)?;
        if !lattice.is_lattice() {
            return Err(Error::NotACongruence("sortable subposet is not a lattice".into()));
        }
        let quotient = congruence.quotient(weak.lattice())?;
        let class_to_node = congruence
            .bottoms()
            .iter()
            .map(|b| {
                sortables
                    .binary_search(b)
                    .map_err(|_| Error::NotACongruence(format!("class bottom {} is not sortable", weak.word(*b))))
            })
            .collect::<Result<Vec<_>>>()?;
        if sortables.len() != congruence.class_count() || !is_isomorphism(&class_to_node, &quotient, &lattice) {
            return Err(Error::NotACongruence(
                "sortable subposet differs from the quotient".into(),
            ));
        }
        Ok(Self {
            sortables,
            lattice,
            congruence,
            class_to_node,
        })
    }

    pub fn len(&self) -> usize {
        self.sortables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sortables.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cambrian::coxeter_element;
    use crate::cambrian::Orientation;
    use crate::coxeter::CoxeterSystem;

    fn weak(label: &str) -> WeakOrder {
        CoxeterSystem::from_label(label).unwrap().enumerate().unwrap()
    }

    #[test]
    fn tamari_generators() {
        let w = weak("A3");
        let c = CoxeterElement::parse(w.system(), "s1s2s3").unwrap();
        let edges: Vec<(String, String)> = cambrian_generating_edges(&w, &c)
            .iter()
            .map(|e| {
                let (lo, hi) = w.lattice().edge(e);
                (w.word(lo).to_string(), w.word(hi).to_string())
            })
            .collect();
        assert_eq!(edges.len(), 2);
        assert!(edges.contains(&("s2".into(), "s2s1".into())));
        assert!(edges.contains(&("s3".into(), "s3s2".into())));
    }

    #[test]
    fn b2_chain() {
        let w = weak("B2");
        let c = CoxeterElement::parse(w.system(), "s1s2").unwrap();
        let edges = cambrian_generating_edges(&w, &c);
        assert_eq!(edges.len(), 2);
        let cong = cambrian_congruence(&w, &c).unwrap();
        assert_eq!(cong.class_count(), 6);
        let big = cong.classes().iter().find(|cl| cl.len() == 3).unwrap();
        let words: Vec<String> = big.iter().map(|&k| w.word(k).to_string()).collect();
        assert_eq!(words, vec!["s2", "s2s1", "s2s1s2"]);
    }

    #[test]
    fn search_tree_matches_filter() {
        for (label, count) in [("A3", 14), ("B3", 20), ("H3", 32), ("B2", 6)] {
            let w = weak(label);
            for o in Orientation::all(w.system().matrix()) {
                let c = coxeter_element(w.system(), &o).unwrap();
                let tree = sortable_elements(&w, &c);
                assert_eq!(tree.len(), count, "{label} {o}");
                assert_eq!(tree.sorted_elements(), sortable_by_filter(&w, &c));
                let camb = cambrian_lattice(&w, &c).unwrap();
                assert_eq!(camb.len(), count);
            }
        }
    }

    #[test]
    fn search_tree_words_are_sorting_words() {
        let w = weak("A3");
        let c = CoxeterElement::parse(w.system(), "s1s2s3").unwrap();
        let tree = sortable_elements(&w, &c);
        for (k, &v) in tree.nodes.iter().enumerate() {
            assert_eq!(w.index_of_word(tree.words[k].letters()), v);
            if let Some(p) = tree.parent[k] {
                let pw = tree.words[p].letters();
                assert_eq!(&tree.words[k].letters()[..pw.len()], pw);
                assert_eq!(tree.words[k].len(), pw.len() + 1);
            }
        }
    }
}
