use std::collections::HashMap;

use super::{CoxeterSystem, GroupElement, SignedRoot, Word};
use crate::error::{Error, Result};
use crate::lattice::HasseLattice;

/// Default cap on the number of group elements enumerated.
pub const DEFAULT_MAX_ORDER: usize = 2_000_000;

/// All elements of a finite Coxeter group with the right weak order.
///
/// Elements are indexed in breadth-first order from the identity, so
/// indices are sorted by length and the identity is `0`.
#[derive(Debug, Clone)]
pub struct WeakOrder {
    system: CoxeterSystem,
    elements: Vec<GroupElement>,
    index: HashMap<Box<[SignedRoot]>, usize>,
    right: Vec<usize>,
    left: Vec<usize>,
    words: Vec<Word>,
    lattice: HasseLattice,
}

impl WeakOrder {
    pub fn new(system: &CoxeterSystem, max_order: usize) -> Result<Self> {
        let n = system.rank();
        let mut elements = vec![system.identity().clone()];
        let mut index: HashMap<Box<[SignedRoot]>, usize> = HashMap::new();
        index.insert(system.identity().key().into(), 0);
        let mut right: Vec<usize> = Vec::new();
        let mut covers = Vec::new();
        let mut cursor = 0;
        while cursor < elements.len() {
            for s in 0..n {
                let ws = system.right_mul(&elements[cursor], s);
                let target = match index.get(ws.key()) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= max_order {
                            return Err(Error::CapExceeded { cap: max_order });
                        }
                        let k = elements.len();
                        index.insert(ws.key().into(), k);
                        elements.push(ws);
                        k
                    }
                };
                right.push(target);
                if !elements[cursor].has_right_descent(s) {
                    covers.push((cursor, target));
                }
            }
            cursor += 1;
        }
        let mut left = Vec::with_capacity(elements.len() * n);
        for w in &elements {
            for s in 0..n {
                left.push(index[system.left_mul(s, w).key()]);
            }
        }
        let words: Vec<Word> = elements.iter().map(|w| system.reduced_word(w)).collect();
        let labels = words.iter().map(ToString::to_string).collect();
        let lattice = HasseLattice::new(labels, covers)?;
        Ok(Self {
            system: system.clone(),
            elements,
            index,
            right,
            left,
            words,
            lattice,
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lattice(&self) -> &HasseLattice {
        &self.lattice
    }

    pub fn element(&self, k: usize) -> &GroupElement {
        &self.elements[k]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        if w.system != self.system.id {
            return None;
        }
        self.index.get(w.key()).copied()
    }

    /// Index of the product of a word's letters.
    pub fn index_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |k, &s| self.right_mul(k, s))
    }

    /// Lexicographically first reduced word of element `k`.
    pub fn word(&self, k: usize) -> &Word {
        &self.words[k]
    }

    pub fn length(&self, k: usize) -> usize {
        self.elements[k].length()
    }

    pub fn right_mul(&self, k: usize, s: usize) -> usize {
        self.right[k * self.system.rank() + s]
    }

    pub fn left_mul(&self, s: usize, k: usize) -> usize {
        self.left[k * self.system.rank() + s]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// Cover edge `w < ws`, if `s` is not a right descent of `w`.
    pub fn cover_edge(&self, k: usize, s: usize) -> Option<usize> {
        self.lattice.edge_index(k, self.right_mul(k, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weak(label: &str) -> WeakOrder {
        CoxeterSystem::from_label(label).unwrap().enumerate().unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(weak("A1").len(), 2);
        assert_eq!(weak("A2").len(), 6);
        assert_eq!(weak("A3").len(), 24);
        assert_eq!(weak("B2").len(), 8);
        assert_eq!(weak("B3").len(), 48);
        assert_eq!(weak("H3").len(), 120);
        assert_eq!(weak("D4").len(), 192);
        assert_eq!(weak("A2xA1").len(), 12);
        for m in 3..=8 {
            assert_eq!(weak(&format!("I2({m})")).len(), 2 * m as usize);
        }
    }

    #[test]
    fn b2_is_an_octagon() {
        let w = weak("B2");
        let l = w.lattice();
        assert_eq!(l.edge_count(), 8);
        assert!(l.degrees().iter().all(|&d| d == 2));
        assert_eq!(w.length(w.longest()), 4);
    }

    #[test]
    fn longest_element_length_is_root_count() {
        let w = weak("H3");
        assert_eq!(w.length(w.longest()), 15);
        assert_eq!(w.system().roots().positive_count(), 15);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = CoxeterSystem::from_label("A3").unwrap();
        assert_eq!(WeakOrder::new(&sys, 10).unwrap_err(), Error::CapExceeded { cap: 10 });
    }

    #[test]
    fn multiplication_tables_agree() {
        let w = weak("B3");
        let sys = w.system();
        for k in 0..w.len() {
            for s in 0..3 {
                assert_eq!(w.element(w.right_mul(k, s)), &sys.right_mul(w.element(k), s));
                assert_eq!(w.element(w.left_mul(s, k)), &sys.left_mul(s, w.element(k)));
            }
            assert_eq!(w.index_of_word(w.word(k).letters()), k);
        }
    }
}
