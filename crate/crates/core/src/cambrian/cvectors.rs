use nalgebra::DMatrix;
use serde::Serialize;

use super::{sorting_word, CoxeterElement};
use crate::coxeter::{CoxeterSystem, GroupElement, SignedRoot};
use crate::error::{Error, Result};

/// The vectors `C_c^{s_i}(v) = a_1 ... a_j . alpha_i`, one per generator,
/// where `a_1 ... a_j` is the prefix after which the sorting word skips `s_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CVectorSet {
    /// Each vector is a root; this is its signed positive-root index.
    pub roots: Vec<SignedRoot>,
    /// Coordinates in the basis of simple roots.
    pub vectors: Vec<Vec<f64>>,
}

impl CVectorSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Determinant of the matrix whose rows are the vectors.
    pub fn determinant(&self) -> f64 {
        let n = self.vectors.len();
        DMatrix::from_fn(n, n, |r, c| self.vectors[r][c]).determinant()
    }
}

pub fn c_vectors(system: &CoxeterSystem, v: &GroupElement, c: &CoxeterElement) -> Result<CVectorSet> {
    let sw = sorting_word(system, v, c.letters());
    if !sw.is_decreasing() {
        return Err(Error::NotSortable);
    }
    let roots: Vec<SignedRoot> = (0..system.rank())
        .map(|i| system.element_of(sw.skip_prefix(i)).act(SignedRoot::new(i, false)))
        .collect();
    let vectors = roots
        .iter()
        .map(|r| system.roots().root(r.index(), r.is_negative()))
        .collect();
    Ok(CVectorSet { roots, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_examples() {
        let b2 = CoxeterSystem::from_label("B2").unwrap();
        let c = CoxeterElement::parse(&b2, "s1s2").unwrap();

        let id = c_vectors(&b2, b2.identity(), &c).unwrap();
        assert_eq!(id.roots, vec![SignedRoot::new(0, false), SignedRoot::new(1, false)]);

        let s2 = c_vectors(&b2, b2.generator(1), &c).unwrap();
        assert_eq!(s2.vectors, vec![vec![1.0, 0.0], vec![-0.0, -1.0]]);
        assert_eq!(s2.roots, vec![SignedRoot::new(0, false), SignedRoot::new(1, true)]);

        let s1s2 = b2.element_of(&[0, 1]);
        let cv = c_vectors(&b2, &s1s2, &c).unwrap();
        for i in 0..2 {
            assert_eq!(cv.roots[i], s1s2.act(SignedRoot::new(i, false)));
        }
        assert!(cv.determinant().abs() > 1e-9);

        assert_eq!(
            c_vectors(&b2, &b2.element_of(&[1, 0]), &c).unwrap_err(),
            Error::NotSortable
        );
    }
}
