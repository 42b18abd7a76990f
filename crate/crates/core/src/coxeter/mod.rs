//! Finite Coxeter groups in their standard geometric representation.
//!
//! Group elements act on the positive roots as signed permutations. The
//! tables for the simple reflections are computed once from floating-point
//! root vectors; all later arithmetic is exact table composition.

mod element;
mod matrix;
mod roots;
mod weak;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

pub use element::{GroupElement, InversionSet, SignedRoot};
pub use matrix::{CoxeterLabel, CoxeterMatrix, Family};
pub use roots::{RootSystem, DEFAULT_MAX_ROOTS, ROOT_TOLERANCE};
pub use weak::{WeakOrder, DEFAULT_MAX_ORDER};

use crate::error::{Error, Result};

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// A word in the generators, stored as zero-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Parse `s1s3s2`, `s1 s3 s2`, `1 3 2` or `1,3,2` (one-based).
    pub fn parse(text: &str) -> Option<Word> {
        let cleaned = text.replace(['s', 'S'], " ").replace([',', '*', '.'], " ");
        let letters = cleaned
            .split_whitespace()
            .map(|t| t.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1))
            .collect::<Option<Vec<_>>>()?;
        Some(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &s in &self.0 {
            write!(f, "s{}", s + 1)?;
        }
        Ok(())
    }
}

/// Either a classification label or an explicit Coxeter matrix.
#[derive(Debug, Clone)]
pub enum SystemSpec {
    Label(CoxeterLabel),
    Matrix(CoxeterMatrix),
}

impl From<CoxeterLabel> for SystemSpec {
    fn from(label: CoxeterLabel) -> Self {
        SystemSpec::Label(label)
    }
}

impl From<CoxeterMatrix> for SystemSpec {
    fn from(matrix: CoxeterMatrix) -> Self {
        SystemSpec::Matrix(matrix)
    }
}

#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    id: u64,
    label: Option<CoxeterLabel>,
    matrix: CoxeterMatrix,
    roots: RootSystem,
    generators: Vec<GroupElement>,
    identity: GroupElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemSummary {
    pub rank: usize,
    pub matrix: Vec<Vec<u32>>,
    pub positive_root_count: usize,
    pub order: usize,
}

impl CoxeterSystem {
    pub fn build(spec: impl Into<SystemSpec>) -> Result<Self> {
        Self::build_with_cap(spec, DEFAULT_MAX_ROOTS)
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::build(label.parse::<CoxeterLabel>()?)
    }

    pub fn build_with_cap(spec: impl Into<SystemSpec>, max_roots: usize) -> Result<Self> {
        let (label, matrix) = match spec.into() {
            SystemSpec::Label(l) => {
                let m = l.matrix();
                (Some(l), m)
            }
            SystemSpec::Matrix(m) => (None, m),
        };
        let roots = RootSystem::new(&matrix, max_roots)?;
        if !roots.is_finite_type() {
            return Err(Error::InfiniteType { cap: max_roots });
        }
        let id = NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed);
        let n = matrix.rank();
        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            let image = roots
                .positive_roots()
                .iter()
                .map(|r| {
                    let (q, neg) = roots
                        .locate(&roots.reflect(i, r))
                        .ok_or_else(|| Error::BadMatrix("reflection does not permute the roots".into()))?;
                    Ok(SignedRoot::new(q, neg))
                })
                .collect::<Result<Vec<_>>>()?;
            generators.push(GroupElement::from_image(id, image));
        }
        let identity = GroupElement::identity(id, roots.positive_count());
        Ok(Self {
            id,
            label,
            matrix,
            roots,
            generators,
            identity,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn label(&self) -> Option<&CoxeterLabel> {
        self.label.as_ref()
    }

    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => l.to_string(),
            None => format!("rank-{} matrix", self.rank()),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn identity(&self) -> &GroupElement {
        &self.identity
    }

    pub fn generator(&self, i: usize) -> &GroupElement {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn check(&self, w: &GroupElement) -> Result<()> {
        if w.system == self.id {
            Ok(())
        } else {
            Err(Error::SystemMismatch)
        }
    }

    pub fn multiply(&self, u: &GroupElement, w: &GroupElement) -> Result<GroupElement> {
        self.check(u)?;
        self.check(w)?;
        Ok(u.compose(w))
    }

    /// `s_i * w`.
    pub fn left_mul(&self, i: usize, w: &GroupElement) -> GroupElement {
        self.generators[i].compose(w)
    }

    /// `w * s_i`.
    pub fn right_mul(&self, w: &GroupElement, i: usize) -> GroupElement {
        w.compose(&self.generators[i])
    }

    /// Product of a word's letters, left to right.
    pub fn element_of(&self, word: &[usize]) -> GroupElement {
        word.iter()
            .fold(self.identity.clone(), |acc, &s| self.right_mul(&acc, s))
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        w.length()
    }

    pub fn descents_left(&self, w: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| w.has_left_descent(i)).collect()
    }

    pub fn descents_right(&self, w: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| w.has_right_descent(i)).collect()
    }

    /// Reduced word built left to right, trying generators in index order.
    pub fn reduced_word(&self, w: &GroupElement) -> Word {
        let order: Vec<usize> = (0..self.rank()).collect();
        self.lex_min_reduced_word(w, &order)
    }

    /// Reduced word built left to right, restarting the try-order at its
    /// first entry for every letter. With the natural order this is the
    /// lexicographically first reduced word.
    pub fn lex_min_reduced_word(&self, w: &GroupElement, order: &[usize]) -> Word {
        let mut rest = w.clone();
        let mut word = Vec::with_capacity(w.length());
        while !rest.is_identity() {
            let s = *order
                .iter()
                .find(|&&s| rest.has_left_descent(s))
                .expect("non-identity element has a left descent");
            word.push(s);
            rest = self.left_mul(s, &rest);
        }
        Word(word)
    }

    /// Right weak order: containment of inversion sets.
    pub fn weak_le(&self, u: &GroupElement, w: &GroupElement) -> Result<bool> {
        self.check(u)?;
        self.check(w)?;
        if u.length() > w.length() {
            return Ok(false);
        }
        Ok(u.inversion_set().is_subset(&w.inversion_set()))
    }

    /// Upper covers `w s` with `l(ws) = l(w) + 1`.
    pub fn weak_covers(&self, w: &GroupElement) -> Vec<GroupElement> {
        (0..self.rank())
            .filter(|&i| !w.has_right_descent(i))
            .map(|i| self.right_mul(w, i))
            .collect()
    }

    /// Vector `w . a_i` in simple-root coordinates.
    pub fn act_on_simple_root(&self, w: &GroupElement, i: usize) -> Vec<f64> {
        let r = w.act(SignedRoot::new(i, false));
        self.roots.root(r.index(), r.is_negative())
    }

    pub fn enumerate(&self) -> Result<WeakOrder> {
        WeakOrder::new(self, DEFAULT_MAX_ORDER)
    }

    pub fn summary(&self, order: usize) -> SystemSummary {
        SystemSummary {
            rank: self.rank(),
            matrix: self.matrix.rows().to_vec(),
            positive_root_count: self.roots.positive_count(),
            order,
        }
    }
}
