use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement, Word};
use crate::error::{Error, Result};

/// A choice, for every diagram edge `{i, j}`, of which endpoint comes first.
///
/// Stored as directed pairs `(before, after)`, one per diagram edge, sorted
/// by the underlying edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    rank: usize,
    arrows: Vec<(usize, usize)>,
}

impl Orientation {
    /// Validates that `arrows` orients each diagram edge exactly once and
    /// has no directed cycle.
    pub fn new(matrix: &CoxeterMatrix, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges = matrix.diagram_edges();
        let mut chosen: Vec<Option<(usize, usize)>> = vec![None; edges.len()];
        for (a, b) in arrows {
            let key = (a.min(b), a.max(b));
            let slot = edges
                .iter()
                .position(|&e| e == key)
                .ok_or_else(|| Error::NotACoxeterElement(format!("s{}-s{} is not a diagram edge", a + 1, b + 1)))?;
            if chosen[slot].replace((a, b)).is_some() {
                return Err(Error::NotACoxeterElement(format!(
                    "edge s{}-s{} oriented twice",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        let arrows = chosen
            .into_iter()
            .zip(&edges)
            .map(|(c, &(i, j))| {
                c.ok_or_else(|| Error::NotACoxeterElement(format!("edge s{}-s{} is not oriented", i + 1, j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let o = Orientation {
            rank: matrix.rank(),
            arrows,
        };
        o.linear_extension()?;
        Ok(o)
    }

    /// Parse `1>2,3>2` (one-based; `i>j` means `i` before `j`).
    pub fn parse(matrix: &CoxeterMatrix, text: &str) -> Result<Self> {
        let bad = || Error::NotACoxeterElement(format!("cannot parse orientation `{text}`"));
        let mut arrows = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part.split_once('>').ok_or_else(bad)?;
            let a: usize = a.trim().trim_start_matches(['s', 'S']).parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches(['s', 'S']).parse().map_err(|_| bad())?;
            if a == 0 || b == 0 || a > matrix.rank() || b > matrix.rank() {
                return Err(bad());
            }
            arrows.push((a - 1, b - 1));
        }
        Orientation::new(matrix, arrows)
    }

    /// Every acyclic orientation of the diagram.
    pub fn all(matrix: &CoxeterMatrix) -> Vec<Orientation> {
        let edges = matrix.diagram_edges();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << edges.len()) {
            let arrows = edges
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| if mask >> k & 1 == 0 { (i, j) } else { (j, i) });
            if let Ok(o) = Orientation::new(matrix, arrows) {
                out.push(o);
            }
        }
        out
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_before(&self, i: usize, j: usize) -> bool {
        self.arrows.contains(&(i, j))
    }

    /// Generators with no arrow pointing at them.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&v| self.arrows.iter().all(|&(_, b)| b != v))
            .collect()
    }

    /// Linear extension preferring smaller indices.
    fn linear_extension(&self) -> Result<Vec<usize>> {
        let mut indegree = vec![0; self.rank];
        for &(_, b) in &self.arrows {
            indegree[b] += 1;
        }
        let mut ready: VecDeque<usize> = (0..self.rank).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.rank);
        while let Some(v) = ready.pop_front() {
            order.push(v);
            for &(a, b) in &self.arrows {
                if a == v {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        // Keep the queue sorted so ties go to the smaller index.
                        let pos = ready.iter().position(|&x| x > b).unwrap_or(ready.len());
                        ready.insert(pos, b);
                    }
                }
            }
        }
        if order.len() != self.rank {
            let stuck = (0..self.rank).find(|v| !order.contains(v)).unwrap_or(0);
            return Err(Error::CyclicOrientation(stuck + 1));
        }
        Ok(order)
    }

    /// All words listing each generator once and respecting every arrow.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.rank);
        let mut used = vec![false; self.rank];
        self.extend(&mut prefix, &mut used, &mut out);
        out
    }

    fn extend(&self, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == self.rank {
            out.push(prefix.clone());
            return;
        }
        for v in 0..self.rank {
            let free = !used[v] && self.arrows.iter().all(|&(a, b)| b != v || used[a]);
            if free {
                used[v] = true;
                prefix.push(v);
                self.extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|(a, b)| format!("{}>{}", a + 1, b + 1))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// A product of all generators, each once, with the word it was given by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterElement {
    word: Word,
    element: GroupElement,
}

impl CoxeterElement {
    pub fn from_word(system: &CoxeterSystem, word: Word) -> Result<Self> {
        let n = system.rank();
        let mut seen = vec![false; n];
        if word.len() != n {
            return Err(Error::NotACoxeterElement(format!(
                "{word} has {} letters, expected {n}",
                word.len()
            )));
        }
        for &s in word.letters() {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotACoxeterElement(format!(
                    "{word} must use each of s1..s{n} once"
                )));
            }
        }
        let element = system.element_of(word.letters());
        Ok(Self { word, element })
    }

    /// Parse either a word (`s1s3s2`) or an orientation (`1>2,3>2`).
    pub fn parse(system: &CoxeterSystem, text: &str) -> Result<Self> {
        if text.contains('>') {
            let o = Orientation::parse(system.matrix(), text)?;
            return coxeter_element(system, &o);
        }
        let word = Word::parse(text).ok_or_else(|| Error::NotACoxeterElement(format!("cannot parse `{text}`")))?;
        CoxeterElement::from_word(system, word)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[usize] {
        self.word.letters()
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    /// Same group element written with another word.
    pub fn with_word(&self, system: &CoxeterSystem, word: Word) -> Result<Self> {
        let other = CoxeterElement::from_word(system, word)?;
        if other.element != self.element {
            return Err(Error::NotACoxeterElement(format!(
                "{} is not a word for {}",
                other.word, self.word
            )));
        }
        Ok(other)
    }
}

/// The Coxeter element of an orientation, written with the linear extension
/// that prefers smaller indices.
pub fn coxeter_element(system: &CoxeterSystem, orientation: &Orientation) -> Result<CoxeterElement> {
    CoxeterElement::from_word(system, Word(orientation.linear_extension()?))
}

/// `i` is before `j` when `s_i` precedes `s_j` in a word for `c`.
pub fn orientation_of(system: &CoxeterSystem, c: &CoxeterElement) -> Orientation {
    let pos = |s: usize| c.letters().iter().position(|&x| x == s).unwrap();
    let arrows = system
        .matrix()
        .diagram_edges()
        .into_iter()
        .map(|(i, j)| if pos(i) < pos(j) { (i, j) } else { (j, i) })
        .collect();
    Orientation {
        rank: system.rank(),
        arrows,
    }
}
