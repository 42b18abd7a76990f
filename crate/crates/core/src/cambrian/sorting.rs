use serde::Serialize;

use super::CoxeterElement;
use crate::coxeter::{CoxeterSystem, GroupElement, Word};

/// The sorting word of an element for a fixed cyclic try-order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortingWord {
    pub letters: Word,
    /// Positions in `letters` where a new pass begins (never 0).
    pub dividers: Vec<usize>,
    /// Letters added in each pass, in try-order.
    pub passes: Vec<Vec<usize>>,
    /// For each generator, the prefix length after which it was first tried
    /// and rejected.
    pub skips: Vec<usize>,
}

impl SortingWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when the pass sets are weakly decreasing under containment.
    pub fn is_decreasing(&self) -> bool {
        self.passes.windows(2).all(|w| w[1].iter().all(|s| w[0].contains(s)))
    }

    /// Prefix `a_1 .. a_j` where `s` is skipped.
    pub fn skip_prefix(&self, s: usize) -> &[usize] {
        &self.letters.letters()[..self.skips[s]]
    }
}

impl std::fmt::Display for SortingWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passes.is_empty() {
            return f.write_str("e");
        }
        for (k, pass) in self.passes.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}", Word(pass.clone()))?;
        }
        Ok(())
    }
}

/// Builds the reduced word of `w` by trying the letters of `order`
/// cyclically, taking each letter that is a left descent of what remains.
pub fn sorting_word(system: &CoxeterSystem, w: &GroupElement, order: &[usize]) -> SortingWord {
    let n = order.len();
    let mut rest = w.clone();
    let mut letters = Vec::with_capacity(w.length());
    let mut dividers = Vec::new();
    let mut passes: Vec<Vec<usize>> = Vec::new();
    let mut skips: Vec<Option<usize>> = vec![None; system.rank()];
    let mut pass_open = false;
    let mut cursor = 0;
    while !rest.is_identity() {
        let s = order[cursor];
        if rest.has_left_descent(s) {
            if !pass_open {
                if !letters.is_empty() {
                    dividers.push(letters.len());
                }
                passes.push(Vec::new());
                pass_open = true;
            }
            letters.push(s);
            passes.last_mut().unwrap().push(s);
            rest = system.left_mul(s, &rest);
        } else if skips[s].is_none() {
            skips[s] = Some(letters.len());
        }
        cursor += 1;
        if cursor == n {
            cursor = 0;
            pass_open = false;
        }
    }
    // Generators never rejected so far are rejected on the next try, after
    // the word is complete.
    let k = letters.len();
    SortingWord {
        letters: Word(letters),
        dividers,
        passes,
        skips: skips.into_iter().map(|s| s.unwrap_or(k)).collect(),
    }
}

pub fn is_sortable(system: &CoxeterSystem, w: &GroupElement, c: &CoxeterElement) -> bool {
    sorting_word(system, w, c.letters()).is_decreasing()
}

/// Sortability decided by induction on length and rank.
///
/// With `s` initial in `c`: if `s` is a left descent of `w`, recurse on
/// `(s w, s c s)`; otherwise `w` must lie in the parabolic subgroup without
/// `s`, and we recurse on `(w, s c)` there.
pub fn is_sortable_recursive(system: &CoxeterSystem, w: &GroupElement, c: &CoxeterElement) -> bool {
    let roots = system.roots();
    let mut rest = w.clone();
    let mut word: Vec<usize> = c.letters().to_vec();
    loop {
        if rest.is_identity() {
            return true;
        }
        let Some(&s) = word.first() else {
            return false;
        };
        if rest.has_left_descent(s) {
            rest = system.left_mul(s, &rest);
            word.rotate_left(1);
        } else {
            // `rest` lies in the parabolic subgroup without `s` exactly when
            // no inversion has `s` in its support.
            let in_parabolic = rest.inversion_set().iter().all(|q| !roots.support(q).contains(&s));
            if !in_parabolic {
                return false;
            }
            word.remove(0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> CoxeterSystem {
        CoxeterSystem::from_label(label).unwrap()
    }

    #[test]
    fn b2_sorting_words() {
        let b2 = sys("B2");
        let words: Vec<(Vec<usize>, &str)> = vec![
            (vec![], "e"),
            (vec![0], "s1"),
            (vec![0, 1], "s1s2"),
            (vec![0, 1, 0], "s1s2|s1"),
            (vec![0, 1, 0, 1], "s1s2|s1s2"),
            (vec![1], "s2"),
            (vec![1, 0], "s2|s1"),
            (vec![1, 0, 1], "s2|s1s2"),
        ];
        let c = CoxeterElement::parse(&b2, "s1s2").unwrap();
        let mut sortable = 0;
        for (word, expect) in words {
            let w = b2.element_of(&word);
            let sw = sorting_word(&b2, &w, &[0, 1]);
            assert_eq!(sw.to_string(), expect);
            assert_eq!(b2.element_of(sw.letters.letters()), w);
            sortable += is_sortable(&b2, &w, &c) as usize;
        }
        assert_eq!(sortable, 6);
        assert!(!is_sortable(&b2, &b2.element_of(&[1, 0]), &c));
        assert!(!is_sortable(&b2, &b2.element_of(&[1, 0, 1]), &c));
    }

    #[test]
    fn identity_skips_everything_at_zero() {
        let a3 = sys("A3");
        let sw = sorting_word(&a3, a3.identity(), &[0, 1, 2]);
        assert!(sw.is_empty());
        assert_eq!(sw.skips, vec![0, 0, 0]);
        assert!(sw.is_decreasing());
    }

    #[test]
    fn s4_longest_element() {
        let a3 = sys("A3");
        let w0 = a3.element_of(&[0, 1, 0, 2, 1, 0]);
        let sw = sorting_word(&a3, &w0, &[0, 1, 2]);
        assert_eq!(sw.to_string(), "s1s2s3|s1s2|s1");
        assert_eq!(sw.passes, vec![vec![0, 1, 2], vec![0, 1], vec![0]]);
        assert_eq!(sw.dividers, vec![3, 5]);
        assert!(sw.is_decreasing());
    }

    #[test]
    fn b2_skip_tables() {
        let b2 = sys("B2");
        // s2: s1 rejected before anything is written, s2 after completion.
        let sw = sorting_word(&b2, b2.generator(1), &[0, 1]);
        assert_eq!(sw.skips, vec![0, 1]);
        // s1s2: both rejected only after completion.
        let sw = sorting_word(&b2, &b2.element_of(&[0, 1]), &[0, 1]);
        assert_eq!(sw.skips, vec![2, 2]);
    }

    #[test]
    fn recursive_agrees_on_b2() {
        let b2 = sys("B2");
        let weak = b2.enumerate().unwrap();
        for word in ["s1s2", "s2s1"] {
            let c = CoxeterElement::parse(&b2, word).unwrap();
            for w in weak.elements() {
                assert_eq!(is_sortable(&b2, w, &c), is_sortable_recursive(&b2, w, &c));
            }
        }
    }
}
