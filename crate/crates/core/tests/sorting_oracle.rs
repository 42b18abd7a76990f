//! Sorting words against a search over all reduced words.

use cambrian::cambrian::{
    coxeter_element, is_sortable, is_sortable_recursive, sortable_by_filter, sorting_word, CoxeterElement, Orientation,
};
use cambrian::coxeter::{CoxeterSystem, GroupElement, WeakOrder};

/// All reduced words of `w`, built by peeling left descents.
fn reduced_words(sys: &CoxeterSystem, w: &GroupElement) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for s in sys.descents_left(w) {
        for mut rest in reduced_words(sys, &sys.left_mul(s, w)) {
            rest.insert(0, s);
            out.push(rest);
        }
    }
    out
}

/// Positions of `word` embedded greedily in `c c c ...`.
fn positions(word: &[usize], c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let mut pos = Vec::with_capacity(word.len());
    let mut next = 0;
    for &s in word {
        let offset = (0..n).find(|&k| c[(next + k) % n] == s).unwrap();
        let p = next + offset;
        pos.push(p);
        next = p + 1;
    }
    pos
}

/// The sorting word is the reduced word whose positions in `c^infinity` are
/// lexicographically first; it is sortable when its letters in each copy of
/// `c` form decreasing sets.
fn oracle(sys: &CoxeterSystem, w: &GroupElement, c: &[usize]) -> (Vec<usize>, bool) {
    let words = reduced_words(sys, w);
    let best = words.into_iter().min_by_key(|word| positions(word, c)).unwrap();
    let pos = positions(&best, c);
    let n = c.len();
    let copies = pos.last().map_or(0, |p| p / n + 1);
    let sets: Vec<Vec<usize>> = (0..copies)
        .map(|k| {
            pos.iter()
                .zip(&best)
                .filter(|(p, _)| *p / n == k)
                .map(|(_, &s)| s)
                .collect()
        })
        .collect();
    let sortable = sets.windows(2).all(|p| p[1].iter().all(|s| p[0].contains(s)));
    (best, sortable)
}

fn check(label: &str) {
    let sys = CoxeterSystem::from_label(label).unwrap();
    let weak: WeakOrder = sys.enumerate().unwrap();
    for o in Orientation::all(sys.matrix()) {
        let c = coxeter_element(&sys, &o).unwrap();
        for w in weak.elements() {
            let sw = sorting_word(&sys, w, c.letters());
            let (word, sortable) = oracle(&sys, w, c.letters());
            assert_eq!(
                sw.letters.letters(),
                &word[..],
                "{label} c={} w={}",
                c.word(),
                sys.reduced_word(w)
            );
            assert_eq!(is_sortable(&sys, w, &c), sortable);
            assert_eq!(is_sortable_recursive(&sys, w, &c), sortable);
        }
    }
}

#[test]
fn rank_two_and_three() {
    for label in ["A2", "B2", "I2(5)", "G2", "A3", "B3", "A2xA1", "A1xA1xA1"] {
        check(label);
    }
}

#[test]
fn h3_sorting_words() {
    check("H3");
}

#[test]
fn a4_sorting_words() {
    check("A4");
}

#[test]
fn dihedral_sortables() {
    // With c = s1 s2 the sortables are s2 and the prefixes of s1 s2 s1 ...
    for m in 3..=8u32 {
        let sys = CoxeterSystem::from_label(&format!("I2({m})")).unwrap();
        let weak = sys.enumerate().unwrap();
        let c = CoxeterElement::parse(&sys, "s1s2").unwrap();
        let found = sortable_by_filter(&weak, &c);
        let mut expect: Vec<usize> = (0..=m as usize)
            .map(|len| weak.index_of_word(&(0..len).map(|k| k % 2).collect::<Vec<_>>()))
            .collect();
        expect.push(weak.index_of_word(&[1]));
        expect.sort_unstable();
        assert_eq!(found, expect, "I2({m})");
    }
}
