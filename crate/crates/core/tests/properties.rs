use std::sync::OnceLock;

use proptest::prelude::*;

use cambrian::cambrian::{c_vectors, is_sortable, sorting_word, CoxeterElement};
use cambrian::coxeter::{CoxeterSystem, SignedRoot, WeakOrder};
use cambrian::lattice::{congruence_from_edges, EdgeSet, LocalForcing};

struct Fixture {
    weak: WeakOrder,
    forcing: LocalForcing,
}

fn fixture(label: &'static str) -> &'static Fixture {
    static A3: OnceLock<Fixture> = OnceLock::new();
    static B3: OnceLock<Fixture> = OnceLock::new();
    let cell = match label {
        "A3" => &A3,
        _ => &B3,
    };
    cell.get_or_init(|| {
        let weak = CoxeterSystem::from_label(label).unwrap().enumerate().unwrap();
        let forcing = LocalForcing::new(weak.lattice()).unwrap();
        Fixture { weak, forcing }
    })
}

fn seed(f: &Fixture, picks: &[usize]) -> EdgeSet {
    let m = f.weak.lattice().edge_count();
    EdgeSet::from_edges(m, picks.iter().map(|p| p % m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_closure_operator(
        label in prop::sample::select(vec!["A3", "B3"]),
        a in prop::collection::vec(0usize..1000, 0..4),
        b in prop::collection::vec(0usize..1000, 0..4),
    ) {
        let f = fixture(label);
        let small = seed(f, &a);
        let mut big = small.clone();
        for e in seed(f, &b).iter() {
            big.insert(e);
        }
        let cs = f.forcing.closure(&small);
        let cb = f.forcing.closure(&big);
        prop_assert!(small.is_subset(&cs));
        prop_assert_eq!(f.forcing.closure(&cs), cs.clone());
        prop_assert!(cs.is_subset(&cb));
        prop_assert!(f.forcing.is_closed(&cb));
    }

    #[test]
    fn projections_are_order_preserving(
        label in prop::sample::select(vec!["A3", "B3"]),
        a in prop::collection::vec(0usize..1000, 1..4),
    ) {
        let f = fixture(label);
        let lattice = f.weak.lattice();
        let cong = congruence_from_edges(lattice, &f.forcing.closure(&seed(f, &a))).unwrap();
        for x in 0..lattice.len() {
            let (d, u) = (cong.project_down(x), cong.project_up(x));
            prop_assert!(lattice.leq(d, x) && lattice.leq(x, u));
            prop_assert_eq!(cong.project_down(d), d);
            prop_assert_eq!(cong.project_up(u), u);
        }
        for y in 0..lattice.len() {
            for x in 0..lattice.len() {
                if lattice.leq(x, y) {
                    prop_assert!(lattice.leq(cong.project_down(x), cong.project_down(y)));
                    prop_assert!(lattice.leq(cong.project_up(x), cong.project_up(y)));
                }
            }
        }
    }

    #[test]
    fn sorting_word_is_reduced_word(k in 0usize..48, c in prop::sample::select(vec!["s1s2s3", "s2s1s3", "s3s2s1", "s1s3s2"])) {
        let f = fixture("B3");
        let sys = f.weak.system();
        let c = CoxeterElement::parse(sys, c).unwrap();
        let w = f.weak.element(k);
        let sw = sorting_word(sys, w, c.letters());
        prop_assert_eq!(sw.len(), w.length());
        prop_assert_eq!(&sys.element_of(sw.letters.letters()), w);
        // Dividers split the word into the recorded passes.
        let mut cuts = vec![0];
        cuts.extend(&sw.dividers);
        cuts.push(sw.len());
        for (p, pass) in cuts.windows(2).zip(&sw.passes) {
            prop_assert_eq!(&sw.letters.letters()[p[0]..p[1]], &pass[..]);
        }
    }

    #[test]
    fn c_vectors_are_roots_of_independent_cones(k in 0usize..48) {
        let f = fixture("B3");
        let sys = f.weak.system();
        let c = CoxeterElement::parse(sys, "s1s2s3").unwrap();
        let w = f.weak.element(k);
        match c_vectors(sys, w, &c) {
            Ok(cv) => {
                prop_assert!(is_sortable(sys, w, &c));
                prop_assert_eq!(cv.len(), 3);
                prop_assert!(cv.determinant().abs() > 1e-9);
                // Each vector w' alpha_i is a root; coordinates agree with the index.
                for (r, v) in cv.roots.iter().zip(&cv.vectors) {
                    let located = sys.roots().locate(v).unwrap();
                    prop_assert_eq!(SignedRoot::new(located.0, located.1), *r);
                }
            }
            Err(_) => prop_assert!(!is_sortable(sys, w, &c)),
        }
    }
}
