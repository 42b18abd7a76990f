//! Local forcing closure against congruence generation from meets and joins.

use cambrian::coxeter::CoxeterSystem;
use cambrian::lattice::{congruence_from_edges, EdgeSet, HasseLattice, LocalForcing};

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Smallest equivalence containing the seed pairs and closed under
/// `x = y => x v z = y v z, x ^ z = y ^ z`. Returns the contracted covers.
fn generated_congruence(lattice: &HasseLattice, meets: &[usize], joins: &[usize], seed: &EdgeSet) -> EdgeSet {
    let n = lattice.len();
    let mut dsu = Dsu((0..n).collect());
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for e in seed.iter() {
        let (a, b) = lattice.edge(e);
        if dsu.union(a, b) {
            pending.push((a, b));
        }
    }
    while let Some((x, y)) = pending.pop() {
        for z in 0..n {
            for table in [meets, joins] {
                let (u, v) = (table[x * n + z], table[y * n + z]);
                if dsu.union(u, v) {
                    pending.push((u, v));
                }
            }
        }
    }
    EdgeSet::from_edges(
        lattice.edge_count(),
        (0..lattice.edge_count()).filter(|&e| {
            let (a, b) = lattice.edge(e);
            dsu.find(a) == dsu.find(b)
        }),
    )
}

fn check_group(label: &str) -> usize {
    let weak = CoxeterSystem::from_label(label).unwrap().enumerate().unwrap();
    let lattice = weak.lattice();
    let (meets, joins) = lattice.operation_tables().unwrap();
    let forcing = LocalForcing::new(lattice).unwrap();
    let m = lattice.edge_count();
    let mut checked = 0;
    for a in 0..m {
        for b in a..m {
            let seed = EdgeSet::from_edges(m, [a, b]);
            let closure = forcing.closure(&seed);
            let oracle = generated_congruence(lattice, &meets, &joins, &seed);
            assert_eq!(closure, oracle, "{label}: seed edges {a}, {b}");
            assert!(congruence_from_edges(lattice, &closure).is_ok());
            checked += 1;
        }
    }
    checked
}

#[test]
fn s3_all_seeds() {
    assert_eq!(check_group("A2"), 6 * 7 / 2);
}

#[test]
fn s4_all_seeds() {
    assert_eq!(check_group("A3"), 36 * 37 / 2);
}

#[test]
fn b2_all_seeds() {
    assert_eq!(check_group("B2"), 8 * 9 / 2);
}

#[test]
fn b3_all_seeds() {
    assert_eq!(check_group("B3"), 72 * 73 / 2);
}

#[test]
fn tamari_seed_on_s4() {
    let sys = CoxeterSystem::from_label("A3").unwrap();
    let weak = sys.enumerate().unwrap();
    let lattice = weak.lattice();
    // 1324 < 3124 is s2 < s2s1 and 1243 < 1423 is s3 < s3s2.
    let e1 = lattice
        .edge_index(weak.index_of_word(&[1]), weak.index_of_word(&[1, 0]))
        .unwrap();
    let e2 = lattice
        .edge_index(weak.index_of_word(&[2]), weak.index_of_word(&[2, 1]))
        .unwrap();
    let seed = EdgeSet::from_edges(lattice.edge_count(), [e1, e2]);
    let closure = LocalForcing::new(lattice).unwrap().closure(&seed);
    let congruence = congruence_from_edges(lattice, &closure).unwrap();
    assert_eq!(congruence.class_count(), 14);
    let (meets, joins) = lattice.operation_tables().unwrap();
    assert_eq!(closure, generated_congruence(lattice, &meets, &joins, &seed));
}
