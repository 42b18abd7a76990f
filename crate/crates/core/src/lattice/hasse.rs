use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite poset given by its cover relations.
///
/// Elements are `0..len()`; each cover `(lower, upper)` has an edge index.
/// Down-sets and up-sets are computed on first use.
#[derive(Debug, Clone)]
pub struct HasseLattice {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    up: Vec<Vec<(usize, usize)>>,
    down: Vec<Vec<(usize, usize)>>,
    edge_ids: HashMap<(usize, usize), usize>,
    topo: Vec<usize>,
    below: OnceLock<Vec<FixedBitSet>>,
    above: OnceLock<Vec<FixedBitSet>>,
}

impl HasseLattice {
    /// Builds the poset from cover edges. Fails if an edge is out of range,
    /// duplicated, or the relation has a cycle.
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut edge_ids = HashMap::with_capacity(covers.len());
        for (k, &(lo, hi)) in covers.iter().enumerate() {
            if lo >= n || hi >= n || lo == hi {
                return Err(Error::BadPoset(format!("cover ({lo}, {hi}) out of range")));
            }
            if edge_ids.insert((lo, hi), k).is_some() {
                return Err(Error::BadPoset(format!("duplicate cover ({lo}, {hi})")));
            }
            up[lo].push((hi, k));
            down[hi].push((lo, k));
        }
        // Kahn's algorithm; smallest index first keeps the order deterministic.
        let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &(y, _) in &up[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::BadPoset("cover relation has a cycle".into()));
        }
        Ok(Self {
            labels,
            edges: covers,
            up,
            down,
            edge_ids,
            topo,
            below: OnceLock::new(),
            above: OnceLock::new(),
        })
    }

    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `relation`; covers are its transitive reduction.
    pub fn from_relation(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut pairs: Vec<(usize, usize)> = relation.iter().copied().filter(|(a, b)| a != b).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let raw = HasseLattice::new(vec![String::new(); n], pairs)?;
        let below = raw.down_sets();
        let mut covers = Vec::new();
        for hi in 0..n {
            // Maximal elements strictly below `hi`.
            let mut strict = below[hi].clone();
            strict.set(hi, false);
            for lo in strict.ones() {
                let mut between = strict.clone();
                between.intersect_with(&raw.up_sets()[lo]);
                between.set(lo, false);
                if between.is_clear() {
                    covers.push((lo, hi));
                }
            }
        }
        HasseLattice::new(labels, covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_index(&self, lower: usize, upper: usize) -> Option<usize> {
        self.edge_ids.get(&(lower, upper)).copied()
    }

    /// Upper covers of `x` as `(element, edge)` pairs.
    pub fn upper_covers(&self, x: usize) -> &[(usize, usize)] {
        &self.up[x]
    }

    /// Lower covers of `x` as `(element, edge)` pairs.
    pub fn lower_covers(&self, x: usize) -> &[(usize, usize)] {
        &self.down[x]
    }

    /// Elements in a linear extension of the order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// For each element, the set of elements below or equal to it.
    pub fn down_sets(&self) -> &[FixedBitSet] {
        self.below.get_or_init(|| {
            let n = self.len();
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for &x in &self.topo {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(x);
                for &(y, _) in &self.down[x] {
                    set.union_with(&sets[y]);
                }
                sets[x] = set;
            }
            sets
        })
    }

    /// For each element, the set of elements above or equal to it.
    pub fn up_sets(&self) -> &[FixedBitSet] {
        self.above.get_or_init(|| {
            let n = self.len();
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for &x in self.topo.iter().rev() {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(x);
                for &(y, _) in &self.up[x] {
                    set.union_with(&sets[y]);
                }
                sets[x] = set;
            }
            sets
        })
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down_sets()[b].contains(a)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// Greatest element of `down(u) ∩ down(w)`.
    pub fn meet(&self, u: usize, w: usize) -> Result<usize> {
        let sets = self.down_sets();
        extremum(sets, &sets[u], &sets[w]).ok_or(Error::NotALattice(u, w, "meet"))
    }

    /// Least element of `up(u) ∩ up(w)`.
    pub fn join(&self, u: usize, w: usize) -> Result<usize> {
        let sets = self.up_sets();
        extremum(sets, &sets[u], &sets[w]).ok_or(Error::NotALattice(u, w, "join"))
    }

    /// All pairwise meets and joins, row-major.
    pub fn operation_tables(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.len();
        let mut meets = vec![0; n * n];
        let mut joins = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = self.meet(a, b)?;
                let j = self.join(a, b)?;
                meets[a * n + b] = m;
                meets[b * n + a] = m;
                joins[a * n + b] = j;
                joins[b * n + a] = j;
            }
        }
        Ok((meets, joins))
    }

    pub fn is_lattice(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        self.bottom().is_some() && self.top().is_some() && self.operation_tables().is_ok()
    }

    /// True when no cover is implied by a longer chain.
    pub fn is_transitively_reduced(&self) -> bool {
        let below = self.down_sets();
        self.edges.iter().all(|&(lo, hi)| {
            self.down[hi]
                .iter()
                .all(|&(other, _)| other == lo || !below[other].contains(lo))
        })
    }

    /// Undirected degree of each element in the Hasse diagram.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.up[x].len() + self.down[x].len()).collect()
    }

    /// Induced subposet on `members` (in the given order), with covers the
    /// transitive reduction of the restricted order.
    pub fn induced_subposet(&self, members: &[usize]) -> Result<HasseLattice> {
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let mut relation = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if i != j && self.leq(a, b) {
                    relation.push((i, j));
                }
            }
        }
        HasseLattice::from_relation(labels, &relation)
    }
}

fn extremum(sets: &[FixedBitSet], a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    let mut common = a.clone();
    common.intersect_with(b);
    let size = common.count_ones(..);
    let best = common.ones().max_by_key(|&x| sets[x].count_ones(..))?;
    // The candidate bounds everything in the common set exactly when its
    // own set coincides with it.
    (sets[best].count_ones(..) == size && sets[best].is_subset(&common)).then_some(best)
}

/// Checks that `map` is a bijection from `a` to `b` carrying covers onto
/// covers.
pub fn is_isomorphism(map: &[usize], a: &HasseLattice, b: &HasseLattice) -> bool {
    if map.len() != a.len() || a.len() != b.len() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &y in map {
        if y >= b.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    a.edges()
        .iter()
        .all(|&(lo, hi)| b.edge_index(map[lo], map[hi]).is_some())
}

/// Exhaustive check that `map` preserves meets and joins.
pub fn is_lattice_homomorphism(map: &[usize], source: &HasseLattice, target: &HasseLattice) -> bool {
    if map.len() != source.len() {
        return false;
    }
    let n = source.len();
    for a in 0..n {
        for b in a + 1..n {
            let (Ok(m), Ok(j)) = (source.meet(a, b), source.join(a, b)) else {
                return false;
            };
            let (Ok(tm), Ok(tj)) = (target.meet(map[a], map[b]), target.join(map[a], map[b])) else {
                return false;
            };
            if map[m] != tm || map[j] != tj {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// Boolean lattice on two atoms: 0 < 1, 2 < 3.
    fn square() -> HasseLattice {
        HasseLattice::new(labels(4), vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn meets_and_joins() {
        let l = square();
        assert_eq!(l.meet(1, 2).unwrap(), 0);
        assert_eq!(l.join(1, 2).unwrap(), 3);
        assert_eq!(l.meet(3, 3).unwrap(), 3);
        assert_eq!(l.join(0, 1).unwrap(), 1);
        assert!(l.is_lattice());
        assert!(l.is_transitively_reduced());
    }

    #[test]
    fn not_a_lattice() {
        // Two minimal elements below two maximal elements (bowtie).
        let l = HasseLattice::new(labels(4), vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(!l.is_lattice());
        assert!(matches!(l.join(0, 1), Err(Error::NotALattice(0, 1, "join"))));
    }

    #[test]
    fn rejects_cycles() {
        assert!(HasseLattice::new(labels(2), vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn relation_is_reduced() {
        let l = HasseLattice::from_relation(labels(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l.edge_count(), 2);
        assert!(l.leq(0, 2));
        let not_reduced = HasseLattice::new(labels(3), vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!not_reduced.is_transitively_reduced());
    }

    #[test]
    fn identity_is_homomorphism() {
        let l = square();
        let id: Vec<usize> = (0..4).collect();
        assert!(is_lattice_homomorphism(&id, &l, &l));
        assert!(is_isomorphism(&id, &l, &l));
        // Swapping an atom with the top is not order preserving.
        assert!(!is_isomorphism(&[0, 3, 2, 1], &l, &l));
    }
}
