use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{polygonal_intervals, HasseLattice, PolygonalInterval};
use crate::error::{Error, Result};

/// A set of cover edges of a particular lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet(FixedBitSet);

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet(FixedBitSet::with_capacity(edge_count))
    }

    pub fn from_edges(edge_count: usize, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(edge_count);
        for e in edges {
            set.insert(e);
        }
        set
    }

    /// Returns `true` if the edge was not already present.
    pub fn insert(&mut self, edge: usize) -> bool {
        !self.0.put(edge)
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }
}

/// Polygonal intervals of a lattice indexed by the edges that trigger them.
#[derive(Debug, Clone)]
pub struct LocalForcing {
    edge_count: usize,
    polygons: Vec<PolygonalInterval>,
    triggers: Vec<Vec<usize>>,
}

impl LocalForcing {
    pub fn new(lattice: &HasseLattice) -> Result<Self> {
        let polygons = polygonal_intervals(lattice)?;
        let mut triggers = vec![Vec::new(); lattice.edge_count()];
        for (k, p) in polygons.iter().enumerate() {
            for e in p.bottom_edges().into_iter().chain(p.top_edges()) {
                triggers[e].push(k);
            }
        }
        Ok(Self {
            edge_count: lattice.edge_count(),
            polygons,
            triggers,
        })
    }

    pub fn polygons(&self) -> &[PolygonalInterval] {
        &self.polygons
    }

    /// Smallest superset of `seed` such that, in every polygonal interval, a
    /// contracted bottom or top edge forces its opposite and all side edges.
    pub fn closure(&self, seed: &EdgeSet) -> EdgeSet {
        let mut closed = EdgeSet::empty(self.edge_count);
        let mut work: Vec<usize> = Vec::new();
        for e in seed.iter() {
            if closed.insert(e) {
                work.push(e);
            }
        }
        while let Some(e) = work.pop() {
            for &k in &self.triggers[e] {
                let p = &self.polygons[k];
                let forced = p.opposite(e).into_iter().chain(p.side_edges());
                for f in forced {
                    if closed.insert(f) {
                        work.push(f);
                    }
                }
            }
        }
        closed
    }

    pub fn is_closed(&self, edges: &EdgeSet) -> bool {
        self.closure(edges) == *edges
    }
}

/// Convenience wrapper that computes the polygonal intervals on the fly.
pub fn local_forcing_closure(lattice: &HasseLattice, seed: &EdgeSet) -> Result<EdgeSet> {
    Ok(LocalForcing::new(lattice)?.closure(seed))
}

/// A lattice congruence given by its interval classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    bottoms: Vec<usize>,
    tops: Vec<usize>,
    contracted: EdgeSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceExport {
    pub classes: Vec<Vec<usize>>,
    pub bottoms: Vec<usize>,
    pub contracted_edges: Vec<[usize; 2]>,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Classes are the connected components of the contracted edges. Checks
/// that every class is an interval, that both projections are order
/// preserving, and that the contracted edges are exactly the covers inside
/// classes.
pub fn congruence_from_edges(lattice: &HasseLattice, edges: &EdgeSet) -> Result<Congruence> {
    let n = lattice.len();
    let mut dsu = DisjointSets((0..n).collect());
    for e in edges.iter() {
        let (lo, hi) = lattice.edge(e);
        dsu.union(lo, hi);
    }
    // Classes numbered in order of their smallest element index.
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for x in 0..n {
        let r = dsu.find(x);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[x] = root_class[r];
        classes[root_class[r]].push(x);
    }

    let up = lattice.up_sets();
    let down = lattice.down_sets();
    let mut bottoms = Vec::with_capacity(classes.len());
    let mut tops = Vec::with_capacity(classes.len());
    for (k, class) in classes.iter().enumerate() {
        let mut members = FixedBitSet::with_capacity(n);
        class.iter().for_each(|&x| members.insert(x));
        let bottom = class.iter().copied().find(|&b| members.is_subset(&up[b]));
        let top = class.iter().copied().find(|&t| members.is_subset(&down[t]));
        let (Some(b), Some(t)) = (bottom, top) else {
            return Err(Error::NotACongruence(format!(
                "class {k} {class:?} has no unique bottom and top"
            )));
        };
        let mut interval = up[b].clone();
        interval.intersect_with(&down[t]);
        if interval != members {
            return Err(Error::NotACongruence(format!(
                "class {k} {class:?} is not the interval [{b}, {t}]"
            )));
        }
        bottoms.push(b);
        tops.push(t);
    }

    for (e, &(lo, hi)) in lattice.edges().iter().enumerate() {
        let (cl, ch) = (class_of[lo], class_of[hi]);
        if cl == ch && !edges.contains(e) {
            return Err(Error::NotACongruence(format!(
                "cover {lo} < {hi} lies in a class but is not contracted"
            )));
        }
        if !lattice.leq(bottoms[cl], bottoms[ch]) {
            return Err(Error::NotACongruence(format!(
                "projection down is not order preserving at cover {lo} < {hi}"
            )));
        }
        if !lattice.leq(tops[cl], tops[ch]) {
            return Err(Error::NotACongruence(format!(
                "projection up is not order preserving at cover {lo} < {hi}"
            )));
        }
    }

    Ok(Congruence {
        class_of,
        classes,
        bottoms,
        tops,
        contracted: edges.clone(),
    })
}

impl Congruence {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn bottoms(&self) -> &[usize] {
        &self.bottoms
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    pub fn contracted(&self) -> &EdgeSet {
        &self.contracted
    }

    /// Bottom of the class of `x`.
    pub fn project_down(&self, x: usize) -> usize {
        self.bottoms[self.class_of[x]]
    }

    /// Top of the class of `x`.
    pub fn project_up(&self, x: usize) -> usize {
        self.tops[self.class_of[x]]
    }

    /// Quotient lattice on classes, labelled by class bottoms.
    pub fn quotient(&self, lattice: &HasseLattice) -> Result<HasseLattice> {
        let labels = self.bottoms.iter().map(|&b| lattice.label(b).to_string()).collect();
        let relation: Vec<(usize, usize)> = lattice
            .edges()
            .iter()
            .map(|&(lo, hi)| (self.class_of[lo], self.class_of[hi]))
            .filter(|(a, b)| a != b)
            .collect();
        HasseLattice::from_relation(labels, &relation)
    }

    /// Subposet of `lattice` induced by the class bottoms, in class order.
    pub fn bottoms_subposet(&self, lattice: &HasseLattice) -> Result<HasseLattice> {
        lattice.induced_subposet(&self.bottoms)
    }

    pub fn export(&self, lattice: &HasseLattice) -> CongruenceExport {
        CongruenceExport {
            classes: self.classes.clone(),
            bottoms: self.bottoms.clone(),
            contracted_edges: self
                .contracted
                .iter()
                .map(|e| {
                    let (lo, hi) = lattice.edge(e);
                    [lo, hi]
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_isomorphism;

    fn hexagon() -> HasseLattice {
        let labels = (0..6).map(|i| i.to_string()).collect();
        HasseLattice::new(labels, vec![(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn hexagon_forcing() {
        let l = hexagon();
        let forcing = LocalForcing::new(&l).unwrap();
        let close = |edges: &[usize]| -> Vec<usize> {
            forcing
                .closure(&EdgeSet::from_edges(6, edges.iter().copied()))
                .iter()
                .collect()
        };
        assert_eq!(close(&[]), Vec::<usize>::new());
        // Side edges force nothing.
        assert_eq!(close(&[2]), vec![2]);
        assert_eq!(close(&[3]), vec![3]);
        // Bottom/top edges force the opposite edge and both sides.
        assert_eq!(close(&[0]), vec![0, 2, 3, 5]);
        assert_eq!(close(&[1]), vec![1, 2, 3, 4]);
        assert_eq!(close(&[4]), vec![1, 2, 3, 4]);
        assert_eq!(close(&[5]), vec![0, 2, 3, 5]);
    }

    #[test]
    fn discrete_congruence() {
        let l = hexagon();
        let c = congruence_from_edges(&l, &EdgeSet::empty(6)).unwrap();
        assert_eq!(c.class_count(), 6);
        let q = c.quotient(&l).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert!(is_isomorphism(&id, &q, &l));
    }

    #[test]
    fn side_edge_congruence() {
        let l = hexagon();
        let c = congruence_from_edges(&l, &EdgeSet::from_edges(6, [2])).unwrap();
        assert_eq!(c.class_count(), 5);
        assert_eq!(c.project_down(3), 1);
        assert_eq!(c.project_up(1), 3);
        let q = c.quotient(&l).unwrap();
        let b = c.bottoms_subposet(&l).unwrap();
        let id: Vec<usize> = (0..q.len()).collect();
        assert!(is_isomorphism(&id, &q, &b));
        assert!(q.is_lattice());
    }

    #[test]
    fn unclosed_set_is_rejected() {
        let l = hexagon();
        // Bottom edge alone: the class {0, 1} is an interval but the
        // projection up sends the cover 0 < 2 to the incomparable 1 and 2.
        let err = congruence_from_edges(&l, &EdgeSet::from_edges(6, [0])).unwrap_err();
        assert!(matches!(err, Error::NotACongruence(_)), "{err:?}");
    }
}
