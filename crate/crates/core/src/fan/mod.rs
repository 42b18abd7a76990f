//! Coxeter fans and Cambrian fans.

mod geometry;
mod sampling;
mod svg;

use std::collections::BTreeSet;

use serde::Serialize;

pub use geometry::{dot, extreme_rays, Geometry, TOLERANCE};
pub use sampling::{compare_fans, sample_points, FanComparison, SampleReport};
pub use svg::{render_stereographic_svg, SvgOptions};

use crate::cambrian::{c_vectors, CambrianLattice, CoxeterElement};
use crate::coxeter::{SignedRoot, WeakOrder};
use crate::error::{Error, Result};
use crate::lattice::{Congruence, HasseLattice};

/// A full-dimensional cone `{x : <n, x> >= 0}` whose inward normals are
/// roots.
#[derive(Debug, Clone)]
pub struct Cone {
    pub label: String,
    /// Weak-order index of the element labelling the cone.
    pub element: usize,
    /// Coxeter regions whose union is the cone.
    pub regions: Vec<usize>,
    pub normal_roots: Vec<SignedRoot>,
    /// Normals in Euclidean coordinates.
    pub normals: Vec<Vec<f64>>,
    /// Unit extreme rays in Euclidean coordinates.
    pub rays: Vec<Vec<f64>>,
}

impl Cone {
    fn new(geometry: &Geometry, label: String, element: usize, regions: Vec<usize>, roots: Vec<SignedRoot>) -> Self {
        let normals: Vec<Vec<f64>> = roots.iter().map(|&r| geometry.root(r)).collect();
        let rays = extreme_rays(&normals, geometry.rank());
        Cone {
            label,
            element,
            regions,
            normal_roots: roots,
            normals,
            rays,
        }
    }

    /// Strict containment: every normal pairs to more than the tolerance.
    pub fn contains_interior(&self, x: &[f64]) -> bool {
        self.normals.iter().all(|n| dot(n, x) > TOLERANCE)
    }

    pub fn is_simplicial(&self, rank: usize) -> bool {
        self.normals.len() == rank && self.rays.len() == rank
    }
}

#[derive(Debug, Clone)]
pub struct Fan {
    pub rank: usize,
    pub cones: Vec<Cone>,
    /// Pairs of cones sharing a codimension-one face, `a < b`.
    pub adjacencies: Vec<(usize, usize)>,
    /// Cone containing each Coxeter region.
    pub region_cone: Vec<usize>,
}

impl Fan {
    fn assemble(weak: &WeakOrder, cones: Vec<Cone>) -> Self {
        let rank = weak.system().rank();
        let mut region_cone = vec![usize::MAX; weak.len()];
        for (k, cone) in cones.iter().enumerate() {
            for &r in &cone.regions {
                region_cone[r] = k;
            }
        }
        let adjacencies = adjacent_pairs(&cones, rank);
        Fan {
            rank,
            cones,
            adjacencies,
            region_cone,
        }
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Cones containing `x` in their interior, by normals.
    pub fn cones_containing(&self, x: &[f64]) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&k| self.cones[k].contains_interior(x))
            .collect()
    }

    pub fn export(&self, geometry: &Geometry) -> FanExport {
        FanExport {
            cones: self
                .cones
                .iter()
                .map(|c| ConeExport {
                    label: c.label.clone(),
                    normals: c
                        .normal_roots
                        .iter()
                        .map(|&r| geometry.to_simple_coordinates(&geometry.root(r)))
                        .collect(),
                    rays: c.rays.iter().map(|r| geometry.to_simple_coordinates(r)).collect(),
                })
                .collect(),
            adjacencies: self.adjacencies.clone(),
        }
    }
}

/// JSON form of a fan; normals and rays are in simple-root coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct FanExport {
    pub cones: Vec<ConeExport>,
    pub adjacencies: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeExport {
    pub label: String,
    pub normals: Vec<Vec<f64>>,
    pub rays: Vec<Vec<f64>>,
}

/// Two cones are adjacent when they share `rank - 1` rays and lie on
/// opposite sides of a common facet hyperplane.
fn adjacent_pairs(cones: &[Cone], rank: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let opposite = cones[a]
                .normal_roots
                .iter()
                .any(|r| cones[b].normal_roots.contains(&r.negate()));
            if !opposite {
                continue;
            }
            let shared = cones[a]
                .rays
                .iter()
                .filter(|r| cones[b].rays.iter().any(|q| geometry::distance(r, q) < 1e-7))
                .count();
            if shared + 1 >= rank {
                out.push((a, b));
            }
        }
    }
    out
}

/// One cone `wD` per element, with inward normals `w alpha_i`.
pub fn coxeter_fan(weak: &WeakOrder) -> Fan {
    let system = weak.system();
    let geometry = Geometry::new(system);
    let cones = (0..weak.len())
        .map(|k| {
            let w = weak.element(k);
            let roots = (0..system.rank()).map(|i| w.act(SignedRoot::new(i, false))).collect();
            Cone::new(&geometry, weak.word(k).to_string(), k, vec![k], roots)
        })
        .collect();
    Fan::assemble(weak, cones)
}

/// Adjacent regions are exactly the weak-order covers, and the lower element
/// lies on the same side of the separating hyperplane as `D`.
pub fn region_adjacency_matches_weak_order(weak: &WeakOrder, fan: &Fan) -> bool {
    let covers: BTreeSet<(usize, usize)> = weak.lattice().edges().iter().copied().collect();
    let mut seen = BTreeSet::new();
    for &(a, b) in &fan.adjacencies {
        let (ea, eb) = (fan.cones[a].element, fan.cones[b].element);
        // The wall's normal inward to the lower region is a positive root.
        let Some(&wall) = fan.cones[a]
            .normal_roots
            .iter()
            .find(|r| fan.cones[b].normal_roots.contains(&r.negate()))
        else {
            return false;
        };
        let (lo, hi) = if wall.is_negative() { (eb, ea) } else { (ea, eb) };
        if !covers.contains(&(lo, hi)) {
            return false;
        }
        seen.insert((lo, hi));
    }
    seen == covers
}

/// Boundary walls of a union of regions: normals `w alpha_i` of regions `w`
/// in the union whose neighbour `w s_i` is outside it.
fn boundary_normals(weak: &WeakOrder, members: &[usize], inside: impl Fn(usize) -> bool) -> Vec<SignedRoot> {
    let mut walls = BTreeSet::new();
    for &w in members {
        for i in 0..weak.system().rank() {
            if !inside(weak.right_mul(w, i)) {
                walls.insert(weak.element(w).act(SignedRoot::new(i, false)));
            }
        }
    }
    walls.into_iter().collect()
}

/// Regions on the positive side of every given root.
fn regions_inside(weak: &WeakOrder, roots: &[SignedRoot]) -> Vec<usize> {
    (0..weak.len())
        .filter(|&u| roots.iter().all(|&r| !weak.element(u).act_inverse(r).is_negative()))
        .collect()
}

/// One cone per congruence class, the union of its regions, labelled by the
/// class bottom.
///
/// Convexity is checked exactly: the regions cut out by the boundary walls of
/// the union must be precisely the class.
pub fn cambrian_fan_by_classes(weak: &WeakOrder, congruence: &Congruence) -> Result<Fan> {
    let geometry = Geometry::new(weak.system());
    let mut cones = Vec::with_capacity(congruence.class_count());
    for (k, class) in congruence.classes().iter().enumerate() {
        let walls = boundary_normals(weak, class, |x| congruence.class_of(x) == k);
        if regions_inside(weak, &walls) != *class {
            return Err(Error::NonConvexUnion(k));
        }
        let bottom = congruence.bottoms()[k];
        cones.push(Cone::new(
            &geometry,
            weak.word(bottom).to_string(),
            bottom,
            class.clone(),
            walls,
        ));
    }
    Ok(Fan::assemble(weak, cones))
}

/// One cone per sortable element with inward normals its C-vectors, in the
/// order of `cambrian.sortables`.
///
/// Each cone is checked to be simplicial and to have exactly the facets of the
/// matching class-union cone.
pub fn cambrian_fan_by_cvectors(weak: &WeakOrder, cambrian: &CambrianLattice, c: &CoxeterElement) -> Result<Fan> {
    let system = weak.system();
    let geometry = Geometry::new(system);
    let congruence = &cambrian.congruence;
    let mut cones = Vec::with_capacity(cambrian.len());
    for &v in &cambrian.sortables {
        let label = weak.word(v).to_string();
        let cv = c_vectors(system, weak.element(v), c)?;
        if cv.determinant().abs() < TOLERANCE {
            return Err(Error::MismatchWithClassFan(format!("{label}: C-vectors are dependent")));
        }
        let class = congruence.class_of(v);
        let walls = boundary_normals(weak, &congruence.classes()[class], |x| congruence.class_of(x) == class);
        let mut sorted = cv.roots.clone();
        sorted.sort_unstable();
        if sorted != walls {
            return Err(Error::MismatchWithClassFan(format!("{label}: facet normals differ")));
        }
        let regions = regions_inside(weak, &cv.roots);
        if regions != congruence.classes()[class] {
            return Err(Error::MismatchWithClassFan(format!("{label}: regions differ")));
        }
        let cone = Cone::new(&geometry, label.clone(), v, regions, cv.roots);
        if !cone.is_simplicial(system.rank()) {
            return Err(Error::MismatchWithClassFan(format!("{label}: cone is not simplicial")));
        }
        cones.push(cone);
    }
    Ok(Fan::assemble(weak, cones))
}

/// The adjacency graph of the fan equals the Hasse diagram of `lattice`,
/// whose elements are in the same order as the cones.
pub fn fan_adjacency_matches_cambrian_covers(fan: &Fan, lattice: &HasseLattice) -> bool {
    let adjacent: BTreeSet<(usize, usize)> = fan.adjacencies.iter().copied().collect();
    let covers: BTreeSet<(usize, usize)> = lattice.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    fan.len() == lattice.len() && adjacent == covers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cambrian::{cambrian_lattice, coxeter_element, Orientation};
    use crate::coxeter::CoxeterSystem;
    use crate::lattice::{congruence_from_edges, EdgeSet};

    fn weak(label: &str) -> WeakOrder {
        CoxeterSystem::from_label(label).unwrap().enumerate().unwrap()
    }

    #[test]
    fn coxeter_fans() {
        for (label, order, adj) in [("A1", 2, 1), ("B2", 8, 8), ("A3", 24, 36), ("H3", 120, 180)] {
            let w = weak(label);
            let fan = coxeter_fan(&w);
            assert_eq!(fan.len(), order);
            assert_eq!(fan.adjacencies.len(), adj, "{label}");
            assert!(region_adjacency_matches_weak_order(&w, &fan), "{label}");
        }
    }

    #[test]
    fn identity_cone_is_d() {
        let w = weak("B2");
        let fan = coxeter_fan(&w);
        let d = &fan.cones[0];
        assert_eq!(
            d.normal_roots,
            vec![SignedRoot::new(0, false), SignedRoot::new(1, false)]
        );
        // The sum of the simple roots is interior to D in rank two.
        let g = Geometry::new(w.system());
        let sum: Vec<f64> = g.to_euclidean(&[1.0, 1.0]);
        assert!(d.contains_interior(&sum));
    }

    #[test]
    fn discrete_congruence_gives_coxeter_fan() {
        let w = weak("A3");
        let cong = congruence_from_edges(w.lattice(), &EdgeSet::empty(w.lattice().edge_count())).unwrap();
        let fan = cambrian_fan_by_classes(&w, &cong).unwrap();
        assert_eq!(fan.len(), 24);
        assert_eq!(fan.adjacencies, coxeter_fan(&w).adjacencies);
    }

    #[test]
    fn b2_cambrian_fan() {
        let w = weak("B2");
        let c = CoxeterElement::parse(w.system(), "s1s2").unwrap();
        let camb = cambrian_lattice(&w, &c).unwrap();
        let by_classes = cambrian_fan_by_classes(&w, &camb.congruence).unwrap();
        let by_cvectors = cambrian_fan_by_cvectors(&w, &camb, &c).unwrap();
        assert_eq!(by_classes.len(), 6);
        assert_eq!(by_cvectors.len(), 6);
        let s2 = by_cvectors.cones.iter().find(|c| c.label == "s2").unwrap();
        assert_eq!(
            s2.normal_roots,
            vec![SignedRoot::new(0, false), SignedRoot::new(1, true)]
        );
        assert_eq!(s2.regions.len(), 3);
        assert!(fan_adjacency_matches_cambrian_covers(&by_cvectors, &camb.lattice));
    }

    #[test]
    fn tamari_fan_is_associahedron() {
        let w = weak("A3");
        let c = CoxeterElement::parse(w.system(), "s1s2s3").unwrap();
        let camb = cambrian_lattice(&w, &c).unwrap();
        let fan = cambrian_fan_by_cvectors(&w, &camb, &c).unwrap();
        assert_eq!(fan.len(), 14);
        assert_eq!(fan.adjacencies.len(), 21);
        assert!(fan_adjacency_matches_cambrian_covers(&fan, &camb.lattice));
    }

    #[test]
    fn all_b3_orientations() {
        let w = weak("B3");
        for o in Orientation::all(w.system().matrix()) {
            let c = coxeter_element(w.system(), &o).unwrap();
            let camb = cambrian_lattice(&w, &c).unwrap();
            let fan = cambrian_fan_by_cvectors(&w, &camb, &c).unwrap();
            assert_eq!(fan.len(), 20);
            assert!(fan_adjacency_matches_cambrian_covers(&fan, &camb.lattice));
        }
    }
}
