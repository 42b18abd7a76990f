//! Permutations, triangulations of barred polygons, and the map between them.

mod patterns;
mod polygon;
mod triangulation;

use std::collections::HashMap;

use serde::Serialize;

pub use patterns::{contains_pattern, find_pattern, is_fiber_maximum_pattern, is_fiber_minimum_pattern, Pattern};
pub use polygon::{Bar, Barring, Permutation, PolygonQ};
pub use triangulation::{
    all_triangulations, eta, tamari_like_lattice, Diagonal, FlipLattice, Triangulation, TriangulationExport,
};

use crate::cambrian::{cambrian_congruence, coxeter_element, orientation_of, CoxeterElement, Orientation};
use crate::coxeter::{CoxeterLabel, CoxeterMatrix, CoxeterSystem, Family, WeakOrder};
use crate::error::Result;
use crate::lattice::{is_isomorphism, is_lattice_homomorphism};

/// The weak order on `S_{n+1}` together with a polygon `Q`, its flip
/// lattice, and `eta` tabulated on every permutation.
#[derive(Debug, Clone)]
pub struct TypeA {
    pub polygon: PolygonQ,
    pub weak: WeakOrder,
    pub permutations: Vec<Permutation>,
    pub flips: FlipLattice,
    /// `eta_index[k]` is the flip-lattice index of `eta` of element `k`.
    pub eta_index: Vec<usize>,
}

impl TypeA {
    pub fn new(polygon: PolygonQ) -> Result<Self> {
        let n = polygon.n();
        let system = CoxeterSystem::build(CoxeterLabel {
            factors: vec![Family::A(n)],
        })?;
        let weak = system.enumerate()?;
        Self::with_weak_order(polygon, weak)
    }

    /// Reuses an enumerated weak order of type `A_n`.
    pub fn with_weak_order(polygon: PolygonQ, weak: WeakOrder) -> Result<Self> {
        let m = polygon.n() + 1;
        let permutations: Vec<Permutation> = (0..weak.len())
            .map(|k| Permutation::from_word(m, weak.word(k).letters()))
            .collect();
        let flips = tamari_like_lattice(&polygon)?;
        let eta_index = permutations
            .iter()
            .map(|x| flips.index_of(&eta(x, &polygon)).expect("eta lands in the enumeration"))
            .collect();
        Ok(TypeA {
            polygon,
            weak,
            permutations,
            flips,
            eta_index,
        })
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        (x.len() == self.polygon.n() + 1).then(|| self.weak.index_of_word(&x.reduced_word()))
    }

    /// Members of each fiber, by flip-lattice index.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.flips.triangulations.len()];
        for (k, &t) in self.eta_index.iter().enumerate() {
            fibers[t].push(k);
        }
        fibers
    }
}

/// Orientation read from the bars: `s_{i-1}` before `s_i` when label `i` is
/// down, after it when up.
pub fn orientation_of_barring(matrix: &CoxeterMatrix, barring: &Barring) -> Result<Orientation> {
    let arrows = (2..=barring.n()).map(|i| match barring.bar(i) {
        Bar::Down => (i - 2, i - 1),
        Bar::Up => (i - 1, i - 2),
    });
    Orientation::new(matrix, arrows)
}

/// The `(n+1)`-cycle sending each of `1..=n+1` to the next one in
/// counter-clockwise order around `Q`.
pub fn polygon_cycle(q: &PolygonQ) -> Permutation {
    let cycle: Vec<usize> = q.ccw_cycle().into_iter().filter(|&l| l != 0 && l != q.last()).collect();
    let mut one_line = vec![0; cycle.len()];
    for (k, &v) in cycle.iter().enumerate() {
        one_line[v - 1] = cycle[(k + 1) % cycle.len()];
    }
    Permutation::new(one_line).expect("a cycle is a permutation")
}

/// The counter-clockwise cycle as a Coxeter element of `A_n`, written with
/// the linear extension that prefers smaller indices.
pub fn coxeter_element_of_polygon(system: &CoxeterSystem, q: &PolygonQ) -> Result<CoxeterElement> {
    let word = crate::coxeter::Word(polygon_cycle(q).reduced_word());
    let c = CoxeterElement::from_word(system, word)?;
    coxeter_element(system, &orientation_of(system, &c))
}

#[derive(Debug, Clone, Serialize)]
pub struct Fiber {
    pub triangulation: String,
    pub size: usize,
    pub min: String,
    pub max: String,
}

/// Fiber structure of `eta` and the pattern characterizations of fiber
/// extremes.
#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub barring: String,
    pub fibers: Vec<Fiber>,
    /// Every fiber is a weak-order interval.
    pub intervals: bool,
    /// Minima are exactly the avoiders of `31_2` and `^231`.
    pub minima_match: bool,
    /// Maxima are exactly the avoiders of `13_2` and `^213`.
    pub maxima_match: bool,
    /// First permutation where a characterization fails.
    pub witness: Option<String>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.intervals && self.minima_match && self.maxima_match
    }
}

/// Minimum and maximum of each fiber, if the fiber is an interval.
pub fn fiber_bounds(ctx: &TypeA) -> Vec<Option<(usize, usize)>> {
    let lattice = ctx.weak.lattice();
    let (down, up) = (lattice.down_sets(), lattice.up_sets());
    ctx.fibers()
        .iter()
        .map(|fiber| {
            let min = *fiber.iter().find(|&&x| fiber.iter().all(|&y| lattice.leq(x, y)))?;
            let max = *fiber.iter().find(|&&x| fiber.iter().all(|&y| lattice.leq(y, x)))?;
            let mut interval = up[min].clone();
            interval.intersect_with(&down[max]);
            let exact = interval.count_ones(..) == fiber.len() && fiber.iter().all(|&x| interval.contains(x));
            exact.then_some((min, max))
        })
        .collect()
}

pub fn fiber_extremes(ctx: &TypeA) -> FiberReport {
    let barring = ctx.polygon.barring();
    let bounds = fiber_bounds(ctx);
    let fibers = ctx.fibers();
    let intervals = bounds.iter().all(Option::is_some);
    let mut is_min = vec![false; ctx.weak.len()];
    let mut is_max = vec![false; ctx.weak.len()];
    for &(lo, hi) in bounds.iter().flatten() {
        is_min[lo] = true;
        is_max[hi] = true;
    }
    let mut witness = None;
    let mut minima_match = true;
    let mut maxima_match = true;
    for (k, x) in ctx.permutations.iter().enumerate() {
        if is_min[k] != is_fiber_minimum_pattern(x, barring) {
            minima_match = false;
            witness.get_or_insert_with(|| format!("{x}: fiber minimum = {}", is_min[k]));
        }
        if is_max[k] != is_fiber_maximum_pattern(x, barring) {
            maxima_match = false;
            witness.get_or_insert_with(|| format!("{x}: fiber maximum = {}", is_max[k]));
        }
    }
    let show = |k: usize| ctx.permutations[k].to_string();
    FiberReport {
        n: ctx.polygon.n(),
        barring: barring.to_string(),
        fibers: fibers
            .iter()
            .zip(&bounds)
            .enumerate()
            .map(|(t, (members, b))| Fiber {
                triangulation: ctx.flips.triangulations[t].to_string(),
                size: members.len(),
                min: b.map(|(lo, _)| show(lo)).unwrap_or_default(),
                max: b.map(|(_, hi)| show(hi)).unwrap_or_default(),
            })
            .collect(),
        intervals,
        minima_match,
        maxima_match,
        witness,
    }
}

/// How `eta` relates to the Cambrian congruence of the polygon's Coxeter
/// element.
#[derive(Debug, Clone, Serialize)]
pub struct EtaReport {
    pub coxeter_element: String,
    /// Fibers coincide with the congruence classes.
    pub fibers_are_classes: bool,
    /// `eta` preserves meets and joins.
    pub homomorphism: bool,
    /// Fiber minima form a sublattice of the weak order.
    pub minima_sublattice: bool,
    /// `eta` restricted to fiber minima is an isomorphism onto the flip
    /// lattice.
    pub restriction_isomorphism: bool,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.fibers_are_classes && self.homomorphism && self.minima_sublattice && self.restriction_isomorphism
    }
}

pub fn verify_eta_is_quotient_map(ctx: &TypeA) -> Result<EtaReport> {
    let system = ctx.weak.system();
    let c = coxeter_element_of_polygon(system, &ctx.polygon)?;
    let congruence = cambrian_congruence(&ctx.weak, &c)?;
    let mut class_to_tri: HashMap<usize, usize> = HashMap::new();
    let mut fibers_are_classes = congruence.class_count() == ctx.flips.triangulations.len();
    for (k, &t) in ctx.eta_index.iter().enumerate() {
        if *class_to_tri.entry(congruence.class_of(k)).or_insert(t) != t {
            fibers_are_classes = false;
        }
    }
    let lattice = ctx.weak.lattice();
    let homomorphism = is_lattice_homomorphism(&ctx.eta_index, lattice, &ctx.flips.lattice);

    let mut minima: Vec<usize> = fiber_bounds(ctx).iter().flatten().map(|&(lo, _)| lo).collect();
    minima.sort_unstable();
    let is_min = |x: usize| minima.binary_search(&x).is_ok();
    let mut minima_sublattice = true;
    'outer: for (i, &a) in minima.iter().enumerate() {
        for &b in &minima[i + 1..] {
            let (m, j) = (lattice.meet(a, b)?, lattice.join(a, b)?);
            if !is_min(m) || !is_min(j) {
                minima_sublattice = false;
                break 'outer;
            }
        }
    }
    let sub = lattice.induced_subposet(&minima)?;
    let map: Vec<usize> = minima.iter().map(|&x| ctx.eta_index[x]).collect();
    let restriction_isomorphism = is_isomorphism(&map, &sub, &ctx.flips.lattice);
    Ok(EtaReport {
        coxeter_element: c.word().to_string(),
        fibers_are_classes,
        homomorphism,
        minima_sublattice,
        restriction_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> CoxeterSystem {
        CoxeterSystem::from_label(&format!("A{n}")).unwrap()
    }

    #[test]
    fn polygon_dictionary() {
        let a3 = a(3);
        let tamari = PolygonQ::new(Barring::tamari(3));
        assert_eq!(
            coxeter_element_of_polygon(&a3, &tamari).unwrap().word().to_string(),
            "s1s2s3"
        );
        let up = PolygonQ::new(Barring::all_up(3));
        assert_eq!(
            coxeter_element_of_polygon(&a3, &up).unwrap().word().to_string(),
            "s3s2s1"
        );
        let mixed = PolygonQ::new("ddud".parse().unwrap());
        assert_eq!(polygon_cycle(&mixed).to_string(), "2413");
        assert_eq!(
            coxeter_element_of_polygon(&a3, &mixed).unwrap().word().to_string(),
            "s1s3s2"
        );
        for b in ["dd", "du", "ud", "uu"] {
            let q = PolygonQ::new(b.parse().unwrap());
            assert_eq!(coxeter_element_of_polygon(&a(1), &q).unwrap().word().to_string(), "s1");
        }
    }

    #[test]
    fn dictionary_matches_bars() {
        for n in 1..=5 {
            let sys = a(n);
            for b in Barring::all(n) {
                let q = PolygonQ::new(b.clone());
                let c = coxeter_element_of_polygon(&sys, &q).unwrap();
                assert_eq!(
                    orientation_of(&sys, &c),
                    orientation_of_barring(sys.matrix(), &b).unwrap(),
                    "{b}"
                );
            }
        }
    }

    #[test]
    fn s4_tamari() {
        let ctx = TypeA::new(PolygonQ::new(Barring::tamari(3))).unwrap();
        let report = fiber_extremes(&ctx);
        assert!(report.passed(), "{:?}", report.witness);
        assert_eq!(report.fibers.len(), 14);
        let eta_report = verify_eta_is_quotient_map(&ctx).unwrap();
        assert!(eta_report.passed(), "{eta_report:?}");
        let x: Permutation = "4213".parse().unwrap();
        let k = ctx.index_of(&x).unwrap();
        let bounds = fiber_bounds(&ctx);
        let (lo, hi) = bounds[ctx.eta_index[k]].unwrap();
        assert_ne!(lo, k);
        assert_eq!(hi, k);
    }

    #[test]
    fn n1_fibers_are_singletons() {
        for b in Barring::all(1) {
            let ctx = TypeA::new(PolygonQ::new(b)).unwrap();
            assert!(ctx.fibers().iter().all(|f| f.len() == 1));
            assert!(verify_eta_is_quotient_map(&ctx).unwrap().passed());
        }
    }

    #[test]
    fn every_barring_of_s4() {
        for b in Barring::all(3) {
            let ctx = TypeA::new(PolygonQ::new(b.clone())).unwrap();
            assert!(fiber_extremes(&ctx).passed(), "{b}");
            assert!(verify_eta_is_quotient_map(&ctx).unwrap().passed(), "{b}");
        }
    }
}
