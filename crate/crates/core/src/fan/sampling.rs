use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::geometry::{normalize, Geometry};
use super::Fan;
use crate::coxeter::WeakOrder;

/// `count` uniform unit vectors, each at least the tolerance away from every
/// reflecting hyperplane. Near-boundary draws are discarded and redrawn.
pub fn sample_points(geometry: &Geometry, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..geometry.rank()).map(|_| StandardNormal.sample(&mut rng)).collect();
        let x = normalize(&v);
        if x.iter().all(|c| c.is_finite()) && geometry.is_generic(&x) {
            out.push(x);
        }
    }
    out
}

/// Coverage of sampled points by the cones of one fan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub points: usize,
    /// Points in no cone interior.
    pub uncovered: usize,
    /// Points in more than one cone interior.
    pub overlapping: usize,
}

impl SampleReport {
    pub fn of(fan: &Fan, points: &[Vec<f64>]) -> Self {
        let mut report = SampleReport {
            points: points.len(),
            ..Default::default()
        };
        for x in points {
            match fan.cones_containing(x).len() {
                0 => report.uncovered += 1,
                1 => {}
                _ => report.overlapping += 1,
            }
        }
        report
    }

    pub fn is_partition(&self) -> bool {
        self.uncovered == 0 && self.overlapping == 0
    }
}

/// Agreement between a class-union fan and a normal-defined fan whose cones
/// are listed in the same order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FanComparison {
    pub points: usize,
    /// Points whose class-union cone differs from their normal-defined cones.
    pub disagreements: usize,
    /// Midpoints of same-cone pairs that left the union.
    pub midpoint_failures: usize,
    pub midpoints: usize,
}

impl FanComparison {
    pub fn agrees(&self) -> bool {
        self.disagreements == 0 && self.midpoint_failures == 0
    }
}

/// Membership in a class-union cone is decided by the region containing the
/// point; membership in the other fan by its normals.
pub fn compare_fans(
    weak: &WeakOrder,
    geometry: &Geometry,
    by_classes: &Fan,
    by_normals: &Fan,
    points: &[Vec<f64>],
) -> FanComparison {
    let union_cone = |x: &[f64]| by_classes.region_cone[weak.index_of_word(&geometry.region_word(x))];
    let mut cmp = FanComparison {
        points: points.len(),
        ..Default::default()
    };
    let mut by_cone: Vec<Vec<usize>> = vec![Vec::new(); by_classes.len()];
    for (p, x) in points.iter().enumerate() {
        let k = union_cone(x);
        by_cone[k].push(p);
        if by_normals.cones_containing(x) != [k] {
            cmp.disagreements += 1;
        }
    }
    for (k, members) in by_cone.iter().enumerate() {
        for pair in members.windows(2) {
            let mid: Vec<f64> = points[pair[0]]
                .iter()
                .zip(&points[pair[1]])
                .map(|(a, b)| a + b)
                .collect();
            if !geometry.is_generic(&mid) {
                continue;
            }
            cmp.midpoints += 1;
            if union_cone(&mid) != k {
                cmp.midpoint_failures += 1;
            }
        }
    }
    cmp
}
