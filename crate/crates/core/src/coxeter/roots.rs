use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::CoxeterMatrix;
use crate::error::{Error, Result};

/// Tolerance for identifying root vectors and for sign tests.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Default cap on the number of positive roots discovered during enumeration.
pub const DEFAULT_MAX_ROOTS: usize = 20_000;

/// Root system of the standard geometric representation.
///
/// Roots are stored by their coordinates in the basis of simple roots. The
/// bilinear form on simple roots is `B(a_i, a_j) = -cos(pi / m(i, j))`, so all
/// simple roots have unit norm.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rank: usize,
    form: Vec<Vec<f64>>,
    positive: Vec<Vec<f64>>,
    /// Simple-root coordinates to Euclidean coordinates, when the form is
    /// positive definite.
    embedding: Option<DMatrix<f64>>,
}

struct RootIndex {
    buckets: HashMap<i64, Vec<usize>>,
    weights: Vec<f64>,
}

impl RootIndex {
    fn new(rank: usize) -> Self {
        // Generic weights so that distinct roots rarely share a bucket.
        let weights = (0..rank)
            .map(|k| 1.0 + (k as f64 + 1.0) * 0.618_033_988_749_894_9)
            .collect();
        Self {
            buckets: HashMap::new(),
            weights,
        }
    }

    fn key(&self, v: &[f64]) -> f64 {
        v.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    fn find(&self, roots: &[Vec<f64>], v: &[f64]) -> Option<usize> {
        let k = self.key(v);
        let bucket = (k * 1e6).round() as i64;
        for b in [bucket - 1, bucket, bucket + 1] {
            if let Some(ids) = self.buckets.get(&b) {
                for &id in ids {
                    if distance(&roots[id], v) < ROOT_TOLERANCE {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, v: &[f64], id: usize) {
        let bucket = (self.key(v) * 1e6).round() as i64;
        self.buckets.entry(bucket).or_default().push(id);
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl RootSystem {
    pub fn new(matrix: &CoxeterMatrix, max_roots: usize) -> Result<Self> {
        let n = matrix.rank();
        let form: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1.0
                        } else {
                            -(PI / matrix.m(i, j) as f64).cos()
                        }
                    })
                    .collect()
            })
            .collect();

        // Orbit of the simple roots under the simple reflections.
        let mut roots: Vec<Vec<f64>> = Vec::new();
        let mut index = RootIndex::new(n);
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            index.insert(&e, roots.len());
            roots.push(e);
        }
        let mut cursor = 0;
        while cursor < roots.len() {
            for i in 0..n {
                let image = reflect(&form, i, &roots[cursor]);
                if index.find(&roots, &image).is_none() {
                    if roots.len() >= 2 * max_roots {
                        return Err(Error::InfiniteType { cap: max_roots });
                    }
                    index.insert(&image, roots.len());
                    roots.push(image);
                }
            }
            cursor += 1;
        }

        let mut positive = Vec::new();
        for r in &roots {
            let nonneg = r.iter().all(|&c| c > -ROOT_TOLERANCE);
            let nonpos = r.iter().all(|&c| c < ROOT_TOLERANCE);
            match (nonneg, nonpos) {
                (true, false) => positive.push(r.clone()),
                (false, true) => {}
                _ => return Err(Error::BadMatrix("root with mixed-sign coordinates".into())),
            }
        }
        if positive.len() * 2 != roots.len() {
            return Err(Error::BadMatrix("roots do not come in +/- pairs".into()));
        }
        // Simple roots first, then the rest in discovery order.
        positive.sort_by_key(|r| {
            let is_simple = r.iter().filter(|c| c.abs() > ROOT_TOLERANCE).count() == 1
                && r.iter().any(|c| (c - 1.0).abs() < ROOT_TOLERANCE);
            !is_simple
        });

        let gram = DMatrix::from_fn(n, n, |i, j| form[i][j]);
        let embedding = gram.cholesky().map(|ch| ch.l().transpose());

        Ok(Self {
            rank: n,
            form,
            positive,
            embedding,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &[Vec<f64>] {
        &self.form
    }

    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.positive
    }

    pub fn positive_count(&self) -> usize {
        self.positive.len()
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive.len()
    }

    /// `B(u, v)` for vectors in simple-root coordinates.
    pub fn pairing(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut total = 0.0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                total += u[i] * self.form[i][j] * v[j];
            }
        }
        total
    }

    pub fn reflect(&self, i: usize, v: &[f64]) -> Vec<f64> {
        reflect(&self.form, i, v)
    }

    /// Index of `v` among the positive roots, with `true` when `v` is the
    /// negative of that root.
    pub fn locate(&self, v: &[f64]) -> Option<(usize, bool)> {
        self.positive.iter().enumerate().find_map(|(k, r)| {
            if distance(r, v) < ROOT_TOLERANCE {
                Some((k, false))
            } else if r.iter().zip(v).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt() < ROOT_TOLERANCE {
                Some((k, true))
            } else {
                None
            }
        })
    }

    /// Coordinates of the root with the given signed index.
    pub fn root(&self, index: usize, negative: bool) -> Vec<f64> {
        let r = &self.positive[index];
        if negative {
            r.iter().map(|c| -c).collect()
        } else {
            r.clone()
        }
    }

    /// Generators whose simple roots occur in the root's support.
    pub fn support(&self, index: usize) -> Vec<usize> {
        self.positive[index]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > ROOT_TOLERANCE)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_finite_type(&self) -> bool {
        self.embedding.is_some()
    }

    /// Euclidean coordinates of a vector given in simple-root coordinates.
    ///
    /// The embedding satisfies `euclid(u) . euclid(v) = B(u, v)`. Returns
    /// `None` when the form is not positive definite.
    pub fn euclidean(&self, v: &[f64]) -> Option<Vec<f64>> {
        let emb = self.embedding.as_ref()?;
        let n = self.rank;
        Some((0..n).map(|r| (0..n).map(|c| emb[(r, c)] * v[c]).sum()).collect())
    }
}

fn reflect(form: &[Vec<f64>], i: usize, v: &[f64]) -> Vec<f64> {
    let b: f64 = form[i].iter().zip(v).map(|(g, x)| g * x).sum();
    let mut out = v.to_vec();
    out[i] -= 2.0 * b;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Family;

    fn count(f: Family) -> usize {
        RootSystem::new(&f.matrix(), DEFAULT_MAX_ROOTS)
            .unwrap()
            .positive_count()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(count(Family::A(1)), 1);
        assert_eq!(count(Family::A(2)), 3);
        assert_eq!(count(Family::A(3)), 6);
        assert_eq!(count(Family::B(2)), 4);
        assert_eq!(count(Family::B(3)), 9);
        assert_eq!(count(Family::H(3)), 15);
        assert_eq!(count(Family::D(4)), 12);
        assert_eq!(count(Family::F4), 24);
        assert_eq!(count(Family::E(6)), 36);
        assert_eq!(count(Family::I2(7)), 7);
    }

    #[test]
    fn simple_roots_come_first() {
        let rs = RootSystem::new(&Family::H(3).matrix(), DEFAULT_MAX_ROOTS).unwrap();
        for i in 0..3 {
            assert_eq!(rs.support(i), vec![i]);
        }
    }

    #[test]
    fn affine_type_is_rejected() {
        // Affine A2: triangle with all m = 3.
        let m = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        assert_eq!(RootSystem::new(&m, 500).unwrap_err(), Error::InfiniteType { cap: 500 });
    }

    #[test]
    fn embedding_realizes_form() {
        let rs = RootSystem::new(&Family::B(3).matrix(), DEFAULT_MAX_ROOTS).unwrap();
        for u in rs.positive_roots() {
            for v in rs.positive_roots() {
                let eu = rs.euclidean(u).unwrap();
                let ev = rs.euclidean(v).unwrap();
                let dot: f64 = eu.iter().zip(&ev).map(|(a, b)| a * b).sum();
                assert!((dot - rs.pairing(u, v)).abs() < 1e-12);
            }
        }
    }
}
