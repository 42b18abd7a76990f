use nalgebra::DMatrix;

use crate::coxeter::{CoxeterSystem, SignedRoot};

/// Tolerance for every sign test on inner products.
pub const TOLERANCE: f64 = 1e-9;

/// Euclidean model of the reflection representation.
///
/// Vectors in simple-root coordinates are mapped by an embedding `E` with
/// `E^T E` equal to the Gram matrix, so the dot product of images is the
/// bilinear form.
#[derive(Debug, Clone)]
pub struct Geometry {
    rank: usize,
    embedding: DMatrix<f64>,
    inverse: DMatrix<f64>,
    simple: Vec<Vec<f64>>,
    positive: Vec<Vec<f64>>,
}

impl Geometry {
    /// Panics if the system is not finite, which cannot happen for a built
    /// `CoxeterSystem`.
    pub fn new(system: &CoxeterSystem) -> Self {
        let n = system.rank();
        let roots = system.roots();
        let mut embedding = DMatrix::zeros(n, n);
        for c in 0..n {
            let mut e = vec![0.0; n];
            e[c] = 1.0;
            let col = roots.euclidean(&e).expect("finite systems have an embedding");
            for r in 0..n {
                embedding[(r, c)] = col[r];
            }
        }
        let inverse = embedding.clone().try_inverse().expect("embedding is nonsingular");
        let mut g = Geometry {
            rank: n,
            embedding,
            inverse,
            simple: Vec::new(),
            positive: Vec::new(),
        };
        g.positive = roots.positive_roots().iter().map(|r| g.to_euclidean(r)).collect();
        g.simple = g.positive[..n].to_vec();
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn to_euclidean(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| self.embedding[(r, c)] * v[c]).sum())
            .collect()
    }

    pub fn to_simple_coordinates(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| self.inverse[(r, c)] * x[c]).sum())
            .collect()
    }

    pub fn root(&self, root: SignedRoot) -> Vec<f64> {
        let r = &self.positive[root.index()];
        if root.is_negative() {
            r.iter().map(|c| -c).collect()
        } else {
            r.clone()
        }
    }

    pub fn simple_roots(&self) -> &[Vec<f64>] {
        &self.simple
    }

    /// Point with `B(rho, alpha_i) = 1` for every `i`, interior to `D`.
    pub fn rho(&self) -> Vec<f64> {
        let n = self.rank;
        let a = DMatrix::from_fn(n, n, |r, c| self.simple[r][c]);
        let rhs = DMatrix::from_element(n, 1, 1.0);
        let sol = a.lu().solve(&rhs).expect("simple roots are independent");
        sol.iter().copied().collect()
    }

    /// False when `x` is within tolerance of a reflecting hyperplane.
    pub fn is_generic(&self, x: &[f64]) -> bool {
        self.positive.iter().all(|r| dot(r, x).abs() > TOLERANCE)
    }

    /// Word `s_{i1} .. s_{ik}` of the region containing `x`, found by
    /// reflecting `x` into `D`.
    pub fn region_word(&self, x: &[f64]) -> Vec<usize> {
        let mut y = x.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| dot(&self.simple[i], &y) < 0.0) {
            let b = 2.0 * dot(&self.simple[i], &y);
            for (yk, ak) in y.iter_mut().zip(&self.simple[i]) {
                *yk -= b * ak;
            }
            word.push(i);
        }
        word
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn normalize(v: &[f64]) -> Vec<f64> {
    let len = dot(v, v).sqrt();
    v.iter().map(|x| x / len).collect()
}

/// Extreme rays of the cone `{x : <n, x> >= 0 for all normals n}`, as unit
/// vectors. Assumes the cone is pointed and full-dimensional.
pub fn extreme_rays(normals: &[Vec<f64>], rank: usize) -> Vec<Vec<f64>> {
    let mut rays: Vec<Vec<f64>> = Vec::new();
    let mut subset = Vec::with_capacity(rank);
    choose(normals.len(), rank.saturating_sub(1), 0, &mut subset, &mut |s| {
        let Some(r) = orthogonal_line(s.iter().map(|&k| normals[k].as_slice()), rank) else {
            return;
        };
        let r = if normals.iter().all(|n| dot(n, &r) > -TOLERANCE) {
            r
        } else if normals.iter().all(|n| dot(n, &r) < TOLERANCE) {
            r.iter().map(|c| -c).collect()
        } else {
            return;
        };
        if !rays.iter().any(|q| distance(q, &r) < 1e-7) {
            rays.push(r);
        }
    });
    rays
}

fn choose(n: usize, k: usize, start: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if current.len() == k {
        f(current);
        return;
    }
    for i in start..n {
        current.push(i);
        choose(n, k, i + 1, current, f);
        current.pop();
    }
}

/// Unit vector orthogonal to `rank - 1` vectors by cofactor expansion, or
/// `None` if they are dependent.
fn orthogonal_line<'a>(vectors: impl Iterator<Item = &'a [f64]>, rank: usize) -> Option<Vec<f64>> {
    let rows: Vec<&[f64]> = vectors.collect();
    let k = rows.len();
    let r: Vec<f64> = (0..rank)
        .map(|col| {
            let minor = DMatrix::from_fn(k, k, |i, j| rows[i][if j < col { j } else { j + 1 }]);
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            sign * minor.determinant()
        })
        .collect();
    let len = dot(&r, &r).sqrt();
    (len > 1e-9).then(|| r.iter().map(|c| c / len).collect())
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_realizes_form() {
        let sys = CoxeterSystem::from_label("B3").unwrap();
        let g = Geometry::new(&sys);
        let form = sys.roots().form();
        for i in 0..3 {
            for j in 0..3 {
                assert!((dot(&g.simple_roots()[i], &g.simple_roots()[j]) - form[i][j]).abs() < 1e-12);
            }
        }
        let x = vec![0.3, -1.2, 2.0];
        let back = g.to_simple_coordinates(&g.to_euclidean(&x));
        assert!(distance(&x, &back) < 1e-12);
    }

    #[test]
    fn rho_is_interior_to_d() {
        for label in ["A3", "B3", "H3", "D4"] {
            let sys = CoxeterSystem::from_label(label).unwrap();
            let g = Geometry::new(&sys);
            let rho = g.rho();
            for a in g.simple_roots() {
                assert!((dot(a, &rho) - 1.0).abs() < 1e-9);
            }
            assert!(g.region_word(&rho).is_empty());
        }
    }

    #[test]
    fn rays_of_orthant() {
        let normals = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let mut rays = extreme_rays(&normals, 3);
        rays.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(rays.len(), 3);
        for r in &rays {
            assert!(r.iter().all(|&c| c > -1e-12));
        }
        // A redundant normal does not add rays.
        let mut more = normals.clone();
        more.push(vec![1.0, 1.0, 0.0]);
        assert_eq!(extreme_rays(&more, 3).len(), 3);
        // Rank one: the single ray of a half-line.
        assert_eq!(extreme_rays(&[vec![-2.0]], 1), vec![vec![-1.0]]);
    }
}
