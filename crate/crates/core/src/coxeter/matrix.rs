use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric table of the orders `m(i, j)` of products `s_i s_j`.
///
/// Generators are indexed from zero internally; displayed names are one-based
/// (`s1`, `s2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let rank = entries.len();
        if rank == 0 {
            return Err(Error::BadMatrix("rank must be at least 1".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::BadMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(Error::BadMatrix(format!("diagonal entry m({0},{0}) = {m}", i + 1)));
                }
                if i != j && m < 2 {
                    return Err(Error::BadMatrix(format!("m({},{}) = {m} < 2", i + 1, j + 1)));
                }
                if entries[j][i] != m {
                    return Err(Error::BadMatrix(format!("not symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// Diagram edges `(i, j)` with `i < j` and `m(i, j) >= 3`.
    pub fn diagram_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.entries[i][j] >= 3 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Block-diagonal assembly; generators of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let rank = self.rank + other.rank;
        let mut entries = vec![vec![2; rank]; rank];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                entries[i][j] = self.entries[i][j];
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                entries[self.rank + i][self.rank + j] = other.entries[i][j];
            }
        }
        CoxeterMatrix { rank, entries }
    }

    fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> CoxeterMatrix {
        let mut entries = vec![vec![2; rank]; rank];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, m) in edges {
            entries[i][j] = m;
            entries[j][i] = m;
        }
        CoxeterMatrix { rank, entries }
    }
}

/// Irreducible finite families of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl Family {
    pub fn rank(&self) -> usize {
        match *self {
            Family::A(n) | Family::B(n) | Family::D(n) | Family::E(n) | Family::H(n) => n,
            Family::F4 => 4,
            Family::I2(_) => 2,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::A(n) => n >= 1,
            Family::B(n) => n >= 2,
            Family::D(n) => n >= 4,
            Family::E(n) => (6..=8).contains(&n),
            Family::F4 => true,
            Family::H(n) => n == 3 || n == 4,
            Family::I2(m) => m >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadLabel(self.to_string()))
        }
    }

    /// Coxeter matrix in the standard diagram numbering.
    ///
    /// `B_n` puts the 4 on `s1 - s2`, `F4` on `s2 - s3`, `H_n` the 5 on
    /// `s1 - s2`. `D_n` attaches `s1` and `s2` to `s3`, followed by the path
    /// `s3 - ... - sn`. `E_n` is the path `s1 - ... - s(n-1)` with `sn`
    /// attached to `s3`.
    pub fn matrix(&self) -> CoxeterMatrix {
        let path = |n: usize, special: Option<(usize, u32)>| -> Vec<(usize, usize, u32)> {
            (0..n.saturating_sub(1))
                .map(|i| {
                    let m = match special {
                        Some((k, m)) if k == i => m,
                        _ => 3,
                    };
                    (i, i + 1, m)
                })
                .collect()
        };
        match *self {
            Family::A(n) => CoxeterMatrix::from_edges(n, &path(n, None)),
            Family::B(n) => CoxeterMatrix::from_edges(n, &path(n, Some((0, 4)))),
            Family::H(n) => CoxeterMatrix::from_edges(n, &path(n, Some((0, 5)))),
            Family::F4 => CoxeterMatrix::from_edges(4, &path(4, Some((1, 4)))),
            Family::I2(m) => CoxeterMatrix::from_edges(2, &[(0, 1, m)]),
            Family::D(n) => {
                let mut edges = vec![(0, 2, 3), (1, 2, 3)];
                edges.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                CoxeterMatrix::from_edges(n, &edges)
            }
            Family::E(n) => {
                let mut edges = path(n - 1, None);
                edges.push((2, n - 1, 3));
                CoxeterMatrix::from_edges(n, &edges)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::A(n) => write!(f, "A{n}"),
            Family::B(n) => write!(f, "B{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E(n) => write!(f, "E{n}"),
            Family::F4 => write!(f, "F4"),
            Family::H(n) => write!(f, "H{n}"),
            Family::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A product of irreducible labels, e.g. `A2xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterLabel {
    pub factors: Vec<Family>,
}

impl CoxeterLabel {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(Family::rank).sum()
    }

    pub fn matrix(&self) -> CoxeterMatrix {
        let mut factors = self.factors.iter();
        let first = factors.next().expect("label has at least one factor").matrix();
        factors.fold(first, |acc, f| acc.direct_sum(&f.matrix()))
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

fn parse_family(token: &str) -> Result<Family> {
    let bad = || Error::BadLabel(token.to_string());
    let upper = token.trim().to_ascii_uppercase();
    if let Some(rest) = upper.strip_prefix("I2") {
        let m = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?
            .trim()
            .parse::<u32>()
            .map_err(|_| bad())?;
        let fam = Family::I2(m);
        fam.validate().map_err(|_| bad())?;
        return Ok(fam);
    }
    let mut chars = upper.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    let fam = match (letter, n) {
        ('A', n) => Family::A(n),
        ('B', n) | ('C', n) => Family::B(n),
        ('D', n) => Family::D(n),
        ('E', n) => Family::E(n),
        ('F', 4) => Family::F4,
        ('G', 2) => Family::I2(6),
        ('H', n) => Family::H(n),
        _ => return Err(bad()),
    };
    fam.validate().map_err(|_| bad())?;
    Ok(fam)
}

impl FromStr for CoxeterLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::BadLabel(s.to_string()));
        }
        // `x` separates factors; it never occurs inside a factor name.
        let factors = s.split(['x', 'X']).map(parse_family).collect::<Result<Vec<_>>>()?;
        Ok(CoxeterLabel { factors })
    }
}
