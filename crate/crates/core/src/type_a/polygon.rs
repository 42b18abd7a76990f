use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Whether a vertex sits above or below the line through `0` and `n+2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Bar {
    Up,
    Down,
}

/// A bar for each of the labels `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Barring(Vec<Bar>);

impl Barring {
    pub fn new(bars: Vec<Bar>) -> Result<Self> {
        if bars.len() < 2 {
            return Err(Error::BadBarring("need at least two labels".into()));
        }
        Ok(Barring(bars))
    }

    /// All labels down.
    pub fn tamari(n: usize) -> Self {
        Barring(vec![Bar::Down; n + 1])
    }

    pub fn all_up(n: usize) -> Self {
        Barring(vec![Bar::Up; n + 1])
    }

    /// All `2^(n+1)` barrings, in binary order with `d` before `u`.
    pub fn all(n: usize) -> Vec<Barring> {
        (0u32..1 << (n + 1))
            .map(|mask| {
                Barring(
                    (0..=n)
                        .map(|k| if mask >> (n - k) & 1 == 1 { Bar::Up } else { Bar::Down })
                        .collect(),
                )
            })
            .collect()
    }

    /// `n` such that the labels are `1..=n+1`.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Bar of label `l`, for `1 <= l <= n+1`.
    pub fn bar(&self, l: usize) -> Bar {
        self.0[l - 1]
    }

    pub fn is_tamari(&self) -> bool {
        self.0.iter().all(|&b| b == Bar::Down)
    }
}

impl FromStr for Barring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bars = s
            .trim()
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'u' => Ok(Bar::Up),
                'd' => Ok(Bar::Down),
                _ => Err(Error::BadBarring(format!("`{s}` must use only u and d"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Barring::new(bars)
    }
}

impl fmt::Display for Barring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b == Bar::Up { "u" } else { "d" })?;
        }
        Ok(())
    }
}

impl Serialize for Barring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The convex `(n+3)`-gon with vertex `i` at `(i, +-i(n+2-i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonQ {
    barring: Barring,
}

impl PolygonQ {
    pub fn new(barring: Barring) -> Self {
        PolygonQ { barring }
    }

    pub fn n(&self) -> usize {
        self.barring.n()
    }

    pub fn barring(&self) -> &Barring {
        &self.barring
    }

    /// Label of the rightmost vertex.
    pub fn last(&self) -> usize {
        self.n() + 2
    }

    pub fn vertex(&self, l: usize) -> (i64, i64) {
        let n = self.n();
        let x = l as i64;
        if l == 0 || l == n + 2 {
            return (x, 0);
        }
        let h = x * (n as i64 + 2 - x);
        match self.barring.bar(l) {
            Bar::Up => (x, h),
            Bar::Down => (x, -h),
        }
    }

    /// `0`, the down labels, `n+2`.
    pub fn bottom_path(&self) -> Vec<usize> {
        self.path_with(Bar::Down)
    }

    /// `0`, the up labels, `n+2`.
    pub fn top_path(&self) -> Vec<usize> {
        self.path_with(Bar::Up)
    }

    fn path_with(&self, bar: Bar) -> Vec<usize> {
        let mut p = vec![0];
        p.extend((1..=self.n() + 1).filter(|&l| self.barring.bar(l) == bar));
        p.push(self.last());
        p
    }

    /// Vertices in counter-clockwise order starting at `0`.
    pub fn ccw_cycle(&self) -> Vec<usize> {
        let mut cycle = self.bottom_path();
        let top = self.top_path();
        cycle.extend(top[1..top.len() - 1].iter().rev());
        cycle
    }

    pub fn is_boundary_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        [self.bottom_path(), self.top_path()]
            .iter()
            .any(|p| p.windows(2).any(|w| w[0] == a && w[1] == b))
    }

    /// Exact comparison of the slopes of `a-b` and `c-d`.
    pub fn compare_slopes(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> std::cmp::Ordering {
        let (p, q) = (self.vertex(a.min(b)), self.vertex(a.max(b)));
        let (r, s) = (self.vertex(c.min(d)), self.vertex(c.max(d)));
        // Run is positive because x is increasing in the label.
        let lhs = (q.1 - p.1) * (s.0 - r.0);
        let rhs = (s.1 - r.1) * (q.0 - p.0);
        lhs.cmp(&rhs)
    }

    /// True when the open segments `a-b` and `c-d` cross.
    pub fn crosses(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let orient = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
            ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum()
        };
        let (p1, p2, p3, p4) = (self.vertex(a), self.vertex(b), self.vertex(c), self.vertex(d));
        orient(p1, p2, p3) * orient(p1, p2, p4) < 0 && orient(p3, p4, p1) * orient(p3, p4, p2) < 0
    }

    pub fn is_convex(&self) -> bool {
        let cyc = self.ccw_cycle();
        let k = cyc.len();
        (0..k).all(|i| {
            let (p, q, r) = (
                self.vertex(cyc[i]),
                self.vertex(cyc[(i + 1) % k]),
                self.vertex(cyc[(i + 2) % k]),
            );
            (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0) > 0
        })
    }
}

/// A permutation of `1..=m` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let m = entries.len();
        let mut seen = vec![false; m + 1];
        for &v in &entries {
            if v == 0 || v > m || std::mem::replace(&mut seen[v], true) {
                return Err(Error::BadPermutation(format!(
                    "{entries:?} is not a permutation of 1..{m}"
                )));
            }
        }
        Ok(Permutation(entries))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Right multiplication by `s_i`: swap positions `i` and `i+1`
    /// (zero-based generator `i` swaps entries `i` and `i+1`).
    pub fn swap_positions(&mut self, i: usize) {
        self.0.swap(i, i + 1);
    }

    /// Product of the generators of a word, `s_{a_1} ... s_{a_k}`.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut p = Permutation::identity(m);
        for &i in word {
            p.swap_positions(i);
        }
        p
    }

    /// A reduced word, found by removing right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p.0[i] > p.0[i + 1]) {
            p.swap_positions(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Number of pairs out of order.
    pub fn inversions(&self) -> usize {
        let m = self.len();
        (0..m)
            .map(|i| (i + 1..m).filter(|&j| self.0[i] > self.0[j]).count())
            .sum()
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digits (`4213`) or a separated list (`10,2,1,...`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Option<Vec<usize>> = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        Permutation::new(entries.ok_or_else(|| Error::BadPermutation(format!("cannot parse `{s}`")))?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() >= 10 { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barring_syntax() {
        let b: Barring = "ddud".parse().unwrap();
        assert_eq!(b.n(), 3);
        assert_eq!(b.bar(3), Bar::Up);
        assert_eq!(b.to_string(), "ddud");
        assert!("dxd".parse::<Barring>().is_err());
        assert!("d".parse::<Barring>().is_err());
        assert_eq!(Barring::all(2).len(), 8);
        assert!(Barring::all(2)[0].is_tamari());
    }

    #[test]
    fn polygons_are_convex() {
        for n in 1..=5 {
            for b in Barring::all(n) {
                let q = PolygonQ::new(b);
                assert!(q.is_convex(), "{}", q.barring());
                assert_eq!(q.ccw_cycle().len(), n + 3);
            }
        }
    }

    #[test]
    fn hexagon_with_one_top_vertex() {
        let q = PolygonQ::new("ddud".parse().unwrap());
        assert_eq!(q.vertex(3), (3, 6));
        assert_eq!(q.vertex(2), (2, -6));
        assert_eq!(q.ccw_cycle(), vec![0, 1, 2, 4, 5, 3]);
        assert!(q.is_boundary_edge(2, 4));
        assert!(q.is_boundary_edge(3, 5));
        assert!(!q.is_boundary_edge(2, 3));
    }

    #[test]
    fn permutation_words() {
        let p: Permutation = "2341".parse().unwrap();
        assert_eq!(p.reduced_word(), vec![0, 1, 2]);
        assert_eq!(Permutation::from_word(4, &[0, 1, 2]), p);
        let q: Permutation = "4213".parse().unwrap();
        assert_eq!(Permutation::from_word(4, &q.reduced_word()), q);
        assert_eq!(q.reduced_word().len(), q.inversions());
        assert!("4113".parse::<Permutation>().is_err());
        assert!("10,2,3,4,5,6,7,8,9,1".parse::<Permutation>().is_ok());
    }
}
