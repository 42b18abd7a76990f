use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write};

use serde::Serialize;

use super::{Bar, Permutation, PolygonQ};
use crate::error::{Error, Result};
use crate::lattice::HasseLattice;

/// A diagonal `(a, b)` with `a < b`.
pub type Diagonal = (usize, usize);

/// A triangulation of `Q`, stored as its sorted diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    /// Checks that the diagonals are `n` pairwise noncrossing diagonals of `q`.
    pub fn new(q: &PolygonQ, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let set: BTreeSet<Diagonal> = diagonals.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        for &(a, b) in &set {
            if b > q.last() || a == b || q.is_boundary_edge(a, b) {
                return Err(Error::NotADiagonal(a, b));
            }
        }
        let diagonals: Vec<Diagonal> = set.into_iter().collect();
        if diagonals.len() != q.n() {
            return Err(Error::BadPoset(format!(
                "{} diagonals, expected {}",
                diagonals.len(),
                q.n()
            )));
        }
        for (k, &d) in diagonals.iter().enumerate() {
            if let Some(&e) = diagonals[k + 1..].iter().find(|&&e| q.crosses(d, e)) {
                return Err(Error::BadPoset(format!("diagonals {d:?} and {e:?} cross")));
            }
        }
        Ok(Triangulation { diagonals })
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&(d.0.min(d.1), d.0.max(d.1))).is_ok()
    }

    fn has_edge(&self, q: &PolygonQ, a: usize, b: usize) -> bool {
        q.is_boundary_edge(a, b) || self.contains((a, b))
    }

    /// Replaces `d` with the other diagonal of the quadrilateral formed by
    /// its two triangles. Also returns that new diagonal.
    pub fn flip(&self, q: &PolygonQ, d: Diagonal) -> Result<(Triangulation, Diagonal)> {
        let (a, b) = (d.0.min(d.1), d.0.max(d.1));
        if !self.contains((a, b)) {
            return Err(Error::NotADiagonal(a, b));
        }
        let apexes: Vec<usize> = (0..=q.last())
            .filter(|&p| p != a && p != b && self.has_edge(q, a, p) && self.has_edge(q, b, p))
            .collect();
        let [p, r] = apexes[..] else {
            return Err(Error::NotADiagonal(a, b));
        };
        let new = (p.min(r), p.max(r));
        let diagonals = self
            .diagonals
            .iter()
            .map(|&e| if e == (a, b) { new } else { e })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok((Triangulation { diagonals }, new))
    }

    /// True when flipping `d` increases the slope.
    pub fn slope_increases(&self, q: &PolygonQ, d: Diagonal) -> Result<bool> {
        let (_, new) = self.flip(q, d)?;
        Ok(q.compare_slopes(new, d).is_gt())
    }

    pub fn export(&self, q: &PolygonQ) -> TriangulationExport {
        TriangulationExport {
            n: q.n(),
            barring: q.barring().to_string(),
            diagonals: self.diagonals.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_svg(&self, q: &PolygonQ) -> String {
        let n = q.n() as f64;
        let scale = 40.0;
        let hmax = ((n + 2.0) / 2.0).powi(2);
        let (w, h) = ((n + 2.0) * scale + 60.0, 2.0 * hmax * scale / 2.0 + 60.0);
        let to_view = |(x, y): (i64, i64)| (30.0 + x as f64 * scale, h / 2.0 - y as f64 * scale / 2.0);
        let mut out = String::new();
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">"
        )
        .unwrap();
        let cycle = q.ccw_cycle();
        let pts: Vec<String> = cycle
            .iter()
            .map(|&l| {
                let (x, y) = to_view(q.vertex(l));
                format!("{x:.1},{y:.1}")
            })
            .collect();
        writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
            pts.join(" ")
        )
        .unwrap();
        for &(a, b) in &self.diagonals {
            let ((x1, y1), (x2, y2)) = (to_view(q.vertex(a)), to_view(q.vertex(b)));
            writeln!(out, "  <line class=\"diagonal\" x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\"/>").unwrap();
        }
        for l in 0..=q.last() {
            let (x, y) = to_view(q.vertex(l));
            let dy = if l != 0 && l != q.last() && q.barring().bar(l) == Bar::Up {
                -8.0
            } else {
                16.0
            };
            writeln!(
                out,
                "  <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{l}</text>",
                y + dy
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangulationExport {
    pub n: usize,
    pub barring: String,
    pub diagonals: Vec<[usize; 2]>,
}

/// The triangulation `eta(x)`: the union of the paths obtained from the
/// bottom path by reading `x` left to right, removing down labels and
/// inserting up labels, minus the boundary edges.
pub fn eta(x: &Permutation, q: &PolygonQ) -> Triangulation {
    let mut path = q.bottom_path();
    let mut edges: BTreeSet<Diagonal> = path.windows(2).map(|w| (w[0], w[1])).collect();
    for &l in x.entries() {
        match q.barring().bar(l) {
            Bar::Down => {
                let pos = path.binary_search(&l).expect("down label still on the path");
                path.remove(pos);
                edges.insert((path[pos - 1], path[pos]));
            }
            Bar::Up => {
                let pos = path.binary_search(&l).expect_err("up label not yet on the path");
                path.insert(pos, l);
                edges.insert((path[pos - 1], l));
                edges.insert((l, path[pos + 1]));
            }
        }
    }
    let diagonals = edges.into_iter().filter(|&(a, b)| !q.is_boundary_edge(a, b));
    Triangulation::new(q, diagonals).expect("path evolution yields a triangulation")
}

/// Every triangulation of `q`, sorted.
pub fn all_triangulations(q: &PolygonQ) -> Vec<Triangulation> {
    fn recurse(poly: &[usize], q: &PolygonQ, memo: &mut HashMap<Vec<usize>, Vec<Vec<Diagonal>>>) -> Vec<Vec<Diagonal>> {
        if poly.len() < 3 {
            return vec![Vec::new()];
        }
        if let Some(hit) = memo.get(poly) {
            return hit.clone();
        }
        let k = poly.len() - 1;
        let mut out = Vec::new();
        // The edge poly[0]-poly[k] lies in a triangle with apex poly[j].
        for j in 1..k {
            let left = recurse(&poly[..=j], q, memo);
            let right = recurse(&poly[j..], q, memo);
            for l in &left {
                for r in &right {
                    let mut d: Vec<Diagonal> = l.iter().chain(r).copied().collect();
                    for (a, b) in [(poly[0], poly[j]), (poly[j], poly[k])] {
                        if !q.is_boundary_edge(a, b) {
                            d.push((a.min(b), a.max(b)));
                        }
                    }
                    out.push(d);
                }
            }
        }
        memo.insert(poly.to_vec(), out.clone());
        out
    }
    let cycle = q.ccw_cycle();
    let mut memo = HashMap::new();
    let mut all: Vec<Triangulation> = recurse(&cycle, q, &mut memo)
        .into_iter()
        .map(|d| Triangulation::new(q, d).expect("ear decomposition yields triangulations"))
        .collect();
    all.sort();
    all
}

/// Triangulations of `q` ordered by slope-increasing flips.
#[derive(Debug, Clone)]
pub struct FlipLattice {
    pub triangulations: Vec<Triangulation>,
    pub lattice: HasseLattice,
}

impl FlipLattice {
    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.triangulations.binary_search(t).ok()
    }
}

/// Covers are flips, oriented upward when the new diagonal has larger
/// slope. Fails if the result is not a lattice.
pub fn tamari_like_lattice(q: &PolygonQ) -> Result<FlipLattice> {
    let triangulations = all_triangulations(q);
    let mut covers = Vec::new();
    for (k, t) in triangulations.iter().enumerate() {
        for &d in t.diagonals() {
            let (u, new) = t.flip(q, d)?;
            if q.compare_slopes(new, d).is_gt() {
                let target = triangulations.binary_search(&u).expect("flips stay in the enumeration");
                covers.push((k, target));
            }
        }
    }
    let labels = triangulations.iter().map(|t| t.to_string()).collect();
    let lattice = HasseLattice::new(labels, covers)?;
    if !lattice.is_lattice() {
        return Err(Error::BadPoset("flip order is not a lattice".into()));
    }
    Ok(FlipLattice {
        triangulations,
        lattice,
    })
}
