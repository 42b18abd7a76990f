use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::HasseLattice;
use crate::error::{Error, Result};

/// An interval whose Hasse diagram is a single cycle.
///
/// `chains[0]` and `chains[1]` list the edge indices of the two maximal
/// chains from `bottom` to `top`, bottom edge first. Both have the same
/// length (half the number of sides).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonalInterval {
    pub bottom: usize,
    pub top: usize,
    pub chains: [Vec<usize>; 2],
}

impl PolygonalInterval {
    pub fn sides(&self) -> usize {
        self.chains[0].len() + self.chains[1].len()
    }

    pub fn bottom_edges(&self) -> [usize; 2] {
        [self.chains[0][0], self.chains[1][0]]
    }

    pub fn top_edges(&self) -> [usize; 2] {
        [*self.chains[0].last().unwrap(), *self.chains[1].last().unwrap()]
    }

    pub fn side_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.chains.iter().flat_map(|c| {
            let k = c.len();
            c[1..k - 1].iter().copied()
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.chains.iter().flatten().copied()
    }

    /// Image of an edge under the half-turn swapping the two chains.
    pub fn opposite(&self, edge: usize) -> Option<usize> {
        let k = self.chains[0].len();
        for (side, chain) in self.chains.iter().enumerate() {
            if let Some(pos) = chain.iter().position(|&e| e == edge) {
                return Some(self.chains[1 - side][k - 1 - pos]);
            }
        }
        None
    }

    pub fn is_bottom_or_top(&self, edge: usize) -> bool {
        self.bottom_edges().contains(&edge) || self.top_edges().contains(&edge)
    }
}

/// All intervals `[u, us ∨ ut]` over pairs of distinct upper covers of `u`.
///
/// Each interval must be a cycle; otherwise `NotPolygonal` is returned.
pub fn polygonal_intervals(lattice: &HasseLattice) -> Result<Vec<PolygonalInterval>> {
    let mut out = Vec::new();
    for u in 0..lattice.len() {
        let ups = lattice.upper_covers(u);
        for a in 0..ups.len() {
            for b in a + 1..ups.len() {
                let top = lattice.join(ups[a].0, ups[b].0)?;
                out.push(trace_polygon(lattice, u, top, ups[a], ups[b])?);
            }
        }
    }
    Ok(out)
}

fn trace_polygon(
    lattice: &HasseLattice,
    bottom: usize,
    top: usize,
    first: (usize, usize),
    second: (usize, usize),
) -> Result<PolygonalInterval> {
    let fail = || Error::NotPolygonal { bottom, top };
    let mut interval: FixedBitSet = lattice.up_sets()[bottom].clone();
    interval.intersect_with(&lattice.down_sets()[top]);
    let size = interval.count_ones(..);
    if size < 4 || !size.is_multiple_of(2) {
        return Err(fail());
    }
    // Every element of a cycle has exactly two neighbours inside it.
    for x in interval.ones() {
        let degree = lattice
            .upper_covers(x)
            .iter()
            .chain(lattice.lower_covers(x))
            .filter(|(y, _)| interval.contains(*y))
            .count();
        if degree != 2 {
            return Err(fail());
        }
    }
    let walk = |(start, edge): (usize, usize)| -> Result<Vec<usize>> {
        let mut chain = vec![edge];
        let mut cur = start;
        while cur != top {
            let next = lattice
                .upper_covers(cur)
                .iter()
                .find(|(y, _)| interval.contains(*y))
                .ok_or_else(fail)?;
            chain.push(next.1);
            cur = next.0;
        }
        Ok(chain)
    };
    let chains = [walk(first)?, walk(second)?];
    // Connected: the two chains cover the whole interval.
    if chains[0].len() + chains[1].len() != size || chains[0].len() != chains[1].len() {
        return Err(fail());
    }
    Ok(PolygonalInterval { bottom, top, chains })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hexagon 0 < 1 < 3 < 5, 0 < 2 < 4 < 5 (weak order of S_3 shape).
    pub(crate) fn hexagon() -> HasseLattice {
        let labels = (0..6).map(|i| i.to_string()).collect();
        HasseLattice::new(labels, vec![(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn hexagon_has_one_polygon() {
        let l = hexagon();
        let polys = polygonal_intervals(&l).unwrap();
        assert_eq!(polys.len(), 1);
        let p = &polys[0];
        assert_eq!(p.sides(), 6);
        assert_eq!(p.bottom_edges(), [0, 1]);
        assert_eq!(p.top_edges(), [4, 5]);
        assert_eq!(p.side_edges().collect::<Vec<_>>(), vec![2, 3]);
        // Half-turn: bottom-left <-> top-right, left side <-> right side.
        assert_eq!(p.opposite(0), Some(5));
        assert_eq!(p.opposite(1), Some(4));
        assert_eq!(p.opposite(2), Some(3));
    }

    #[test]
    fn rejects_non_cycles() {
        // 0 < {1, 2, 3} < 4: the interval [0, 4] has three chains.
        let labels = (0..5).map(|i| i.to_string()).collect();
        let l = HasseLattice::new(labels, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(polygonal_intervals(&l), Err(Error::NotPolygonal { .. })));
    }
}
