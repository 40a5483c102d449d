//! Grid decomposition of `Z^n` on which slice cohomology is constant.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::BooleanComplex;
use crate::grading::{Interval, LatticeBox, PointSet};

/// Shift of a multiplication map in one coordinate: a fixed exponent, or
/// "arbitrarily large" for uniform powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Exact(i64),
    Stable,
}

/// One grid cell: interval indices per coordinate, its box, and
/// `dim H^i` for every `i` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub index: Vec<usize>,
    pub bounds: LatticeBox,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CellDecomposition {
    complex: BooleanComplex,
    intervals: Vec<Vec<Interval>>,
    thresholds: Vec<Vec<i64>>,
    dims: Vec<Vec<usize>>,
}

impl CellDecomposition {
    pub fn build(complex: &BooleanComplex) -> Self {
        let thresholds = complex.thresholds();
        let intervals: Vec<Vec<Interval>> = thresholds.iter().map(|t| intervals_from(t)).collect();
        let mut dec = CellDecomposition { complex: complex.clone(), intervals, thresholds, dims: Vec::new() };
        dec.dims = (0..dec.cell_count()).map(|k| complex.slice_dims(&dec.representative(&dec.tuple_of(k)))).collect();
        dec
    }

    pub fn complex(&self) -> &BooleanComplex {
        &self.complex
    }

    pub fn intervals(&self, j: usize) -> &[Interval] {
        &self.intervals[j]
    }

    pub fn cell_count(&self) -> usize {
        self.intervals.iter().map(Vec::len).product()
    }

    fn index_of(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.intervals).fold(0, |acc, (&t, iv)| acc * iv.len() + t)
    }

    fn tuple_of(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.intervals.len()];
        for j in (0..self.intervals.len()).rev() {
            let len = self.intervals[j].len();
            out[j] = k % len;
            k /= len;
        }
        out
    }

    /// A point of the cell: its lower corner, or one below the first
    /// threshold in coordinates whose interval is unbounded below.
    pub fn representative(&self, tuple: &[usize]) -> Vec<i64> {
        tuple
            .iter()
            .enumerate()
            .map(|(j, &t)| match self.intervals[j][t].lo {
                Some(l) => l,
                None => self.intervals[j][t].hi.unwrap_or(0),
            })
            .collect()
    }

    pub fn cell_box(&self, tuple: &[usize]) -> LatticeBox {
        LatticeBox(tuple.iter().enumerate().map(|(j, &t)| self.intervals[j][t]).collect())
    }

    pub fn dims_at(&self, tuple: &[usize]) -> &[usize] {
        &self.dims[self.index_of(tuple)]
    }

    pub fn locate(&self, a: &[i64]) -> Vec<usize> {
        a.iter()
            .enumerate()
            .map(|(j, &v)| self.thresholds[j].iter().take_while(|&&c| c <= v).count())
            .collect()
    }

    pub fn dims_at_point(&self, a: &[i64]) -> &[usize] {
        self.dims_at(&self.locate(a))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count()).map(|k| {
            let index = self.tuple_of(k);
            Cell { bounds: self.cell_box(&index), dims: self.dims[k].clone(), index }
        })
    }

    /// Index tuples of cells with `H^i ≠ 0`.
    pub fn nonzero_cells(&self, i: usize) -> Vec<Vec<usize>> {
        (0..self.cell_count()).filter(|&k| self.dims[k].get(i).copied().unwrap_or(0) > 0).map(|k| self.tuple_of(k)).collect()
    }

    /// The support of `H^i` with dimensions, adjacent equal cells merged.
    pub fn region(&self, i: usize) -> RegionSet {
        let cells = self
            .nonzero_cells(i)
            .into_iter()
            .map(|t| RegionCell { cell: self.cell_box(&t), dim: self.dims_at(&t)[i] })
            .collect();
        RegionSet::merged(self.intervals.len(), cells)
    }

    /// `max_j (c_k − c_1 + 1)`: any shift at least this large in a
    /// coordinate moves every point past the last threshold, except points
    /// of the bottom interval.
    pub fn max_spread(&self) -> i64 {
        self.thresholds
            .iter()
            .map(|t| match (t.first(), t.last()) {
                (Some(a), Some(b)) => b - a + 1,
                _ => 1,
            })
            .max()
            .unwrap_or(1)
    }

    /// Target interval indices reachable from interval `p` of coordinate
    /// `j` under `shift`.
    pub fn realizable(&self, j: usize, p: usize, shift: Shift) -> Vec<usize> {
        let ivs = &self.intervals[j];
        match shift {
            Shift::Exact(d) => {
                let moved = ivs[p].shifted(d);
                (0..ivs.len()).filter(|&q| !moved.intersect(&ivs[q]).is_empty()).collect()
            }
            Shift::Stable if p == 0 => (0..ivs.len()).collect(),
            Shift::Stable => vec![ivs.len() - 1],
        }
    }

    /// Whether the induced map `H^i` on cell `src` → cell `dst` is zero.
    pub fn cell_map_is_zero(&self, i: usize, src: &[usize], dst: &[usize]) -> bool {
        self.complex.map_is_zero(i, &self.representative(src), &self.representative(dst))
    }

    /// Whether the monomial multiplication described by `shifts` kills
    /// `H^i`. With `Stable` coordinates this asks for some uniform power.
    pub fn kills(&self, i: usize, shifts: &[Shift]) -> bool {
        let mut memo: HashMap<(Vec<usize>, Vec<usize>), bool> = HashMap::new();
        for src in self.nonzero_cells(i) {
            let options: Vec<Vec<usize>> = (0..src.len()).map(|j| self.realizable(j, src[j], shifts[j])).collect();
            for dst in product(&options) {
                if self.dims_at(&dst)[i] == 0 {
                    continue;
                }
                let zero =
                    *memo.entry((src.clone(), dst.clone())).or_insert_with(|| self.cell_map_is_zero(i, &src, &dst));
                if !zero {
                    return false;
                }
            }
        }
        true
    }

    /// Whether some class on cell `src` survives every power of
    /// `x_{stable}`: the map to the cell pushed to the top interval in the
    /// stable coordinates is nonzero.
    pub fn survives_localization(&self, i: usize, src: &[usize], stable: &BTreeSet<usize>) -> bool {
        if self.dims_at(src)[i] == 0 {
            return false;
        }
        let dst: Vec<usize> =
            src.iter().enumerate().map(|(j, &p)| if stable.contains(&j) { self.intervals[j].len() - 1 } else { p }).collect();
        self.dims_at(&dst)[i] > 0 && !self.cell_map_is_zero(i, src, &dst)
    }
}

fn intervals_from(thresholds: &[i64]) -> Vec<Interval> {
    let Some(&first) = thresholds.first() else {
        return vec![Interval::ALL];
    };
    let mut out = vec![Interval::at_most(first - 1)];
    for w in thresholds.windows(2) {
        out.push(Interval::closed(w[0], w[1] - 1));
    }
    out.push(Interval::at_least(*thresholds.last().unwrap()));
    out
}

fn product(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RegionCell {
    pub cell: LatticeBox,
    pub dim: usize,
}

/// Disjoint union of boxes with a constant dimension on each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionSet {
    pub rank: usize,
    pub cells: Vec<RegionCell>,
}

impl RegionSet {
    pub fn empty(rank: usize) -> Self {
        RegionSet { rank, cells: Vec::new() }
    }

    /// Merges neighbours with equal dimension along each coordinate in
    /// turn (last coordinate first), then sorts.
    pub fn merged(rank: usize, mut cells: Vec<RegionCell>) -> Self {
        for j in (0..rank).rev() {
            cells.sort_by(|a, b| {
                let ka = (&a.cell.0[..j], &a.cell.0[j + 1..], a.dim, a.cell.0[j]);
                let kb = (&b.cell.0[..j], &b.cell.0[j + 1..], b.dim, b.cell.0[j]);
                ka.cmp(&kb)
            });
            let mut out: Vec<RegionCell> = Vec::with_capacity(cells.len());
            for c in cells {
                if let Some(last) = out.last_mut() {
                    let same_rest = last.dim == c.dim
                        && last.cell.0[..j] == c.cell.0[..j]
                        && last.cell.0[j + 1..] == c.cell.0[j + 1..];
                    let adjacent = matches!((last.cell.0[j].hi, c.cell.0[j].lo), (Some(h), Some(l)) if h + 1 == l);
                    if same_rest && adjacent {
                        last.cell.0[j].hi = c.cell.0[j].hi;
                        continue;
                    }
                }
                out.push(c);
            }
            cells = out;
        }
        cells.sort();
        RegionSet { rank, cells }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn boxes(&self) -> Vec<LatticeBox> {
        self.cells.iter().map(|c| c.cell.clone()).collect()
    }

    pub fn dim_at(&self, a: &[i64]) -> usize {
        self.cells.iter().find(|c| c.cell.contains(a)).map_or(0, |c| c.dim)
    }

    pub fn to_point_set(&self) -> PointSet {
        PointSet::region(self.boxes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_partition() {
        let iv = intervals_from(&[0, 2, 3]);
        assert_eq!(iv, vec![Interval::at_most(-1), Interval::closed(0, 1), Interval::closed(2, 2), Interval::at_least(3)]);
        assert_eq!(intervals_from(&[]), vec![Interval::ALL]);
    }

    #[test]
    fn merge_is_order_independent() {
        let a = RegionCell { cell: LatticeBox(vec![Interval::closed(0, 1), Interval::at_most(-1)]), dim: 1 };
        let b = RegionCell { cell: LatticeBox(vec![Interval::at_least(2), Interval::at_most(-1)]), dim: 1 };
        let c = RegionCell { cell: LatticeBox(vec![Interval::at_most(-1), Interval::at_most(-1)]), dim: 2 };
        let r1 = RegionSet::merged(2, vec![a.clone(), b.clone(), c.clone()]);
        let r2 = RegionSet::merged(2, vec![c, b, a]);
        assert_eq!(r1, r2);
        assert_eq!(r1.cells.len(), 2);
        assert_eq!(r1.dim_at(&[5, -3]), 1);
        assert_eq!(r1.dim_at(&[-5, -3]), 2);
    }
}
