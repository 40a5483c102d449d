//! Invariants assembled from the cohomology engine.

pub mod anchors;
pub mod ends;
pub mod finiteness;
pub mod kunneth;
pub mod verify;

use crate::cohomology::coarse::{coarse_box, fiber_count};
use crate::cohomology::{CechComplex, CellDecomposition, ComponentDim, RegionSet};
use crate::grading::{DegreeVector, LatticeBox, PointSet};
use crate::module::GradedModule;
use crate::monomial::MonomialIdeal;

pub use anchors::{anchor_points, anchor_points_regraded, anchor_points_via_maps, bass_number, AnchorSet};
pub use ends::{end_of, ends_up_to, q_bound, EndSet};
pub use finiteness::{finiteness_dimension_f, finiteness_dimension_g, FinDim, GReport, GWitness};
pub use kunneth::{figure_one_supports, kunneth_support, prescribed_supports};

/// Least `t` such that no box meets `{n : n ≥ (t,…,t)}`. `Some(None)` when
/// there are no boxes; `None` when a box is unbounded above everywhere.
pub fn vanishing_corner(boxes: &[LatticeBox]) -> Option<Option<i64>> {
    let mut t: Option<i64> = None;
    for bx in boxes {
        let low = bx.0.iter().filter_map(|iv| iv.hi).min()?;
        t = Some(t.map_or(low + 1, |v| v.max(low + 1)));
    }
    Some(t)
}

/// All `H^i_b(M)` of one pair, sharing a single cell decomposition.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub ideal: MonomialIdeal,
    pub module: GradedModule,
    pub cells: CellDecomposition,
}

impl CohomologyTable {
    pub fn new(b: &MonomialIdeal, m: &GradedModule) -> Self {
        let cx = CechComplex::new(b.clone(), m.clone()).boolean();
        CohomologyTable { ideal: b.clone(), module: m.clone(), cells: CellDecomposition::build(&cx) }
    }

    /// Indices above this carry no cohomology.
    pub fn top(&self) -> usize {
        self.cells.complex().ground()
    }

    pub fn fine(&self, i: usize) -> RegionSet {
        if i > self.top() {
            return RegionSet::empty(self.module.nvars());
        }
        self.cells.region(i)
    }

    pub fn is_zero(&self, i: usize) -> bool {
        i > self.top() || self.cells.nonzero_cells(i).is_empty()
    }

    /// `S(H^i)` as a union of coarse boxes.
    pub fn coarse(&self, i: usize) -> PointSet {
        let g = &self.module.grading;
        PointSet::region(self.fine(i).cells.iter().map(|c| coarse_box(&c.cell, g)))
    }

    /// Whether `S(H^i)` is a finite set.
    pub fn finitely_graded(&self, i: usize) -> bool {
        self.coarse(i).boxes().iter().all(|b| b.is_bounded())
    }

    /// Whether some nonzero cell meets a coarse fiber in infinitely many
    /// fine degrees (an infinite-dimensional component).
    pub fn has_infinite_component(&self, i: usize) -> bool {
        let g = &self.module.grading;
        self.fine(i).cells.iter().any(|c| {
            let probe = coarse_box(&c.cell, g);
            let n: Vec<i64> = probe.0.iter().map(|iv| iv.lo.or(iv.hi).unwrap_or(0)).collect();
            fiber_count(&c.cell, g, &DegreeVector(n)) == ComponentDim::Infinite
        })
    }

    /// [`vanishing_corner`] of every `S(H^i)` at once.
    pub fn corner(&self) -> Option<Option<i64>> {
        let boxes: Vec<LatticeBox> = (0..=self.top()).flat_map(|i| self.coarse(i).boxes()).collect();
        vanishing_corner(&boxes)
    }

    /// `inf{i : H^i ≠ 0}`.
    pub fn grade(&self) -> FinDim {
        (0..=self.top()).find(|&i| !self.is_zero(i)).map_or(FinDim::Infinite, FinDim::Finite)
    }
}
