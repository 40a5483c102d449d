//! Passage from fine degrees in `Z^n` to coarse degrees in `Z^r`.

use std::fmt;

use serde::Serialize;

use super::cells::RegionSet;
use super::global_support;
use crate::error::{Error, Result};
use crate::grading::{DegreeVector, Interval, LatticeBox, PointSet};
use crate::module::GradedModule;
use crate::monomial::{GradingSpec, MonomialIdeal};

/// Dimension of a coarse graded component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentDim {
    Finite(u128),
    Infinite,
}

impl ComponentDim {
    pub fn is_zero(&self) -> bool {
        matches!(self, ComponentDim::Finite(0))
    }

    fn add(self, other: ComponentDim) -> ComponentDim {
        match (self, other) {
            (ComponentDim::Finite(a), ComponentDim::Finite(b)) => ComponentDim::Finite(a + b),
            _ => ComponentDim::Infinite,
        }
    }

    fn mul(self, other: ComponentDim) -> ComponentDim {
        match (self, other) {
            (ComponentDim::Finite(0), _) | (_, ComponentDim::Finite(0)) => ComponentDim::Finite(0),
            (ComponentDim::Finite(a), ComponentDim::Finite(b)) => ComponentDim::Finite(a * b),
            _ => ComponentDim::Infinite,
        }
    }
}

impl fmt::Display for ComponentDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentDim::Finite(d) => write!(f, "{d}"),
            ComponentDim::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Image of a fine box under the coarse degree map. Colors without
/// variables map to `{0}`; degree-0 variables drop out.
pub fn coarse_box(bx: &LatticeBox, g: &GradingSpec) -> LatticeBox {
    LatticeBox(
        (0..g.rank())
            .map(|c| g.vars_of_color(c).iter().fold(Interval::point(0), |acc, &j| acc.minkowski(&bx.0[j])))
            .collect(),
    )
}

pub fn coarse_support(region: &RegionSet, g: &GradingSpec) -> PointSet {
    PointSet::region(region.cells.iter().map(|c| coarse_box(&c.cell, g)))
}

/// `dim_k H^i_b(M)_n`.
pub fn component_dim(b: &MonomialIdeal, m: &GradedModule, i: usize, n: &DegreeVector) -> Result<ComponentDim> {
    let g = &m.grading;
    if n.rank() != g.rank() {
        return Err(Error::RankMismatch { expected: g.rank(), found: n.rank() });
    }
    Ok(dim_in_region(&global_support(b, m, i), g, n))
}

/// Coarse component dimension of a fine region.
pub fn dim_in_region(region: &RegionSet, g: &GradingSpec, n: &DegreeVector) -> ComponentDim {
    region
        .cells
        .iter()
        .map(|c| ComponentDim::Finite(c.dim as u128).mul(fiber_count(&c.cell, g, n)))
        .fold(ComponentDim::Finite(0), ComponentDim::add)
}

/// Number of fine degrees in `bx` of coarse degree `n`.
pub fn fiber_count(bx: &LatticeBox, g: &GradingSpec, n: &DegreeVector) -> ComponentDim {
    if bx.is_empty() {
        return ComponentDim::Finite(0);
    }
    let mut total = ComponentDim::Finite(1);
    for c in 0..g.rank() {
        let vars = g.vars_of_color(c);
        let ivs: Vec<Interval> = vars.iter().map(|&j| bx.0[j]).collect();
        total = total.mul(color_count(&ivs, n.0[c]));
    }
    for j in (0..g.nvars()).filter(|&j| g.color(j).is_none()) {
        total = total.mul(bx.0[j].count().map_or(ComponentDim::Infinite, ComponentDim::Finite));
    }
    total
}

/// Integer points of `Π ivs` with coordinate sum `target`.
fn color_count(ivs: &[Interval], target: i64) -> ComponentDim {
    if ivs.is_empty() {
        return ComponentDim::Finite(u128::from(target == 0));
    }
    let sum = ivs.iter().skip(1).fold(ivs[0], |acc, iv| acc.minkowski(iv));
    if !sum.contains(target) {
        return ComponentDim::Finite(0);
    }
    let up: Vec<usize> = (0..ivs.len()).filter(|&j| ivs[j].hi.is_none()).collect();
    let down: Vec<usize> = (0..ivs.len()).filter(|&j| ivs[j].lo.is_none()).collect();
    if up.iter().any(|j| down.iter().any(|k| k != j)) {
        return ComponentDim::Infinite;
    }
    // Every unbounded side is now forced by the others' bounds.
    let clamped: Vec<(i64, i64)> = (0..ivs.len())
        .map(|j| {
            let others = || (0..ivs.len()).filter(move |&k| k != j);
            let lo = ivs[j].lo.unwrap_or_else(|| target - others().map(|k| ivs[k].hi.unwrap()).sum::<i64>());
            let hi = ivs[j].hi.unwrap_or_else(|| target - others().map(|k| ivs[k].lo.unwrap()).sum::<i64>());
            (lo, hi)
        })
        .collect();
    ComponentDim::Finite(bounded_count(&clamped, target))
}

/// Inclusion–exclusion over upper bounds.
fn bounded_count(bounds: &[(i64, i64)], target: i64) -> u128 {
    if bounds.iter().any(|(l, h)| l > h) {
        return 0;
    }
    let k = bounds.len();
    let rest = i128::from(target) - bounds.iter().map(|(l, _)| i128::from(*l)).sum::<i128>();
    if rest < 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for mask in 0u32..(1 << k) {
        let cut: i128 = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| i128::from(bounds[j].1 - bounds[j].0 + 1)).sum();
        let term = binomial(rest - cut + k as i128 - 1, k as i128 - 1);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u128
}

fn binomial(n: i128, k: i128) -> i128 {
    if n < k || k < 0 || n < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}
