//! Anchor points and Bass numbers of monomial primes.
//!
//! Three independent routes are provided:
//! * [`anchor_points`]: `Ext^i(S/p, M)` with every variable outside `p`
//!   inverted. After that localization the Ext module is free over the
//!   Laurent ring of the outside variables, so a projected degree survives
//!   iff it is in the support at all.
//! * [`anchor_points_via_maps`]: unlocalized Ext; a cell survives iff
//!   pushing it to the top of the grid in the outside variables is a
//!   nonzero map.
//! * [`anchor_points_regraded`]: regrade along `φ(p)` so that every color
//!   is a direction, then the first route.

use std::collections::BTreeSet;

use crate::cohomology::coarse::coarse_box;
use crate::cohomology::{BooleanComplex, CellDecomposition, KoszulComplex};
use crate::error::{Error, Result};
use crate::grading::{DegreeVector, LatticeBox, PointSet, Projection, SupportPattern};
use crate::module::{regrade, GradedModule};
use crate::monomial::{prime_directions, GradingSpec, MonomialPrime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorSet {
    pub prime: MonomialPrime,
    pub level: usize,
    /// `dir(p)`, the coordinates the points live in.
    pub directions: SupportPattern,
    pub points: PointSet,
}

fn directions_of(p: &MonomialPrime, g: &GradingSpec) -> Result<SupportPattern> {
    let dir = prime_directions(p, g)?;
    if dir.is_empty() {
        return Err(Error::NoDirections);
    }
    Ok(dir)
}

/// Projects a fine box to the `dir` coordinates of its coarse image; the
/// result must be bounded.
fn projected_points(bx: &LatticeBox, g: &GradingSpec, dir: &SupportPattern) -> Result<Vec<DegreeVector>> {
    let kept: Vec<usize> = dir.iter().collect();
    coarse_box(bx, g).select(&kept).points().ok_or_else(|| {
        Error::Inconsistent(format!("anchor region {bx} is unbounded in the direction coordinates"))
    })
}

fn koszul(p: &MonomialPrime, m: &GradedModule, localized: BTreeSet<usize>) -> BooleanComplex {
    KoszulComplex::localized(p.vars().clone(), localized, m.clone()).boolean()
}

/// `anch^i(p, M)` via Ext localized at the variables outside `p`.
pub fn anchor_points(p: &MonomialPrime, m: &GradedModule, i: usize) -> Result<AnchorSet> {
    let g = &m.grading;
    let dir = directions_of(p, g)?;
    let mut pts = Vec::new();
    if i <= p.vars().len() {
        let cells = CellDecomposition::build(&koszul(p, m, p.complement()));
        for c in cells.region(i).cells {
            pts.extend(projected_points(&c.cell, g, &dir)?);
        }
    }
    Ok(AnchorSet { prime: p.clone(), level: i, directions: dir, points: PointSet::finite(pts) })
}

/// `anch^i(p, M)` from unlocalized Ext and induced multiplication maps.
pub fn anchor_points_via_maps(p: &MonomialPrime, m: &GradedModule, i: usize) -> Result<AnchorSet> {
    let g = &m.grading;
    let dir = directions_of(p, g)?;
    let mut pts = Vec::new();
    if i <= p.vars().len() {
        let cells = CellDecomposition::build(&koszul(p, m, BTreeSet::new()));
        let outside = p.complement();
        for src in cells.nonzero_cells(i) {
            if cells.survives_localization(i, &src, &outside) {
                pts.extend(projected_points(&cells.cell_box(&src), g, &dir)?);
            }
        }
    }
    Ok(AnchorSet { prime: p.clone(), level: i, directions: dir, points: PointSet::finite(pts) })
}

/// `anch^i(p^φ, M^φ)` with `φ = φ(p)`; the points are directly comparable
/// with [`anchor_points`].
pub fn anchor_points_regraded(p: &MonomialPrime, m: &GradedModule, i: usize) -> Result<AnchorSet> {
    let dir = directions_of(p, &m.grading)?;
    let phi = Projection::coordinates(m.grading.rank(), &dir)?;
    let regraded = regrade(m, &phi)?;
    let inner = anchor_points(p, &regraded, i)?;
    Ok(AnchorSet { prime: p.clone(), level: i, directions: dir, points: inner.points })
}

/// `anch(p, M) = ∪_i anch^i(p, M)`.
pub fn all_anchor_points(p: &MonomialPrime, m: &GradedModule) -> Result<PointSet> {
    let mut acc = PointSet::empty();
    for i in 0..=p.vars().len() {
        acc = acc.union(&anchor_points(p, m, i)?.points);
    }
    Ok(acc)
}

/// `μ^i(p, M)` for `p` the ideal of all variables with every color a
/// direction.
pub fn bass_number(p: &MonomialPrime, m: &GradedModule, i: usize) -> Result<u128> {
    let g = &m.grading;
    let dir = directions_of(p, g)?;
    if dir.len() != g.rank() || !p.is_maximal() {
        return Err(Error::Precondition(format!(
            "Bass numbers need the prime of all variables with every color a direction, got {}",
            p.render(&default_names(g.nvars()))
        )));
    }
    if i > p.vars().len() {
        return Ok(0);
    }
    let cells = CellDecomposition::build(&koszul(p, m, BTreeSet::new()));
    let mut total = 0u128;
    for c in cells.region(i).cells {
        let count = c.cell.0.iter().try_fold(1u128, |acc, iv| iv.count().map(|k| acc * k)).ok_or_else(|| {
            Error::Inconsistent(format!("Ext with respect to the maximal ideal is unbounded on {}", c.cell))
        })?;
        total += count * c.dim as u128;
    }
    Ok(total)
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("x{j}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Field, MonomialIdeal};

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    fn prime(vars: &[usize]) -> MonomialPrime {
        MonomialPrime::new(2, vars.iter().copied()).unwrap()
    }

    #[test]
    fn anchor_examples() {
        let s = GradedModule::free(e1());
        let m = prime(&[0, 1]);
        let a = anchor_points(&m, &s, 2).unwrap();
        assert_eq!(a.points, PointSet::finite(vec![DegreeVector(vec![-1, -1])]));
        let x = prime(&[0]);
        assert_eq!(anchor_points(&x, &s, 1).unwrap().points, PointSet::finite(vec![DegreeVector(vec![-1])]));
        assert!(anchor_points(&m, &s, 0).unwrap().points.is_empty());
        for (p, i) in [(&m, 2), (&x, 1), (&m, 0)] {
            let base = anchor_points(p, &s, i).unwrap().points;
            assert_eq!(anchor_points_via_maps(p, &s, i).unwrap().points, base);
            assert_eq!(anchor_points_regraded(p, &s, i).unwrap().points, base);
        }
    }

    #[test]
    fn no_directions_is_an_error() {
        let g = GradingSpec::from_colors(1, vec![0, 0], Field::Rational).unwrap();
        let s = GradedModule::free(g);
        assert!(matches!(anchor_points(&prime(&[0]), &s, 1), Err(Error::NoDirections)));
    }

    #[test]
    fn bass_examples() {
        let s = GradedModule::free(e1());
        let m = prime(&[0, 1]);
        assert_eq!(bass_number(&m, &s, 2).unwrap(), 1);
        assert_eq!(bass_number(&m, &s, 0).unwrap(), 0);
        let sx = GradedModule::cyclic(e1(), MonomialIdeal::of_vars(2, [0]));
        assert_eq!(bass_number(&m, &sx, 1).unwrap(), 1);
        assert!(bass_number(&prime(&[0]), &s, 1).is_err());
    }
}
