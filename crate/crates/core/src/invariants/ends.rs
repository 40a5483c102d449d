//! Ends of local cohomology modules and `Q`-bounds.

use super::CohomologyTable;
use crate::error::{Error, Result};
use crate::grading::{maximal_elements, PointSet, Projection, SupportPattern};
use crate::module::GradedModule;
use crate::monomial::{directions, ideal_cq, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndSet {
    pub ideal: MonomialIdeal,
    pub index: usize,
    /// `dir(b)`.
    pub directions: SupportPattern,
    pub points: PointSet,
}

/// Support of `H^j_b(M)` projected to the `dir(b)` coordinates.
pub fn projected_support(table: &CohomologyTable, j: usize) -> Result<(SupportPattern, PointSet)> {
    let g = &table.module.grading;
    let dir = directions(&table.ideal, g)?;
    if dir.is_empty() {
        return Err(Error::EndUndefined);
    }
    let phi = Projection::coordinates(g.rank(), &dir)?;
    let projected = table.coarse(j).project(&phi)?;
    if let Some(bad) = projected.boxes().iter().find(|b| b.0.iter().any(|iv| iv.hi.is_none())) {
        return Err(Error::Inconsistent(format!(
            "support of H^{j} is unbounded above in a direction coordinate: {bad}"
        )));
    }
    Ok((dir, projected))
}

/// `end(H^j_b(M))` from a prebuilt table.
pub fn end_in(table: &CohomologyTable, j: usize) -> Result<EndSet> {
    let (dir, projected) = projected_support(table, j)?;
    Ok(EndSet { ideal: table.ideal.clone(), index: j, directions: dir, points: maximal_elements(&projected) })
}

/// `end(H^j_b(M))`.
pub fn end_of(b: &MonomialIdeal, m: &GradedModule, j: usize) -> Result<EndSet> {
    end_in(&CohomologyTable::new(b, m), j)
}

/// `max ∪_{i≤j} end(H^i_b(M))`.
pub fn ends_up_to(table: &CohomologyTable, j: usize) -> Result<PointSet> {
    let mut acc = PointSet::empty();
    for i in 0..=j.min(table.top()) {
        acc = acc.union(&end_in(table, i)?.points);
    }
    Ok(maximal_elements(&acc))
}

/// `bnd^Q(M) = max ∪_i end(H^i_{c^Q}(M))`.
pub fn q_bound(m: &GradedModule, q: &SupportPattern) -> Result<PointSet> {
    if q.is_empty() {
        return Err(Error::Precondition("the Q-bound needs a nonempty Q".into()));
    }
    m.grading.require_standard()?;
    let c = ideal_cq(&m.grading, q)?;
    let table = CohomologyTable::new(&c, m);
    ends_up_to(&table, table.top())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::DegreeVector;
    use crate::monomial::{Field, GradingSpec};

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    fn pts(v: &[&[i64]]) -> PointSet {
        PointSet::finite(v.iter().map(|p| DegreeVector(p.to_vec())))
    }

    #[test]
    fn end_examples() {
        let s = GradedModule::free(e1());
        let x = MonomialIdeal::of_vars(2, [0]);
        assert_eq!(end_of(&x, &s, 1).unwrap().points, pts(&[&[-1]]));
        let m = MonomialIdeal::of_vars(2, [0, 1]);
        assert_eq!(end_of(&m, &s, 2).unwrap().points, pts(&[&[-1, -1]]));
        assert!(end_of(&m, &s, 1).unwrap().points.is_empty());
    }

    #[test]
    fn end_needs_directions() {
        let s = GradedModule::free(e1());
        let xy = MonomialIdeal::new(2, vec![crate::monomial::Monomial(vec![1, 1])]);
        assert!(matches!(end_of(&xy, &s, 1), Err(Error::EndUndefined)));
    }

    #[test]
    fn bound_examples() {
        let s = GradedModule::free(e1());
        assert_eq!(q_bound(&s, &SupportPattern::from_indices([0, 1])).unwrap(), pts(&[&[-1, -1]]));
        assert_eq!(q_bound(&s, &SupportPattern::from_indices([0])).unwrap(), pts(&[&[-1]]));
        assert!(q_bound(&GradedModule::zero(e1()), &SupportPattern::from_indices([0])).unwrap().is_empty());
        assert!(q_bound(&s, &SupportPattern::empty()).is_err());
    }
}
