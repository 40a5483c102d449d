//! `Q`-finiteness dimensions `g^Q` and finiteness dimensions `f^a`.

use std::fmt;

use serde::Serialize;

use super::CohomologyTable;
use crate::cohomology::{annihilation_on, monomial_is_nilpotent};
use crate::error::{Error, Result};
use crate::grading::{DegreeVector, LatticeBox, PointSet, QDomain, SupportPattern};
use crate::module::GradedModule;
use crate::monomial::MonomialIdeal;

/// A value in `N_0 ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FinDim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for FinDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinDim::Finite(v) => write!(f, "{v}"),
            FinDim::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GWitness {
    /// `S(H^index) ⊆ domain`.
    Contained { index: usize, domain: QDomain },
    /// A support box of `H^index` bounded on no coordinate of `Q`.
    Escapes { index: usize, cell: LatticeBox },
}

impl fmt::Display for GWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GWitness::Contained { index, domain } => write!(f, "H^{index} in {domain}"),
            GWitness::Escapes { index, cell } => write!(f, "H^{index} escapes via {cell}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GReport {
    pub q: SupportPattern,
    pub value: FinDim,
    pub witnesses: Vec<GWitness>,
}

/// Smallest `Q`-domain containing a coarse support, or a box that no
/// `Q`-domain can contain.
///
/// A box lies in `X(s,t)` iff it lies in one slab `s_i ≤ n_i < t_i` (else
/// pick, per coordinate, a value outside the slab), so every box needs a
/// `Q`-coordinate bounded on both sides. Each box uses the first such
/// coordinate and the slabs are widened to cover all of them.
pub fn support_qdomain(support: &PointSet, q: &SupportPattern, rank: usize) -> std::result::Result<QDomain, LatticeBox> {
    let mut lo: Vec<Option<i64>> = vec![None; rank];
    let mut hi: Vec<Option<i64>> = vec![None; rank];
    for bx in support.boxes() {
        let Some(c) = q.iter().find(|&c| bx.0[c].is_bounded()) else {
            return Err(bx);
        };
        let (l, h) = (bx.0[c].lo.unwrap(), bx.0[c].hi.unwrap());
        lo[c] = Some(lo[c].map_or(l, |v| v.min(l)));
        hi[c] = Some(hi[c].map_or(h, |v| v.max(h)));
    }
    let s: Vec<i64> = lo.iter().map(|v| v.unwrap_or(0)).collect();
    let t: Vec<i64> = (0..rank).map(|c| hi[c].map_or(s[c], |h| h + 1)).collect();
    Ok(QDomain::new(DegreeVector(s), DegreeVector(t), q.clone()).expect("slab bounds are ordered and inside Q"))
}

/// `g^Q` from abstract per-index supports (index `i` at position `i`);
/// indices past the end count as zero.
pub fn g_from_supports(supports: &[PointSet], q: &SupportPattern, rank: usize) -> GReport {
    let mut witnesses = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        match support_qdomain(s, q, rank) {
            Ok(domain) => witnesses.push(GWitness::Contained { index: i, domain }),
            Err(cell) => {
                witnesses.push(GWitness::Escapes { index: i, cell });
                return GReport { q: q.clone(), value: FinDim::Finite(i), witnesses };
            }
        }
    }
    GReport { q: q.clone(), value: FinDim::Infinite, witnesses }
}

/// Route through annihilators: with `P(m) = Q`, the least `i` such that
/// no power of `R_m` kills `H^i`. For `Q = ∅`, the least `i` with
/// `H^i ≠ 0`.
pub fn g_by_annihilation(table: &CohomologyTable, q: &SupportPattern, m: Option<&DegreeVector>) -> Result<FinDim> {
    if q.is_empty() {
        return Ok(table.grade());
    }
    let rank = table.module.grading.rank();
    let dir = match m {
        Some(v) => {
            if v.support() != *q {
                return Err(Error::PatternViolation(format!("P({v}) differs from {q}")));
            }
            v.clone()
        }
        None => q.indicator(rank),
    };
    for i in 0..=table.top() {
        if annihilation_on(&table.cells, i, &dir)?.is_none() {
            return Ok(FinDim::Finite(i));
        }
    }
    Ok(FinDim::Infinite)
}

/// `g^Q_b(M)` from a prebuilt table, both routes, cross-checked.
pub fn g_in(table: &CohomologyTable, q: &SupportPattern) -> Result<GReport> {
    let rank = table.module.grading.rank();
    if q.iter().any(|c| c >= rank) {
        return Err(Error::PatternViolation(format!("{q} not inside rank {rank}")));
    }
    let supports: Vec<PointSet> = (0..=table.top()).map(|i| table.coarse(i)).collect();
    let report = g_from_supports(&supports, q, rank);
    let other = g_by_annihilation(table, q, None)?;
    if other != report.value {
        return Err(Error::Inconsistent(format!(
            "g^{q}: support containment gives {}, annihilation gives {other}",
            report.value
        )));
    }
    Ok(report)
}

/// `g^Q_b(M)`.
pub fn finiteness_dimension_g(b: &MonomialIdeal, m: &GradedModule, q: &SupportPattern) -> Result<GReport> {
    g_in(&CohomologyTable::new(b, m), q)
}

/// `f^a` from a prebuilt table: infimum over the generators `x^v` of `a`
/// of the least `i` with `x^v` not nilpotent on `H^i`.
pub fn f_in(table: &CohomologyTable, a: &MonomialIdeal) -> FinDim {
    a.gens()
        .iter()
        .map(|v| {
            (0..=table.top())
                .find(|&i| !monomial_is_nilpotent(&table.cells, i, v))
                .map_or(FinDim::Infinite, FinDim::Finite)
        })
        .min()
        .unwrap_or(FinDim::Infinite)
}

/// `f^a_b(M)` for a monomial ideal `a`.
pub fn finiteness_dimension_f(a: &MonomialIdeal, b: &MonomialIdeal, m: &GradedModule) -> Result<FinDim> {
    if a.nvars() != m.nvars() {
        return Err(Error::RankMismatch { expected: m.nvars(), found: a.nvars() });
    }
    Ok(f_in(&CohomologyTable::new(b, m), a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Interval;
    use crate::monomial::{Field, GradingSpec};

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    #[test]
    fn g_examples() {
        let sx = GradedModule::cyclic(e1(), MonomialIdeal::of_vars(2, [0]));
        let y = MonomialIdeal::of_vars(2, [1]);
        let two = SupportPattern::from_indices([1]);
        let one = SupportPattern::from_indices([0]);
        assert_eq!(finiteness_dimension_g(&y, &sx, &two).unwrap().value, FinDim::Finite(1));
        assert_eq!(finiteness_dimension_g(&y, &sx, &one).unwrap().value, FinDim::Infinite);
        let s = GradedModule::free(e1());
        let m = MonomialIdeal::of_vars(2, [0, 1]);
        assert_eq!(finiteness_dimension_g(&m, &s, &SupportPattern::empty()).unwrap().value, FinDim::Finite(2));
    }

    #[test]
    fn f_examples() {
        let sx = GradedModule::cyclic(e1(), MonomialIdeal::of_vars(2, [0]));
        let y = MonomialIdeal::of_vars(2, [1]);
        let x = MonomialIdeal::of_vars(2, [0]);
        assert_eq!(finiteness_dimension_f(&x, &y, &sx).unwrap(), FinDim::Infinite);
        assert_eq!(finiteness_dimension_f(&y, &y, &sx).unwrap(), FinDim::Finite(1));
        let s = GradedModule::free(e1());
        let m = MonomialIdeal::of_vars(2, [0, 1]);
        assert_eq!(finiteness_dimension_f(&MonomialIdeal::unit(2), &m, &s).unwrap(), FinDim::Finite(2));
        assert_eq!(finiteness_dimension_f(&MonomialIdeal::zero(2), &m, &s).unwrap(), FinDim::Infinite);
    }

    #[test]
    fn domain_witness() {
        let region = PointSet::region(vec![
            LatticeBox(vec![Interval::point(0), Interval::at_least(0)]),
            LatticeBox(vec![Interval::closed(-3, -2), Interval::at_most(5)]),
        ]);
        let d = support_qdomain(&region, &SupportPattern::from_indices([0]), 2).unwrap();
        assert_eq!(d.s, DegreeVector(vec![-3, 0]));
        assert_eq!(d.t, DegreeVector(vec![1, 0]));
        assert!(support_qdomain(&region, &SupportPattern::from_indices([1]), 2).is_err());
    }
}
