//! Modules `⊕_j S(−a_j)/I_j`: finite sums of shifted cyclic monomial
//! quotients. Shifts are fine degrees (the degree of each generator).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grading::{DegreeVector, Projection, QDomain};
use crate::monomial::{compositions, GradingSpec, Monomial, MonomialIdeal};

/// `S(−shift)/ideal`, generated in fine degree `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub shift: Vec<i64>,
    pub ideal: MonomialIdeal,
}

impl Summand {
    pub fn new(shift: Vec<i64>, ideal: MonomialIdeal) -> Self {
        assert_eq!(shift.len(), ideal.nvars(), "shift length must equal the number of variables");
        Summand { shift, ideal }
    }

    pub fn free(nvars: usize) -> Self {
        Summand { shift: vec![0; nvars], ideal: MonomialIdeal::zero(nvars) }
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_unit()
    }

    /// Whether fine degree `a` carries the basis element `x^{a−shift}`.
    pub fn has_degree(&self, a: &[i64]) -> bool {
        let rel: Vec<i64> = a.iter().zip(&self.shift).map(|(x, s)| x - s).collect();
        rel.iter().all(|&e| e >= 0) && !self.ideal.contains_exponent(&rel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedModule {
    pub grading: GradingSpec,
    pub summands: Vec<Summand>,
}

impl GradedModule {
    pub fn new(grading: GradingSpec, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if s.shift.len() != grading.nvars() {
                return Err(Error::RankMismatch { expected: grading.nvars(), found: s.shift.len() });
            }
        }
        Ok(GradedModule { grading, summands })
    }

    pub fn zero(grading: GradingSpec) -> Self {
        GradedModule { grading, summands: Vec::new() }
    }

    /// `S/I`.
    pub fn cyclic(grading: GradingSpec, ideal: MonomialIdeal) -> Self {
        let n = grading.nvars();
        GradedModule { grading, summands: vec![Summand::new(vec![0; n], ideal)] }
    }

    pub fn free(grading: GradingSpec) -> Self {
        let n = grading.nvars();
        GradedModule::cyclic(grading, MonomialIdeal::zero(n))
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.iter().all(Summand::is_zero)
    }

    /// Indices of the summands contributing a basis element in degree `a`.
    pub fn component_basis(&self, a: &[i64]) -> Vec<usize> {
        self.summands.iter().enumerate().filter(|(_, s)| s.has_degree(a)).map(|(j, _)| j).collect()
    }

    /// `M(w)`, with `M(w)_a = M_{a+w}`.
    pub fn twist(&self, w: &[i64]) -> GradedModule {
        GradedModule {
            grading: self.grading.clone(),
            summands: self
                .summands
                .iter()
                .map(|s| Summand::new(s.shift.iter().zip(w).map(|(a, b)| a - b).collect(), s.ideal.clone()))
                .collect(),
        }
    }

    /// Coarse degrees of the generators of the nonzero summands.
    pub fn generator_degrees(&self) -> Vec<DegreeVector> {
        self.summands.iter().filter(|s| !s.is_zero()).map(|s| self.grading.coarse(&s.shift)).collect()
    }
}

/// `M^φ`: same module data, grading pushed through `phi`. Each variable
/// must land on 0 or a unit vector.
pub fn regrade(m: &GradedModule, phi: &Projection) -> Result<GradedModule> {
    Ok(GradedModule { grading: regrade_spec(&m.grading, phi)?, summands: m.summands.clone() })
}

pub fn regrade_spec(g: &GradingSpec, phi: &Projection) -> Result<GradingSpec> {
    if phi.source_rank() != g.rank() {
        return Err(Error::RankMismatch { expected: g.rank(), found: phi.source_rank() });
    }
    let mut colors = Vec::with_capacity(g.nvars());
    for j in 0..g.nvars() {
        let Some(c) = g.color(j) else {
            colors.push(None);
            continue;
        };
        let image = phi.column(c);
        if !image.is_nonnegative() {
            return Err(Error::NotPositive(format!("variable {} maps to {image}", j + 1)));
        }
        match image.0.iter().sum::<i64>() {
            0 => colors.push(None),
            1 => colors.push(image.0.iter().position(|&e| e == 1)),
            _ => {
                return Err(Error::UnsupportedGrading(format!(
                    "variable {} maps to {image}; only 0 or unit degrees are supported",
                    j + 1
                )))
            }
        }
    }
    GradingSpec::new(phi.target_rank(), colors, g.field)
}

/// Least `u` with `R_{u·m}·M = 0`, by staircase reasoning: a monomial
/// kills `S(−a)/I` iff it lies in `I`. `Ok(None)` when `R_m ⊄ √ann M`.
pub fn module_annihilation_exponent(m: &GradedModule, dir: &DegreeVector) -> Result<Option<u64>> {
    Ok(module_annihilation(m, dir)?.ok())
}

/// Either the exponent or a transversal monomial that is not nilpotent.
fn module_annihilation(module: &GradedModule, m: &DegreeVector) -> Result<std::result::Result<u64, Monomial>> {
    let g = &module.grading;
    g.require_standard()?;
    check_direction(m, g.rank())?;
    let ideals: Vec<&MonomialIdeal> = module.summands.iter().filter(|s| !s.is_zero()).map(|s| &s.ideal).collect();
    if ideals.is_empty() {
        return Ok(Ok(0));
    }
    let pm: Vec<usize> = m.support().iter().collect();
    for w in transversals(g, &pm) {
        let xw = Monomial((0..g.nvars()).map(|j| u32::from(w.contains(&j))).collect());
        if ideals.iter().any(|i| !i.radical().contains(&xw)) {
            return Ok(Err(xw));
        }
    }
    let top = ideals.iter().flat_map(|i| (0..g.nvars()).map(|j| i.max_exponent(j))).max().unwrap_or(0) as i64;
    let bound = pm
        .iter()
        .map(|&c| {
            let nc = g.vars_of_color(c).len() as i64;
            (top * nc + m.0[c] - 1) / m.0[c]
        })
        .max()
        .unwrap_or(0) as u64;
    for u in 0..=bound.max(1) {
        let degree = m.scaled(u as i64);
        if g.monomials_of_degree(&degree)?.iter().all(|x| ideals.iter().all(|i| i.contains(x))) {
            return Ok(Ok(u));
        }
    }
    Err(Error::Inconsistent(format!("module annihilation exponent exceeds bound {bound}")))
}

pub(crate) fn check_direction(m: &DegreeVector, rank: usize) -> Result<()> {
    if m.rank() != rank {
        return Err(Error::RankMismatch { expected: rank, found: m.rank() });
    }
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !m.is_nonnegative() {
        return Err(Error::Precondition(format!("m = {m} must lie in N_0^r")));
    }
    Ok(())
}

/// Variable sets picking exactly one variable of each listed color.
pub fn transversals(g: &GradingSpec, colors: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new()];
    for &c in colors {
        out = out
            .iter()
            .flat_map(|w| {
                g.vars_of_color(c).into_iter().map(move |j| {
                    let mut w2 = w.clone();
                    w2.insert(j);
                    w2
                })
            })
            .collect();
    }
    out
}

/// The bounding shift `X(s,t)` containing the support of `M`: `s`, `w` are
/// the corners of the generator-degree box, `u` the annihilation exponent
/// of `R_m` on `M`, and `t = s + Σ_{i∈P(m)} (w_i − s_i + u·m_i)·e_i`.
pub fn bounding_shift(module: &GradedModule, m: &DegreeVector) -> Result<QDomain> {
    let rank = module.grading.rank();
    let u = match module_annihilation(module, m)? {
        Ok(u) => u as i64,
        Err(witness) => return Err(Error::NotNilpotent { witness: witness.fine_degree() }),
    };
    let degrees = module.generator_degrees();
    let Some(first) = degrees.first() else {
        return Ok(QDomain::empty(rank));
    };
    let s = degrees.iter().fold(first.clone(), |acc, d| acc.componentwise_min(d));
    let w = degrees.iter().fold(first.clone(), |acc, d| acc.componentwise_max(d));
    let pm = m.support();
    let t = DegreeVector(
        (0..rank)
            .map(|i| if pm.contains(i) { s.0[i] + (w.0[i] - s.0[i] + u * m.0[i]) } else { s.0[i] })
            .collect(),
    );
    QDomain::new(s, t, pm)
}

/// Exponent vectors of the monomials in the colored variables with the
/// given coarse degree; degree-0 variables get exponent 0.
pub(crate) fn colored_monomials(g: &GradingSpec, degree: &DegreeVector) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; g.nvars()]];
    for c in 0..g.rank() {
        let vars = g.vars_of_color(c);
        let total = degree.0[c];
        if vars.is_empty() {
            if total != 0 {
                return Vec::new();
            }
            continue;
        }
        let mut next = Vec::new();
        for partial in &out {
            for comp in compositions(total as u32, vars.len()) {
                let mut e = partial.clone();
                for (k, &j) in vars.iter().enumerate() {
                    e[j] = i64::from(comp[k]);
                }
                next.push(e);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::SupportPattern;
    use crate::monomial::Field;

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    #[test]
    fn basis_examples() {
        let g = e1();
        assert_eq!(GradedModule::free(g.clone()).component_basis(&[2, 1]), vec![0]);
        let sx = GradedModule::cyclic(g.clone(), MonomialIdeal::of_vars(2, [0]));
        assert!(sx.component_basis(&[1, 0]).is_empty());
        let m = GradedModule::new(
            g,
            vec![Summand::new(vec![1, 0], MonomialIdeal::zero(2)), Summand::new(vec![0, 0], MonomialIdeal::of_vars(2, [1]))],
        )
        .unwrap();
        assert_eq!(m.component_basis(&[1, 0]), vec![0, 1]);
    }

    #[test]
    fn twist_contract() {
        let m = GradedModule::cyclic(e1(), MonomialIdeal::new(2, vec![Monomial(vec![2, 1])]));
        let w = [1, -2];
        let tw = m.twist(&w);
        for a in crate::grading::lattice_points(&[-3, -3], &[3, 3]) {
            let shifted: Vec<i64> = a.iter().zip(&w).map(|(x, y)| x + y).collect();
            assert_eq!(tw.component_basis(&a), m.component_basis(&shifted));
        }
    }

    #[test]
    fn regrade_examples() {
        let g = e1();
        let sx = GradedModule::cyclic(g.clone(), MonomialIdeal::of_vars(2, [0]));
        assert_eq!(regrade(&sx, &Projection::identity(2)).unwrap(), sx);
        let keep_second = Projection::coordinates(2, &SupportPattern::from_indices([1])).unwrap();
        let pi = regrade(&GradedModule::free(g.clone()), &keep_second).unwrap();
        assert_eq!(pi.grading.colors(), &[None, Some(0)]);
        let sigma = Projection::merge(2, &SupportPattern::full(2)).unwrap();
        let summed = regrade(&GradedModule::free(g), &sigma).unwrap();
        assert_eq!(summed.grading.colors(), &[Some(0), Some(0)]);
        assert!(summed.grading.is_standard());
    }

    #[test]
    fn bounding_shift_examples() {
        let g = e1();
        let sx = GradedModule::cyclic(g.clone(), MonomialIdeal::of_vars(2, [0]));
        let x = bounding_shift(&sx, &DegreeVector(vec![1, 0])).unwrap();
        assert_eq!((x.s.clone(), x.t.clone()), (DegreeVector(vec![0, 0]), DegreeVector(vec![1, 0])));
        let zero = GradedModule::zero(g.clone());
        assert_eq!(bounding_shift(&zero, &DegreeVector(vec![0, 1])).unwrap(), QDomain::empty(2));
        let free = GradedModule::free(g);
        assert!(matches!(bounding_shift(&free, &DegreeVector(vec![1, 0])), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn annihilation_of_powers() {
        let g = e1();
        let m = GradedModule::cyclic(g, MonomialIdeal::new(2, vec![Monomial(vec![3, 0]), Monomial(vec![0, 2])]));
        assert_eq!(module_annihilation_exponent(&m, &DegreeVector(vec![1, 0])).unwrap(), Some(3));
        assert_eq!(module_annihilation_exponent(&m, &DegreeVector(vec![1, 1])).unwrap(), Some(2));
    }
}
