//! Fine-graded monomial algebra over `k[x_1..x_n]`: the grading
//! data, monomials, monomial ideals with staircase operations,
//! monomial primes, direction sets and the ideals `R_+`, `c`, `c^Q`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grading::{DegreeVector, SupportPattern};

/// Coefficient field. Ranks of the ±1 slice matrices depend on the
/// characteristic, so this is part of the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Degree assignment `Z^n → Z^r`. Each variable has degree `e_c` for its
/// color `c`, or degree 0 (possible after regrading).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingSpec {
    rank: usize,
    colors: Vec<Option<usize>>,
    pub field: Field,
}

impl GradingSpec {
    /// Colors are 0-based.
    pub fn from_colors(rank: usize, colors: Vec<usize>, field: Field) -> Result<Self> {
        GradingSpec::new(rank, colors.into_iter().map(Some).collect(), field)
    }

    pub fn new(rank: usize, colors: Vec<Option<usize>>, field: Field) -> Result<Self> {
        if let Some(bad) = colors.iter().flatten().find(|&&c| c >= rank) {
            return Err(Error::Precondition(format!("color {} exceeds rank {rank}", bad + 1)));
        }
        Ok(GradingSpec { rank, colors, field })
    }

    pub fn nvars(&self) -> usize {
        self.colors.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn color(&self, var: usize) -> Option<usize> {
        self.colors[var]
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.colors
    }

    pub fn vars_of_color(&self, c: usize) -> Vec<usize> {
        (0..self.nvars()).filter(|&j| self.colors[j] == Some(c)).collect()
    }

    /// Every variable has a unit degree and every color is used.
    pub fn is_standard(&self) -> bool {
        self.colors.iter().all(Option::is_some) && (0..self.rank).all(|c| !self.vars_of_color(c).is_empty())
    }

    pub fn require_standard(&self) -> Result<()> {
        if !self.colors.iter().all(Option::is_some) {
            return Err(Error::NonStandard("some variable has degree 0".into()));
        }
        if let Some(c) = (0..self.rank).find(|&c| self.vars_of_color(c).is_empty()) {
            return Err(Error::NonStandard(format!("color {} has no variable", c + 1)));
        }
        Ok(())
    }

    pub fn var_degree(&self, var: usize) -> DegreeVector {
        match self.colors[var] {
            Some(c) => DegreeVector::unit(self.rank, c),
            None => DegreeVector::zeros(self.rank),
        }
    }

    /// Coarse degree `D·a` of a fine degree.
    pub fn coarse(&self, fine: &[i64]) -> DegreeVector {
        let mut out = vec![0; self.rank];
        for (j, &a) in fine.iter().enumerate() {
            if let Some(c) = self.colors[j] {
                out[c] += a;
            }
        }
        DegreeVector(out)
    }

    /// All monomials of coarse degree `n` (standard gradings only; degree-0
    /// variables would make the set infinite).
    pub fn monomials_of_degree(&self, n: &DegreeVector) -> Result<Vec<Monomial>> {
        self.require_standard()?;
        if n.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: n.rank() });
        }
        if !n.is_nonnegative() {
            return Ok(Vec::new());
        }
        let mut out = vec![vec![0u32; self.nvars()]];
        for c in 0..self.rank {
            let vars = self.vars_of_color(c);
            let mut next = Vec::new();
            for partial in &out {
                for comp in compositions(n.0[c] as u32, vars.len()) {
                    let mut e = partial.clone();
                    for (k, &j) in vars.iter().enumerate() {
                        e[j] = comp[k];
                    }
                    next.push(e);
                }
            }
            out = next;
        }
        let mut monos: Vec<Monomial> = out.into_iter().map(Monomial).collect();
        monos.sort();
        Ok(monos)
    }
}

/// Weak compositions of `total` into `parts` nonnegative parts.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(current.clone());
            return;
        }
        for v in 0..=left {
            current[pos] = v;
            rec(pos + 1, left - v, current, out);
        }
    }
    rec(0, total, &mut current, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j).collect()
    }

    pub fn fine_degree(&self) -> Vec<i64> {
        self.0.iter().map(|&e| i64::from(e)).collect()
    }

    /// Renders as `x^2*y`, `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { names[j].clone() } else { format!("{}^{e}", names[j]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial ideal stored by its minimal generators (sorted). The zero ideal
/// has no generators, the unit ideal has the single generator `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|g| g.0.len() == nvars), "generator length must equal the number of variables");
        MonomialIdeal { nvars, gens: minimalize(gens) }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// The prime-like ideal generated by a set of variables.
    pub fn of_vars<I: IntoIterator<Item = usize>>(nvars: usize, vars: I) -> Self {
        MonomialIdeal::new(nvars, vars.into_iter().map(|j| Monomial::var(nvars, j)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Membership of `x^e` for an exponent vector that may have negative
    /// entries (those are never in the ideal).
    pub fn contains_exponent(&self, e: &[i64]) -> bool {
        e.iter().all(|&x| x >= 0) && self.gens.iter().any(|g| g.0.iter().zip(e).all(|(&a, &b)| i64::from(a) <= b))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))).collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `I : u`.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial(g.0.iter().zip(&u.0).map(|(a, b)| a.saturating_sub(*b)).collect()))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `I : (Π_{j∈F} x_j)^∞`: zero the `F`-coordinates, then re-minimalize.
    pub fn saturate(&self, vars: &BTreeSet<usize>) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial(g.0.iter().enumerate().map(|(j, &e)| if vars.contains(&j) { 0 } else { e }).collect()))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| Monomial(g.0.iter().map(|&e| e.min(1)).collect())).collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `x_j ∈ √I`.
    pub fn radical_contains_var(&self, j: usize) -> bool {
        self.gens.iter().any(|g| g.support().iter().all(|&k| k == j))
    }

    /// Largest exponent of variable `j` among the generators.
    pub fn max_exponent(&self, j: usize) -> u32 {
        self.gens.iter().map(|g| g.0[j]).max().unwrap_or(0)
    }

    /// Minimal primes as variable sets: the minimal covers of the
    /// generator supports.
    pub fn minimal_primes(&self) -> Vec<MonomialPrime> {
        if self.is_unit() {
            return Vec::new();
        }
        let supports: Vec<BTreeSet<usize>> = self.gens.iter().map(Monomial::support).collect();
        let mut covers: Vec<BTreeSet<usize>> = Vec::new();
        let mut subsets: Vec<BTreeSet<usize>> = (0u64..(1u64 << self.nvars))
            .map(|mask| (0..self.nvars).filter(|j| mask >> j & 1 == 1).collect())
            .collect();
        subsets.sort_by_key(BTreeSet::len);
        for v in subsets {
            let covers_all = supports.iter().all(|s| !s.is_disjoint(&v));
            if covers_all && !covers.iter().any(|c| c.is_subset(&v)) {
                covers.push(v);
            }
        }
        let mut primes: Vec<MonomialPrime> = covers.into_iter().map(|vars| MonomialPrime { nvars: self.nvars, vars }).collect();
        primes.sort();
        primes
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.gens.is_empty() {
            return "0".into();
        }
        self.gens.iter().map(|g| g.render(names)).collect::<Vec<_>>().join(", ")
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| (g.0.iter().sum::<u32>(), g.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// The prime `(x_j : j ∈ V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    nvars: usize,
    vars: BTreeSet<usize>,
}

impl MonomialPrime {
    pub fn new<I: IntoIterator<Item = usize>>(nvars: usize, vars: I) -> Result<Self> {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        if let Some(&j) = vars.iter().find(|&&j| j >= nvars) {
            return Err(Error::Precondition(format!("variable index {j} out of range")));
        }
        Ok(MonomialPrime { nvars, vars })
    }

    pub fn maximal(nvars: usize) -> Self {
        MonomialPrime { nvars, vars: (0..nvars).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    /// Variables outside the prime.
    pub fn complement(&self) -> BTreeSet<usize> {
        (0..self.nvars).filter(|j| !self.vars.contains(j)).collect()
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::of_vars(self.nvars, self.vars.iter().copied())
    }

    /// `b ⊆ p`.
    pub fn contains_ideal(&self, b: &MonomialIdeal) -> bool {
        b.gens().iter().all(|g| g.support().iter().any(|j| self.vars.contains(j)))
    }

    pub fn is_maximal(&self) -> bool {
        self.vars.len() == self.nvars
    }

    /// All monomial primes of `k[x_1..x_n]` containing `b`, ordered by size.
    pub fn all_containing(b: &MonomialIdeal) -> Vec<MonomialPrime> {
        let n = b.nvars();
        let mut out: Vec<MonomialPrime> = (0u64..(1u64 << n))
            .map(|mask| MonomialPrime { nvars: n, vars: (0..n).filter(|j| mask >> j & 1 == 1).collect() })
            .filter(|p| p.contains_ideal(b))
            .collect();
        out.sort_by(|a, b| a.vars.len().cmp(&b.vars.len()).then_with(|| a.vars.iter().cmp(b.vars.iter())));
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        let inner: Vec<&str> = self.vars.iter().map(|&j| names[j].as_str()).collect();
        format!("({})", inner.join(","))
    }
}

/// `p ⊂ q` with exactly one extra variable: no graded prime lies between.
pub fn saturated_chain(p: &MonomialPrime, q: &MonomialPrime) -> bool {
    p.vars.is_subset(&q.vars) && q.vars.len() == p.vars.len() + 1
}

/// `dir(b)`: colors all of whose variables lie in `√b`. Degree-0
/// variables (after regrading) are allowed: the ring stays generated over
/// its degree-0 part by the unit-degree components.
pub fn directions(b: &MonomialIdeal, g: &GradingSpec) -> Result<SupportPattern> {
    if let Some(c) = (0..g.rank()).find(|&c| g.vars_of_color(c).is_empty()) {
        return Err(Error::NonStandard(format!("color {} has no variable", c + 1)));
    }
    Ok(SupportPattern::from_indices(
        (0..g.rank()).filter(|&c| g.vars_of_color(c).iter().all(|&j| b.radical_contains_var(j))),
    ))
}

/// `dir(p)` for a monomial prime.
pub fn prime_directions(p: &MonomialPrime, g: &GradingSpec) -> Result<SupportPattern> {
    directions(&p.ideal(), g)
}

/// `R_+`: products of one variable per color, minimalized.
pub fn ideal_rplus(g: &GradingSpec) -> Result<MonomialIdeal> {
    g.require_standard()?;
    let mut gens = vec![Monomial::one(g.nvars())];
    for c in 0..g.rank() {
        gens = gens
            .iter()
            .flat_map(|m| g.vars_of_color(c).into_iter().map(move |j| m.mul(&Monomial::var(m.0.len(), j))))
            .collect();
    }
    Ok(MonomialIdeal::new(g.nvars(), gens))
}

/// `c`: all variables.
pub fn ideal_c(g: &GradingSpec) -> Result<MonomialIdeal> {
    g.require_standard()?;
    Ok(MonomialIdeal::of_vars(g.nvars(), 0..g.nvars()))
}

/// `c^Q`: the variables whose color lies in `q`.
pub fn ideal_cq(g: &GradingSpec, q: &SupportPattern) -> Result<MonomialIdeal> {
    g.require_standard()?;
    if q.iter().any(|c| c >= g.rank()) {
        return Err(Error::PatternViolation(format!("{q} not inside rank {}", g.rank())));
    }
    Ok(MonomialIdeal::of_vars(g.nvars(), (0..g.nvars()).filter(|&j| g.color(j).is_some_and(|c| q.contains(c)))))
}

/// Whether `a ⊇ R_n` for every `n ≥ t`, checked on `max(t,0) + [0,2]^r`.
/// For standard gradings `R_{n+e_i} = R_{e_i}·R_n`, so the corner alone
/// already decides it; the rest of the window is a consistency check.
pub fn upward_closure_holds(a: &MonomialIdeal, t: &DegreeVector, g: &GradingSpec) -> Result<bool> {
    g.require_standard()?;
    let base: Vec<i64> = t.0.iter().map(|&c| c.max(0)).collect();
    let top: Vec<i64> = base.iter().map(|c| c + 2).collect();
    for n in crate::grading::lattice_points(&base, &top) {
        for m in g.monomials_of_degree(&DegreeVector(n))? {
            if !a.contains(&m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    fn e3() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 0, 1], Field::Rational).unwrap()
    }

    #[test]
    fn staircase_examples() {
        let i = MonomialIdeal::new(3, vec![mono(&[2, 1, 0]), mono(&[0, 0, 3])]);
        let sat = i.saturate(&[0].into_iter().collect());
        assert_eq!(sat, MonomialIdeal::new(3, vec![mono(&[0, 1, 0]), mono(&[0, 0, 3])]));
        let r = MonomialIdeal::new(2, vec![mono(&[2, 3])]).radical();
        assert_eq!(r, MonomialIdeal::new(2, vec![mono(&[1, 1])]));
        let c = MonomialIdeal::new(2, vec![mono(&[2, 0]), mono(&[1, 1])]).colon(&mono(&[0, 1]));
        assert_eq!(c, MonomialIdeal::new(2, vec![mono(&[1, 0])]));
    }

    #[test]
    fn zero_and_unit() {
        let z = MonomialIdeal::zero(2);
        assert!(z.is_zero() && !z.contains(&Monomial::one(2)));
        let u = MonomialIdeal::unit(2);
        assert!(u.is_unit() && u.contains(&mono(&[0, 0])));
        assert_eq!(z.saturate(&[0].into_iter().collect()), z);
        assert_eq!(MonomialIdeal::new(2, vec![mono(&[1, 0])]).saturate(&[0].into_iter().collect()), u);
        assert!(z.minimal_primes().len() == 1 && z.minimal_primes()[0].vars().is_empty());
        assert!(u.minimal_primes().is_empty());
    }

    #[test]
    fn direction_examples() {
        let g = e1();
        let xy = MonomialIdeal::new(2, vec![mono(&[1, 1])]);
        assert!(directions(&xy, &g).unwrap().is_empty());
        let x = MonomialIdeal::of_vars(2, [0]);
        assert_eq!(directions(&x, &g).unwrap(), SupportPattern::from_indices([0]));
        let both = MonomialIdeal::of_vars(2, [0, 1]);
        assert_eq!(directions(&both, &g).unwrap(), SupportPattern::full(2));
    }

    #[test]
    fn constructed_ideals() {
        let g = e1();
        assert_eq!(ideal_rplus(&g).unwrap(), MonomialIdeal::new(2, vec![mono(&[1, 1])]));
        assert_eq!(ideal_c(&g).unwrap(), MonomialIdeal::of_vars(2, [0, 1]));
        let g3 = e3();
        assert_eq!(ideal_rplus(&g3).unwrap(), MonomialIdeal::new(3, vec![mono(&[1, 0, 1]), mono(&[0, 1, 1])]));
        assert_eq!(ideal_cq(&g3, &SupportPattern::from_indices([1])).unwrap(), MonomialIdeal::of_vars(3, [2]));
        let r1 = GradingSpec::from_colors(1, vec![0, 0], Field::Rational).unwrap();
        assert_eq!(ideal_c(&r1).unwrap(), ideal_rplus(&r1).unwrap());
        let gap = GradingSpec::from_colors(3, vec![0, 1], Field::Rational).unwrap();
        assert!(ideal_rplus(&gap).is_err());
    }

    #[test]
    fn upward_closure_examples() {
        let g = e1();
        let xy = MonomialIdeal::new(2, vec![mono(&[1, 1])]);
        assert!(upward_closure_holds(&xy, &DegreeVector(vec![1, 1]), &g).unwrap());
        let x = MonomialIdeal::of_vars(2, [0]);
        assert!(upward_closure_holds(&x, &DegreeVector(vec![1, 1]), &g).unwrap());
        let y = MonomialIdeal::of_vars(2, [1]);
        assert!(!upward_closure_holds(&y, &DegreeVector(vec![1, 0]), &g).unwrap());
    }

    #[test]
    fn chains() {
        let x = MonomialPrime::new(3, [0]).unwrap();
        let xy = MonomialPrime::new(3, [0, 1]).unwrap();
        let xyz = MonomialPrime::new(3, [0, 1, 2]).unwrap();
        let y = MonomialPrime::new(3, [1]).unwrap();
        let xz = MonomialPrime::new(3, [0, 2]).unwrap();
        assert!(saturated_chain(&x, &xy));
        assert!(!saturated_chain(&x, &xyz));
        assert!(!saturated_chain(&y, &xz));
    }

    #[test]
    fn monomials_by_degree() {
        let g = e3();
        let ms = g.monomials_of_degree(&DegreeVector(vec![2, 1])).unwrap();
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| g.coarse(&m.fine_degree()) == DegreeVector(vec![2, 1])));
    }
}
