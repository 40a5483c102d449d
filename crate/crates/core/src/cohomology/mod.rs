//! Degreewise Čech and Koszul cohomology of monomial modules.
//!
//! Both complexes are *Boolean*: the term indexed by a subset `T` of a
//! ground set is, per summand and per fine degree, either zero or one
//! dimensional, and differentials send basis elements to ±basis elements
//! or zero. Whether a term is present depends on the fine degree only
//! through finitely many threshold comparisons per coordinate, which gives
//! the cell decomposition in [`cells`].

pub mod cells;
pub mod coarse;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grading::DegreeVector;
use crate::linalg;
use crate::module::{check_direction, colored_monomials, transversals, GradedModule, Summand};
use crate::monomial::{Monomial, MonomialIdeal};

pub use cells::{Cell, CellDecomposition, RegionSet, Shift};
pub use coarse::{component_dim, ComponentDim};

/// `H^i_b(M)` via the Čech complex on the minimal generators of `b`.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub ideal: MonomialIdeal,
    pub module: GradedModule,
}

/// `Ext^i(S/p_V, M[x_F^{-1}])` via the Koszul complex on `x_V`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub vars: BTreeSet<usize>,
    pub localized: BTreeSet<usize>,
    pub module: GradedModule,
}

#[derive(Clone, Debug)]
struct Face {
    localized: BTreeSet<usize>,
    offset: Vec<i64>,
}

/// A complex whose terms are indexed by subsets of `0..ground`, with term
/// `T` equal to `M[x_{F_T}^{-1}]` read in degree `a + offset_T`.
#[derive(Clone, Debug)]
pub struct BooleanComplex {
    module: GradedModule,
    ground: usize,
    faces: Vec<Face>,
    /// `saturated[k][mask]`: summand `k`'s ideal saturated at face `mask`.
    saturated: Vec<Vec<MonomialIdeal>>,
}

impl CechComplex {
    pub fn new(ideal: MonomialIdeal, module: GradedModule) -> Self {
        CechComplex { ideal, module }
    }

    pub fn boolean(&self) -> BooleanComplex {
        let gens: Vec<&Monomial> = self.ideal.gens().iter().collect();
        let n = self.module.nvars();
        let faces = (0..1usize << gens.len())
            .map(|mask| Face {
                localized: (0..gens.len()).filter(|t| mask >> t & 1 == 1).flat_map(|t| gens[t].support()).collect(),
                offset: vec![0; n],
            })
            .collect();
        BooleanComplex::new(self.module.clone(), gens.len(), faces)
    }
}

impl KoszulComplex {
    pub fn new(vars: BTreeSet<usize>, module: GradedModule) -> Self {
        KoszulComplex { vars, localized: BTreeSet::new(), module }
    }

    pub fn localized(vars: BTreeSet<usize>, localized: BTreeSet<usize>, module: GradedModule) -> Self {
        KoszulComplex { vars, localized, module }
    }

    pub fn boolean(&self) -> BooleanComplex {
        let vars: Vec<usize> = self.vars.iter().copied().collect();
        let n = self.module.nvars();
        let faces = (0..1usize << vars.len())
            .map(|mask| {
                let mut offset = vec![0; n];
                for (t, &j) in vars.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        offset[j] = 1;
                    }
                }
                Face { localized: self.localized.clone(), offset }
            })
            .collect();
        BooleanComplex::new(self.module.clone(), vars.len(), faces)
    }
}

impl BooleanComplex {
    fn new(module: GradedModule, ground: usize, faces: Vec<Face>) -> Self {
        let saturated = module
            .summands
            .iter()
            .map(|s| faces.iter().map(|f| s.ideal.saturate(&f.localized)).collect())
            .collect();
        BooleanComplex { module, ground, faces, saturated }
    }

    /// The single-term complex `M[x_F^{-1}]`.
    pub fn localization(module: GradedModule, localized: BTreeSet<usize>) -> Self {
        let n = module.nvars();
        BooleanComplex::new(module, 0, vec![Face { localized, offset: vec![0; n] }])
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn nvars(&self) -> usize {
        self.module.nvars()
    }

    /// Length of the complex: cohomology vanishes above this index.
    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Whether summand `k` has a basis element in face `mask` at degree `a`.
    pub fn present(&self, k: usize, mask: usize, a: &[i64]) -> bool {
        let face = &self.faces[mask];
        let s: &Summand = &self.module.summands[k];
        let mut rel = vec![0i64; a.len()];
        for j in 0..a.len() {
            if face.localized.contains(&j) {
                continue;
            }
            let e = a[j] + face.offset[j] - s.shift[j];
            if e < 0 {
                return false;
            }
            rel[j] = e;
        }
        !self.saturated[k][mask].contains_exponent(&rel)
    }

    /// Bitmask of the faces present for summand `k` at `a`.
    fn presence(&self, k: usize, a: &[i64]) -> Vec<bool> {
        (0..self.faces.len()).map(|mask| self.present(k, mask, a)).collect()
    }

    /// Per-coordinate thresholds `c` at which some presence predicate can
    /// differ between `a_j = c − 1` and `a_j = c`.
    pub(crate) fn thresholds(&self) -> Vec<Vec<i64>> {
        let n = self.nvars();
        (0..n)
            .map(|j| {
                let offsets: BTreeSet<i64> = self.faces.iter().map(|f| f.offset[j]).collect();
                let mut out = BTreeSet::new();
                for s in self.module.summands.iter().filter(|s| !s.is_zero()) {
                    let exps: BTreeSet<i64> =
                        std::iter::once(0).chain(s.ideal.gens().iter().map(|g| i64::from(g.0[j]))).collect();
                    for e in &exps {
                        for o in &offsets {
                            out.insert(s.shift[j] + e - o);
                        }
                    }
                }
                out.into_iter().collect()
            })
            .collect()
    }

    /// Cohomology dimensions `h^0..=h^ground` of the slice at fine degree `a`.
    pub fn slice_dims(&self, a: &[i64]) -> Vec<usize> {
        let mut total = vec![0; self.ground + 1];
        for k in 0..self.module.summands.len() {
            if self.module.summands[k].is_zero() {
                continue;
            }
            let present = self.presence(k, a);
            for (i, d) in self.summand_dims(&present).into_iter().enumerate() {
                total[i] += d;
            }
        }
        total
    }

    fn summand_dims(&self, present: &[bool]) -> Vec<usize> {
        let field = self.module.grading.field;
        let sizes: Vec<usize> = (0..=self.ground).map(|i| self.faces_of_size(present, i).len()).collect();
        let ranks: Vec<usize> = (0..=self.ground).map(|i| linalg::rank(&self.differential(present, present, i), field)).collect();
        (0..=self.ground)
            .map(|i| sizes[i] - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
            .collect()
    }

    fn faces_of_size(&self, present: &[bool], size: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&m| present[m] && (m as u32).count_ones() as usize == size).collect()
    }

    /// `d^i: C^i → C^{i+1}` as rows over columns, restricted to present faces.
    fn differential(&self, src: &[bool], dst: &[bool], i: usize) -> Vec<Vec<i64>> {
        let cols = self.faces_of_size(src, i);
        let rows = self.faces_of_size(dst, i + 1);
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        if c & r != c {
                            return 0;
                        }
                        let added = (r ^ c).trailing_zeros();
                        let below = (c & ((1usize << added) - 1)).count_ones();
                        if below.is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether the map `H^i` at `a` → `H^i` at `b` induced by multiplication
    /// (identity on surviving basis elements) vanishes, for one summand.
    fn summand_map_is_zero(&self, i: usize, src: &[bool], dst: &[bool]) -> bool {
        let field = self.module.grading.field;
        let z_cols = self.faces_of_size(src, i);
        let y_cols = if i > 0 { self.faces_of_size(dst, i - 1) } else { Vec::new() };
        let targets = self.faces_of_size(dst, i);
        let d = self.differential(src, src, i);
        let d_prev = if i > 0 { self.differential(dst, dst, i - 1) } else { Vec::new() };
        // Block [[d, 0], [P, -d']] on (z, y). The map vanishes iff
        // nullity(block) - nullity(d') = nullity(d).
        let width = z_cols.len() + y_cols.len();
        let mut block: Vec<Vec<i64>> = Vec::new();
        for row in &d {
            let mut r = row.clone();
            r.resize(width, 0);
            block.push(r);
        }
        for (t_idx, &t) in targets.iter().enumerate() {
            let mut r: Vec<i64> = z_cols.iter().map(|&c| i64::from(c == t)).collect();
            if i > 0 {
                r.extend(d_prev[t_idx].iter().map(|v| -v));
            }
            block.push(r);
        }
        let null_block = linalg::nullity(&block, width, field);
        let null_d = linalg::nullity(&d, z_cols.len(), field);
        let null_prev = if i > 0 { linalg::nullity(&d_prev, y_cols.len(), field) } else { 0 };
        null_block - null_prev == null_d
    }

    /// Whether the multiplication map `H^i_a → H^i_b` is zero (summed over
    /// summands). `a ≤ b` componentwise is expected.
    pub fn map_is_zero(&self, i: usize, a: &[i64], b: &[i64]) -> bool {
        if i > self.ground {
            return true;
        }
        (0..self.module.summands.len()).filter(|&k| !self.module.summands[k].is_zero()).all(|k| {
            let src = self.presence(k, a);
            let dst = self.presence(k, b);
            let chain: Vec<bool> = src.iter().zip(&dst).map(|(x, y)| *x && *y).collect();
            if !chain.iter().any(|&c| c) {
                return true;
            }
            self.summand_map_is_zero(i, &src, &dst)
        })
    }
}

/// Cohomology dimensions of the complex at one fine degree.
pub fn fine_slice_cohomology(c: &BooleanComplex, a: &[i64]) -> Vec<usize> {
    c.slice_dims(a)
}

/// Fine support of `(S(−a0)/I)[x_F^{-1}]` as a disjoint box union.
pub fn localization_support(summand: &Summand, localized: &BTreeSet<usize>, module_grading: &crate::monomial::GradingSpec) -> RegionSet {
    let module = GradedModule { grading: module_grading.clone(), summands: vec![summand.clone()] };
    let c = BooleanComplex::localization(module, localized.clone());
    CellDecomposition::build(&c).region(0)
}

/// Fine support of `H^i_b(M)` with dimension payloads.
pub fn global_support(b: &MonomialIdeal, m: &GradedModule, i: usize) -> RegionSet {
    let c = CechComplex::new(b.clone(), m.clone()).boolean();
    CellDecomposition::build(&c).region(i)
}

/// Least `u` with `R_{u·m}·H^i_b(M) = 0`, or `None` when `R_m ⊄ √ann`.
pub fn annihilation_exponent(b: &MonomialIdeal, m: &GradedModule, i: usize, dir: &DegreeVector) -> Result<Option<u64>> {
    let c = CechComplex::new(b.clone(), m.clone()).boolean();
    let cells = CellDecomposition::build(&c);
    annihilation_on(&cells, i, dir)
}

/// [`annihilation_exponent`] on a prebuilt decomposition.
pub fn annihilation_on(cells: &CellDecomposition, i: usize, dir: &DegreeVector) -> Result<Option<u64>> {
    let g = &cells.complex().module().grading;
    check_direction(dir, g.rank())?;
    if cells.nonzero_cells(i).is_empty() {
        return Ok(Some(0));
    }
    let n = g.nvars();
    let pm: Vec<usize> = dir.support().iter().collect();
    if pm.iter().any(|&c| g.vars_of_color(c).is_empty()) {
        // R_{um} = 0 for u ≥ 1.
        return Ok(Some(1));
    }
    for w in transversals(g, &pm) {
        let shifts: Vec<Shift> = (0..n).map(|j| if w.contains(&j) { Shift::Stable } else { Shift::Exact(0) }).collect();
        if !cells.kills(i, &shifts) {
            return Ok(None);
        }
    }
    let spread = cells.max_spread();
    let bound = pm
        .iter()
        .map(|&c| {
            let nc = g.vars_of_color(c).len() as i64;
            (spread * nc + dir.0[c] - 1) / dir.0[c]
        })
        .max()
        .unwrap_or(1)
        .max(1) as u64;
    for u in 1..=bound {
        let all_kill = colored_monomials(g, &dir.scaled(u as i64))
            .iter()
            .all(|v| cells.kills(i, &v.iter().map(|&e| Shift::Exact(e)).collect::<Vec<_>>()));
        if all_kill {
            return Ok(Some(u));
        }
    }
    Err(Error::Inconsistent(format!("annihilation exponent exceeds the stabilization bound {bound}")))
}

/// Whether `x^v ∈ √(0 : H^i)` for the complex behind `cells`.
pub fn monomial_is_nilpotent(cells: &CellDecomposition, i: usize, v: &Monomial) -> bool {
    let support = v.support();
    let shifts: Vec<Shift> =
        (0..cells.complex().nvars()).map(|j| if support.contains(&j) { Shift::Stable } else { Shift::Exact(0) }).collect();
    cells.kills(i, &shifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{Interval, LatticeBox};
    use crate::monomial::{Field, GradingSpec};

    fn e1() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| Monomial(g.to_vec())).collect())
    }

    #[test]
    fn localization_examples() {
        let g = e1();
        let x: BTreeSet<usize> = [0].into_iter().collect();
        let y: BTreeSet<usize> = [1].into_iter().collect();
        let sx = Summand::new(vec![0, 0], ideal(&[&[1, 0]]));
        assert!(localization_support(&sx, &x, &g).is_empty());
        let free = Summand::free(2);
        let r = localization_support(&free, &x, &g);
        assert_eq!(r.boxes(), vec![LatticeBox(vec![Interval::ALL, Interval::at_least(0)])]);
        let s = Summand::new(vec![0, 0], ideal(&[&[2, 1]]));
        let r = localization_support(&s, &y, &g);
        assert_eq!(r.boxes(), vec![LatticeBox(vec![Interval::closed(0, 1), Interval::ALL])]);
    }

    #[test]
    fn slice_examples() {
        let g = e1();
        let s = GradedModule::free(g);
        let cech = CechComplex::new(MonomialIdeal::of_vars(2, [0, 1]), s.clone()).boolean();
        assert_eq!(fine_slice_cohomology(&cech, &[-1, -1]), vec![0, 0, 1]);
        let kos = KoszulComplex::new([0, 1].into_iter().collect(), s).boolean();
        assert_eq!(fine_slice_cohomology(&kos, &[-1, -1]), vec![0, 0, 1]);
        assert_eq!(fine_slice_cohomology(&kos, &[3, -4]), vec![0, 0, 0]);
    }

    #[test]
    fn global_support_examples() {
        let g = e1();
        let s = GradedModule::free(g);
        let x = MonomialIdeal::of_vars(2, [0]);
        let h1 = global_support(&x, &s, 1);
        assert_eq!(h1.boxes(), vec![LatticeBox(vec![Interval::at_most(-1), Interval::at_least(0)])]);
        assert!(h1.cells.iter().all(|c| c.dim == 1));
        assert!(global_support(&x, &s, 0).is_empty());
        let h2 = global_support(&MonomialIdeal::of_vars(2, [0, 1]), &s, 2);
        assert_eq!(h2.boxes(), vec![LatticeBox(vec![Interval::at_most(-1), Interval::at_most(-1)])]);
    }

    #[test]
    fn trivial_ideals() {
        let s = GradedModule::free(e1());
        let zero = MonomialIdeal::zero(2);
        assert_eq!(global_support(&zero, &s, 0).boxes(), vec![LatticeBox(vec![Interval::at_least(0), Interval::at_least(0)])]);
        let unit = MonomialIdeal::unit(2);
        assert!(global_support(&unit, &s, 0).is_empty() && global_support(&unit, &s, 1).is_empty());
    }

    #[test]
    fn annihilation_examples() {
        let g = e1();
        let sx = GradedModule::cyclic(g, MonomialIdeal::of_vars(2, [0]));
        let y = MonomialIdeal::of_vars(2, [1]);
        assert_eq!(annihilation_exponent(&y, &sx, 1, &DegreeVector(vec![1, 0])).unwrap(), Some(1));
        assert_eq!(annihilation_exponent(&y, &sx, 1, &DegreeVector(vec![0, 1])).unwrap(), None);
        assert_eq!(annihilation_exponent(&y, &sx, 0, &DegreeVector(vec![0, 1])).unwrap(), Some(0));
    }
}
