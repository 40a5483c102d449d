//! Brute-force reference computations on finite windows.
//!
//! Every degree is handled on its own: the localization `M_y` is probed by
//! explicit monomial membership after multiplying by a large power of `y`,
//! and ranks come from plain dense elimination. Keep this module naive. It
//! is the independent witness for the cell engine and must not share its
//! algorithms (only the field arithmetic in [`crate::linalg`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::cohomology::{CechComplex, KoszulComplex};
use crate::grading::{lattice_points, DegreeVector, PointSet};
use crate::linalg::{Arith, PrimeArith, RationalArith};
use crate::module::GradedModule;
use crate::monomial::{Field, Monomial};

/// Box `[lo, hi]` of fine degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert!(lo.len() == hi.len() && lo.iter().zip(&hi).all(|(l, h)| l <= h), "window needs lo <= hi");
        Window { lo, hi }
    }

    pub fn cube(n: usize, lo: i64, hi: i64) -> Self {
        Window::new(vec![lo; n], vec![hi; n])
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> {
        lattice_points(&self.lo, &self.hi)
    }
}

/// Input complex for the oracle.
#[derive(Clone, Copy, Debug)]
pub enum OracleComplex<'a> {
    Cech(&'a CechComplex),
    Koszul(&'a KoszulComplex),
}

/// One explicit term of the complex: which generator exponents are
/// inverted and the degree offset.
struct Term {
    subset: Vec<usize>,
    inverted: Vec<u32>,
    offset: Vec<i64>,
}

struct Explicit<'a> {
    module: &'a GradedModule,
    terms: Vec<Term>,
    length: usize,
}

impl<'a> Explicit<'a> {
    fn new(c: OracleComplex<'a>) -> Self {
        match c {
            OracleComplex::Cech(cech) => {
                let n = cech.module.nvars();
                let gens = cech.ideal.gens();
                let terms = subsets(gens.len())
                    .into_iter()
                    .map(|subset| {
                        let mut inverted = vec![0u32; n];
                        for &t in &subset {
                            for (acc, e) in inverted.iter_mut().zip(&gens[t].0) {
                                *acc += e;
                            }
                        }
                        Term { subset, inverted, offset: vec![0; n] }
                    })
                    .collect();
                Explicit { module: &cech.module, terms, length: gens.len() }
            }
            OracleComplex::Koszul(k) => {
                let n = k.module.nvars();
                let vars: Vec<usize> = k.vars.iter().copied().collect();
                let inverted: Vec<u32> = (0..n).map(|j| u32::from(k.localized.contains(&j))).collect();
                let terms = subsets(vars.len())
                    .into_iter()
                    .map(|subset| {
                        let mut offset = vec![0i64; n];
                        for &t in &subset {
                            offset[vars[t]] += 1;
                        }
                        Term { subset, inverted: inverted.clone(), offset }
                    })
                    .collect();
                Explicit { module: &k.module, terms, length: vars.len() }
            }
        }
    }

    /// Whether `x^a` times generator `k` is a nonzero element of the
    /// localization at the monomial with exponents `inverted`.
    fn alive(&self, k: usize, inverted: &[u32], a: &[i64]) -> bool {
        let s = &self.module.summands[k];
        let power = 1 + a.iter().zip(&s.shift).map(|(x, y)| (x - y).abs()).max().unwrap_or(0)
            + (0..a.len()).map(|j| i64::from(s.ideal.max_exponent(j))).max().unwrap_or(0);
        let e: Vec<i64> = (0..a.len()).map(|j| a[j] - s.shift[j] + power * i64::from(inverted[j])).collect();
        if e.iter().any(|&v| v < 0) {
            return false;
        }
        let mono = Monomial(e.iter().map(|&v| v as u32).collect());
        !s.ideal.contains(&mono)
    }

    /// Basis of `C^i` at degree `a`: pairs (term index, summand index).
    fn basis(&self, i: usize, a: &[i64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, term) in self.terms.iter().enumerate() {
            if term.subset.len() != i {
                continue;
            }
            let shifted: Vec<i64> = a.iter().zip(&term.offset).map(|(x, o)| x + o).collect();
            for k in 0..self.module.summands.len() {
                if self.alive(k, &term.inverted, &shifted) {
                    out.push((t, k));
                }
            }
        }
        out
    }

    /// `d^i` at degree `a` as a dense integer matrix (rows: `C^{i+1}`).
    fn differential(&self, i: usize, a: &[i64]) -> (Vec<Vec<i64>>, usize) {
        let cols = self.basis(i, a);
        let rows = self.basis(i + 1, a);
        let m = rows
            .iter()
            .map(|&(rt, rk)| {
                cols.iter()
                    .map(|&(ct, ck)| {
                        if rk != ck {
                            return 0;
                        }
                        let (big, small) = (&self.terms[rt].subset, &self.terms[ct].subset);
                        let extra: Vec<usize> = big.iter().filter(|x| !small.contains(x)).copied().collect();
                        if extra.len() != 1 || !small.iter().all(|x| big.contains(x)) {
                            return 0;
                        }
                        let pos = small.iter().filter(|&&x| x < extra[0]).count();
                        if pos % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        (m, cols.len())
    }
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0..1usize << k).map(|mask| (0..k).filter(|t| mask >> t & 1 == 1).collect()).collect()
}

// Row updates read the pivot row while writing another.
#[allow(clippy::needless_range_loop)]
fn dense_rank<A: Arith>(f: &A, rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<A::Elem>> = rows.iter().map(|r| r.iter().map(|&v| f.embed(v)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(&m[rank][col]);
        for r in 0..m.len() {
            if r != rank && !f.is_zero(&m[r][col]) {
                let factor = f.mul(&m[r][col], &inv);
                for c in 0..ncols {
                    let t = f.mul(&factor, &m[rank][c]);
                    m[r][c] = f.sub(&m[r][c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_rank(field: Field, rows: &[Vec<i64>]) -> usize {
    match field {
        Field::Rational => dense_rank(&RationalArith, rows),
        Field::Prime(p) => dense_rank(&PrimeArith { p: u64::from(p) }, rows),
    }
}

fn dims_at(x: &Explicit<'_>, a: &[i64]) -> Vec<usize> {
    let field = x.module.grading.field;
    let ranks: Vec<usize> = (0..=x.length).map(|i| oracle_rank(field, &x.differential(i, a).0)).collect();
    (0..=x.length)
        .map(|i| x.basis(i, a).len() - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
        .collect()
}

/// Per-degree cohomology dimensions on every point of the window.
pub fn windowed_cohomology(c: OracleComplex<'_>, w: &Window) -> BTreeMap<Vec<i64>, Vec<usize>> {
    let x = Explicit::new(c);
    w.points().map(|a| {
        let d = dims_at(&x, &a);
        (a, d)
    }).collect()
}

/// Cohomology dimensions at a single fine degree.
pub fn cohomology_at(c: OracleComplex<'_>, a: &[i64]) -> Vec<usize> {
    dims_at(&Explicit::new(c), a)
}

/// Rank of multiplication by `x^v` from `H^i_a` to `H^i_{a+v}`.
///
/// Computed as `rank [B ; P·Z] − rank B`, where `Z` spans the cocycles at
/// `a` (found by exact nullspace over `Q` or `F_p`) and `B` the
/// coboundaries at `a + v`.
pub fn multiplication_rank(c: OracleComplex<'_>, i: usize, a: &[i64], v: &[i64]) -> usize {
    let x = Explicit::new(c);
    let field = x.module.grading.field;
    let b: Vec<i64> = a.iter().zip(v).map(|(p, q)| p + q).collect();
    let src = x.basis(i, a);
    let dst = x.basis(i, &b);
    let (d, ncols) = x.differential(i, a);
    let cocycles = nullspace(field, &d, ncols);
    // Coboundaries at b: columns of d^{i-1}, written as rows.
    let mut rows: Vec<Vec<i64>> = Vec::new();
    if i > 0 {
        let (dp, pcols) = x.differential(i - 1, &b);
        for col in 0..pcols {
            rows.push(dp.iter().map(|r| r[col]).collect());
        }
    }
    let base = oracle_rank(field, &rows);
    for z in cocycles {
        rows.push(dst.iter().map(|t| src.iter().position(|s| s == t).map_or(0, |k| z[k])).collect());
    }
    oracle_rank(field, &rows) - base
}

/// Integer-scaled nullspace basis of an integer matrix.
fn nullspace(field: Field, rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    match field {
        Field::Rational => rational_nullspace(rows, ncols),
        Field::Prime(p) => prime_nullspace(u64::from(p), rows, ncols),
    }
}

fn rational_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let f = RationalArith;
    let (rref, pivots) = reduce(&f, rows, ncols);
    free_columns(&pivots, ncols)
        .into_iter()
        .map(|free| {
            let mut v = vec![f.embed(0); ncols];
            v[free] = f.embed(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(&f.embed(0), &rref[r][free]);
            }
            let denom = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            v.iter()
                .map(|q| {
                    let scaled = q.numer() * (&denom / q.denom());
                    i64::try_from(scaled).expect("nullspace entry fits in i64")
                })
                .collect()
        })
        .collect()
}

fn prime_nullspace(p: u64, rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let f = PrimeArith { p };
    let (rref, pivots) = reduce(&f, rows, ncols);
    free_columns(&pivots, ncols)
        .into_iter()
        .map(|free| {
            let mut v = vec![0i64; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(&0, &rref[r][free]) as i64;
            }
            v
        })
        .collect()
}

// Row updates read the pivot row while writing another.
#[allow(clippy::needless_range_loop)]
fn reduce<A: Arith>(f: &A, rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<A::Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<A::Elem>> = rows.iter().map(|r| r.iter().map(|&v| f.embed(v)).collect()).collect();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let r0 = pivots.len();
        let Some(p) = (r0..m.len()).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(r0, p);
        let inv = f.inv(&m[r0][col]);
        for c in 0..ncols {
            m[r0][c] = f.mul(&m[r0][c], &inv);
        }
        for r in 0..m.len() {
            if r != r0 && !f.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let t = f.mul(&factor, &m[r0][c]);
                    m[r][c] = f.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push(col);
    }
    (m, pivots)
}

fn free_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..ncols).filter(|c| !set.contains(c)).collect()
}

/// Maximal elements by exhaustive pairwise comparison.
pub fn brute_force_max(points: &[DegreeVector]) -> PointSet {
    PointSet::finite(
        points.iter().filter(|p| !points.iter().any(|q| q != *p && p.leq(q))).cloned(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{GradingSpec, MonomialIdeal};

    fn ring() -> GradingSpec {
        GradingSpec::from_colors(2, vec![0, 1], Field::Rational).unwrap()
    }

    #[test]
    fn top_cohomology_of_plane() {
        let c = CechComplex::new(MonomialIdeal::of_vars(2, [0, 1]), GradedModule::free(ring()));
        let out = windowed_cohomology(OracleComplex::Cech(&c), &Window::cube(2, -3, 2));
        for (a, d) in out {
            let expect = if a[0] <= -1 && a[1] <= -1 { vec![0, 0, 1] } else { vec![0, 0, 0] };
            assert_eq!(d, expect, "at {a:?}");
        }
    }

    #[test]
    fn koszul_on_x() {
        let k = KoszulComplex::new([0].into_iter().collect(), GradedModule::free(ring()));
        let out = windowed_cohomology(OracleComplex::Koszul(&k), &Window::cube(2, -2, 2));
        for (a, d) in out {
            let expect = usize::from(a[0] == -1 && a[1] >= 0);
            assert_eq!(d, vec![0, expect], "at {a:?}");
        }
    }

    #[test]
    fn empty_module_is_zero() {
        let c = CechComplex::new(MonomialIdeal::of_vars(2, [0]), GradedModule::zero(ring()));
        assert!(windowed_cohomology(OracleComplex::Cech(&c), &Window::cube(2, -2, 2)).values().all(|d| d.iter().all(|&x| x == 0)));
    }

    #[test]
    fn multiplication_by_y_on_local_cohomology() {
        let sx = GradedModule::cyclic(ring(), MonomialIdeal::of_vars(2, [0]));
        let c = CechComplex::new(MonomialIdeal::of_vars(2, [1]), sx);
        assert_eq!(multiplication_rank(OracleComplex::Cech(&c), 1, &[0, -3], &[0, 1]), 1);
        assert_eq!(multiplication_rank(OracleComplex::Cech(&c), 1, &[0, -1], &[0, 1]), 0);
        assert_eq!(multiplication_rank(OracleComplex::Cech(&c), 1, &[0, -3], &[1, 0]), 0);
    }

    #[test]
    fn maxima() {
        let pts: Vec<DegreeVector> = vec![vec![0, 0].into(), vec![1, 0].into(), vec![0, 1].into()];
        assert_eq!(brute_force_max(&pts), PointSet::finite(vec![vec![1, 0].into(), vec![0, 1].into()]));
        assert_eq!(brute_force_max(&[]), PointSet::empty());
    }
}
