//! Coarse lattice Z^r: degree vectors, support patterns, coordinate
//! projections, box unions, maximal elements, domination and the
//! half-open strip sets `X(s,t)`.
//!
//! Indices are 0-based internally; `Display` impls print 1-based
//! patterns to match the instance format.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn zeros(rank: usize) -> Self {
        DegreeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DegreeVector(v)
    }

    pub fn ones(rank: usize) -> Self {
        DegreeVector(vec![1; rank])
    }

    pub fn constant(rank: usize, value: i64) -> Self {
        DegreeVector(vec![value; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &DegreeVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `P(n)`: indices of the nonzero coordinates.
    pub fn support(&self) -> SupportPattern {
        SupportPattern(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn scaled(&self, factor: i64) -> DegreeVector {
        DegreeVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn componentwise_min(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn componentwise_max(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: self.rank() });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for DegreeVector {
    fn from(v: Vec<i64>) -> Self {
        DegreeVector(v)
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;
    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in addition");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeVector {
    type Output = DegreeVector;
    fn sub(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in subtraction");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subset of `{0, …, r-1}`; houses `P(n)`, `Q` and direction sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SupportPattern(pub BTreeSet<usize>);

impl SupportPattern {
    pub fn empty() -> Self {
        SupportPattern(BTreeSet::new())
    }

    pub fn full(rank: usize) -> Self {
        SupportPattern((0..rank).collect())
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SupportPattern(indices.into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_subset(&self, other: &SupportPattern) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Indicator vector of the pattern in `Z^rank`.
    pub fn indicator(&self, rank: usize) -> DegreeVector {
        let mut v = vec![0; rank];
        for i in self.iter() {
            v[i] = 1;
        }
        DegreeVector(v)
    }

    /// All subsets, ordered by size and then lexicographically.
    pub fn all_subsets(rank: usize) -> Vec<SupportPattern> {
        let mut out: Vec<SupportPattern> = (0u32..(1u32 << rank))
            .map(|mask| SupportPattern((0..rank).filter(|i| mask >> i & 1 == 1).collect()))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.iter().cmp(b.0.iter())));
        out
    }
}

impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Integer interval; `None` bounds are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn new(lo: Option<i64>, hi: Option<i64>) -> Self {
        Interval { lo, hi }
    }

    pub fn closed(lo: i64, hi: i64) -> Self {
        Interval { lo: Some(lo), hi: Some(hi) }
    }

    pub fn point(v: i64) -> Self {
        Interval::closed(v, v)
    }

    pub fn at_least(lo: i64) -> Self {
        Interval { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: i64) -> Self {
        Interval { lo: None, hi: Some(hi) }
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|l| l <= v) && self.hi.is_none_or(|h| v <= h)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    /// Number of integer points; `None` when infinite.
    pub fn count(&self) -> Option<u128> {
        match (self.lo, self.hi) {
            (Some(l), Some(h)) if l > h => Some(0),
            (Some(l), Some(h)) => Some((h - l + 1) as u128),
            _ => None,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Interval { lo, hi }
    }

    pub fn shifted(&self, d: i64) -> Interval {
        Interval { lo: self.lo.map(|l| l + d), hi: self.hi.map(|h| h + d) }
    }

    /// Minkowski sum of two nonempty intervals.
    pub fn minkowski(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.zip(other.lo).map(|(a, b)| a + b),
            hi: self.hi.zip(other.hi).map(|(a, b)| a + b),
        }
    }

    fn scaled(&self, k: i64) -> Interval {
        debug_assert!(k >= 0);
        if k == 0 {
            return Interval::point(0);
        }
        Interval { lo: self.lo.map(|l| l * k), hi: self.hi.map(|h| h * k) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(l), Some(h)) if l == h => write!(f, "{{{l}}}"),
            (Some(l), Some(h)) => write!(f, "[{l},{h}]"),
            (Some(l), None) => write!(f, "[{l},inf)"),
            (None, Some(h)) => write!(f, "(-inf,{h}]"),
            (None, None) => write!(f, "Z"),
        }
    }
}

/// Product of intervals, one per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticeBox(pub Vec<Interval>);

impl LatticeBox {
    pub fn full(rank: usize) -> Self {
        LatticeBox(vec![Interval::ALL; rank])
    }

    pub fn point(p: &DegreeVector) -> Self {
        LatticeBox(p.0.iter().map(|&c| Interval::point(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().any(Interval::is_empty)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.0.len() == p.len() && self.0.iter().zip(p).all(|(iv, &v)| iv.contains(v))
    }

    /// Upper corner when bounded above in every coordinate.
    pub fn upper_corner(&self) -> Option<DegreeVector> {
        self.0.iter().map(|iv| iv.hi).collect::<Option<Vec<_>>>().map(DegreeVector)
    }

    pub fn is_bounded(&self) -> bool {
        self.0.iter().all(Interval::is_bounded)
    }

    pub fn intersect(&self, other: &LatticeBox) -> LatticeBox {
        LatticeBox(self.0.iter().zip(&other.0).map(|(a, b)| a.intersect(b)).collect())
    }

    pub fn select(&self, kept: &[usize]) -> LatticeBox {
        LatticeBox(kept.iter().map(|&i| self.0[i]).collect())
    }

    /// Integer points of a bounded box in lexicographic order.
    pub fn points(&self) -> Option<Vec<DegreeVector>> {
        let lo: Vec<i64> = self.0.iter().map(|iv| iv.lo).collect::<Option<_>>()?;
        let hi: Vec<i64> = self.0.iter().map(|iv| iv.hi).collect::<Option<_>>()?;
        Some(lattice_points(&lo, &hi).map(DegreeVector).collect())
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Iterates the integer points of `[lo, hi]` in lexicographic order.
pub fn lattice_points(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = Vec<i64>> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let empty = lo.iter().zip(&hi).any(|(l, h)| l > h);
    let mut next = if empty { None } else { Some(lo.clone()) };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < hi[k] {
                succ[k] += 1;
                next = Some(succ);
                break;
            }
            succ[k] = lo[k];
        }
        Some(current)
    })
}

/// A set of degrees: finite list or finite union of boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    Finite(Vec<DegreeVector>),
    Region(Vec<LatticeBox>),
}

impl PointSet {
    /// Sorted, duplicate-free finite set.
    pub fn finite<I: IntoIterator<Item = DegreeVector>>(points: I) -> Self {
        let set: BTreeSet<DegreeVector> = points.into_iter().collect();
        PointSet::Finite(set.into_iter().collect())
    }

    /// Box union with empty boxes dropped, sorted and deduplicated.
    pub fn region<I: IntoIterator<Item = LatticeBox>>(boxes: I) -> Self {
        let set: BTreeSet<LatticeBox> = boxes.into_iter().filter(|b| !b.is_empty()).collect();
        PointSet::Region(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        PointSet::Finite(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            PointSet::Finite(p) => p.is_empty(),
            PointSet::Region(b) => b.iter().all(LatticeBox::is_empty),
        }
    }

    pub fn boxes(&self) -> Vec<LatticeBox> {
        match self {
            PointSet::Finite(p) => p.iter().map(LatticeBox::point).collect(),
            PointSet::Region(b) => b.iter().filter(|b| !b.is_empty()).cloned().collect(),
        }
    }

    pub fn contains(&self, n: &DegreeVector) -> bool {
        match self {
            PointSet::Finite(p) => p.contains(n),
            PointSet::Region(b) => b.iter().any(|bx| bx.contains(&n.0)),
        }
    }

    /// Finite points, or `None` for a region that is not a finite union of
    /// bounded boxes.
    pub fn to_points(&self) -> Option<Vec<DegreeVector>> {
        match self {
            PointSet::Finite(p) => Some(p.clone()),
            PointSet::Region(b) => {
                let mut all = BTreeSet::new();
                for bx in b {
                    all.extend(bx.points()?);
                }
                Some(all.into_iter().collect())
            }
        }
    }

    pub fn project(&self, phi: &Projection) -> Result<PointSet> {
        match self {
            PointSet::Finite(p) => Ok(PointSet::finite(p.iter().map(|n| phi.apply(n)).collect::<Result<Vec<_>>>()?)),
            PointSet::Region(b) => Ok(PointSet::region(b.iter().map(|bx| phi.apply_box(bx)).collect::<Result<Vec<_>>>()?)),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        match (self, other) {
            (PointSet::Finite(a), PointSet::Finite(b)) => PointSet::finite(a.iter().chain(b).cloned()),
            _ => PointSet::region(self.boxes().into_iter().chain(other.boxes())),
        }
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSet::Finite(p) => {
                write!(f, "{{")?;
                for (k, n) in p.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, "}}")
            }
            PointSet::Region(b) => {
                if b.is_empty() {
                    return write!(f, "{{}}");
                }
                for (k, bx) in b.iter().enumerate() {
                    if k > 0 {
                        write!(f, " u ")?;
                    }
                    write!(f, "{bx}")?;
                }
                Ok(())
            }
        }
    }
}

/// The ≤-maximal members of `sigma`, sorted lexicographically.
///
/// Only upper corners of boxes bounded above can be maximal: a maximal
/// point of a box must be its top corner.
pub fn maximal_elements(sigma: &PointSet) -> PointSet {
    let boxes = sigma.boxes();
    let mut out = Vec::new();
    for corner in boxes.iter().filter_map(LatticeBox::upper_corner) {
        let beaten = boxes.iter().any(|other| strictly_above_in(other, &corner));
        if !beaten {
            out.push(corner);
        }
    }
    PointSet::finite(out)
}

/// Whether the nonempty box holds a point `y ≥ c` with `y ≠ c`.
fn strictly_above_in(bx: &LatticeBox, c: &DegreeVector) -> bool {
    let mut strict = false;
    for (iv, &ci) in bx.0.iter().zip(&c.0) {
        match iv.hi {
            Some(h) if h < ci => return false,
            Some(h) if h == ci => {}
            _ => strict = true,
        }
    }
    strict
}

/// `sigma ≼ delta`: every point of `sigma` lies below some point of `delta`.
pub fn dominates(sigma: &PointSet, delta: &PointSet) -> bool {
    let targets = delta.boxes();
    let finite_tops: Vec<Vec<i64>> = {
        let rank = targets.first().map_or(0, LatticeBox::rank);
        (0..rank)
            .map(|i| targets.iter().filter_map(|d| d.0[i].hi).collect())
            .collect()
    };
    sigma.boxes().iter().all(|bx| {
        // Test point: the box top where finite, otherwise past every finite
        // top of delta. It lies below a single delta box iff the whole box does.
        let probe: Vec<i64> = bx
            .0
            .iter()
            .enumerate()
            .map(|(i, iv)| match iv.hi {
                Some(h) => h,
                None => {
                    let past = finite_tops.get(i).and_then(|t| t.iter().max().copied());
                    match (iv.lo, past) {
                        (Some(l), Some(p)) => l.max(p + 1),
                        (Some(l), None) => l,
                        (None, Some(p)) => p + 1,
                        (None, None) => 0,
                    }
                }
            })
            .collect();
        targets.iter().any(|d| d.0.iter().zip(&probe).all(|(iv, &v)| iv.hi.is_none_or(|h| v <= h)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ProjectionMap {
    Coordinates(Vec<usize>),
    /// Rows are target coordinates; entries nonnegative.
    Matrix(Vec<Vec<i64>>),
}

/// Group homomorphism `Z^r → Z^m`, either a coordinate selection or a
/// nonnegative integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    source_rank: usize,
    map: ProjectionMap,
}

impl Projection {
    pub fn coordinates(source_rank: usize, kept: &SupportPattern) -> Result<Self> {
        if kept.iter().any(|i| i >= source_rank) {
            return Err(Error::PatternViolation(format!("{kept} not inside rank {source_rank}")));
        }
        Ok(Projection { source_rank, map: ProjectionMap::Coordinates(kept.iter().collect()) })
    }

    pub fn identity(rank: usize) -> Self {
        Projection { source_rank: rank, map: ProjectionMap::Coordinates((0..rank).collect()) }
    }

    pub fn matrix(source_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        for row in &rows {
            if row.len() != source_rank {
                return Err(Error::RankMismatch { expected: source_rank, found: row.len() });
            }
            if row.iter().any(|&e| e < 0) {
                return Err(Error::Precondition("projection matrix entries must be nonnegative".into()));
            }
        }
        Ok(Projection { source_rank, map: ProjectionMap::Matrix(rows) })
    }

    /// The coordinate-sum map `n ↦ (n_i + n_j, …)` merging `merged` into a
    /// single leading coordinate and keeping the rest in order.
    pub fn merge(source_rank: usize, merged: &SupportPattern) -> Result<Self> {
        let mut rows = vec![(0..source_rank).map(|i| i64::from(merged.contains(i))).collect::<Vec<_>>()];
        for i in (0..source_rank).filter(|i| !merged.contains(*i)) {
            rows.push((0..source_rank).map(|k| i64::from(k == i)).collect());
        }
        Projection::matrix(source_rank, rows)
    }

    /// `φ(p;b)`: selects the positions of `inner` inside `outer`.
    pub fn between(outer: &SupportPattern, inner: &SupportPattern) -> Result<Self> {
        if !inner.is_subset(outer) {
            return Err(Error::PatternViolation(format!("{inner} is not contained in {outer}")));
        }
        let positions: Vec<usize> = outer.iter().enumerate().filter(|(_, c)| inner.contains(*c)).map(|(k, _)| k).collect();
        Ok(Projection { source_rank: outer.len(), map: ProjectionMap::Coordinates(positions) })
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        match &self.map {
            ProjectionMap::Coordinates(k) => k.len(),
            ProjectionMap::Matrix(rows) => rows.len(),
        }
    }

    pub fn kept(&self) -> Option<&[usize]> {
        match &self.map {
            ProjectionMap::Coordinates(k) => Some(k),
            ProjectionMap::Matrix(_) => None,
        }
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        match &self.map {
            ProjectionMap::Coordinates(k) => {
                k.iter().map(|&i| (0..self.source_rank).map(|j| i64::from(j == i)).collect()).collect()
            }
            ProjectionMap::Matrix(rows) => rows.clone(),
        }
    }

    pub fn apply(&self, n: &DegreeVector) -> Result<DegreeVector> {
        n.check_rank(self.source_rank)?;
        Ok(match &self.map {
            ProjectionMap::Coordinates(k) => DegreeVector(k.iter().map(|&i| n.0[i]).collect()),
            ProjectionMap::Matrix(rows) => {
                DegreeVector(rows.iter().map(|row| row.iter().zip(&n.0).map(|(a, b)| a * b).sum()).collect())
            }
        })
    }

    /// Image of a nonempty box (exact for nonnegative maps on integer boxes).
    pub fn apply_box(&self, bx: &LatticeBox) -> Result<LatticeBox> {
        if bx.rank() != self.source_rank {
            return Err(Error::RankMismatch { expected: self.source_rank, found: bx.rank() });
        }
        Ok(match &self.map {
            ProjectionMap::Coordinates(k) => bx.select(k),
            ProjectionMap::Matrix(rows) => LatticeBox(
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .zip(&bx.0)
                            .filter(|(e, _)| **e != 0)
                            .fold(Interval::point(0), |acc, (e, iv)| acc.minkowski(&iv.scaled(*e)))
                    })
                    .collect(),
            ),
        })
    }

    /// Image of the unit vector `e_i`.
    pub fn column(&self, i: usize) -> DegreeVector {
        self.apply(&DegreeVector::unit(self.source_rank, i)).expect("unit vector has the source rank")
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Projection) -> Result<Projection> {
        if next.source_rank != self.target_rank() {
            return Err(Error::RankMismatch { expected: self.target_rank(), found: next.source_rank });
        }
        if let (ProjectionMap::Coordinates(a), ProjectionMap::Coordinates(b)) = (&self.map, &next.map) {
            return Ok(Projection {
                source_rank: self.source_rank,
                map: ProjectionMap::Coordinates(b.iter().map(|&i| a[i]).collect()),
            });
        }
        let outer = next.rows();
        let inner = self.rows();
        let rows = outer
            .iter()
            .map(|row| {
                (0..self.source_rank)
                    .map(|j| row.iter().enumerate().map(|(k, e)| e * inner[k][j]).sum())
                    .collect()
            })
            .collect();
        Projection::matrix(self.source_rank, rows)
    }
}

/// `X(s,t) = {n : s_i ≤ n_i < t_i for some i}` with `P(t−s) ⊆ q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QDomain {
    pub s: DegreeVector,
    pub t: DegreeVector,
    pub q: SupportPattern,
}

impl QDomain {
    pub fn new(s: DegreeVector, t: DegreeVector, q: SupportPattern) -> Result<Self> {
        t.check_rank(s.rank())?;
        if !s.leq(&t) {
            return Err(Error::Precondition(format!("Q-domain needs s <= t, got s={s} t={t}")));
        }
        let pattern = (&t - &s).support();
        if !pattern.is_subset(&q) {
            return Err(Error::PatternViolation(format!("P(t-s) = {pattern} is not inside {q}")));
        }
        if q.iter().any(|i| i >= s.rank()) {
            return Err(Error::PatternViolation(format!("{q} not inside rank {}", s.rank())));
        }
        Ok(QDomain { s, t, q })
    }

    /// `X(0,0)`, the empty domain.
    pub fn empty(rank: usize) -> Self {
        QDomain { s: DegreeVector::zeros(rank), t: DegreeVector::zeros(rank), q: SupportPattern::empty() }
    }

    pub fn rank(&self) -> usize {
        self.s.rank()
    }

    pub fn pattern(&self) -> SupportPattern {
        (&self.t - &self.s).support()
    }

    pub fn contains(&self, n: &DegreeVector) -> bool {
        assert_eq!(n.rank(), self.rank(), "rank mismatch in Q-domain membership");
        (0..self.rank()).any(|i| self.s.0[i] <= n.0[i] && n.0[i] < self.t.0[i])
    }
}

impl fmt::Display for QDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{})", self.s, self.t)
    }
}

pub fn qdomain_contains(x: &QDomain, n: &DegreeVector) -> Result<bool> {
    n.check_rank(x.rank())?;
    Ok(x.contains(n))
}

/// A single `q`-domain containing every input: componentwise minimum of
/// the `s`, maximum of the `t` on `q`, and `t_i = s_i` off `q`.
pub fn qdomain_cover(xs: &[QDomain], q: &SupportPattern, rank: usize) -> Result<QDomain> {
    let Some(first) = xs.first() else {
        return Ok(QDomain::empty(rank));
    };
    for x in xs {
        x.s.check_rank(rank)?;
        if !x.pattern().is_subset(q) {
            return Err(Error::PatternViolation(format!("{x} has pattern {} outside {q}", x.pattern())));
        }
    }
    let s = xs.iter().skip(1).fold(first.s.clone(), |acc, x| acc.componentwise_min(&x.s));
    let t_max = xs.iter().skip(1).fold(first.t.clone(), |acc, x| acc.componentwise_max(&x.t));
    let t = DegreeVector((0..rank).map(|i| if q.contains(i) { t_max.0[i] } else { s.0[i] }).collect());
    QDomain::new(s, t, q.clone())
}

/// Least `u ≥ 1` with `u·m ≥ t − s` on `P(m)`; then for every `w` some
/// `j ≤ #P(m)` has `w + j·u·m ∉ x`.
pub fn escape_multiplier(x: &QDomain, m: &DegreeVector) -> Result<u64> {
    m.check_rank(x.rank())?;
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !m.is_nonnegative() {
        return Err(Error::Precondition(format!("m = {m} must be nonnegative")));
    }
    let pm = m.support();
    if !x.pattern().is_subset(&pm) {
        return Err(Error::PatternViolation(format!("{x} has pattern {} outside P(m) = {pm}", x.pattern())));
    }
    let mut u = 1u64;
    for i in pm.iter() {
        let width = x.t.0[i] - x.s.0[i];
        let need = (width + m.0[i] - 1) / m.0[i];
        u = u.max(need.max(1) as u64);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DegreeVector {
        DegreeVector(v.to_vec())
    }

    fn pat(v: &[usize]) -> SupportPattern {
        SupportPattern::from_indices(v.iter().copied())
    }

    #[test]
    fn maximal_of_finite_set() {
        let s = PointSet::finite(vec![dv(&[1, 2]), dv(&[2, 1]), dv(&[0, 0])]);
        assert_eq!(maximal_elements(&s), PointSet::finite(vec![dv(&[1, 2]), dv(&[2, 1])]));
    }

    #[test]
    fn maximal_of_unbounded_region_is_empty() {
        let s = PointSet::region(vec![LatticeBox(vec![Interval::at_most(-1), Interval::at_least(0)])]);
        assert!(maximal_elements(&s).is_empty());
    }

    #[test]
    fn maximal_of_punctured_quadrant() {
        // {n ≤ (0,0)} minus the origin, as two boxes.
        let s = PointSet::region(vec![
            LatticeBox(vec![Interval::at_most(-1), Interval::at_most(0)]),
            LatticeBox(vec![Interval::at_most(0), Interval::at_most(-1)]),
        ]);
        assert_eq!(maximal_elements(&s), PointSet::finite(vec![dv(&[-1, 0]), dv(&[0, -1])]));
    }

    #[test]
    fn domination_examples() {
        let any = PointSet::finite(vec![dv(&[3, 3])]);
        assert!(dominates(&PointSet::empty(), &any));
        assert!(!dominates(&PointSet::finite(vec![dv(&[0, 0])]), &PointSet::finite(vec![dv(&[1, -1])])));
        let quadrant = PointSet::region(vec![LatticeBox(vec![Interval::at_most(-1), Interval::at_most(-1)])]);
        assert!(dominates(&quadrant, &PointSet::finite(vec![dv(&[-1, -1])])));
        let strip = PointSet::region(vec![LatticeBox(vec![Interval::at_most(-1), Interval::at_least(0)])]);
        assert!(!dominates(&strip, &PointSet::finite(vec![dv(&[5, 5])])));
    }

    #[test]
    fn figure_two_membership() {
        let x = QDomain::new(dv(&[-2, 1]), dv(&[0, 2]), pat(&[0, 1])).unwrap();
        assert!(x.contains(&dv(&[-1, 5])));
        assert!(!x.contains(&dv(&[3, 0])));
        let empty = QDomain::new(dv(&[1, 1]), dv(&[1, 1]), pat(&[])).unwrap();
        assert!(!empty.contains(&dv(&[1, 1])));
    }

    #[test]
    fn cover_examples() {
        let a = QDomain::new(dv(&[0, 0]), dv(&[1, 0]), pat(&[0])).unwrap();
        let b = QDomain::new(dv(&[2, 0]), dv(&[3, 0]), pat(&[0])).unwrap();
        let c = qdomain_cover(&[a.clone(), b], &pat(&[0]), 2).unwrap();
        assert_eq!((c.s.clone(), c.t.clone()), (dv(&[0, 0]), dv(&[3, 0])));
        assert_eq!(qdomain_cover(&[], &pat(&[0]), 2).unwrap(), QDomain::empty(2));
        assert!(qdomain_cover(&[a], &pat(&[1]), 2).is_err());
    }

    #[test]
    fn escape_examples() {
        let x = QDomain::new(dv(&[0, 0]), dv(&[2, 0]), pat(&[0])).unwrap();
        assert_eq!(escape_multiplier(&x, &dv(&[1, 0])).unwrap(), 2);
        assert_eq!(escape_multiplier(&QDomain::empty(2), &dv(&[0, 1])).unwrap(), 1);
        let y = QDomain::new(dv(&[0, 1]), dv(&[1, 3]), pat(&[0, 1])).unwrap();
        assert_eq!(escape_multiplier(&y, &dv(&[1, 2])).unwrap(), 1);
        assert_eq!(escape_multiplier(&y, &dv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn projections_compose() {
        let phi_p = Projection::coordinates(2, &pat(&[0, 1])).unwrap();
        let phi_pb = Projection::between(&pat(&[0, 1]), &pat(&[0])).unwrap();
        let phi_b = Projection::coordinates(2, &pat(&[0])).unwrap();
        let n = dv(&[4, -2]);
        assert_eq!(phi_pb.apply(&phi_p.apply(&n).unwrap()).unwrap(), phi_b.apply(&n).unwrap());
        assert_eq!(phi_p.then(&phi_pb).unwrap(), phi_b);
        assert!(Projection::between(&pat(&[0]), &pat(&[1])).is_err());
        let keep_first = Projection::coordinates(2, &pat(&[0])).unwrap();
        assert_eq!(keep_first.apply(&dv(&[-1, 7])).unwrap(), dv(&[-1]));
        let sum = Projection::merge(2, &pat(&[0, 1])).unwrap();
        assert_eq!(sum.apply(&dv(&[2, 3])).unwrap(), dv(&[5]));
    }

    #[test]
    fn lattice_points_order() {
        let pts: Vec<_> = lattice_points(&[0, 0], &[1, 1]).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(lattice_points(&[1], &[0]).count(), 0);
    }
}
