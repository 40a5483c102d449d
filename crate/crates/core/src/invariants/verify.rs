//! Cross-checks of the structural identities on concrete instances, plus
//! evaluation of the tasks bundled with an instance file.
//!
//! Each check recomputes both sides of an identity by different routes.
//! Only monomial primes are enumerated. Identities that quantify over all
//! graded primes can therefore come out short when some color has two or
//! more variables; such a mismatch is reported as inconclusive, never as
//! a pass.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::rc::Rc;

use serde::Serialize;

use super::anchors::{anchor_points, anchor_points_regraded, anchor_points_via_maps, bass_number};
use super::ends::{end_in, ends_up_to, projected_support, q_bound};
use super::finiteness::{f_in, g_by_annihilation, g_from_supports, g_in, FinDim};
use super::{vanishing_corner, CohomologyTable};
use crate::cohomology::annihilation_on;
use crate::cohomology::coarse::dim_in_region;
use crate::error::{Error, Result};
use crate::grading::{dominates, maximal_elements, DegreeVector, LatticeBox, PointSet, Projection, SupportPattern};
use crate::instance_io::{parse_degree, parse_pattern, Instance, Task};
use crate::module::GradedModule;
use crate::monomial::{
    directions, ideal_c, ideal_cq, ideal_rplus, prime_directions, saturated_chain, GradingSpec, MonomialIdeal,
    MonomialPrime,
};

/// Check names, in report order.
pub const CHECKS: &[&str] = &[
    "anchor-regrade",
    "anchor-lifting",
    "maximal-lift",
    "end-anchor-equality",
    "end-domination",
    "bound-domination",
    "rank-stabilization",
    "maximal-reduction",
    "vanishing-corner",
    "mixed-vanishing-corner",
    "component-finiteness",
    "annihilation-domain-equivalence",
    "finiteness-dimension-equality",
    "finitely-graded-criterion",
    "grade-equality",
    "task",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub check: &'static str,
    pub subject: String,
    pub outcome: Outcome,
    /// Sorted.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub label: String,
    pub hash: u64,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.lines.iter().filter(|l| l.outcome == outcome).count()
    }

    /// No check failed. Inconclusive lines do not count as failures.
    pub fn passed(&self) -> bool {
        self.count(Outcome::Fail) == 0
    }

    pub fn hash_hex(&self) -> String {
        format!("{:016x}", self.hash)
    }

    /// One line per check result, byte-identical across runs.
    pub fn render(&self) -> String {
        let h = self.hash_hex();
        let mut out = format!("instance {} {h}\nprimes: monomial only\n", self.label);
        for l in &self.lines {
            let _ = write!(out, "{} {h} {} {}", l.check, l.outcome, l.subject);
            if !l.witnesses.is_empty() {
                let _ = write!(out, " | {}", l.witnesses.join("; "));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary {h}: {} pass, {} fail, {} inconclusive",
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Inconclusive)
        );
        out
    }
}

/// Runs the selected checks (all when `only` is empty) on every declared
/// ideal and module and on every monomial prime of the ring.
pub fn verify_instance(inst: &Instance, label: &str, only: &[String]) -> Result<Report> {
    for name in only {
        if !CHECKS.contains(&name.as_str()) {
            return Err(Error::UnknownName { kind: "check", name: name.clone() });
        }
    }
    let v = Verifier::new(inst);
    let mut lines = Vec::new();
    let wanted = |c: &str| only.is_empty() || only.iter().any(|o| o == c);
    let structural = inst.grading.is_standard();
    for &check in CHECKS {
        if !wanted(check) {
            continue;
        }
        let before = lines.len();
        match check {
            "task" => v.tasks(&mut lines),
            _ if !structural => {}
            "anchor-regrade" => v.anchor_regrade(&mut lines),
            "anchor-lifting" => v.anchor_lifting(&mut lines),
            "maximal-lift" => v.maximal_lift(&mut lines),
            "end-anchor-equality" => v.end_anchor_equality(&mut lines),
            "end-domination" => v.end_domination(&mut lines),
            "bound-domination" => v.bound_domination(&mut lines),
            "rank-stabilization" => v.rank_stabilization(&mut lines),
            "maximal-reduction" => v.maximal_reduction(&mut lines),
            "vanishing-corner" => v.vanishing_corner(&mut lines),
            "mixed-vanishing-corner" => v.mixed_vanishing_corner(&mut lines),
            "component-finiteness" => v.component_finiteness(&mut lines),
            "annihilation-domain-equivalence" => v.annihilation_domain(&mut lines),
            "finiteness-dimension-equality" => v.finiteness_equality(&mut lines),
            "finitely-graded-criterion" => v.finitely_graded(&mut lines),
            "grade-equality" => v.grade_equality(&mut lines),
            _ => unreachable!("every listed check is dispatched"),
        }
        for l in &mut lines[before..] {
            l.check = check;
            l.witnesses.sort();
        }
    }
    Ok(Report { label: label.to_string(), hash: inst.hash(), lines })
}

type Anchors = std::result::Result<Vec<PointSet>, Error>;

struct Verifier<'a> {
    inst: &'a Instance,
    grading: &'a GradingSpec,
    modules: Vec<(String, GradedModule)>,
    ideals: Vec<(String, MonomialIdeal)>,
    tables: RefCell<HashMap<(MonomialIdeal, String), Rc<CohomologyTable>>>,
    anchors: RefCell<HashMap<(MonomialPrime, String), Rc<Anchors>>>,
}

fn line(subject: String, outcome: Outcome, witnesses: Vec<String>) -> CheckLine {
    CheckLine { check: "", subject, outcome, witnesses }
}

fn error_line(subject: String, e: &Error) -> CheckLine {
    line(subject, Outcome::Fail, vec![format!("error: {e}")])
}

/// Least `t` with no box meeting `{n ≥ (t,…,t)}`. Outer `None`: a box is
/// unbounded above in every coordinate. Inner `None`: no boxes at all.
impl<'a> Verifier<'a> {
    fn new(inst: &'a Instance) -> Self {
        let modules = inst
            .module_names()
            .into_iter()
            .map(|n| {
                let m = inst.module(&n).expect("listed modules resolve");
                (n, m)
            })
            .collect();
        let ideals = inst.ideal_names().into_iter().map(|n| (n.clone(), inst.ideals[&n].clone())).collect();
        Verifier {
            inst,
            grading: &inst.grading,
            modules,
            ideals,
            tables: RefCell::new(HashMap::new()),
            anchors: RefCell::new(HashMap::new()),
        }
    }

    fn names(&self) -> &[String] {
        self.inst.variables()
    }

    fn table(&self, b: &MonomialIdeal, mname: &str, m: &GradedModule) -> Rc<CohomologyTable> {
        let key = (b.clone(), mname.to_string());
        if let Some(t) = self.tables.borrow().get(&key) {
            return t.clone();
        }
        let t = Rc::new(CohomologyTable::new(b, m));
        self.tables.borrow_mut().insert(key, t.clone());
        t
    }

    /// `anch^i(p, M)` for `i = 0..=|p|`.
    fn anchors(&self, p: &MonomialPrime, mname: &str, m: &GradedModule) -> Rc<Anchors> {
        let key = (p.clone(), mname.to_string());
        if let Some(a) = self.anchors.borrow().get(&key) {
            return a.clone();
        }
        let a: Anchors = (0..=p.vars().len()).map(|i| anchor_points(p, m, i).map(|s| s.points)).collect();
        let a = Rc::new(a);
        self.anchors.borrow_mut().insert(key, a.clone());
        a
    }

    fn anchor_level(levels: &[PointSet], i: usize) -> PointSet {
        levels.get(i).cloned().unwrap_or_else(PointSet::empty)
    }

    /// Monomial primes with at least one direction, smallest first.
    fn primes_with_directions(&self) -> Vec<(MonomialPrime, SupportPattern)> {
        let n = self.grading.nvars();
        let mut out: Vec<(MonomialPrime, SupportPattern)> = (1u32..(1 << n))
            .filter_map(|mask| {
                let p = MonomialPrime::new(n, (0..n).filter(|j| mask >> j & 1 == 1)).ok()?;
                let dir = prime_directions(&p, self.grading).ok()?;
                (!dir.is_empty()).then_some((p, dir))
            })
            .collect();
        out.sort_by(|a, b| (a.0.vars().len(), a.0.vars()).cmp(&(b.0.vars().len(), b.0.vars())));
        out
    }

    /// Whether every graded prime is monomial, so that a mismatch in an
    /// identity over all graded primes is a genuine failure.
    fn only_monomial_primes(&self) -> bool {
        (0..self.grading.rank()).all(|c| self.grading.vars_of_color(c).len() <= 1)
    }

    fn prime_mismatch(&self) -> Outcome {
        if self.only_monomial_primes() {
            Outcome::Fail
        } else {
            Outcome::Inconclusive
        }
    }

    fn ideals_with_directions(&self) -> Vec<(String, MonomialIdeal, SupportPattern)> {
        self.ideals
            .iter()
            .filter_map(|(n, b)| {
                let dir = directions(b, self.grading).ok()?;
                (!dir.is_empty()).then(|| (n.clone(), b.clone(), dir))
            })
            .collect()
    }

    fn supports(table: &CohomologyTable) -> Vec<PointSet> {
        (0..=table.top()).map(|i| table.coarse(i)).collect()
    }

    fn anchor_regrade(&self, out: &mut Vec<CheckLine>) {
        for (mn, m) in &self.modules {
            for (p, _) in self.primes_with_directions() {
                let subject = format!("p={} M={mn}", p.render(self.names()));
                let mut wit = Vec::new();
                let mut outcome = Outcome::Pass;
                for i in 0..=p.vars().len() {
                    let routes = (|| -> Result<[PointSet; 3]> {
                        Ok([
                            anchor_points(&p, m, i)?.points,
                            anchor_points_via_maps(&p, m, i)?.points,
                            anchor_points_regraded(&p, m, i)?.points,
                        ])
                    })();
                    match routes {
                        Err(e) => {
                            outcome = Outcome::Fail;
                            wit.push(format!("i={i} error: {e}"));
                        }
                        Ok([a, b, c]) if a == b && b == c => {
                            if !a.is_empty() {
                                wit.push(format!("i={i} anch={a}"));
                            }
                        }
                        Ok([a, b, c]) => {
                            outcome = Outcome::Fail;
                            wit.push(format!("i={i} localized={a} maps={b} regraded={c}"));
                        }
                    }
                }
                out.push(line(subject, outcome, wit));
            }
        }
    }

    /// Checks that each point of `anch^i(p)` is the image of a point of
    /// `anch^{i+step}(q)`; returns the witnesses and whether all lifted.
    fn lift(
        &self,
        lower: &[PointSet],
        upper: &[PointSet],
        phi: &Projection,
        step: usize,
    ) -> Result<(bool, Vec<String>)> {
        let mut ok = true;
        let mut wit = Vec::new();
        let mut lifted = 0usize;
        for (i, level) in lower.iter().enumerate() {
            let targets = Self::anchor_level(upper, i + step);
            let targets = targets.to_points().unwrap_or_default();
            for a in level.to_points().unwrap_or_default() {
                let mut found = None;
                for b in &targets {
                    if phi.apply(b)? == a {
                        found = Some(b.clone());
                        break;
                    }
                }
                match found {
                    Some(_) => lifted += 1,
                    None => {
                        ok = false;
                        wit.push(format!("i={i} {a} has no lift at level {}", i + step));
                    }
                }
            }
        }
        wit.push(format!("lifted {lifted} points"));
        Ok((ok, wit))
    }

    fn anchor_lifting(&self, out: &mut Vec<CheckLine>) {
        let primes = self.primes_with_directions();
        for (mn, m) in &self.modules {
            for (p, dp) in &primes {
                for (q, dq) in &primes {
                    if !saturated_chain(p, q) {
                        continue;
                    }
                    let subject = format!("p={} q={} M={mn}", p.render(self.names()), q.render(self.names()));
                    let result = (|| -> Result<(bool, Vec<String>)> {
                        let ap = self.anchors(p, mn, m);
                        let aq = self.anchors(q, mn, m);
                        let (ap, aq) = (ap.as_ref().clone()?, aq.as_ref().clone()?);
                        self.lift(&ap, &aq, &Projection::between(dq, dp)?, 1)
                    })();
                    out.push(match result {
                        Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                        Err(e) => error_line(subject, &e),
                    });
                }
            }
        }
    }

    fn maximal_lift(&self, out: &mut Vec<CheckLine>) {
        let n = self.grading.nvars();
        let top = MonomialPrime::maximal(n);
        let full = SupportPattern::full(self.grading.rank());
        for (mn, m) in &self.modules {
            for (p, dp) in self.primes_with_directions() {
                if p.is_maximal() {
                    continue;
                }
                let subject = format!("p={} M={mn}", p.render(self.names()));
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let ap = self.anchors(&p, mn, m).as_ref().clone()?;
                    let am = self.anchors(&top, mn, m).as_ref().clone()?;
                    self.lift(&ap, &am, &Projection::between(&full, &dp)?, n - p.vars().len())
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    /// `max ∪_{i≤j} ∪_{p ⊇ b} φ(p;b)(anch^i(p))` over monomial primes.
    fn anchor_side(&self, b: &MonomialIdeal, db: &SupportPattern, mn: &str, m: &GradedModule, j: usize) -> Result<PointSet> {
        let mut acc = PointSet::empty();
        for p in MonomialPrime::all_containing(b) {
            let dp = prime_directions(&p, self.grading)?;
            let phi = Projection::between(&dp, db)?;
            let levels = self.anchors(&p, mn, m).as_ref().clone()?;
            for level in levels.iter().take(j + 1) {
                acc = acc.union(&level.project(&phi)?);
            }
        }
        Ok(maximal_elements(&acc))
    }

    fn end_anchor_equality(&self, out: &mut Vec<CheckLine>) {
        let n = self.grading.nvars();
        for (mn, m) in &self.modules {
            for (bn, b, db) in self.ideals_with_directions() {
                let subject = format!("b={bn} M={mn}");
                let table = self.table(&b, mn, m);
                let result = (|| -> Result<(Outcome, Vec<String>)> {
                    let mut outcome = Outcome::Pass;
                    let mut wit = Vec::new();
                    for j in 0..=table.top().max(n) {
                        let ends = ends_up_to(&table, j)?;
                        let anch = self.anchor_side(&b, &db, mn, m, j)?;
                        if ends == anch {
                            wit.push(format!("j={j} {ends}"));
                        } else {
                            outcome = outcome.max(self.prime_mismatch());
                            wit.push(format!("j={j} ends={ends} anchors={anch}"));
                        }
                    }
                    if outcome == Outcome::Inconclusive {
                        wit.push("non-monomial prime required".into());
                    }
                    Ok((outcome, wit))
                })();
                out.push(match result {
                    Ok((o, wit)) => line(subject, o, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn end_domination(&self, out: &mut Vec<CheckLine>) {
        for (mn, m) in &self.modules {
            for (bn, b, _) in self.ideals_with_directions() {
                let subject = format!("b={bn} M={mn}");
                let table = self.table(&b, mn, m);
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let mut ok = true;
                    let mut wit = Vec::new();
                    for j in 0..=table.top() {
                        let (_, support) = projected_support(&table, j)?;
                        let end = end_in(&table, j)?.points;
                        // Every end point is in the support and dominates it.
                        let inside = end.to_points().unwrap_or_default().iter().all(|e| support.contains(e));
                        if inside && dominates(&support, &end) {
                            if !end.is_empty() {
                                wit.push(format!("j={j} end={end}"));
                            }
                        } else {
                            ok = false;
                            wit.push(format!("j={j} end={end} support={support}"));
                        }
                    }
                    Ok((ok, wit))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn bound_domination(&self, out: &mut Vec<CheckLine>) {
        for (mn, m) in &self.modules {
            for (bn, b, db) in self.ideals_with_directions() {
                let subject = format!("b={bn} M={mn} Q={db}");
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let tb = self.table(&b, mn, m);
                    let c = ideal_cq(self.grading, &db)?;
                    let tc = self.table(&c, mn, m);
                    let bound = q_bound(m, &db)?;
                    let mut ok = true;
                    let mut wit = vec![format!("bnd={bound}")];
                    for j in 0..=tb.top().max(tc.top()) {
                        let eb = ends_up_to(&tb, j)?;
                        let ec = ends_up_to(&tc, j)?;
                        if !(dominates(&eb, &ec) && dominates(&ec, &bound)) {
                            ok = false;
                            wit.push(format!("j={j} ends={eb} ends_cQ={ec}"));
                        }
                    }
                    Ok((ok, wit))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn rank_stabilization(&self, out: &mut Vec<CheckLine>) {
        let n = self.grading.nvars();
        for (mn, m) in &self.modules {
            for (bn, b, db) in self.ideals_with_directions() {
                // The generator count bounds the arithmetic rank.
                let t = b.gens().len();
                let k = t.max(n) + 1;
                let subject = format!("b={bn} M={mn} t={t} k={k}");
                let table = self.table(&b, mn, m);
                let result = (|| -> Result<(Outcome, Vec<String>)> {
                    let (et, ek) = (ends_up_to(&table, t)?, ends_up_to(&table, k)?);
                    let (at, ak) = (self.anchor_side(&b, &db, mn, m, t)?, self.anchor_side(&b, &db, mn, m, k)?);
                    let mut outcome = Outcome::Pass;
                    let mut wit = vec![format!("ends={et}")];
                    if et != ek {
                        outcome = Outcome::Fail;
                        wit.push(format!("ends up to k={ek}"));
                    }
                    if at != et || ak != ek {
                        outcome = outcome.max(self.prime_mismatch());
                        wit.push(format!("anchors up to t={at}; anchors up to k={ak}"));
                    }
                    // Every projected anchor point lies below the level-t set.
                    let mut every = PointSet::empty();
                    for p in MonomialPrime::all_containing(&b) {
                        let phi = Projection::between(&prime_directions(&p, self.grading)?, &db)?;
                        for level in self.anchors(&p, mn, m).as_ref().clone()? {
                            every = every.union(&level.project(&phi)?);
                        }
                    }
                    if !dominates(&every, &at) {
                        outcome = outcome.max(self.prime_mismatch());
                        wit.push(format!("anchors {every} not dominated by {at}"));
                    }
                    Ok((outcome, wit))
                })();
                out.push(match result {
                    Ok((o, wit)) => line(subject, o, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn maximal_reduction(&self, out: &mut Vec<CheckLine>) {
        let full = SupportPattern::full(self.grading.rank());
        for (mn, m) in &self.modules {
            for (bn, b, db) in self.ideals_with_directions() {
                if b.is_unit() {
                    continue;
                }
                let subject = format!("b={bn} M={mn}");
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let tb = self.table(&b, mn, m);
                    let tc = self.table(&ideal_c(self.grading)?, mn, m);
                    let lhs = ends_up_to(&tb, tb.top())?;
                    let rhs = maximal_elements(&ends_up_to(&tc, tc.top())?.project(&Projection::between(&full, &db)?)?);
                    Ok((lhs == rhs, vec![format!("ends={lhs}"), format!("from maximal={rhs}")]))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn corner_line(subject: String, boxes: &[LatticeBox]) -> CheckLine {
        match vanishing_corner(boxes) {
            Some(Some(t)) => line(subject, Outcome::Pass, vec![format!("t={t}")]),
            Some(None) => line(subject, Outcome::Pass, vec!["t=any (no support)".into()]),
            None => {
                let bad = boxes.iter().find(|b| b.0.iter().all(|iv| iv.hi.is_none())).expect("corner failed on a box");
                line(subject, Outcome::Fail, vec![format!("support box {bad} is unbounded above")])
            }
        }
    }

    fn vanishing_corner(&self, out: &mut Vec<CheckLine>) {
        let Ok(rplus) = ideal_rplus(self.grading) else { return };
        for (mn, m) in &self.modules {
            for (bn, b) in &self.ideals {
                let rad = b.radical();
                if !rplus.gens().iter().all(|g| rad.contains(g)) {
                    continue;
                }
                let table = self.table(b, mn, m);
                let boxes: Vec<LatticeBox> = Self::supports(&table).iter().flat_map(PointSet::boxes).collect();
                out.push(Self::corner_line(format!("b={bn} M={mn}"), &boxes));
            }
        }
    }

    fn mixed_vanishing_corner(&self, out: &mut Vec<CheckLine>) {
        let r = self.grading.rank();
        for (mn, m) in &self.modules {
            for (bn, b, db) in self.ideals_with_directions() {
                if db.len() == r {
                    continue;
                }
                let subject = format!("b={bn} M={mn} merged={db}");
                let table = self.table(&b, mn, m);
                let projected = Projection::merge(r, &db).and_then(|phi| {
                    Self::supports(&table).iter().map(|s| s.project(&phi)).collect::<Result<Vec<_>>>()
                });
                out.push(match projected {
                    Ok(sets) => Self::corner_line(subject, &sets.iter().flat_map(PointSet::boxes).collect::<Vec<_>>()),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn component_finiteness(&self, out: &mut Vec<CheckLine>) {
        let Ok(rplus) = ideal_rplus(self.grading) else { return };
        for (mn, m) in &self.modules {
            let table = self.table(&rplus, mn, m);
            let mut ok = true;
            let mut wit = Vec::new();
            for i in 0..=table.top() {
                if table.has_infinite_component(i) {
                    ok = false;
                    wit.push(format!("i={i} has an infinite-dimensional component"));
                } else if !table.is_zero(i) {
                    wit.push(format!("i={i} nonzero, all components finite"));
                }
            }
            out.push(line(format!("b=R_+ M={mn}"), if ok { Outcome::Pass } else { Outcome::Fail }, wit));
        }
    }

    /// Nonempty patterns, each with its indicator and a weighted vector.
    fn test_vectors(&self) -> Vec<(SupportPattern, DegreeVector)> {
        let r = self.grading.rank();
        let mut out = Vec::new();
        for q in SupportPattern::all_subsets(r) {
            if q.is_empty() {
                continue;
            }
            out.push((q.clone(), q.indicator(r)));
            let weighted = DegreeVector((0..r).map(|c| if q.contains(c) { c as i64 + 2 } else { 0 }).collect());
            out.push((q, weighted));
        }
        out
    }

    fn annihilation_domain(&self, out: &mut Vec<CheckLine>) {
        let r = self.grading.rank();
        for (mn, m) in &self.modules {
            for (bn, b) in &self.ideals {
                let subject = format!("b={bn} M={mn}");
                let table = self.table(b, mn, m);
                let supports = Self::supports(&table);
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let mut ok = true;
                    let mut wit = Vec::new();
                    for (q, v) in self.test_vectors() {
                        let by_domain = g_from_supports(&supports, &q, r).value;
                        let by_power = g_by_annihilation(&table, &q, Some(&v))?;
                        if by_domain == by_power {
                            wit.push(format!("Q={q} m={v} g={by_domain}"));
                        } else {
                            ok = false;
                            wit.push(format!("Q={q} m={v} domains={by_domain} annihilation={by_power}"));
                        }
                    }
                    Ok((ok, wit))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    /// `Σ_{m∈T} R_m R`.
    fn degree_ideal(&self, t: &[DegreeVector]) -> Result<MonomialIdeal> {
        let mut gens = Vec::new();
        for v in t {
            gens.extend(self.grading.monomials_of_degree(v)?);
        }
        Ok(MonomialIdeal::new(self.grading.nvars(), gens))
    }

    fn g_inf(supports: &[PointSet], t: &[DegreeVector], r: usize) -> FinDim {
        t.iter().map(|v| g_from_supports(supports, &v.support(), r).value).min().unwrap_or(FinDim::Infinite)
    }

    fn render_set(t: &[DegreeVector]) -> String {
        let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn finiteness_equality(&self, out: &mut Vec<CheckLine>) {
        let r = self.grading.rank();
        let mut families: Vec<Vec<DegreeVector>> = self.test_vectors().into_iter().map(|(_, v)| vec![v]).collect();
        families.push((0..r).map(|c| DegreeVector::unit(r, c)).collect());
        families.push(
            SupportPattern::all_subsets(r).into_iter().filter(|q| !q.is_empty()).map(|q| q.indicator(r)).collect(),
        );
        for (mn, m) in &self.modules {
            for (bn, b) in &self.ideals {
                let subject = format!("b={bn} M={mn}");
                let table = self.table(b, mn, m);
                let supports = Self::supports(&table);
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let mut ok = true;
                    let mut wit = Vec::new();
                    for t in &families {
                        let f = f_in(&table, &self.degree_ideal(t)?);
                        let g = Self::g_inf(&supports, t, r);
                        let name = Self::render_set(t);
                        if f == g {
                            wit.push(format!("T={name} f={f}"));
                        } else {
                            ok = false;
                            wit.push(format!("T={name} f={f} inf g={g}"));
                        }
                    }
                    Ok((ok, wit))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn finitely_graded(&self, out: &mut Vec<CheckLine>) {
        let r = self.grading.rank();
        let ones = DegreeVector::ones(r);
        let interior = vec![ones.clone(), &ones + &DegreeVector::unit(r, 0)];
        let mut axes: Vec<DegreeVector> = (0..r).map(|c| DegreeVector::unit(r, c)).collect();
        axes.push(ones);
        let full = SupportPattern::full(r);
        for (mn, m) in &self.modules {
            for (bn, b) in &self.ideals {
                let subject = format!("b={bn} M={mn}");
                let table = self.table(b, mn, m);
                let supports = Self::supports(&table);
                let result = (|| -> Result<(bool, Vec<String>)> {
                    let f_interior = f_in(&table, &self.degree_ideal(&interior)?);
                    let g_full = g_from_supports(&supports, &full, r).value;
                    let f_axes = f_in(&table, &self.degree_ideal(&axes)?);
                    let finite_until = (0..=table.top())
                        .find(|&i| !table.finitely_graded(i))
                        .map_or(FinDim::Infinite, FinDim::Finite);
                    let g_min = (0..r)
                        .map(|c| g_from_supports(&supports, &SupportPattern::from_indices([c]), r).value)
                        .min()
                        .unwrap_or(FinDim::Infinite);
                    let ok = f_interior == g_full && f_axes == finite_until && finite_until == g_min;
                    Ok((
                        ok,
                        vec![
                            format!("interior f={f_interior} g_full={g_full}"),
                            format!("axes f={f_axes} finitely graded below {finite_until} min single g={g_min}"),
                        ],
                    ))
                })();
                out.push(match result {
                    Ok((ok, wit)) => line(subject, if ok { Outcome::Pass } else { Outcome::Fail }, wit),
                    Err(e) => error_line(subject, &e),
                });
            }
        }
    }

    fn grade_equality(&self, out: &mut Vec<CheckLine>) {
        let n = self.grading.nvars();
        let r = self.grading.rank();
        for (mn, m) in &self.modules {
            for (bn, b) in &self.ideals {
                // M ≠ bM iff some summand has I + b proper.
                if !m.summands.iter().any(|s| !s.ideal.sum(b).is_unit()) {
                    continue;
                }
                let table = self.table(b, mn, m);
                let f = f_in(&table, &MonomialIdeal::unit(n));
                let g = g_from_supports(&Self::supports(&table), &SupportPattern::empty(), r).value;
                let grade = table.grade();
                let ok = f == g && g == grade;
                out.push(line(
                    format!("b={bn} M={mn}"),
                    if ok { Outcome::Pass } else { Outcome::Fail },
                    vec![format!("f={f} g_empty={g} grade={grade}")],
                ));
            }
        }
    }

    fn tasks(&self, out: &mut Vec<CheckLine>) {
        for task in &self.inst.file.tasks {
            let got = run_task(self.inst, task);
            let shown = match &got {
                Ok(v) => v.clone(),
                Err(e) => format!("error: {e}"),
            };
            let outcome = match (&task.expect, &got) {
                (None, Ok(_)) => Outcome::Pass,
                (None, Err(_)) => Outcome::Fail,
                (Some(exp), Err(_)) if exp.trim() == "error" => Outcome::Pass,
                (Some(exp), Ok(v)) if normalize(exp) == normalize(v) => Outcome::Pass,
                _ => Outcome::Fail,
            };
            let mut wit = vec![format!("got {shown}")];
            if let Some(exp) = &task.expect {
                wit.push(format!("expected {exp}"));
            }
            out.push(line(format!("{} {}({})", task.label, task.op, task.args.join(", ")), outcome, wit));
        }
    }
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Operations accepted in `[tasks]`.
pub const TASK_OPS: &[&str] =
    &["support", "end", "anchors", "bass", "gdim", "fdim", "bnd", "annihilation", "component", "grade"];

/// Evaluates one task and renders its value.
pub fn run_task(inst: &Instance, task: &Task) -> Result<String> {
    let a = &task.args;
    let arity = |k: usize| -> Result<()> {
        if a.len() == k {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} takes {k} arguments, got {}", task.op, a.len())))
        }
    };
    let index = |s: &str| -> Result<usize> {
        s.trim().parse().map_err(|_| Error::Precondition(format!("bad cohomological index `{s}`")))
    };
    let g = &inst.grading;
    let table = |b: &str, m: &str| -> Result<CohomologyTable> { Ok(CohomologyTable::new(&inst.ideal(b)?, &inst.module(m)?)) };
    match task.op.as_str() {
        "support" => {
            arity(3)?;
            Ok(table(&a[0], &a[1])?.coarse(index(&a[2])?).to_string())
        }
        "end" => {
            arity(3)?;
            let t = table(&a[0], &a[1])?;
            let i = index(&a[2])?;
            if i > t.top() {
                projected_support(&t, 0)?;
                return Ok(PointSet::empty().to_string());
            }
            Ok(end_in(&t, i)?.points.to_string())
        }
        "anchors" => {
            arity(3)?;
            Ok(anchor_points(&inst.prime(&a[0])?, &inst.module(&a[1])?, index(&a[2])?)?.points.to_string())
        }
        "bass" => {
            arity(3)?;
            Ok(bass_number(&inst.prime(&a[0])?, &inst.module(&a[1])?, index(&a[2])?)?.to_string())
        }
        "gdim" => {
            arity(3)?;
            let q = parse_pattern(&a[2], g.rank())?;
            Ok(g_in(&table(&a[0], &a[1])?, &q)?.value.to_string())
        }
        "fdim" => {
            arity(3)?;
            Ok(f_in(&table(&a[1], &a[2])?, &inst.ideal(&a[0])?).to_string())
        }
        "bnd" => {
            arity(2)?;
            Ok(q_bound(&inst.module(&a[0])?, &parse_pattern(&a[1], g.rank())?)?.to_string())
        }
        "annihilation" => {
            arity(4)?;
            let t = table(&a[0], &a[1])?;
            let i = index(&a[2])?;
            let v = parse_degree(&a[3])?;
            if i > t.top() {
                return Ok("0".into());
            }
            Ok(annihilation_on(&t.cells, i, &v)?.map_or_else(|| "none".to_string(), |u| u.to_string()))
        }
        "component" => {
            arity(4)?;
            let t = table(&a[0], &a[1])?;
            let n = parse_degree(&a[3])?;
            if n.rank() != g.rank() {
                return Err(Error::RankMismatch { expected: g.rank(), found: n.rank() });
            }
            Ok(dim_in_region(&t.fine(index(&a[2])?), g, &n).to_string())
        }
        "grade" => {
            arity(2)?;
            Ok(table(&a[0], &a[1])?.grade().to_string())
        }
        other => Err(Error::UnknownName { kind: "operation", name: other.to_string() }),
    }
}
