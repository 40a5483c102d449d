//! Plain-text instance files. The grammar is documented in
//! `docs/instance-format.md`; in short:
//!
//! ```text
//! [ring]
//! variables = x, y
//! colors = 1, 2
//! field = QQ
//!
//! [ideals]
//! b = x^2*y, y^3
//!
//! [modules]
//! M = S/b + S(-1,0)
//!
//! [primes]
//! p = x, y
//!
//! [tasks]
//! e = end(b, M, 1) == {(-1)}
//! ```
//!
//! Files round-trip through [`InstanceFile::serialize`] up to whitespace
//! and comments. Declaration order is kept.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grading::{DegreeVector, SupportPattern};
use crate::module::{GradedModule, Summand};
use crate::monomial::{ideal_rplus, Field, GradingSpec, Monomial, MonomialIdeal, MonomialPrime};

/// An ideal as written: a named reference or an inline generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRef {
    Named(String),
    Inline(Vec<Monomial>),
}

/// One summand `S(v)/I` as written. `twist` is `v`, so the generator sits
/// in fine degree `−v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSpec {
    pub twist: Option<Vec<i64>>,
    pub quotient: Option<IdealRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub label: String,
    pub op: String,
    pub args: Vec<String>,
    pub expect: Option<String>,
}

/// Syntax-level content of a file, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub variables: Vec<String>,
    /// 1-based colors; 0 marks a degree-0 variable.
    pub colors: Vec<usize>,
    pub rank: usize,
    pub field: Field,
    pub ideals: Vec<(String, Vec<Monomial>)>,
    /// `None` is the zero module.
    pub modules: Vec<(String, Option<Vec<SummandSpec>>)>,
    pub primes: Vec<(String, Vec<usize>)>,
    pub tasks: Vec<Task>,
}

/// A parsed file with every reference resolved.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub grading: GradingSpec,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub modules: BTreeMap<String, GradedModule>,
    pub primes: BTreeMap<String, MonomialPrime>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Ring,
    Ideals,
    Modules,
    Primes,
    Tasks,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Splits on commas that are not nested in parentheses or braces.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (k, ch) in s.char_indices() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out.into_iter()
        .map(|(off, part)| {
            let lead = part.len() - part.trim_start().len();
            (off + lead, part.trim())
        })
        .collect()
}

/// Parses `x^2*y`, `1`, given variable names.
pub fn parse_monomial(text: &str, vars: &[String]) -> std::result::Result<Monomial, (usize, String)> {
    let mut exps = vec![0u32; vars.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial(exps));
    }
    let mut offset = 0;
    for factor in text.split('*') {
        let f = factor.trim();
        let lead = factor.len() - factor.trim_start().len();
        let (name, power) = match f.split_once('^') {
            Some((n, p)) => {
                let p: u32 = p.trim().parse().map_err(|_| (offset + lead, format!("bad exponent in `{f}`")))?;
                (n.trim(), p)
            }
            None => (f, 1),
        };
        let Some(j) = vars.iter().position(|v| v == name) else {
            return Err((offset + lead, format!("unknown variable `{name}`")));
        };
        exps[j] += power;
        offset += factor.len() + 1;
    }
    Ok(Monomial(exps))
}

/// Parses a generator list; `0` is the zero ideal.
pub fn parse_generators(text: &str, vars: &[String]) -> std::result::Result<Vec<Monomial>, (usize, String)> {
    if text.trim() == "0" {
        return Ok(Vec::new());
    }
    split_top(text)
        .into_iter()
        .map(|(off, part)| {
            if part.is_empty() {
                return Err((off, "empty generator".to_string()));
            }
            parse_monomial(part, vars).map_err(|(c, m)| (off + c, m))
        })
        .collect()
}

fn parse_int_list(text: &str) -> std::result::Result<Vec<i64>, (usize, String)> {
    split_top(text)
        .into_iter()
        .map(|(off, p)| p.parse::<i64>().map_err(|_| (off, format!("expected an integer, found `{p}`"))))
        .collect()
}

fn parse_summand(text: &str, vars: &[String]) -> std::result::Result<SummandSpec, (usize, String)> {
    let t = text.trim();
    let Some(rest) = t.strip_prefix('S') else {
        return Err((0, format!("summand must start with `S`, found `{t}`")));
    };
    let (twist, rest, used) = if let Some(inner) = rest.strip_prefix('(') {
        let Some(close) = inner.find(')') else {
            return Err((1, "unclosed twist".into()));
        };
        let v = parse_int_list(&inner[..close]).map_err(|(c, m)| (2 + c, m))?;
        (Some(v), &inner[close + 1..], close + 3)
    } else {
        (None, rest, 1)
    };
    let rest_trim = rest.trim();
    if rest_trim.is_empty() {
        return Ok(SummandSpec { twist, quotient: None });
    }
    let lead = rest.len() - rest.trim_start().len();
    let Some(q) = rest_trim.strip_prefix('/') else {
        return Err((used + lead, format!("expected `/` or `+`, found `{rest_trim}`")));
    };
    let q = q.trim();
    let col = used + lead + 1;
    let quotient = if let Some(inner) = q.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        IdealRef::Inline(parse_generators(inner, vars).map_err(|(c, m)| (col + 1 + c, m))?)
    } else if is_name(q) {
        IdealRef::Named(q.to_string())
    } else {
        return Err((col, format!("expected an ideal name or `(gens)`, found `{q}`")));
    };
    Ok(SummandSpec { twist, quotient: Some(quotient) })
}

fn parse_task(label: &str, value: &str) -> std::result::Result<Task, (usize, String)> {
    let (call, expect) = match value.split_once("==") {
        Some((c, e)) => (c.trim(), Some(e.trim().to_string())),
        None => (value.trim(), None),
    };
    let Some(open) = call.find('(') else {
        return Err((0, "expected `op(args)`".into()));
    };
    if !call.ends_with(')') {
        return Err((call.len(), "expected `)` at end of call".into()));
    }
    let op = call[..open].trim().to_string();
    if !is_name(&op) {
        return Err((0, format!("bad operation name `{op}`")));
    }
    let inner = &call[open + 1..call.len() - 1];
    let args = if inner.trim().is_empty() { Vec::new() } else { split_top(inner).into_iter().map(|(_, a)| a.to_string()).collect() };
    Ok(Task { label: label.to_string(), op, args, expect })
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let mut section: Option<Section> = None;
        let mut ring: BTreeMap<String, (usize, usize, String)> = BTreeMap::new();
        let mut vars: Vec<String> = Vec::new();
        let mut file = InstanceFile {
            variables: Vec::new(),
            colors: Vec::new(),
            rank: 0,
            field: Field::Rational,
            ideals: Vec::new(),
            modules: Vec::new(),
            primes: Vec::new(),
            tasks: Vec::new(),
        };
        let mut seen: BTreeSet<(u8, String)> = BTreeSet::new();
        let mut ring_done = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            if trimmed.starts_with('[') {
                let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                    return Err(perr(line_no, indent + 1, "malformed section header"));
                };
                let next = match name.trim() {
                    "ring" => Section::Ring,
                    "ideals" => Section::Ideals,
                    "modules" => Section::Modules,
                    "primes" => Section::Primes,
                    "tasks" => Section::Tasks,
                    other => return Err(perr(line_no, indent + 2, format!("unknown section `{other}`"))),
                };
                if section == Some(Section::Ring) && next != Section::Ring {
                    vars = Self::finish_ring(&mut file, &ring)?;
                    ring_done = true;
                }
                if next != Section::Ring && !ring_done {
                    return Err(perr(line_no, indent + 1, "the [ring] section must come first"));
                }
                if next == Section::Ring && ring_done {
                    return Err(perr(line_no, indent + 1, "duplicate [ring] section"));
                }
                section = Some(next);
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(perr(line_no, indent + 1, "expected `key = value`"));
            };
            let key = content[..eq].trim();
            let value_raw = &content[eq + 1..];
            let value = value_raw.trim();
            let vcol = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
            if !is_name(key) {
                return Err(perr(line_no, indent + 1, format!("bad name `{key}`")));
            }
            let at = |c: usize, m: String| perr(line_no, vcol + c, m);
            let Some(sec) = section else {
                return Err(perr(line_no, indent + 1, "entry outside of any section"));
            };
            let tag = sec as u8;
            if sec != Section::Ring && !seen.insert((tag, key.to_string())) {
                return Err(perr(line_no, indent + 1, format!("duplicate name `{key}`")));
            }
            match sec {
                Section::Ring => {
                    if !matches!(key, "variables" | "colors" | "field" | "rank") {
                        return Err(perr(line_no, indent + 1, format!("unknown key `{key}` in [ring]")));
                    }
                    if ring.insert(key.to_string(), (line_no, vcol, value.to_string())).is_some() {
                        return Err(perr(line_no, indent + 1, format!("duplicate key `{key}`")));
                    }
                }
                Section::Ideals => {
                    let gens = parse_generators(value, &vars).map_err(|(c, m)| at(c, m))?;
                    file.ideals.push((key.to_string(), gens));
                }
                Section::Modules => {
                    let spec = if value == "0" {
                        None
                    } else {
                        let mut parts = Vec::new();
                        let mut off = 0;
                        for part in value.split('+') {
                            let lead = part.len() - part.trim_start().len();
                            parts.push(parse_summand(part, &vars).map_err(|(c, m)| at(off + lead + c, m))?);
                            off += part.len() + 1;
                        }
                        Some(parts)
                    };
                    file.modules.push((key.to_string(), spec));
                }
                Section::Primes => {
                    let mut idx = Vec::new();
                    for (off, v) in split_top(value) {
                        let Some(j) = vars.iter().position(|x| x == v) else {
                            return Err(at(off, format!("unknown variable `{v}`")));
                        };
                        idx.push(j);
                    }
                    file.primes.push((key.to_string(), idx));
                }
                Section::Tasks => {
                    file.tasks.push(parse_task(key, value).map_err(|(c, m)| at(c, m))?);
                }
            }
        }
        if !ring_done {
            if section == Some(Section::Ring) {
                Self::finish_ring(&mut file, &ring)?;
            } else {
                return Err(perr(1, 1, "missing [ring] section"));
            }
        }
        Ok(file)
    }

    fn finish_ring(file: &mut InstanceFile, ring: &BTreeMap<String, (usize, usize, String)>) -> Result<Vec<String>> {
        let Some((vline, vcol, vtext)) = ring.get("variables") else {
            return Err(perr(1, 1, "[ring] needs `variables`"));
        };
        let mut vars = Vec::new();
        for (off, v) in split_top(vtext) {
            if !is_name(v) || v == "S" {
                return Err(perr(*vline, vcol + off, format!("bad variable name `{v}`")));
            }
            if vars.iter().any(|x: &String| x == v) {
                return Err(perr(*vline, vcol + off, format!("duplicate variable `{v}`")));
            }
            vars.push(v.to_string());
        }
        let (colors, cline, ccol) = match ring.get("colors") {
            Some((l, c, t)) => {
                let mut cs = Vec::new();
                for (off, p) in split_top(t) {
                    let v: usize = p.parse().map_err(|_| perr(*l, c + off, format!("bad color `{p}`")))?;
                    cs.push((v, off));
                }
                if cs.len() != vars.len() {
                    return Err(perr(*l, *c, format!("{} colors for {} variables", cs.len(), vars.len())));
                }
                (cs, *l, *c)
            }
            None => (vars.iter().map(|_| (1, 0)).collect(), *vline, *vcol),
        };
        let rank = match ring.get("rank") {
            Some((l, c, t)) => t.parse::<usize>().map_err(|_| perr(*l, *c, format!("bad rank `{t}`")))?,
            None => colors.iter().map(|(c, _)| *c).max().unwrap_or(1).max(1),
        };
        if let Some((bad, off)) = colors.iter().find(|(c, _)| *c > rank) {
            return Err(perr(cline, ccol + off, format!("color {bad} exceeds rank {rank}")));
        }
        let field = match ring.get("field") {
            None => Field::Rational,
            Some((l, c, t)) => parse_field(t).map_err(|m| perr(*l, *c, m))?,
        };
        file.variables = vars.clone();
        file.colors = colors.into_iter().map(|(c, _)| c).collect();
        file.rank = rank;
        file.field = field;
        Ok(vars)
    }

    /// Canonical text: declaration order, one space around `=`, `, ` lists.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[ring]");
        let _ = writeln!(out, "variables = {}", self.variables.join(", "));
        let cs: Vec<String> = self.colors.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "colors = {}", cs.join(", "));
        let _ = writeln!(out, "rank = {}", self.rank);
        let _ = writeln!(out, "field = {}", self.field);
        if !self.ideals.is_empty() {
            let _ = writeln!(out, "\n[ideals]");
            for (name, gens) in &self.ideals {
                let _ = writeln!(out, "{name} = {}", self.render_gens(gens));
            }
        }
        if !self.modules.is_empty() {
            let _ = writeln!(out, "\n[modules]");
            for (name, spec) in &self.modules {
                let body = match spec {
                    None => "0".to_string(),
                    Some(parts) => parts.iter().map(|p| self.render_summand(p)).collect::<Vec<_>>().join(" + "),
                };
                let _ = writeln!(out, "{name} = {body}");
            }
        }
        if !self.primes.is_empty() {
            let _ = writeln!(out, "\n[primes]");
            for (name, vs) in &self.primes {
                let names: Vec<&str> = vs.iter().map(|&j| self.variables[j].as_str()).collect();
                let _ = writeln!(out, "{name} = {}", names.join(", "));
            }
        }
        if !self.tasks.is_empty() {
            let _ = writeln!(out, "\n[tasks]");
            for t in &self.tasks {
                let _ = write!(out, "{} = {}({})", t.label, t.op, t.args.join(", "));
                if let Some(e) = &t.expect {
                    let _ = write!(out, " == {e}");
                }
                out.push('\n');
            }
        }
        out
    }

    fn render_gens(&self, gens: &[Monomial]) -> String {
        if gens.is_empty() {
            return "0".into();
        }
        gens.iter().map(|g| g.render(&self.variables)).collect::<Vec<_>>().join(", ")
    }

    fn render_summand(&self, s: &SummandSpec) -> String {
        let mut out = String::from("S");
        if let Some(v) = &s.twist {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            let _ = write!(out, "({})", parts.join(","));
        }
        match &s.quotient {
            None => {}
            Some(IdealRef::Named(n)) => {
                let _ = write!(out, "/{n}");
            }
            Some(IdealRef::Inline(g)) => {
                let _ = write!(out, "/({})", self.render_gens(g));
            }
        }
        out
    }
}

pub fn parse_field(text: &str) -> std::result::Result<Field, String> {
    let t = text.trim();
    if t == "QQ" {
        return Ok(Field::Rational);
    }
    if let Some(p) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
        let p: u32 = p.trim().parse().map_err(|_| format!("bad characteristic in `{t}`"))?;
        return Field::prime(p).map_err(|e| e.to_string());
    }
    Err(format!("unknown field `{t}` (expected QQ or GF(p))"))
}

/// Parses a bare call such as `gdim(b, M, {1})` or `end(m, S, 2) == {(-1)}`.
pub fn parse_task_call(text: &str) -> Result<Task> {
    parse_task("call", text).map_err(|(c, m)| perr(1, c + 1, m))
}

/// Parses a 1-based color set such as `{1,3}` or `{}` into a 0-based
/// pattern inside rank `rank`.
pub fn parse_pattern(text: &str, rank: usize) -> Result<SupportPattern> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(t);
    let mut out = Vec::new();
    for (_, part) in split_top(inner) {
        if part.is_empty() {
            continue;
        }
        let c: usize = part.parse().map_err(|_| Error::PatternViolation(format!("bad color `{part}` in `{t}`")))?;
        if c == 0 || c > rank {
            return Err(Error::PatternViolation(format!("color {c} outside 1..={rank}")));
        }
        out.push(c - 1);
    }
    Ok(SupportPattern::from_indices(out))
}

/// Parses a degree such as `(1,-2)` or `1,-2`.
pub fn parse_degree(text: &str) -> Result<DegreeVector> {
    let t = text.trim();
    let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    parse_int_list(inner).map(DegreeVector).map_err(|(_, m)| Error::Precondition(format!("bad degree `{t}`: {m}")))
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        Instance::resolve(InstanceFile::parse(text)?, text)
    }

    fn resolve(file: InstanceFile, text: &str) -> Result<Instance> {
        let n = file.variables.len();
        let colors = file.colors.iter().map(|&c| if c == 0 { None } else { Some(c - 1) }).collect();
        let grading = GradingSpec::new(file.rank, colors, file.field)?;
        let locate = |section: &str, key: &str| -> (usize, usize) {
            let mut current = "";
            for (k, line) in text.lines().enumerate() {
                let t = line.split('#').next().unwrap_or("").trim();
                if let Some(s) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                    current = s.trim();
                } else if current == section && t.split('=').next().map(str::trim) == Some(key) {
                    return (k + 1, line.find('=').map_or(1, |e| e + 2));
                }
            }
            (1, 1)
        };
        let ideals: BTreeMap<String, MonomialIdeal> =
            file.ideals.iter().map(|(name, gens)| (name.clone(), MonomialIdeal::new(n, gens.clone()))).collect();
        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            let module = match spec {
                None => GradedModule::zero(grading.clone()),
                Some(parts) => {
                    let mut summands = Vec::new();
                    for p in parts {
                        let ideal = match &p.quotient {
                            None => MonomialIdeal::zero(n),
                            Some(IdealRef::Inline(g)) => MonomialIdeal::new(n, g.clone()),
                            Some(IdealRef::Named(r)) => match ideals.get(r) {
                                Some(i) => i.clone(),
                                None => {
                                    let (l, c) = locate("modules", name);
                                    return Err(perr(l, c, format!("unknown ideal `{r}`")));
                                }
                            },
                        };
                        let shift: Vec<i64> = match &p.twist {
                            None => vec![0; n],
                            Some(v) if v.len() == n => v.iter().map(|x| -x).collect(),
                            Some(v) => {
                                let (l, c) = locate("modules", name);
                                return Err(perr(l, c, format!("twist has {} entries, ring has {n} variables", v.len())));
                            }
                        };
                        summands.push(Summand::new(shift, ideal));
                    }
                    GradedModule::new(grading.clone(), summands)?
                }
            };
            modules.insert(name.clone(), module);
        }
        let mut primes = BTreeMap::new();
        for (name, vs) in &file.primes {
            primes.insert(name.clone(), MonomialPrime::new(n, vs.iter().copied())?);
        }
        Ok(Instance { file, grading, ideals, modules, primes })
    }

    pub fn variables(&self) -> &[String] {
        &self.file.variables
    }

    /// A named ideal, `R_+`, or an inline generator list such as `x^2, y`.
    pub fn ideal(&self, name: &str) -> Result<MonomialIdeal> {
        if let Some(i) = self.ideals.get(name) {
            return Ok(i.clone());
        }
        if name.trim() == "R_+" {
            return ideal_rplus(&self.grading);
        }
        let inner = name.trim().trim_start_matches('(').trim_end_matches(')');
        parse_generators(inner, self.variables())
            .map(|g| MonomialIdeal::new(self.variables().len(), g))
            .map_err(|_| Error::UnknownName { kind: "ideal", name: name.to_string() })
    }

    /// A named module; `S` is the free module of rank one unless redefined.
    pub fn module(&self, name: &str) -> Result<GradedModule> {
        match self.modules.get(name) {
            Some(m) => Ok(m.clone()),
            None if name == "S" => Ok(GradedModule::free(self.grading.clone())),
            None => Err(Error::UnknownName { kind: "module", name: name.to_string() }),
        }
    }

    /// A named prime, or an inline variable list such as `x, y`.
    pub fn prime(&self, name: &str) -> Result<MonomialPrime> {
        if let Some(p) = self.primes.get(name) {
            return Ok(p.clone());
        }
        let inner = name.trim().trim_start_matches('(').trim_end_matches(')');
        let mut idx = Vec::new();
        for (_, v) in split_top(inner) {
            match self.variables().iter().position(|x| x == v) {
                Some(j) => idx.push(j),
                None => return Err(Error::UnknownName { kind: "prime", name: name.to_string() }),
            }
        }
        MonomialPrime::new(self.variables().len(), idx)
    }

    /// Ideals in declaration order.
    pub fn ideal_names(&self) -> Vec<String> {
        self.file.ideals.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Modules in declaration order; `S` first when not declared.
    pub fn module_names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.file.modules.iter().map(|(n, _)| n.clone()).collect();
        if !out.iter().any(|n| n == "S") {
            out.insert(0, "S".into());
        }
        out
    }

    /// 64-bit FNV-1a of the canonical serialization.
    pub fn hash(&self) -> u64 {
        self.file.serialize().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[ring]\nvariables = x, y\ncolors = 1, 2\n\n[ideals]\nb = x\n";

    #[test]
    fn minimal_round_trip() {
        let f = InstanceFile::parse(MINIMAL).unwrap();
        let again = InstanceFile::parse(&f.serialize()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.serialize(), again.serialize());
    }

    #[test]
    fn color_out_of_range_is_located() {
        let text = "[ring]\nvariables = x, y\ncolors = 1, 3\nrank = 2\n";
        match InstanceFile::parse(text) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 13);
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_keys_and_refs() {
        assert!(matches!(InstanceFile::parse("[ring]\nvariables = x\nflavour = 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(InstanceFile::parse("[ring]\nvariables = x\n[ideals]\nb = z\n"), Err(Error::Parse { line: 4, col: 5, .. })));
        assert!(matches!(Instance::parse("[ring]\nvariables = x\n[modules]\nM = S/q\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(InstanceFile::parse("[ring]\nvariables = x\n[stuff]\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn modules_and_tasks() {
        let text = "[ring]\nvariables = x, y\ncolors = 1, 2\nfield = GF(3)\n[ideals]\nb = x^2*y, y^3\nz = 0\nu = 1\n\
                    [modules]\nM = S/b + S(-1,0)/(x) + S\nZ = 0\n[primes]\np = x, y\n[tasks]\nt = end(b, M, 1) == {(-1)}\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.grading.field, Field::Prime(3));
        let m = inst.module("M").unwrap();
        assert_eq!(m.summands.len(), 3);
        assert_eq!(m.summands[1].shift, vec![1, 0]);
        assert!(inst.ideal("z").unwrap().is_zero());
        assert!(inst.ideal("u").unwrap().is_unit());
        assert!(inst.module("Z").unwrap().is_zero());
        assert_eq!(inst.file.tasks[0].args, vec!["b", "M", "1"]);
        assert_eq!(inst.file.tasks[0].expect.as_deref(), Some("{(-1)}"));
        let again = InstanceFile::parse(&inst.file.serialize()).unwrap();
        assert_eq!(again, inst.file);
        assert_eq!(inst.ideal("x, y^2").unwrap().gens().len(), 2);
    }
}
