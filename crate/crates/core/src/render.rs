//! Support diagrams: ASCII grids, SVG dot diagrams and JSON box dumps.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grading::{DegreeVector, Interval, PointSet};

/// What to draw and how. Rank 1 windows draw a single row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    /// Bounded, nonempty, one interval per coordinate (rank 1 or 2).
    pub window: Vec<Interval>,
    pub labels: Vec<String>,
    pub marker: char,
}

impl RenderSpec {
    pub fn new(window: Vec<Interval>) -> Result<Self> {
        if window.is_empty() || window.len() > 2 {
            return Err(Error::Precondition(format!("diagrams need rank 1 or 2, got {}", window.len())));
        }
        if window.iter().any(|iv| !iv.is_bounded() || iv.is_empty()) {
            return Err(Error::Precondition("render window must be bounded and nonempty".into()));
        }
        let labels = (1..=window.len()).map(|k| format!("n{k}")).collect();
        Ok(RenderSpec { window, labels, marker: '*' })
    }

    /// `[lo, hi]^rank`.
    pub fn cube(rank: usize, lo: i64, hi: i64) -> Result<Self> {
        RenderSpec::new(vec![Interval::closed(lo, hi); rank])
    }

    fn rows(&self) -> (i64, i64) {
        match self.window.get(1) {
            Some(iv) => (iv.lo.unwrap(), iv.hi.unwrap()),
            None => (0, 0),
        }
    }

    fn columns(&self) -> (i64, i64) {
        (self.window[0].lo.unwrap(), self.window[0].hi.unwrap())
    }

    fn contains(&self, set: &PointSet, x: i64, y: i64) -> bool {
        let p = if self.window.len() == 1 { vec![x] } else { vec![x, y] };
        set.contains(&DegreeVector(p))
    }

    fn check_rank(&self, set: &PointSet) -> Result<()> {
        match set.boxes().first() {
            Some(b) if b.rank() != self.window.len() => {
                Err(Error::RankMismatch { expected: self.window.len(), found: b.rank() })
            }
            _ => Ok(()),
        }
    }
}

/// Top row first. Members get the marker; the axes are `|`, `-` and `+`.
pub fn ascii(set: &PointSet, spec: &RenderSpec) -> Result<String> {
    spec.check_rank(set)?;
    let (x0, x1) = spec.columns();
    let (y0, y1) = spec.rows();
    let width = [y0, y1].iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    if spec.window.len() == 2 {
        let _ = writeln!(out, "{:>width$} ^ {}", "", spec.labels[1]);
    }
    for y in (y0..=y1).rev() {
        let label = if spec.window.len() == 2 { y.to_string() } else { String::new() };
        let _ = write!(out, "{label:>width$} ");
        for x in x0..=x1 {
            let ch = if spec.contains(set, x, y) {
                spec.marker
            } else {
                match (x == 0, y == 0 && spec.window.len() == 2) {
                    (true, true) => '+',
                    (true, false) => '|',
                    (false, true) => '-',
                    (false, false) => '.',
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>width$} {x0}..{x1} > {}", "", spec.labels[0]);
    Ok(out)
}

const CELL: i64 = 20;

/// Dot diagram: filled dots on supporting degrees, faint dots elsewhere.
pub fn svg(set: &PointSet, spec: &RenderSpec) -> Result<String> {
    spec.check_rank(set)?;
    let (x0, x1) = spec.columns();
    let (y0, y1) = spec.rows();
    let (w, h) = ((x1 - x0 + 3) * CELL, (y1 - y0 + 3) * CELL);
    let px = |x: i64| (x - x0 + 1) * CELL + CELL / 2;
    let py = |y: i64| (y1 - y + 1) * CELL + CELL / 2;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if (x0..=x1).contains(&0) {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black" stroke-width="1"/>"#,
            px(0),
            CELL / 2,
            h - CELL / 2
        );
    }
    if (y0..=y1).contains(&0) {
        let _ = writeln!(
            out,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="black" stroke-width="1"/>"#,
            py(0),
            CELL / 2,
            w - CELL / 2
        );
    }
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            if spec.contains(set, x, y) {
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, px(x), py(y));
            } else {
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="1" fill="gray"/>"#, px(x), py(y));
            }
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" font-family="monospace">{}</text>"#,
        w - CELL,
        h - 4,
        spec.labels[0]
    );
    if spec.window.len() == 2 {
        let _ = writeln!(
            out,
            r#"<text x="4" y="14" font-size="12" font-family="monospace">{}</text>"#,
            spec.labels[1]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The box-union representation, `null` marking an infinite bound.
pub fn json_boxes(set: &PointSet) -> Value {
    let boxes = set.boxes();
    json!({
        "rank": boxes.first().map(|b| b.rank()),
        "boxes": boxes,
    })
}
