//! Supports of `H^i_{R_+}(A ⊗_k B)` for bigraded tensor products of two
//! standard graded domains, given the one-dimensional supports of
//! `H^j_{A_+}(A)` and `H^l_{B_+}(B)`.

use crate::grading::{Interval, LatticeBox, PointSet};

fn product(a: &PointSet, b: &PointSet) -> Vec<LatticeBox> {
    let mut out = Vec::new();
    for x in a.boxes() {
        for y in b.boxes() {
            out.push(LatticeBox(x.0.iter().chain(&y.0).copied().collect()));
        }
    }
    out
}

fn at(supports: &[PointSet], i: usize) -> PointSet {
    supports.get(i).cloned().unwrap_or_else(PointSet::empty)
}

/// `(S(A) × S(H^i_B)) ∪ (S(H^i_A) × S(B)) ∪ ⋃_{j+l=i+1; j,l≥2} S(H^j_A) × S(H^l_B)`.
pub fn kunneth_support(
    supp_a: &[PointSet],
    supp_b: &[PointSet],
    base_a: &PointSet,
    base_b: &PointSet,
    i: usize,
) -> PointSet {
    let mut boxes = product(base_a, &at(supp_b, i));
    boxes.extend(product(&at(supp_a, i), base_b));
    for j in 2..=i.saturating_sub(1) {
        let l = i + 1 - j;
        if l >= 2 {
            boxes.extend(product(&at(supp_a, j), &at(supp_b, l)));
        }
    }
    PointSet::region(boxes)
}

/// Supports `{0}` at each index in `middle`, `Z_{<0}` at `dim`, empty
/// elsewhere, for indices `0..=dim`.
pub fn prescribed_supports(dim: usize, middle: &[usize]) -> Vec<PointSet> {
    (0..=dim)
        .map(|i| {
            if i == dim {
                PointSet::region(vec![LatticeBox(vec![Interval::at_most(-1)])])
            } else if middle.contains(&i) {
                PointSet::region(vec![LatticeBox(vec![Interval::point(0)])])
            } else {
                PointSet::empty()
            }
        })
        .collect()
}

/// The two factors with `w = v = 5`, `W = {2}`, `V = {3}`.
pub fn figure_one_supports() -> (Vec<PointSet>, Vec<PointSet>) {
    (prescribed_supports(5, &[2]), prescribed_supports(5, &[3]))
}

/// `S(A) = S(B) = N_0`.
pub fn natural_base() -> PointSet {
    PointSet::region(vec![LatticeBox(vec![Interval::at_least(0)])])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_and_high_indices_vanish() {
        let (a, b) = figure_one_supports();
        let n = natural_base();
        for i in [0, 1, 10, 11] {
            assert!(kunneth_support(&a, &b, &n, &n, i).is_empty(), "i = {i}");
        }
        assert_eq!(
            kunneth_support(&a, &b, &n, &n, 4),
            PointSet::region(vec![LatticeBox(vec![Interval::point(0), Interval::point(0)])])
        );
    }
}
