//! Property tests. Instances come from a ChaCha stream seeded by proptest,
//! so a failing seed reproduces exactly.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mlcoh::cohomology::{fine_slice_cohomology, global_support, CechComplex, CellDecomposition};
use mlcoh::grading::{
    dominates, lattice_points, maximal_elements, qdomain_cover, DegreeVector, PointSet, Projection, QDomain,
    SupportPattern,
};
use mlcoh::instance_io::{Instance, InstanceFile};
use mlcoh::invariants::ends::{end_in, projected_support};
use mlcoh::invariants::finiteness::g_in;
use mlcoh::invariants::{anchor_points, anchor_points_regraded, CohomologyTable, FinDim};
use mlcoh::module::{bounding_shift, regrade, GradedModule};
use mlcoh::monomial::{directions, ideal_rplus, prime_directions, Monomial, MonomialIdeal, MonomialPrime};
use mlcoh::oracle::{brute_force_max, cohomology_at, OracleComplex};

struct Case {
    inst: Instance,
    b: MonomialIdeal,
    m: GradedModule,
    rng: ChaCha8Rng,
}

fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = common::instance(&mut rng);
    let b = inst.ideal(&format!("b{}", rng.gen_range(1..=3))).unwrap();
    let m = inst.module(&format!("M{}", rng.gen_range(1..=2))).unwrap();
    Case { inst, b, m, rng }
}

fn point<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn pattern(rank: usize, mask: u8) -> SupportPattern {
    SupportPattern::from_indices((0..rank).filter(|i| mask >> i & 1 == 1))
}

fn points_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3).prop_flat_map(|r| (Just(r), prop::collection::vec(prop::collection::vec(-4i64..=4, r), 0..8)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // grading ----------------------------------------------------------------

    #[test]
    fn maxima_match_brute_force((_r, pts) in points_strategy()) {
        let pts: Vec<DegreeVector> = pts.into_iter().map(DegreeVector).collect();
        prop_assert_eq!(maximal_elements(&PointSet::finite(pts.clone())), brute_force_max(&pts));
    }

    #[test]
    fn mutual_domination_gives_equal_maxima((_r, pts) in points_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma: Vec<DegreeVector> = pts.into_iter().map(DegreeVector).collect();
        // Delta adds points below members of sigma, so each dominates the other.
        let mut delta = sigma.clone();
        for p in &sigma {
            if rng.gen_bool(0.5) {
                delta.push(DegreeVector(p.0.iter().map(|&c| c - rng.gen_range(0..=2)).collect()));
            }
        }
        let (s, d) = (PointSet::finite(sigma), PointSet::finite(delta));
        prop_assert!(dominates(&s, &d) && dominates(&d, &s));
        prop_assert_eq!(maximal_elements(&s), maximal_elements(&d));
    }

    #[test]
    fn qdomain_shift_off_pattern(r in 1usize..=3, qmask in 0u8..8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = pattern(r, qmask);
        let s = point(&mut rng, r, -3, 3);
        let t: Vec<i64> = (0..r).map(|i| if q.contains(i) { s[i] + rng.gen_range(0..=3) } else { s[i] }).collect();
        let w: Vec<i64> = (0..r).map(|i| if q.contains(i) { 0 } else { rng.gen_range(-3..=3) }).collect();
        let x = QDomain::new(DegreeVector(s.clone()), DegreeVector(t.clone()), q.clone()).unwrap();
        let shift = |v: &[i64]| DegreeVector(v.iter().zip(&w).map(|(a, b)| a + b).collect());
        let y = QDomain::new(shift(&s), shift(&t), q).unwrap();
        for n in lattice_points(&vec![-6; r], &vec![6; r]) {
            let n = DegreeVector(n);
            prop_assert_eq!(x.contains(&n), y.contains(&n));
        }
    }

    #[test]
    fn cover_contains_inputs(r in 1usize..=3, qmask in 1u8..8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = pattern(r, qmask);
        let xs: Vec<QDomain> = (0..rng.gen_range(0..=3))
            .map(|_| {
                let s = point(&mut rng, r, -3, 3);
                let t: Vec<i64> = (0..r).map(|i| if q.contains(i) { s[i] + rng.gen_range(0..=3) } else { s[i] }).collect();
                QDomain::new(DegreeVector(s), DegreeVector(t), q.clone()).unwrap()
            })
            .collect();
        let cover = qdomain_cover(&xs, &q, r).unwrap();
        for n in lattice_points(&vec![-6; r], &vec![6; r]) {
            let n = DegreeVector(n);
            prop_assert!(!xs.iter().any(|x| x.contains(&n)) || cover.contains(&n));
        }
    }

    // monomial_core ----------------------------------------------------------

    #[test]
    fn directions_intersect_over_minimal_primes(seed in any::<u64>()) {
        let c = case(seed);
        let g = &c.inst.grading;
        let dir = directions(&c.b, g).unwrap();
        let mut meet = SupportPattern::full(g.rank());
        for p in c.b.minimal_primes() {
            let d = prime_directions(&p, g).unwrap();
            meet = SupportPattern::from_indices(meet.iter().filter(|&i| d.contains(i)));
        }
        prop_assert_eq!(&dir, &meet);
        if !dir.is_empty() {
            let rad = c.b.radical();
            prop_assert!(ideal_rplus(g).unwrap().gens().iter().all(|m| rad.contains(m)));
        }
    }

    #[test]
    fn staircase_operations(seed in any::<u64>()) {
        let mut c = case(seed);
        let n = c.b.nvars();
        let vars: std::collections::BTreeSet<usize> = (0..n).filter(|_| c.rng.gen_bool(0.5)).collect();
        let sat = c.b.saturate(&vars);
        prop_assert_eq!(sat.saturate(&vars), sat.clone());
        prop_assert_eq!(c.b.radical().radical(), c.b.radical());
        let u = Monomial(point(&mut c.rng, n, 0, 2).into_iter().map(|v| v as u32).collect());
        let colon = c.b.colon(&u);
        for e in lattice_points(&vec![0; n], &vec![4; n]) {
            let mono = Monomial(e.iter().map(|&v| v as u32).collect());
            prop_assert_eq!(colon.contains(&mono), c.b.contains(&mono.mul(&u)));
            let brute = c.b.gens().iter().any(|g| g.0.iter().zip(&mono.0).all(|(a, b)| a <= b));
            prop_assert_eq!(c.b.contains(&mono), brute);
            // x^e lies in the saturation iff some x^e * x_vars^k does.
            let big = Monomial(mono.0.iter().enumerate().map(|(j, &v)| if vars.contains(&j) { v + 12 } else { v }).collect());
            prop_assert_eq!(sat.contains(&mono), c.b.contains(&big));
        }
    }

    // module_model -----------------------------------------------------------

    #[test]
    fn twist_shifts_components(seed in any::<u64>()) {
        let mut c = case(seed);
        let n = c.m.nvars();
        let w = point(&mut c.rng, n, -3, 3);
        let twisted = c.m.twist(&w);
        for a in lattice_points(&vec![-4; n], &vec![4; n]) {
            let shifted: Vec<i64> = a.iter().zip(&w).map(|(x, y)| x + y).collect();
            prop_assert_eq!(twisted.component_basis(&a), c.m.component_basis(&shifted));
        }
    }

    #[test]
    fn bounding_shift_covers_support(seed in any::<u64>()) {
        let mut c = case(seed);
        let g = c.m.grading.clone();
        let m = DegreeVector(point(&mut c.rng, g.rank(), 0, 2));
        prop_assume!(!m.is_zero());
        let Ok(x) = bounding_shift(&c.m, &m) else { return Ok(()) };
        let n = g.nvars();
        for a in lattice_points(&vec![-4; n], &vec![6; n]) {
            if c.m.component_basis(&a).is_empty() {
                continue;
            }
            let h = g.coarse(&a);
            prop_assert!(x.s.leq(&h) && !x.t.leq(&h), "degree {:?} (coarse {}) outside {}", a, h, x);
        }
    }

    // cohomology_engine ------------------------------------------------------

    #[test]
    fn cells_are_constant(seed in any::<u64>()) {
        let mut c = case(seed);
        let cx = CechComplex::new(c.b.clone(), c.m.clone()).boolean();
        let cells = CellDecomposition::build(&cx);
        let n = c.m.nvars();
        for _ in 0..6 {
            let a = point(&mut c.rng, n, -8, 8);
            let cell = cells.cell_box(&cells.locate(&a));
            let b: Vec<i64> = cell.0.iter().map(|iv| {
                let lo = iv.lo.unwrap_or(-12).max(-12);
                let hi = iv.hi.unwrap_or(12).min(12);
                c.rng.gen_range(lo..=hi.max(lo))
            }).collect();
            prop_assert_eq!(cells.locate(&b), cells.locate(&a));
            let da = fine_slice_cohomology(&cx, &a);
            prop_assert_eq!(&da, &fine_slice_cohomology(&cx, &b));
            prop_assert_eq!(da.as_slice(), cells.dims_at_point(&a));
        }
    }

    #[test]
    fn engine_matches_oracle_far_out(seed in any::<u64>()) {
        let mut c = case(seed);
        let cech = CechComplex::new(c.b.clone(), c.m.clone());
        let cells = CellDecomposition::build(&cech.boolean());
        for _ in 0..8 {
            let a = point(&mut c.rng, c.m.nvars(), -15, 15);
            let oracle = cohomology_at(OracleComplex::Cech(&cech), &a);
            prop_assert_eq!(cells.dims_at_point(&a), oracle.as_slice(), "at {:?}", a);
        }
    }

    #[test]
    fn regrading_commutes_with_support(seed in any::<u64>(), mask in 0u8..8) {
        let c = case(seed);
        let r = c.inst.grading.rank();
        let merged = pattern(r, mask);
        prop_assume!(merged.len() >= 2);
        let phi = Projection::merge(r, &merged).unwrap();
        let regraded = regrade(&c.m, &phi).unwrap();
        let before = CohomologyTable::new(&c.b, &c.m);
        let after = CohomologyTable::new(&c.b, &regraded);
        let target = phi.target_rank();
        for i in 0..=before.top() {
            let image = before.coarse(i).project(&phi).unwrap();
            let direct = after.coarse(i);
            for h in lattice_points(&vec![-6; target], &vec![6; target]) {
                let h = DegreeVector(h);
                prop_assert_eq!(image.contains(&h), direct.contains(&h), "i={} at {}", i, h);
            }
        }
    }

    #[test]
    fn vanishing_above_generator_count(seed in any::<u64>()) {
        let c = case(seed);
        prop_assert!(global_support(&c.b, &c.m, c.b.gens().len() + 1).is_empty());
        let table = CohomologyTable::new(&c.b, &c.m);
        prop_assert_eq!(table.top(), c.b.gens().len());
    }

    #[test]
    fn direction_colors_bounded_above(seed in any::<u64>()) {
        let c = case(seed);
        let g = &c.inst.grading;
        let dir = directions(&c.b, g).unwrap();
        let table = CohomologyTable::new(&c.b, &c.m);
        for i in 0..=table.top() {
            for cell in table.fine(i).cells {
                for j in (0..g.nvars()).filter(|&j| g.color(j).is_some_and(|col| dir.contains(col))) {
                    prop_assert!(cell.cell.0[j].hi.is_some(), "H^{} cell {} unbounded in variable {}", i, cell.cell, j + 1);
                }
            }
        }
    }

    // invariants -------------------------------------------------------------

    #[test]
    fn ends_dominate_projected_support(seed in any::<u64>()) {
        let c = case(seed);
        let table = CohomologyTable::new(&c.b, &c.m);
        prop_assume!(!directions(&c.b, &c.inst.grading).unwrap().is_empty());
        for j in 0..=table.top() {
            let end = end_in(&table, j).unwrap();
            let (_, projected) = projected_support(&table, j).unwrap();
            prop_assert!(dominates(&projected, &end.points));
            prop_assert!(end.points.to_points().is_some());
        }
    }

    #[test]
    fn anchors_survive_regrading(seed in any::<u64>()) {
        let c = case(seed);
        let g = &c.inst.grading;
        for p in MonomialPrime::all_containing(&MonomialIdeal::zero(g.nvars())) {
            if p.vars().is_empty() || prime_directions(&p, g).unwrap().is_empty() {
                continue;
            }
            for i in 0..=p.vars().len() {
                let direct = anchor_points(&p, &c.m, i).unwrap();
                let regraded = anchor_points_regraded(&p, &c.m, i).unwrap();
                prop_assert_eq!(direct.points.to_points(), regraded.points.to_points(), "p={:?} i={}", p.vars(), i);
            }
        }
    }

    #[test]
    fn g_of_empty_pattern_is_grade(seed in any::<u64>()) {
        let c = case(seed);
        let table = CohomologyTable::new(&c.b, &c.m);
        let g = g_in(&table, &SupportPattern::empty()).unwrap().value;
        let least = (0..=table.top()).find(|&i| !table.is_zero(i)).map_or(FinDim::Infinite, FinDim::Finite);
        prop_assert_eq!(g, least);
    }

    #[test]
    fn singleton_minimum_finds_first_infinite_support(seed in any::<u64>()) {
        let c = case(seed);
        let table = CohomologyTable::new(&c.b, &c.m);
        let r = c.inst.grading.rank();
        let min = (0..r)
            .map(|j| g_in(&table, &SupportPattern::from_indices([j])).unwrap().value)
            .min()
            .unwrap();
        let first_infinite = (0..=table.top())
            .find(|&i| !table.finitely_graded(i))
            .map_or(FinDim::Infinite, FinDim::Finite);
        prop_assert_eq!(min, first_infinite);
    }

    #[test]
    fn g_is_shift_invariant(seed in any::<u64>()) {
        let mut c = case(seed);
        let w = point(&mut c.rng, c.m.nvars(), -3, 3);
        let (plain, twisted) = (CohomologyTable::new(&c.b, &c.m), CohomologyTable::new(&c.b, &c.m.twist(&w)));
        for q in SupportPattern::all_subsets(c.inst.grading.rank()) {
            prop_assert_eq!(g_in(&plain, &q).unwrap().value, g_in(&twisted, &q).unwrap().value, "Q={}", q);
        }
    }

    // instance_io ------------------------------------------------------------

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let c = case(seed);
        let text = c.inst.file.serialize();
        let again = InstanceFile::parse(&text).unwrap();
        prop_assert_eq!(again.serialize(), text.clone());
        prop_assert_eq!(Instance::parse(&text).unwrap().hash(), c.inst.hash());
    }
}
