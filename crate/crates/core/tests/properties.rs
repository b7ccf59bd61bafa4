mod common;

use std::collections::BTreeSet;

use gardner::board::{Dihedral, Frame, Line, Placement, Square};
use gardner::certificate::{classify_report, CaseTwoVector, CoefficientSystem, RationalMatrix};
use gardner::cnf::{encode, Dimacs};
use gardner::constructions::{enumerate_seeds, octagon_placement, validate_null_a};
use gardner::nullstellensatz::{
    balanced_lonely_slopes, build_case1, closed_form_case2, find_nonvanishing, omega, Case2Poly, FactorProduct, Grid,
    Intercepts, LinearFactor, LonelyConstants,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use common::*;

fn placement_strategy(max_n: usize) -> impl Strategy<Value = Placement> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=(n * n).min(3 * n)).prop_map(move |set| {
            Placement::new(n, set.into_iter().map(|(c, r)| Square::new(c, r))).unwrap()
        })
    })
}

fn factor_strategy() -> impl Strategy<Value = (i64, i64, i64)> {
    ((-3i64..=3), (-3i64..=3), (-9i64..=9)).prop_filter("nonzero form", |&(a, b, _)| a != 0 || b != 0)
}

fn as_tuples(p: &Placement) -> Vec<(i64, i64)> {
    p.queens().iter().map(|s| (s.col as i64, s.row as i64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dihedral_maps_preserve_structure(p in placement_strategy(8)) {
        let per = p.defined_lines_per_slope();
        for g in Dihedral::ALL {
            let t = p.transform(g);
            prop_assert_eq!(t.len(), p.len());
            prop_assert_eq!(t.is_good(), p.is_good());
            prop_assert_eq!(t.has_three_in_line(), p.has_three_in_line());
            prop_assert_eq!(t.lonely_queens().len(), p.lonely_queens().len());
            prop_assert_eq!(t.addable_squares().map(|a| a.len()).ok(), p.addable_squares().map(|a| a.len()).ok());
            let tp = t.defined_lines_per_slope();
            let mut axis = [per[0], per[1]];
            let mut taxis = [tp[0], tp[1]];
            axis.sort();
            taxis.sort();
            prop_assert_eq!(axis, taxis);
            prop_assert_eq!(per[2] + per[3], tp[2] + tp[3]);
            prop_assert_eq!(t.canonical(), p.canonical());
        }
    }

    #[test]
    fn verifier_matches_naive(p in placement_strategy(7)) {
        let q = as_tuples(&p);
        prop_assert_eq!(p.has_three_in_line(), naive_three_in_line(&q));
        prop_assert_eq!(p.is_good(), naive_is_good(&q, p.n()));
    }

    #[test]
    fn json_round_trip(p in placement_strategy(9)) {
        prop_assert_eq!(Placement::from_json(&p.to_json()).unwrap(), p.clone());
        if p.n() % 2 == 1 {
            let file = p.to_file(Frame::Centered).unwrap();
            prop_assert_eq!(file.into_placement().unwrap(), p);
        }
    }

    #[test]
    fn lonely_queens_are_on_no_defined_line(p in placement_strategy(8)) {
        let lines = p.defined_lines();
        for q in p.lonely_queens() {
            prop_assert!(lines.iter().all(|l| !l.covers(q)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coefficient_dp_matches_term_enumeration(
        factors in proptest::collection::vec(factor_strategy(), 0..=10),
        a in 0usize..=11,
        b in 0usize..=11,
    ) {
        let fp = FactorProduct::new(factors.iter().map(|&(x, y, c)| LinearFactor::new(x, y, c).unwrap()).collect());
        let want = term_enumeration_coeff(&factors, a, b);
        prop_assert_eq!(fp.coeff(a, b), want.clone());
        let expanded = expand(&factors).get(&(a, b)).cloned().unwrap_or_default();
        prop_assert_eq!(expanded, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficient_beyond_degree_is_zero(factors in proptest::collection::vec(factor_strategy(), 0..=6), extra in 1usize..4) {
        let fp = FactorProduct::new(factors.iter().map(|&(x, y, c)| LinearFactor::new(x, y, c).unwrap()).collect());
        prop_assert!(fp.coeff(fp.degree() + extra, 0).is_zero());
        prop_assert!(fp.coeff(0, fp.degree() + extra).is_zero());
    }

    #[test]
    fn case1_top_coefficient_ignores_constants(k in 1usize..=5, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ints = Intercepts::new(
            random_list(&mut rng, 2 * k, 30),
            random_list(&mut rng, 2 * k, 30),
            random_list(&mut rng, 2 * k, 60),
            random_list(&mut rng, 2 * k, 60),
        );
        let want = if k % 2 == 1 { -pascal(2 * k, k) } else { pascal(2 * k, k) };
        prop_assert_eq!(build_case1(&ints).unwrap().coeff(4 * k, 4 * k), want.clone());
        prop_assert_eq!(omega(k), want);
    }

    #[test]
    fn scan_returns_first_nonzero_point(
        factors in proptest::collection::vec(factor_strategy(), 1..=6),
        m in 0i64..=3,
    ) {
        let fp = FactorProduct::new(factors.iter().map(|&(x, y, c)| LinearFactor::new(x, y, c).unwrap()).collect());
        let grid = Grid::centered(m);
        let mut first = None;
        'outer: for x in -m..=m {
            for y in -m..=m {
                let v: i64 = factors.iter().map(|&(a, b, c)| a * x + b * y + c).product();
                if v != 0 {
                    first = Some((x, y));
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(find_nonvanishing(&fp, &grid), first);
    }

    #[test]
    fn residuals_of_exact_system_are_negated_closed_forms(
        lonely in proptest::array::uniform4(-9i64..=9),
        sums in proptest::array::uniform4(-40i64..=40),
        k in 1usize..=4,
    ) {
        let l = LonelyConstants { alpha0: lonely[0], beta0: lonely[1], gamma0: lonely[2], delta0: lonely[3] };
        let v = CaseTwoVector::from_integers([lonely[0], lonely[1], lonely[2], lonely[3], sums[0], sums[1], sums[2], sums[3]]);
        let exact = classify_report(&v, k, CoefficientSystem::Exact).unwrap();
        let printed = classify_report(&v, k, CoefficientSystem::Printed).unwrap();
        for (i, w) in Case2Poly::ALL.into_iter().enumerate() {
            let closed = BigRational::from_integer(closed_form_case2(w, k, l, sums).unwrap());
            prop_assert_eq!(-exact.residuals[i].clone(), closed);
        }
        // the printed second row differs exactly by the sign of the Sc term
        let diff = &printed.residuals[1] - &exact.residuals[1];
        prop_assert_eq!(diff, BigRational::from_integer(omega(k) * BigInt::from(sums[2])));
    }

    #[test]
    fn rref_is_idempotent_and_kernel_is_exact(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 1..=6)) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = RationalMatrix::from_integers(&refs).unwrap();
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        let basis = m.nullspace();
        prop_assert_eq!(m.rank() + basis.len(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            prop_assert_eq!(v.iter().find(|x| !x.is_zero()).cloned(), Some(BigRational::from_integer(1.into())));
        }
    }

    #[test]
    fn dimacs_is_stable_and_parses_back(n in 1usize..=5, frac in 0.0f64..1.0) {
        let q = 1 + ((n * n - 1) as f64 * frac) as usize;
        let a = encode(n, q).unwrap();
        let text = a.to_dimacs();
        prop_assert_eq!(&text, &encode(n, q).unwrap().to_dimacs());
        let d = Dimacs::parse(&text).unwrap();
        prop_assert_eq!(d.num_vars, a.num_vars());
        prop_assert_eq!(&d.clauses[..], a.clauses());
        prop_assert!(d.clauses.iter().all(|c| !c.is_empty()));
        prop_assert_eq!((d.n, d.q), (Some(n), Some(q)));
    }

    #[test]
    fn derived_assignment_satisfies_iff_good_of_size(p in placement_strategy(5), q in 1usize..=25) {
        let n = p.n();
        prop_assume!(q <= n * n);
        let inst = encode(n, q).unwrap();
        let ok = inst.check_assignment(&inst.assignment_for(&p).unwrap()).unwrap();
        prop_assert_eq!(ok, p.is_good() && p.len() == q);
    }
}

#[test]
fn octagons_for_seventeen_are_null_and_symmetric() {
    let seeds = enumerate_seeds(17).unwrap();
    let step = (seeds.len() / 25).max(1);
    for s in seeds.iter().step_by(step) {
        let p = octagon_placement(s, 17).unwrap();
        assert!(!p.has_three_in_line(), "{:?}", s.seeds());
        assert!(validate_null_a(&p).pass);
        for g in Dihedral::ALL {
            assert_eq!(p.transform(g), p);
        }
        assert_eq!(p.defined_lines_per_slope(), [(p.len() - 1) / 2; 4]);
    }
}

#[test]
fn good_placements_make_vanishing_products() {
    use gardner::solver::{find_min_good, SearchConfig};
    for n in [5, 7, 9] {
        let w = find_min_good(&SearchConfig::new(n)).unwrap().witness.unwrap();
        let mut factors: Vec<LinearFactor> = w.defined_lines().iter().map(|&l| LinearFactor::from_line(l, n).unwrap()).collect();
        let slopes = balanced_lonely_slopes(&w);
        for (q, s) in w.lonely_queens().iter().zip(slopes) {
            factors.push(LinearFactor::from_line(Line::through(s, *q), n).unwrap());
        }
        let fp = FactorProduct::new(factors);
        assert!(fp.vanishes_on_board(n).unwrap(), "n = {n}");
        let covered: BTreeSet<Square> = (0..n * n)
            .map(|i| Square::from_index(i, n))
            .filter(|&s| w.contains(s) || w.defined_lines().iter().any(|l| l.covers(s)))
            .collect();
        assert_eq!(covered.len(), n * n, "n = {n}");
    }
}
