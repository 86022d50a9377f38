use std::sync::OnceLock;

use proptest::prelude::*;

use gdp_core::intersection::{
    exceptional_part, local_c1, mumford_product, product_resolution, pullback, strict_transform,
};
use gdp_core::linalg::first_non_negative_definite_minor;
use gdp_core::positivity::{gram_matrix, is_ample, rank1_shortcut, AmplenessTester};
use gdp_core::rational::{int, is_integral};
use gdp_core::riemann_roch::chi_omega1;
use gdp_core::surface::builtin_fixtures;
use gdp_core::{QDivisor, Surface, WeilClass};

fn supported() -> &'static [Surface] {
    static CELL: OnceLock<Vec<Surface>> = OnceLock::new();
    CELL.get_or_init(|| {
        builtin_fixtures()
            .into_iter()
            .filter(|m| !m.unsupported_for_positivity())
            .map(|m| Surface::new(m).unwrap())
            .collect()
    })
}

/// A supported surface and a coefficient vector for it.
fn surface_and_divisor() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..supported().len()).prop_flat_map(|i| {
        let n = supported()[i].minus_one_positions().len();
        (Just(i), prop::collection::vec(-4i64..=4, n))
    })
}

fn weil(i: usize, coeffs: &[i64]) -> (&'static Surface, WeilClass) {
    let s = &supported()[i];
    (s, s.weil(coeffs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn pullback_is_orthogonal_to_exceptional_curves((i, coeffs) in surface_and_divisor()) {
        let (s, d) = weil(i, &coeffs);
        let pb = pullback(s, &d);
        for &e in s.exceptional_positions() {
            prop_assert_eq!(product_resolution(s, &pb, &s.curve_divisor(e)), int(0));
        }
    }

    #[test]
    fn strict_transform_splits_into_local_classes((i, coeffs) in surface_and_divisor()) {
        let (s, d) = weil(i, &coeffs);
        let diff = &strict_transform(s, &d) - &pullback(s, &d);
        let mut total = QDivisor::zero(s.curve_count());
        for p in 0..s.point_count() {
            total = &total + &local_c1(s, p, &d).unwrap();
        }
        prop_assert_eq!(diff, total);
    }

    #[test]
    fn mumford_product_is_symmetric_and_bilinear(
        (i, a) in surface_and_divisor(),
        seed in prop::collection::vec(-4i64..=4, 8),
    ) {
        let s = &supported()[i];
        let b: Vec<i64> = seed[..a.len()].to_vec();
        let (da, db) = (s.weil(&a).unwrap(), s.weil(&b).unwrap());
        prop_assert_eq!(mumford_product(s, &da, &db), mumford_product(s, &db, &da));
        let sum = &da + &db;
        prop_assert_eq!(
            mumford_product(s, &sum, &sum),
            mumford_product(s, &da, &da) + int(2) * mumford_product(s, &da, &db) + mumford_product(s, &db, &db)
        );
    }

    #[test]
    fn euler_characteristics_are_integers((i, coeffs) in surface_and_divisor()) {
        let (s, d) = weil(i, &coeffs);
        let chi = chi_omega1(s, &d);
        prop_assert!(is_integral(&chi.chi_omega));
        prop_assert!(is_integral(&chi.chi_structure));
    }

    #[test]
    fn serre_duality_for_reflexive_forms((i, coeffs) in surface_and_divisor()) {
        // Ω^[1] ⊗ ω ≅ T on a surface, so χ(Ω^[1](D)) = χ(Ω^[1](-D))
        let (s, d) = weil(i, &coeffs);
        prop_assert_eq!(chi_omega1(s, &d).chi_omega, chi_omega1(s, &d.scaled(-1)).chi_omega);
    }

    #[test]
    fn cartier_points_carry_integral_pullbacks((i, coeffs) in surface_and_divisor()) {
        let (s, d) = weil(i, &coeffs);
        let pb = pullback(s, &d);
        for t in chi_omega1(s, &d).a_terms {
            let local = exceptional_part(s, &pb).restrict(s.point_curves(t.point));
            prop_assert_eq!(t.k_summands == 1, local.is_integral());
            if t.k_summands == 1 {
                prop_assert_eq!(t.a_o, int(0));
            }
        }
    }

    #[test]
    fn ampleness_is_a_cone((i, coeffs) in surface_and_divisor(), k in 1i64..4) {
        let (s, d) = weil(i, &coeffs);
        let ample = is_ample(s, &d).unwrap().is_ample();
        prop_assert_eq!(ample, is_ample(s, &d.scaled(k)).unwrap().is_ample());
        if ample {
            prop_assert!(!is_ample(s, &d.scaled(-1)).unwrap().is_ample());
        }
    }
}

#[test]
fn gram_entries_equal_direct_products() {
    for s in supported() {
        let gram = gram_matrix(s).unwrap();
        let ones = s.minus_one_positions();
        for (i, _) in ones.iter().enumerate() {
            let mut coeffs = vec![0; ones.len()];
            coeffs[i] = 1;
            let pb = pullback(s, &s.weil(&coeffs).unwrap());
            for (j, &cj) in ones.iter().enumerate() {
                let direct = product_resolution(s, &pb, &s.curve_divisor(cj));
                assert_eq!(gram.entries[i][j], direct, "{} ({i},{j})", s.name());
            }
        }
    }
}

#[test]
fn rank_one_shortcut_agrees_with_gram() {
    let mut compared = 0;
    for s in supported()
        .iter()
        .filter(|s| s.model().metadata.picard_rank == Some(1))
    {
        let tester = AmplenessTester::new(s).unwrap();
        let n = s.minus_one_positions().len();
        let total = 7usize.pow(n as u32);
        for index in 0..total {
            let coeffs: Vec<i64> = (0..n)
                .map(|k| (index / 7usize.pow(k as u32) % 7) as i64 - 3)
                .collect();
            let d = s.weil(&coeffs).unwrap();
            let gram = tester.certify(&d).unwrap();
            let shortcut = rank1_shortcut(s, &d).unwrap();
            assert_eq!(gram.verdict, shortcut.verdict, "{} {coeffs:?}", s.name());
            compared += 1;
        }
    }
    assert!(compared > 0);
}

#[test]
fn exceptional_matrices_are_negative_definite() {
    for model in builtin_fixtures() {
        let s = Surface::new(model).unwrap();
        for p in 0..s.point_count() {
            let curves = s.point_curves(p);
            let m: Vec<Vec<_>> = curves
                .iter()
                .map(|&a| curves.iter().map(|&b| s.form(a, b).clone()).collect())
                .collect();
            assert_eq!(
                first_non_negative_definite_minor(&m),
                None,
                "{} point {p}",
                s.name()
            );
        }
    }
}
