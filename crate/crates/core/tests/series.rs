use proptest::prelude::*;

use orbichar_core::complex::builtin_equivariant;
use orbichar_core::rational::{q_frac, q_int};
use orbichar_core::series::{
    lhs_wreath_series, macdonald_dimension_check, rhs_es_formula, rhs_exp_formula, rhs_main_formula,
    rhs_multi_index_formula, subgroup_count, sublattice_count_brute, Route, TruncatedSeries, WreathKind,
};
use orbichar_core::{Limits, Q};

fn sigma(r: usize) -> u128 {
    (1..=r).filter(|d| r % d == 0).map(|d| d as u128).sum()
}

fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q_int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exp_log_and_powers(coeffs in prop::collection::vec(-5i64..5, 1..7), a in -3i64..4, b in -3i64..4) {
        let n = coeffs.len();
        let mut f = vec![q_int(0)];
        f.extend(coeffs.iter().map(|&c| q_frac(c, 2)));
        let f = TruncatedSeries::new(f);
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
        let one_plus = TruncatedSeries::one(n).add(&f).unwrap();
        let lhs = one_plus.pow(a).unwrap().mul(&one_plus.pow(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, one_plus.pow(a + b).unwrap());
        prop_assert_eq!(one_plus.mul(&one_plus.inverse().unwrap()).unwrap(), TruncatedSeries::one(n));
    }
}

#[test]
fn product_formula_two_ways() {
    for m in 0..=3 {
        for chi in -2..=3 {
            let chi = q_int(chi);
            assert_eq!(rhs_main_formula(m, &chi, 8).unwrap(), rhs_multi_index_formula(m, &chi, 8).unwrap(), "m={m}");
        }
    }
    // (1 − q)^{−1} for a point with m = 0
    assert_eq!(rhs_main_formula(0, &q_int(1), 8).unwrap().coeffs(), &ints(&[1; 9])[..]);
    assert!(rhs_main_formula(1, &q_frac(1, 2), 3).is_err());
    assert_eq!(rhs_exp_formula(&q_frac(1, 2), 3).coeffs(), &[q_int(1), q_frac(1, 2), q_frac(1, 8), q_frac(1, 48)]);
}

#[test]
fn subgroup_counts() {
    for r in 1..=8 {
        assert_eq!(subgroup_count(r, 0), (r == 1) as u128);
        assert_eq!(subgroup_count(r, 1), 1);
        assert_eq!(subgroup_count(r, 2), sigma(r), "r={r}");
        for m in 0..=3 {
            assert_eq!(subgroup_count(r, m), sublattice_count_brute(r, m), "r={r} m={m}");
        }
    }
    assert_eq!(subgroup_count(2, 2), 3);
    assert_eq!(subgroup_count(4, 2), 7);
}

fn lhs(spec: &str, kind: WreathKind, order: usize, route: Route) -> Vec<Q> {
    let x = builtin_equivariant(spec, None).unwrap();
    let s = lhs_wreath_series(&x, kind, order, route, &Limits::default()).unwrap();
    assert!(s.stopped_at.is_none(), "{spec}: {:?}", s.stopped_at);
    s.coeffs
}

#[test]
fn point_orbifold_series() {
    let z2 = "point/trivial(Z2)";
    // χ_ES(ptⁿ ⋊ Z/2 ≀ Sₙ) = 1 / (2ⁿ n!)
    assert_eq!(lhs(z2, WreathKind::Es(0), 4, Route::Auto), rhs_exp_formula(&q_frac(1, 2), 4).coeffs());
    // χ_{(1)}: the number of classes of Z/2 ≀ Sₙ
    assert_eq!(lhs(z2, WreathKind::Top(1), 6, Route::Auto), ints(&[1, 2, 5, 10, 20, 36, 65]));
    assert_eq!(lhs(z2, WreathKind::Top(1), 6, Route::Auto), rhs_main_formula(1, &q_int(2), 6).unwrap().coeffs());
    for spec in [z2, "point/trivial(S3)"] {
        for m in 0..=2 {
            let base = if spec == z2 { 2 } else { 6 };
            // χ_{(m)}(pt ⋊ G) = |Hom(Z^{m+1}, G)| / |G|
            let chi_top = match (base, m) {
                (2, k) => q_int(2i64.pow(k as u32)),
                (_, 0) => q_int(1),
                (_, 1) => q_int(3),
                _ => q_int(8),
            };
            let top = lhs(spec, WreathKind::Top(m), 5, Route::Auto);
            assert_eq!(top, rhs_main_formula(m, &chi_top, 5).unwrap().coeffs(), "{spec} m={m}");
        }
    }
}

#[test]
fn routes_agree() {
    for (spec, n) in [("point/trivial(Z2)", 3), ("point/trivial(S3)", 2), ("point/trivial(Z3)", 2)] {
        for kind in [WreathKind::Es(0), WreathKind::Es(1), WreathKind::Top(1), WreathKind::Es(2)] {
            assert_eq!(lhs(spec, kind, n, Route::Brute), lhs(spec, kind, n, Route::PointCount), "{spec} {kind:?}");
        }
    }
}

#[test]
fn euler_satake_series_index() {
    // χ^ES_{(1)}(pt ⋊ Z/2 ≀ Sₙ) = |Hom(Z, W)| / |W| = 1 for every n
    let es1 = lhs("point/trivial(Z2)", WreathKind::Es(1), 5, Route::Auto);
    assert_eq!(es1, ints(&[1; 6]));
    assert_eq!(es1, rhs_es_formula(1, &q_int(1), 5).unwrap().coeffs());
    // indexing the exponent by m + 1 instead of m − 1 does not fit
    assert_ne!(es1, rhs_main_formula(2, &q_int(1), 5).unwrap().coeffs());
}

#[test]
fn series_for_two_points() {
    for spec in ["S0/swap", "S0/trivial(Z2)"] {
        for m in 0..=2 {
            let x = builtin_equivariant(spec, None).unwrap().regularize(&Default::default()).unwrap();
            let gl = Default::default();
            let chi_top = orbichar_core::sectors::chi_gamma_top(&x, &orbichar_core::Presentation::free_abelian(m), &gl).unwrap();
            let chi_es = orbichar_core::sectors::chi_gamma_es(&x, &orbichar_core::Presentation::free_abelian(m), &gl).unwrap();
            let top = lhs(spec, WreathKind::Top(m), 3, Route::Auto);
            assert_eq!(top, rhs_main_formula(m, &q_int(chi_top), 3).unwrap().coeffs(), "{spec} m={m}");
            let es = lhs(spec, WreathKind::Es(m), 3, Route::Auto);
            assert_eq!(es, rhs_es_formula(m, &chi_es, 3).unwrap().coeffs(), "{spec} m={m}");
        }
    }
}

#[test]
fn macdonald_formulas() {
    for spec in ["point/trivial(Z2)", "point/trivial(S3)", "S0", "S0/trivial(Z2)", "circle(3)"] {
        let x = builtin_equivariant(spec, None).unwrap();
        let r = macdonald_dimension_check(&x, 4, Route::Auto, &Limits::default()).unwrap();
        assert!(r.passed(), "{spec}: {r:?}");
    }
    // two points: H*(Sⁿ(S⁰)) has dimension n + 1
    let x = builtin_equivariant("S0", None).unwrap();
    let r = macdonald_dimension_check(&x, 4, Route::Auto, &Limits::default()).unwrap();
    assert_eq!(r.quotient.lhs, ["1", "2", "3", "4", "5"]);
}
