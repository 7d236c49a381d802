mod common;

use orbichar_core::complex::{builtin_equivariant, standard_suite, ComplexLimits};
use orbichar_core::group::PresentationMap;
use orbichar_core::sectors::{
    chi_gamma_es, chi_gamma_top, cyclic_extension, gamma_sectors, iterated_inertia_chi_es, iteration_check, lemma_trivial_action_check,
    product_sectors_check, pullback_check, vanishing_check,
};
use orbichar_core::{FiniteGroup, GroupLimits, Presentation, Q};

use common::{commuting_average, q};

fn z(m: usize) -> Presentation {
    Presentation::free_abelian(m)
}

#[test]
fn z_sectors_compute_the_quotient_euler_characteristic() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    for case in standard_suite() {
        let reg = case.complex.regularize(&limits).unwrap();
        let orbit = reg.orbit_complex().euler_top();
        assert_eq!(chi_gamma_es(&reg, &z(1), &gl).unwrap(), Q::from_integer(orbit.into()), "{}", case.name);
        // χ_Z^top and χ_{Z²}^ES are both averages over commuting pairs
        let pairs = commuting_average(&reg, 2);
        assert_eq!(Q::from_integer(chi_gamma_top(&reg, &z(1), &gl).unwrap().into()), pairs, "{}", case.name);
        assert_eq!(chi_gamma_es(&reg, &z(2), &gl).unwrap(), pairs, "{}", case.name);
        assert_eq!(chi_gamma_es(&reg, &Presentation::trivial(), &gl).unwrap(), reg.euler_satake());
    }
}

#[test]
fn sector_examples() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    let pt = builtin_equivariant("point/trivial(S3)", None).unwrap().regularize(&limits).unwrap();
    assert_eq!(chi_gamma_es(&pt, &z(1), &gl).unwrap(), q(1));
    assert_eq!(gamma_sectors(&pt, &z(1), &gl).unwrap().sectors.len(), 3);
    // |Hom(Z², S3)| / 6 = 18 / 6
    assert_eq!(chi_gamma_es(&pt, &z(2), &gl).unwrap(), q(3));
    let oct = builtin_equivariant("octahedron/antipodal", None).unwrap().regularize(&limits).unwrap();
    let d = gamma_sectors(&oct, &z(1), &gl).unwrap();
    assert_eq!((d.sectors.len(), d.dropped), (1, 1));
}

#[test]
fn iterated_sectors_match_product_sectors() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    for spec in ["point/trivial(S3)", "point/trivial(Z2)", "S0/swap", "circle(3)/dihedral"] {
        let reg = builtin_equivariant(spec, None).unwrap().regularize(&limits).unwrap();
        for a in [z(1), z(2)] {
            for b in [z(1), z(2)] {
                let c = iteration_check(&reg, &a, &b, &gl).unwrap();
                assert!(c.passed(), "{spec}: {c:?}");
                assert_eq!(c.iterated_count, c.direct_count);
            }
        }
        for d in 0..=3 {
            assert_eq!(iterated_inertia_chi_es(&reg, d, &gl).unwrap(), chi_gamma_es(&reg, &z(d), &gl).unwrap(), "{spec} {d}");
        }
    }
}

#[test]
fn sectors_of_products_multiply() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    let specs = ["point/trivial(Z2)", "S0/swap", "circle(4)/reflection", "octahedron/antipodal"];
    for a in specs {
        for b in specs {
            let x = builtin_equivariant(a, None).unwrap().regularize(&limits).unwrap();
            let y = builtin_equivariant(b, None).unwrap().regularize(&limits).unwrap();
            let r = product_sectors_check(&x, &y, &z(1), &gl, &limits).unwrap();
            assert!(r.passed(), "{a} x {b}: {r:?}");
        }
    }
}

#[test]
fn pullbacks_and_vanishing() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    let map = PresentationMap::new(z(2), z(1), vec![vec![1], vec![1, 1]]).unwrap();
    for case in standard_suite() {
        let reg = case.complex.regularize(&limits).unwrap();
        assert!(pullback_check(&reg, &map, &gl).unwrap(), "{}", case.name);
        assert!(vanishing_check(&reg, &z(1), &gl).unwrap().implication_holds(), "{}", case.name);
    }
    // a free action has no twisted Z-sectors
    let oct = builtin_equivariant("octahedron/antipodal", None).unwrap().regularize(&limits).unwrap();
    let v = vanishing_check(&oct, &z(1), &gl).unwrap();
    assert!(v.gamma_covers_isotropy);
}

#[test]
fn trivial_action_extension() {
    let limits = ComplexLimits::default();
    let gl = GroupLimits::default();
    for spec in ["S0/swap", "circle(4)/reflection", "point/trivial(S3)"] {
        let x = builtin_equivariant(spec, None).unwrap().regularize(&limits).unwrap();
        for (r, m) in [(2, 0), (2, 1), (3, 1), (2, 2)] {
            let rep = lemma_trivial_action_check(&x, r, x.group().parent().identity(), m, &gl).unwrap();
            assert!(rep.passed(), "{spec}: {rep:?}");
        }
    }
    // a² = z for the generator z of Z/2 gives Z/4
    let k = FiniteGroup::cyclic(2).unwrap();
    let z = (0..2).find(|&g| g != k.identity()).unwrap();
    let l = cyclic_extension(&k, 2, z).unwrap();
    assert_eq!(l.order(), 4);
    assert!((0..4).any(|g| l.element_order(g) == 4));
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                assert_eq!(l.mul(l.mul(a, b), c), l.mul(a, l.mul(b, c)));
            }
        }
        assert_eq!(l.mul(a, l.inv(a)), l.identity());
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t = (0..6).find(|&g| g != s3.identity()).unwrap();
    assert!(cyclic_extension(&s3, 2, t).is_err());
}
