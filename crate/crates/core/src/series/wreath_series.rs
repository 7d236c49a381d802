//! Left-hand sides of the wreath product generating functions, computed on
//! the symmetric powers `Xⁿ ⋊ (G ≀ Sₙ)` one `n` at a time.
//!
//! Two routes compute the same numbers. `Brute` builds the wreath product
//! and the power complex and runs the sector machinery. `PointCount` applies
//! only when `X` is a point: then `χ^{ES}_{Z^m} = |HOM(Z^m, W)| / |W|` and
//! `χ^{top}_{Z^m} = |HOM(Z^{m+1}, W)| / |W|`, with the homomorphisms counted
//! without materializing `W`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{q_from_u128, IdentityReport, TruncatedSeries};
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Presentation};
use crate::perm;
use crate::rational::Q;
use crate::sectors::{chi_gamma_es, chi_gamma_top, gamma_sectors};
use crate::wreath::count_commuting_tuples;
use crate::Limits;

/// Which characteristic of `Xⁿ ⋊ (G ≀ Sₙ)` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathKind {
    /// `χ^{ES}_{Z^m}`
    Es(usize),
    /// `χ_{(m)} = χ^{top}_{Z^m}`
    Top(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    /// Brute force for small wreath products, counting beyond for a point.
    Auto,
    Brute,
    PointCount,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Auto => "auto",
            Route::Brute => "brute",
            Route::PointCount => "point-count",
        }
    }
}

/// Coefficients for `n = 0..` up to the largest feasible `n`.
#[derive(Debug, Clone)]
pub struct LhsSeries {
    pub kind: WreathKind,
    pub requested: usize,
    pub coeffs: Vec<Q>,
    /// The route used for each coefficient.
    pub routes: Vec<Route>,
    /// The first `n` that hit a size cap, with the error.
    pub stopped_at: Option<(usize, Error)>,
}

fn is_point(x: &EquivariantComplex) -> bool {
    x.complex().vertex_count() == 1 && x.complex().dim() == Some(0)
}

fn wreath_order(base: usize, n: usize) -> BigUint {
    BigUint::from(base).pow(n as u32) * BigUint::from(perm::factorial(n))
}

/// Largest wreath product order for which `Auto` enumerates sectors of a
/// point directly; counting is exact and much faster beyond it.
const AUTO_POINT_BRUTE_MAX_ORDER: usize = 720;

/// Largest `n` for which the counting route enumerates permutation tuples.
const POINT_COUNT_MAX_N: usize = 8;

fn choose_route(x: &EquivariantComplex, n: usize, route: Route, limits: &Limits) -> Route {
    match route {
        Route::Auto => {
            let cap = if is_point(x) { AUTO_POINT_BRUTE_MAX_ORDER.min(limits.group.max_table_order) } else { limits.group.max_table_order };
            let fits = wreath_order(x.order(), n) <= BigUint::from(cap);
            if fits || !is_point(x) {
                Route::Brute
            } else {
                Route::PointCount
            }
        }
        r => r,
    }
}

/// `|HOM(Z^k, G ≀ Sₙ)| / |G ≀ Sₙ|`
fn point_ratio(base: &FiniteGroup, n: usize, k: usize) -> Result<Q> {
    if n > POINT_COUNT_MAX_N {
        return Err(Error::OrderCapExceeded {
            cap: perm::factorial(POINT_COUNT_MAX_N) as u128,
            required: perm::factorial(n.min(33)) as u128,
        });
    }
    let order = wreath_order(base.order(), n)
        .to_u128()
        .ok_or(Error::OrderCapExceeded { cap: u128::MAX, required: u128::MAX })?;
    Ok(q_from_u128(count_commuting_tuples(base, n, k), order))
}

fn coefficient(x: &EquivariantComplex, kind: WreathKind, n: usize, route: Route, limits: &Limits) -> Result<Q> {
    match route {
        Route::PointCount => {
            if !is_point(x) {
                return Err(Error::InvalidComplex("the counting route needs a point".into()));
            }
            let base = x.group().to_group();
            match kind {
                WreathKind::Es(m) => point_ratio(&base, n, m),
                WreathKind::Top(m) => point_ratio(&base, n, m + 1),
            }
        }
        _ => {
            let p = crate::complex::power_with_wreath_action(x, n, &limits.group, &limits.complex)?;
            let p = p.complex.regularize(&limits.complex)?;
            match kind {
                WreathKind::Es(m) => chi_gamma_es(&p, &Presentation::free_abelian(m), &limits.group),
                WreathKind::Top(m) => {
                    Ok(Q::from_integer(chi_gamma_top(&p, &Presentation::free_abelian(m), &limits.group)?.into()))
                }
            }
        }
    }
}

/// Computes the coefficients `n = 0..=order`, stopping at the first size cap.
pub fn lhs_wreath_series(
    x: &EquivariantComplex,
    kind: WreathKind,
    order: usize,
    route: Route,
    limits: &Limits,
) -> Result<LhsSeries> {
    let results: Vec<(Route, Result<Q>)> = (0..=order)
        .into_par_iter()
        .map(|n| {
            let r = choose_route(x, n, route, limits);
            (r, coefficient(x, kind, n, r, limits))
        })
        .collect();
    let mut out = LhsSeries { kind, requested: order, coeffs: Vec::new(), routes: Vec::new(), stopped_at: None };
    for (n, (r, res)) in results.into_iter().enumerate() {
        match res {
            Ok(c) => {
                out.coeffs.push(c);
                out.routes.push(r);
            }
            Err(e) if e.is_cap() => {
                out.stopped_at = Some((n, e));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn signed_dimension(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// Signed dimensions of `H*(Xⁿ/W)` and of the cohomology of the Z-sectors.
fn macdonald_terms(x: &EquivariantComplex, n: usize, route: Route, limits: &Limits) -> Result<(i64, i64)> {
    match route {
        Route::PointCount => {
            let base = x.group().to_group();
            let classes = point_ratio(&base, n, 2)?;
            // every quotient is a point; one Z-sector per conjugacy class
            Ok((1, classes.to_integer().to_i64().expect("class count")))
        }
        _ => {
            let p = crate::complex::power_with_wreath_action(x, n, &limits.group, &limits.complex)?;
            let p = p.complex.regularize(&limits.complex)?;
            inertia_terms(&p, limits)
        }
    }
}

fn inertia_terms(p: &crate::complex::RegularEquivariantComplex, limits: &Limits) -> Result<(i64, i64)> {
    let quotient = signed_dimension(&p.orbit_complex().betti_numbers());
    let sectors = gamma_sectors(p, &Presentation::free_abelian(1), &limits.group)?;
    let inertia =
        sectors.sectors.par_iter().map(|s| signed_dimension(&s.fixed.orbit_complex().betti_numbers())).sum();
    Ok((quotient, inertia))
}

#[derive(Debug, Clone)]
pub struct MacdonaldReport {
    /// Signed `dim H*(X/G)`.
    pub dim_quotient: i64,
    /// Signed dimension of the cohomology of the Z-sectors of `X ⋊ G`.
    pub dim_inertia: i64,
    /// `Σ dim H*(Xⁿ/(G ≀ Sₙ)) qⁿ` against `(1 − q)^{−dim H*(X/G)}`.
    pub quotient: IdentityReport,
    /// The Z-sector analogue against `Π (1 − qⁿ)^{−dim}`.
    pub inertia: IdentityReport,
    pub routes: Vec<Route>,
    pub stopped_at: Option<(usize, Error)>,
}

impl MacdonaldReport {
    pub fn passed(&self) -> bool {
        self.quotient.passed() && self.inertia.passed()
    }
}

/// Both Macdonald dimension formulas, with dimensions from rational Betti numbers.
pub fn macdonald_dimension_check(
    x: &EquivariantComplex,
    order: usize,
    route: Route,
    limits: &Limits,
) -> Result<MacdonaldReport> {
    let base = x.regularize(&limits.complex)?;
    let (dim_quotient, dim_inertia) = inertia_terms(&base, limits)?;
    let results: Vec<(Route, Result<(i64, i64)>)> = (0..=order)
        .into_par_iter()
        .map(|n| {
            let r = choose_route(x, n, route, limits);
            (r, macdonald_terms(x, n, r, limits))
        })
        .collect();
    let mut lhs_q = Vec::new();
    let mut lhs_i = Vec::new();
    let mut routes = Vec::new();
    let mut stopped_at = None;
    for (n, (r, res)) in results.into_iter().enumerate() {
        match res {
            Ok((a, b)) => {
                lhs_q.push(Q::from_integer(a.into()));
                lhs_i.push(Q::from_integer(b.into()));
                routes.push(r);
            }
            Err(e) if e.is_cap() => {
                stopped_at = Some((n, e));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let rhs_q = TruncatedSeries::one_minus_q_power(1, -dim_quotient, order)?;
    let rhs_i = super::rhs_main_formula(1, &Q::from_integer(dim_inertia.into()), order)?;
    Ok(MacdonaldReport {
        dim_quotient,
        dim_inertia,
        quotient: IdentityReport::compare(&lhs_q, &rhs_q),
        inertia: IdentityReport::compare(&lhs_i, &rhs_i),
        routes,
        stopped_at,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin_equivariant;
    use crate::rational::{q_frac, q_int};
    use crate::series::{rhs_es_formula, rhs_exp_formula, rhs_main_formula};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn point_examples() {
        let pt = builtin_equivariant("point", None).unwrap();
        let s = lhs_wreath_series(&pt, WreathKind::Top(0), 4, Route::Auto, &lim()).unwrap();
        assert_eq!(s.coeffs, vec![q_int(1); 5]);
        let z2 = builtin_equivariant("point/trivial(Z2)", None).unwrap();
        let s = lhs_wreath_series(&z2, WreathKind::Es(0), 3, Route::Brute, &lim()).unwrap();
        assert_eq!(s.coeffs, vec![q_int(1), q_frac(1, 2), q_frac(1, 8), q_frac(1, 48)]);
        assert_eq!(s.coeffs, rhs_exp_formula(&q_frac(1, 2), 3).coeffs());
        let s = lhs_wreath_series(&z2, WreathKind::Top(1), 3, Route::Brute, &lim()).unwrap();
        assert_eq!(s.coeffs, vec![q_int(1), q_int(2), q_int(5), q_int(10)]);
    }

    #[test]
    fn routes_agree() {
        let s3 = builtin_equivariant("point/trivial(S3)", None).unwrap();
        for kind in [WreathKind::Es(0), WreathKind::Es(1), WreathKind::Top(0), WreathKind::Top(1), WreathKind::Es(2)] {
            let a = lhs_wreath_series(&s3, kind, 2, Route::Brute, &lim()).unwrap();
            let b = lhs_wreath_series(&s3, kind, 2, Route::PointCount, &lim()).unwrap();
            assert_eq!(a.coeffs, b.coeffs, "{kind:?}");
        }
    }

    #[test]
    fn caps_stop_the_series() {
        let s0 = builtin_equivariant("S0/swap", None).unwrap();
        let tight = Limits { group: crate::GroupLimits { max_table_order: 8, ..Default::default() }, ..lim() };
        let s = lhs_wreath_series(&s0, WreathKind::Es(0), 4, Route::Auto, &tight).unwrap();
        assert_eq!(s.coeffs.len(), 3);
        assert!(matches!(s.stopped_at, Some((3, Error::OrderCapExceeded { .. }))));
    }

    #[test]
    fn s0_swap_identities() {
        let s0 = builtin_equivariant("S0/swap", None).unwrap();
        let r = s0.regularize(&lim().complex).unwrap();
        for m in 0..=1 {
            let top = Q::from_integer(chi_gamma_top(&r, &Presentation::free_abelian(m), &lim().group).unwrap().into());
            let s = lhs_wreath_series(&s0, WreathKind::Top(m), 3, Route::Auto, &lim()).unwrap();
            assert_eq!(s.coeffs, rhs_main_formula(m, &top, 3).unwrap().coeffs());
            let es = chi_gamma_es(&r, &Presentation::free_abelian(m), &lim().group).unwrap();
            let s = lhs_wreath_series(&s0, WreathKind::Es(m), 3, Route::Auto, &lim()).unwrap();
            assert_eq!(s.coeffs, rhs_es_formula(m, &es, 3).unwrap().coeffs());
        }
    }

    #[test]
    fn macdonald_examples() {
        let pt = builtin_equivariant("point/trivial(S3)", None).unwrap();
        let r = macdonald_dimension_check(&pt, 4, Route::Auto, &lim()).unwrap();
        assert_eq!(r.dim_inertia, 3);
        assert!(r.passed(), "{r:?}");
        let s0 = builtin_equivariant("S0", None).unwrap();
        let r = macdonald_dimension_check(&s0, 4, Route::Auto, &lim()).unwrap();
        assert_eq!(r.dim_quotient, 2);
        assert_eq!(r.quotient.lhs, vec!["1", "2", "3", "4", "5"]);
        assert!(r.passed());
        let c = builtin_equivariant("circle(3)", None).unwrap();
        let r = macdonald_dimension_check(&c, 2, Route::Auto, &lim()).unwrap();
        assert_eq!(r.dim_quotient, 0);
        assert_eq!(r.quotient.lhs, vec!["1", "0", "0"]);
        assert!(r.passed());
    }
}
