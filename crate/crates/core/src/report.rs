//! Serializable reports. Fractions are `"p/q"` strings and every list has a
//! fixed order, so a report is byte-identical across runs and thread counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{equivariant_product, power_with_wreath_action, EquivariantComplex, RegularEquivariantComplex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Presentation};
use crate::hodge::{h_cr_polynomial, hodge_product_lhs, hodge_product_rhs, HodgeDataset, HodgePolynomial};
use crate::perm::factorial;
use crate::rational::{fmt_q, q_int, Q};
use crate::sectors::{gamma_sectors, iteration_check, product_sectors_check};
use crate::series::{
    lhs_wreath_series, macdonald_dimension_check, rhs_es_formula, rhs_exp_formula, rhs_main_formula, subgroup_count,
    sublattice_count_brute, IdentityReport, Route, WreathKind,
};
use crate::wreath::{classify_conjugacy_by_type, enumerate_types, TypeEntryJson};
use crate::Limits;

fn presentation_name(p: &Presentation) -> String {
    p.name().map(str::to_string).unwrap_or_else(|| format!("<{} generators, {} relators>", p.generators(), p.relators().len()))
}

fn q_from_i64(n: i64) -> Q {
    q_int(n)
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorRow {
    pub hom_images: Vec<String>,
    pub centralizer_order: usize,
    pub fixed_f_vector: Vec<usize>,
    pub fixed_euler_top: i64,
    pub fixed_euler_satake: String,
    pub quotient_euler_top: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerReport {
    pub complex: String,
    pub group_order: usize,
    pub f_vector: Vec<usize>,
    pub subdivisions: usize,
    pub euler_top: i64,
    pub euler_satake: String,
    pub orbit_euler_top: i64,
    pub gamma: String,
    pub sectors: Vec<SectorRow>,
    pub dropped_sectors: usize,
    pub chi_gamma_es: String,
    pub chi_gamma_top: i64,
    /// `χ_ES = χ_top(X)/|G|`
    pub global_quotient_check: bool,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.global_quotient_check
    }
}

/// Sector table and Γ-characteristics of `X ⋊ G`.
pub fn euler_report(name: &str, x: &EquivariantComplex, gamma: &Presentation, limits: &Limits) -> Result<EulerReport> {
    let reg = x.regularize(&limits.complex)?;
    let group = reg.group().parent().clone();
    let decomposition = gamma_sectors(&reg, gamma, &limits.group)?;
    let sectors = decomposition
        .sectors
        .par_iter()
        .map(|s| SectorRow {
            hom_images: s.images().iter().map(|&g| group.label(g).to_string()).collect(),
            centralizer_order: s.fixed.group().order(),
            fixed_f_vector: s.fixed.complex().f_vector(),
            fixed_euler_top: s.fixed_euler_top(),
            fixed_euler_satake: fmt_q(&s.euler_satake()),
            quotient_euler_top: s.quotient_euler_top(),
        })
        .collect();
    let es = reg.euler_satake();
    let order = reg.group().order();
    Ok(EulerReport {
        complex: name.to_string(),
        group_order: order,
        f_vector: reg.complex().f_vector(),
        subdivisions: reg.subdivisions(),
        euler_top: reg.euler_top(),
        global_quotient_check: es == Q::new(reg.euler_top().into(), (order as i64).into()),
        euler_satake: fmt_q(&es),
        orbit_euler_top: reg.orbit_complex().euler_top(),
        gamma: presentation_name(gamma),
        sectors,
        dropped_sectors: decomposition.dropped,
        chi_gamma_es: fmt_q(&decomposition.chi_es()),
        chi_gamma_top: decomposition.chi_top(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathTypeRow {
    #[serde(rename = "type")]
    pub ty: Vec<TypeEntryJson>,
    pub representative: String,
    pub class_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_brute: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_formula: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathClassesReport {
    pub group: String,
    pub n: usize,
    pub order: String,
    pub brute_class_count: usize,
    pub type_count: usize,
    /// Conjugacy classes and types correspond one to one.
    pub bijective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_matches: Option<bool>,
    pub rows: Vec<WreathTypeRow>,
}

impl WreathClassesReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.brute_class_count == self.type_count && self.formula_matches != Some(false)
    }
}

/// Brute-force classes of `G ≀ Sₙ` against types; with `centralizers`,
/// adds brute-force and formula centralizer orders.
pub fn wreath_classes_report(
    name: &str,
    base: Arc<FiniteGroup>,
    n: usize,
    centralizers: bool,
    limits: &Limits,
) -> Result<WreathClassesReport> {
    let c = classify_conjugacy_by_type(base.clone(), n, &limits.group)?;
    let rows = c
        .rows
        .iter()
        .map(|row| WreathTypeRow {
            ty: row.ty.to_json(&base),
            representative: c.wreath.structure.label(&c.wreath.element(row.representative)),
            class_size: row.class_size,
            centralizer_brute: centralizers.then_some(row.centralizer_brute),
            centralizer_formula: centralizers.then(|| row.centralizer_formula.to_string()),
        })
        .collect();
    Ok(WreathClassesReport {
        group: name.to_string(),
        n,
        order: c.wreath.structure.order().to_string(),
        brute_class_count: c.brute_class_count,
        type_count: enumerate_types(base.conjugacy_classes().len(), n).len(),
        bijective: c.bijective,
        formula_matches: centralizers.then_some(c.formula_matches),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathEulerReport {
    pub complex: String,
    pub n: usize,
    pub wreath_order: String,
    pub euler_top: i64,
    pub euler_satake: String,
    /// `χ_ES(X ⋊ G)ⁿ / n!`
    pub expected: String,
}

impl WreathEulerReport {
    pub fn passed(&self) -> bool {
        self.euler_satake == self.expected
    }
}

/// `χ_ES(Xⁿ ⋊ (G ≀ Sₙ))`
pub fn wreath_euler_report(name: &str, x: &EquivariantComplex, n: usize, limits: &Limits) -> Result<WreathEulerReport> {
    let base = x.regularize(&limits.complex)?.euler_satake();
    let p = power_with_wreath_action(x, n, &limits.group, &limits.complex)?;
    let wreath_order = p.wreath.structure.order().to_string();
    let reg = p.complex.regularize(&limits.complex)?;
    let expected = num_traits::pow(base, n) / q_from_i64(factorial(n) as i64);
    Ok(WreathEulerReport {
        complex: name.to_string(),
        n,
        wreath_order,
        euler_top: reg.euler_top(),
        euler_satake: fmt_q(&reg.euler_satake()),
        expected: fmt_q(&expected),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesIdentity {
    /// `es` or `top`
    pub kind: String,
    pub m: usize,
    /// The characteristic of `X ⋊ G` on the right side.
    pub chi: String,
    pub routes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_at: Option<String>,
    pub report: IdentityReport,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesVerifyReport {
    pub identity: String,
    pub complex: String,
    pub order: usize,
    pub checks: Vec<SeriesIdentity>,
}

impl SeriesVerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The first size cap hit, if any.
    pub fn capped(&self) -> Option<&str> {
        self.checks.iter().find_map(|c| c.stopped_at.as_deref())
    }
}

fn series_identity(x: &EquivariantComplex, kind: WreathKind, order: usize, route: Route, limits: &Limits) -> Result<SeriesIdentity> {
    let reg = x.regularize(&limits.complex)?;
    let (label, m, chi, rhs) = match kind {
        WreathKind::Es(m) => {
            let sectors = gamma_sectors(&reg, &Presentation::free_abelian(m), &limits.group)?;
            let chi = sectors.chi_es();
            let rhs = rhs_es_formula(m, &chi, order)?;
            ("es", m, chi, rhs)
        }
        WreathKind::Top(m) => {
            let sectors = gamma_sectors(&reg, &Presentation::free_abelian(m), &limits.group)?;
            let chi = q_from_i64(sectors.chi_top());
            let rhs = rhs_main_formula(m, &chi, order)?;
            ("top", m, chi, rhs)
        }
    };
    let lhs = lhs_wreath_series(x, kind, order, route, limits)?;
    let report = IdentityReport::compare(&lhs.coeffs, &rhs);
    Ok(SeriesIdentity {
        kind: label.to_string(),
        m,
        chi: fmt_q(&chi),
        routes: lhs.routes.iter().map(|r| r.name().to_string()).collect(),
        stopped_at: lhs.stopped_at.map(|(n, e)| format!("n = {n}: {e}")),
        passed: report.passed(),
        report,
    })
}

/// `Σ χ_ES(Xⁿ ⋊ (G ≀ Sₙ)) qⁿ = exp(q χ_ES(X ⋊ G))`
pub fn verify_exp(name: &str, x: &EquivariantComplex, order: usize, route: Route, limits: &Limits) -> Result<SeriesVerifyReport> {
    let mut check = series_identity(x, WreathKind::Es(0), order, route, limits)?;
    let direct = rhs_exp_formula(&x.regularize(&limits.complex)?.euler_satake(), order);
    check.passed &= direct.to_strings() == check.report.rhs;
    Ok(SeriesVerifyReport { identity: "exp".into(), complex: name.to_string(), order, checks: vec![check] })
}

/// The `χ_{(m)}` product formula together with its Euler-Satake analogue.
pub fn verify_main(name: &str, x: &EquivariantComplex, m: usize, order: usize, route: Route, limits: &Limits) -> Result<SeriesVerifyReport> {
    let checks = vec![
        series_identity(x, WreathKind::Top(m), order, route, limits)?,
        series_identity(x, WreathKind::Es(m), order, route, limits)?,
    ];
    Ok(SeriesVerifyReport { identity: format!("main({m})"), complex: name.to_string(), order, checks })
}

#[derive(Debug, Clone, Serialize)]
pub struct MacdonaldVerifyReport {
    pub complex: String,
    pub order: usize,
    pub dim_quotient: i64,
    pub dim_inertia: i64,
    pub quotient: IdentityReport,
    pub inertia: IdentityReport,
    pub routes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_at: Option<String>,
    pub passed: bool,
}

pub fn verify_macdonald(name: &str, x: &EquivariantComplex, order: usize, route: Route, limits: &Limits) -> Result<MacdonaldVerifyReport> {
    let r = macdonald_dimension_check(x, order, route, limits)?;
    Ok(MacdonaldVerifyReport {
        complex: name.to_string(),
        order,
        passed: r.passed(),
        dim_quotient: r.dim_quotient,
        dim_inertia: r.dim_inertia,
        quotient: r.quotient,
        inertia: r.inertia,
        routes: r.routes.iter().map(|r| r.name().to_string()).collect(),
        stopped_at: r.stopped_at.map(|(n, e)| format!("n = {n}: {e}")),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct JCountRow {
    pub r: usize,
    pub m: usize,
    pub formula: String,
    pub brute: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct JCountReport {
    pub r_max: usize,
    pub m_max: usize,
    pub rows: Vec<JCountRow>,
    pub passed: bool,
}

/// The subgroup count formula against brute-force sublattice enumeration.
pub fn verify_jcount(r_max: usize, m_max: usize) -> JCountReport {
    let pairs: Vec<(usize, usize)> = (1..=r_max).flat_map(|r| (0..=m_max).map(move |m| (r, m))).collect();
    let rows: Vec<JCountRow> = pairs
        .par_iter()
        .map(|&(r, m)| JCountRow {
            r,
            m,
            formula: subgroup_count(r, m).to_string(),
            brute: sublattice_count_brute(r, m).to_string(),
        })
        .collect();
    let passed = rows.iter().all(|row| row.formula == row.brute);
    JCountReport { r_max, m_max, rows, passed }
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeVerifyReport {
    pub dataset: String,
    pub d: usize,
    pub order: usize,
    pub h_cr: BTreeMap<String, String>,
    pub lhs: Vec<BTreeMap<String, String>>,
    pub rhs: Vec<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch_index: Option<usize>,
    /// At `x = y = 1` against the `m = 1` Euler characteristic product.
    pub specialization: IdentityReport,
    pub passed: bool,
}

pub fn verify_hodge(dataset: &HodgeDataset, order: usize) -> Result<HodgeVerifyReport> {
    let h = h_cr_polynomial(&dataset.sectors)?;
    let lhs = hodge_product_lhs(&dataset.sectors, dataset.d, order)?;
    let rhs = hodge_product_rhs(&dataset.sectors, dataset.d, order)?;
    let one = q_int(1);
    let chi = h.negate_variables().evaluate(&one, &one);
    let specialization =
        IdentityReport::compare(lhs.evaluate(&one, &one).coeffs(), &rhs_main_formula(1, &chi, order)?);
    let mismatch_index = lhs.first_mismatch(&rhs);
    let json = |s: &[HodgePolynomial]| s.iter().map(HodgePolynomial::to_json).collect();
    Ok(HodgeVerifyReport {
        dataset: dataset.name.clone(),
        d: dataset.d,
        order,
        h_cr: h.to_json(),
        lhs: json(lhs.coeffs()),
        rhs: json(rhs.coeffs()),
        passed: mismatch_index.is_none() && specialization.passed(),
        mismatch_index,
        specialization,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationRow {
    pub gamma1: String,
    pub gamma2: String,
    pub iterated_count: usize,
    pub direct_count: usize,
    pub iterated_chi_es: String,
    pub direct_chi_es: String,
    pub contributions_match: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationReport {
    pub complex: String,
    pub cases: Vec<IterationRow>,
    pub passed: bool,
}

/// Γ₂-sectors of Γ₁-sectors against the `Γ₁ × Γ₂`-sectors, for every pair.
pub fn verify_iteration(name: &str, x: &EquivariantComplex, gammas: &[Presentation], limits: &Limits) -> Result<IterationReport> {
    let reg = x.regularize(&limits.complex)?;
    let mut cases = Vec::new();
    for g1 in gammas {
        for g2 in gammas {
            let c = iteration_check(&reg, g1, g2, &limits.group)?;
            cases.push(IterationRow {
                gamma1: presentation_name(g1),
                gamma2: presentation_name(g2),
                iterated_count: c.iterated_count,
                direct_count: c.direct_count,
                iterated_chi_es: fmt_q(&c.iterated_chi_es),
                direct_chi_es: fmt_q(&c.direct_chi_es),
                contributions_match: c.contributions_match,
                passed: c.passed(),
            });
        }
    }
    let passed = cases.iter().all(|c| c.passed);
    Ok(IterationReport { complex: name.to_string(), cases, passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductRow {
    pub x: String,
    pub y: String,
    /// `χ_ES` of `X`, `Y` and `X × Y`.
    pub euler_satake: [String; 3],
    /// Z-sector counts of `X`, `Y` and `X × Y`.
    pub sectors: [usize; 3],
    /// `χ_Z^{ES}` of `X`, `Y` and `X × Y`.
    pub chi_z_es: [String; 3],
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdditivityRow {
    pub complex: String,
    /// `χ_ES` of `A ∪ B`, `A`, `B` and `A ∩ B`.
    pub euler_satake: [String; 4],
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductsReport {
    pub products: Vec<ProductRow>,
    pub additivity: Vec<AdditivityRow>,
    pub passed: bool,
}

/// The invariant subcomplex `A` generated by the orbit of the first maximal
/// simplex and `B` generated by the others.
pub fn invariant_split(x: &RegularEquivariantComplex) -> Result<Option<(RegularEquivariantComplex, RegularEquivariantComplex)>> {
    let maximal = x.complex().maximal_simplices();
    let Some(first) = maximal.first() else { return Ok(None) };
    let orbit: Vec<_> = x.group().elements().iter().map(|&g| x.equivariant().act(g, first)).collect();
    let (a, b): (Vec<_>, Vec<_>) = maximal.into_iter().partition(|s| orbit.contains(s));
    if b.is_empty() {
        return Ok(None);
    }
    let a = x.with_complex(x.complex().subcomplex(&a)?)?;
    let b = x.with_complex(x.complex().subcomplex(&b)?)?;
    Ok(Some((a, b)))
}

/// Euler-Satake characteristics of `A ∪ B`, `A`, `B` and `A ∩ B`.
pub fn additivity_row(name: &str, x: &EquivariantComplex, limits: &Limits) -> Result<Option<AdditivityRow>> {
    let reg = x.regularize(&limits.complex)?;
    let Some((a, b)) = invariant_split(&reg)? else { return Ok(None) };
    let ab = reg.with_complex(a.complex().intersection(b.complex())?)?;
    let v = [reg.euler_satake(), a.euler_satake(), b.euler_satake(), ab.euler_satake()];
    Ok(Some(AdditivityRow {
        complex: name.to_string(),
        passed: v[0] == &v[1] + &v[2] - &v[3],
        euler_satake: v.map(|q| fmt_q(&q)),
    }))
}

pub fn product_row(names: (&str, &str), x: &EquivariantComplex, y: &EquivariantComplex, limits: &Limits) -> Result<ProductRow> {
    let rx = x.regularize(&limits.complex)?;
    let ry = y.regularize(&limits.complex)?;
    let p = equivariant_product(x, y, &limits.group, &limits.complex)?.regularize(&limits.complex)?;
    let es = [rx.euler_satake(), ry.euler_satake(), p.euler_satake()];
    let sectors = product_sectors_check(&rx, &ry, &Presentation::free_abelian(1), &limits.group, &limits.complex)?;
    Ok(ProductRow {
        x: names.0.to_string(),
        y: names.1.to_string(),
        passed: es[2] == &es[0] * &es[1] && sectors.passed(),
        euler_satake: es.map(|q| fmt_q(&q)),
        sectors: sectors.sectors,
        chi_z_es: sectors.chi_es.map(|q| fmt_q(&q)),
    })
}

/// Multiplicativity over all unordered pairs and additivity over an
/// invariant splitting of each complex.
pub fn verify_products(cases: &[(String, EquivariantComplex)], limits: &Limits) -> Result<ProductsReport> {
    let pairs: Vec<(usize, usize)> = (0..cases.len()).flat_map(|i| (i..cases.len()).map(move |j| (i, j))).collect();
    let products = pairs
        .par_iter()
        .map(|&(i, j)| product_row((&cases[i].0, &cases[j].0), &cases[i].1, &cases[j].1, limits))
        .collect::<Result<Vec<_>>>()?;
    let additivity: Vec<AdditivityRow> = cases
        .par_iter()
        .map(|(n, x)| additivity_row(n, x, limits))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let passed = products.iter().all(|r| r.passed) && additivity.iter().all(|r| r.passed);
    Ok(ProductsReport { products, additivity, passed })
}

/// Whether an error came from a size cap, as opposed to invalid input.
pub fn is_cap_error(e: &Error) -> bool {
    e.is_cap()
}
