//! Γ-sectors of a global quotient `X ⋊ G` and their Euler characteristics.
//!
//! The Γ-sector of a class `(φ)` of homomorphisms `Γ → G` is the fixed
//! subcomplex `X^{⟨φ⟩}` with its centralizer `C_G(φ)` acting. Classes whose
//! fixed set is empty contribute nothing and are dropped.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::complex::{equivariant_product, ComplexLimits, RegularEquivariantComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{compose_with, hom_classes, FiniteGroup, GroupLimits, HomClass, Presentation, PresentationMap, Subgroup};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct Sector {
    pub class: HomClass,
    /// The centralizer of the class representative acting on its fixed subcomplex.
    pub fixed: RegularEquivariantComplex,
}

impl Sector {
    pub fn images(&self) -> &[usize] {
        &self.class.representative.images
    }

    pub fn euler_satake(&self) -> Q {
        self.fixed.euler_satake()
    }

    /// `χ_top` of the fixed subcomplex itself.
    pub fn fixed_euler_top(&self) -> i64 {
        self.fixed.euler_top()
    }

    /// `χ_top` of the fixed subcomplex modulo the centralizer.
    pub fn quotient_euler_top(&self) -> i64 {
        self.fixed.orbit_complex().euler_top()
    }
}

#[derive(Debug, Clone)]
pub struct SectorDecomposition {
    pub gamma: Presentation,
    /// Sorted by canonical class representative.
    pub sectors: Vec<Sector>,
    /// Classes whose fixed subcomplex is empty.
    pub dropped: usize,
}

impl SectorDecomposition {
    pub fn chi_es(&self) -> Q {
        self.sectors.iter().map(Sector::euler_satake).fold(Q::zero(), |a, b| a + b)
    }

    pub fn chi_top(&self) -> i64 {
        self.sectors.par_iter().map(Sector::quotient_euler_top).sum()
    }
}

fn sector_of(x: &RegularEquivariantComplex, class: HomClass) -> Result<Option<Sector>> {
    let images = &class.representative.images;
    let fixed = x.fixed_subcomplex(images);
    if fixed.is_empty() {
        return Ok(None);
    }
    let centralizer = x.group().view().centralizer(images);
    let group = Subgroup::new_unchecked(x.group().parent().clone(), centralizer);
    Ok(Some(Sector { fixed: x.restrict(group, fixed)?, class }))
}

/// All Γ-sectors of `X ⋊ G` for the acting group `G` of `x`.
pub fn gamma_sectors(x: &RegularEquivariantComplex, gamma: &Presentation, limits: &GroupLimits) -> Result<SectorDecomposition> {
    let classes = hom_classes(gamma, x.group().view(), limits)?;
    let total = classes.len();
    let sectors: Vec<Option<Sector>> =
        classes.into_par_iter().map(|c| sector_of(x, c)).collect::<Result<_>>()?;
    let sectors: Vec<Sector> = sectors.into_iter().flatten().collect();
    Ok(SectorDecomposition { gamma: gamma.clone(), dropped: total - sectors.len(), sectors })
}

/// `χ_Γ^{ES} = Σ_{(φ)} χ_ES(X^{⟨φ⟩} ⋊ C_G(φ))`
pub fn chi_gamma_es(x: &RegularEquivariantComplex, gamma: &Presentation, limits: &GroupLimits) -> Result<Q> {
    Ok(gamma_sectors(x, gamma, limits)?.chi_es())
}

/// `χ_Γ^{top} = Σ_{(φ)} χ_top(X^{⟨φ⟩} / C_G(φ))`
pub fn chi_gamma_top(x: &RegularEquivariantComplex, gamma: &Presentation, limits: &GroupLimits) -> Result<i64> {
    Ok(gamma_sectors(x, gamma, limits)?.chi_top())
}

/// Γ₂-sectors of each Γ₁-sector.
#[derive(Debug, Clone)]
pub struct IteratedSectors {
    pub outer: Vec<(Sector, SectorDecomposition)>,
}

impl IteratedSectors {
    pub fn chi_es(&self) -> Q {
        self.outer.iter().map(|(_, d)| d.chi_es()).fold(Q::zero(), |a, b| a + b)
    }

    pub fn count(&self) -> usize {
        self.outer.iter().map(|(_, d)| d.sectors.len()).sum()
    }
}

pub fn iterate_sectors(
    x: &RegularEquivariantComplex,
    gamma1: &Presentation,
    gamma2: &Presentation,
    limits: &GroupLimits,
) -> Result<IteratedSectors> {
    let outer = gamma_sectors(x, gamma1, limits)?;
    let outer = outer
        .sectors
        .into_par_iter()
        .map(|s| {
            let inner = gamma_sectors(&s.fixed, gamma2, limits)?;
            Ok((s, inner))
        })
        .collect::<Result<_>>()?;
    Ok(IteratedSectors { outer })
}

/// Iterated-sector contributions keyed by the class of the pointwise product
/// `φ · ψ`, against the direct `Γ₁ × Γ₂` decomposition.
#[derive(Debug, Clone)]
pub struct IterationCheck {
    pub iterated_count: usize,
    pub direct_count: usize,
    pub iterated_chi_es: Q,
    pub direct_chi_es: Q,
    /// Same classes with the same `χ_ES`, centralizer order and fixed f-vector.
    pub contributions_match: bool,
}

impl IterationCheck {
    pub fn passed(&self) -> bool {
        self.contributions_match && self.iterated_chi_es == self.direct_chi_es
    }
}

type Contribution = (Q, usize, Vec<usize>);

pub fn iteration_check(
    x: &RegularEquivariantComplex,
    gamma1: &Presentation,
    gamma2: &Presentation,
    limits: &GroupLimits,
) -> Result<IterationCheck> {
    let view = x.group().view();
    let iterated = iterate_sectors(x, gamma1, gamma2, limits)?;
    let direct = gamma_sectors(x, &gamma1.product(gamma2), limits)?;
    let mut lhs: BTreeMap<Vec<usize>, Vec<Contribution>> = BTreeMap::new();
    for (outer, inner) in &iterated.outer {
        for s in &inner.sectors {
            let tuple: Vec<usize> = outer.images().iter().chain(s.images()).copied().collect();
            let key = view.canonical_tuple(&tuple);
            lhs.entry(key).or_default().push((s.euler_satake(), s.fixed.group().order(), s.fixed.complex().f_vector()));
        }
    }
    let mut rhs: BTreeMap<Vec<usize>, Vec<Contribution>> = BTreeMap::new();
    for s in &direct.sectors {
        rhs.entry(s.images().to_vec()).or_default().push((
            s.euler_satake(),
            s.fixed.group().order(),
            s.fixed.complex().f_vector(),
        ));
    }
    Ok(IterationCheck {
        iterated_count: iterated.count(),
        direct_count: direct.sectors.len(),
        iterated_chi_es: iterated.chi_es(),
        direct_chi_es: direct.chi_es(),
        contributions_match: lhs == rhs,
    })
}

/// `d`-fold iterated inertia: Z-sectors of Z-sectors, `d` times.
pub fn iterated_inertia_chi_es(x: &RegularEquivariantComplex, d: usize, limits: &GroupLimits) -> Result<Q> {
    if d == 0 {
        return Ok(x.euler_satake());
    }
    let z = Presentation::free_abelian(1);
    let sectors = gamma_sectors(x, &z, limits)?;
    sectors
        .sectors
        .par_iter()
        .map(|s| iterated_inertia_chi_es(&s.fixed, d - 1, limits))
        .collect::<Result<Vec<Q>>>()
        .map(|v| v.into_iter().fold(Q::zero(), |a, b| a + b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSectorsReport {
    pub sectors: [usize; 3],
    pub chi_es: [Q; 3],
    pub chi_top: [i64; 3],
}

impl ProductSectorsReport {
    pub fn passed(&self) -> bool {
        self.sectors[0] * self.sectors[1] == self.sectors[2]
            && &self.chi_es[0] * &self.chi_es[1] == self.chi_es[2]
            && self.chi_top[0] * self.chi_top[1] == self.chi_top[2]
    }
}

/// Sector counts and Γ-characteristics of `X`, `Y` and `X × Y`.
pub fn product_sectors_check(
    x: &RegularEquivariantComplex,
    y: &RegularEquivariantComplex,
    gamma: &Presentation,
    group_limits: &GroupLimits,
    limits: &ComplexLimits,
) -> Result<ProductSectorsReport> {
    let p = equivariant_product(x.equivariant(), y.equivariant(), group_limits, limits)?.regularize(limits)?;
    let d = [gamma_sectors(x, gamma, group_limits)?, gamma_sectors(y, gamma, group_limits)?, gamma_sectors(&p, gamma, group_limits)?];
    Ok(ProductSectorsReport {
        sectors: [d[0].sectors.len(), d[1].sectors.len(), d[2].sectors.len()],
        chi_es: [d[0].chi_es(), d[1].chi_es(), d[2].chi_es()],
        chi_top: [d[0].chi_top(), d[1].chi_top(), d[2].chi_top()],
    })
}

/// For a map `Φ: Λ → Γ`, whether each Γ-sector's fixed complex and
/// centralizer agree with those of the pulled-back class `φ ∘ Φ`.
pub fn pullback_check(x: &RegularEquivariantComplex, map: &PresentationMap, limits: &GroupLimits) -> Result<bool> {
    let sectors = gamma_sectors(x, &map.target, limits)?;
    let group = x.group().parent();
    for s in &sectors.sectors {
        let pulled = compose_with(map, &s.class.representative, group)?;
        let fixed = x.fixed_subcomplex(&pulled.images);
        let centralizer = x.group().view().centralizer(&pulled.images);
        if fixed != *s.fixed.complex() || centralizer != s.fixed.group().elements() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    /// Every simplex stabilizer is the image of some homomorphism from Γ.
    pub gamma_covers_isotropy: bool,
    pub gamma_sectors_vanish: bool,
    pub product_sectors_vanish: bool,
}

impl VanishingReport {
    /// The implication "premises ⇒ all Γ × Z sectors vanish".
    pub fn implication_holds(&self) -> bool {
        !(self.gamma_covers_isotropy && self.gamma_sectors_vanish) || self.product_sectors_vanish
    }
}

pub fn vanishing_check(x: &RegularEquivariantComplex, gamma: &Presentation, limits: &GroupLimits) -> Result<VanishingReport> {
    let view = x.group().view();
    let images: Vec<Vec<usize>> = hom_classes(gamma, view, limits)?
        .iter()
        .map(|c| generated(x.group().parent(), &c.representative.images))
        .collect();
    let covers = x.complex().iter().all(|s| {
        let stab = x.group().elements().iter().copied().filter(|&g| x.equivariant().act(g, s) == *s).collect::<Vec<_>>();
        images.iter().any(|im| conjugate_sets_match(x.group(), im, &stab))
    });
    let sectors = gamma_sectors(x, gamma, limits)?;
    let product = gamma_sectors(x, &gamma.product(&Presentation::free_abelian(1)), limits)?;
    Ok(VanishingReport {
        gamma_covers_isotropy: covers,
        gamma_sectors_vanish: sectors.sectors.iter().all(|s| s.euler_satake().is_zero()),
        product_sectors_vanish: product.sectors.iter().all(|s| s.euler_satake().is_zero()),
    })
}

/// Whether some conjugate of the subgroup `a` equals `b`.
fn conjugate_sets_match(g: &Subgroup, a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let parent = g.parent();
    g.elements().iter().any(|&h| {
        let mut c: Vec<usize> = a.iter().map(|&x| parent.conjugate(h, x)).collect();
        c.sort_unstable();
        c == b
    })
}

/// The subgroup generated by `gens`, sorted.
fn generated(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut set = std::collections::BTreeSet::from([group.identity()]);
    let mut frontier = vec![group.identity()];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let b = group.mul(a, g);
            if set.insert(b) {
                frontier.push(b);
            }
        }
    }
    set.into_iter().collect()
}

/// `K⟨a⟩` with `a` central, `⟨a⟩ ∩ K = ⟨a^r⟩` and `a^r = z`.
///
/// Realized as `(K × Z_{r·ord z}) / ⟨(z⁻¹, r)⟩` with normal forms `(k, i)`,
/// `0 ≤ i < r`, standing for `k aⁱ`; element `(k, i)` has index `k · r + i`.
pub fn cyclic_extension(k: &FiniteGroup, r: usize, z: usize) -> Result<FiniteGroup> {
    if r == 0 {
        return Err(Error::BadExtension("r must be positive".into()));
    }
    if z >= k.order() || !k.is_central(z) {
        return Err(Error::BadExtension(format!("{} is not central", k.label(z.min(k.order() - 1)))));
    }
    let order = k.order() * r;
    let labels = (0..order)
        .map(|e| match e % r {
            0 => k.label(e / r).to_string(),
            i => format!("{}a^{i}", k.label(e / r)),
        })
        .collect();
    let mul = |x: usize, y: usize| {
        let (k1, i1) = (x / r, x % r);
        let (k2, i2) = (y / r, y % r);
        let mut p = k.mul(k1, k2);
        let mut i = i1 + i2;
        if i >= r {
            p = k.mul(p, z);
            i -= r;
        }
        p * r + i
    };
    let inv = |x: usize| {
        let (k1, i1) = (x / r, x % r);
        if i1 == 0 {
            k.inv(k1) * r
        } else {
            // (k aⁱ)⁻¹ = k⁻¹ z⁻¹ a^{r−i}
            k.mul(k.inv(k1), k.inv(z)) * r + (r - i1)
        }
    };
    Ok(FiniteGroup::from_fn(order, k.identity() * r, labels, mul, inv))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialActionReport {
    pub r: usize,
    pub m: usize,
    pub chi_extension: i64,
    pub chi_base: i64,
}

impl TrivialActionReport {
    pub fn passed(&self) -> bool {
        self.chi_extension == (self.r as i64).pow(self.m as u32) * self.chi_base
    }
}

/// Compares `χ_{(m)}(X ⋊ K⟨a⟩)` with `r^m χ_{(m)}(X ⋊ K)` where `a` acts trivially.
///
/// `x` must be acted on by its whole parent group `K`.
pub fn lemma_trivial_action_check(
    x: &RegularEquivariantComplex,
    r: usize,
    z: usize,
    m: usize,
    limits: &GroupLimits,
) -> Result<TrivialActionReport> {
    let k = x.group().parent();
    if x.group().order() != k.order() {
        return Err(Error::BadExtension("the whole parent group must act".into()));
    }
    if z < k.order() && x.complex().vertices().any(|v| x.equivariant().vertex_action(z)[v] != v) {
        return Err(Error::BadExtension(format!("{} acts nontrivially", k.label(z))));
    }
    let l = Arc::new(cyclic_extension(k, r, z)?);
    let action: Vec<Vec<usize>> = (0..l.order()).map(|e| x.equivariant().vertex_action(e / r).to_vec()).collect();
    let y = crate::complex::EquivariantComplex::new(x.complex().clone(), Subgroup::whole(l), action)?;
    let y = RegularEquivariantComplex::certify(y)?;
    let gamma = Presentation::free_abelian(m);
    Ok(TrivialActionReport {
        r,
        m,
        chi_extension: chi_gamma_top(&y, &gamma, limits)?,
        chi_base: chi_gamma_top(x, &gamma, limits)?,
    })
}

/// The sector fixed complex for the identity class is the whole complex.
pub fn identity_sector<'a>(decomposition: &'a SectorDecomposition, group: &FiniteGroup) -> Option<&'a SimplicialComplex> {
    decomposition
        .sectors
        .iter()
        .find(|s| s.images().iter().all(|&g| g == group.identity()))
        .map(|s| s.fixed.complex())
}
