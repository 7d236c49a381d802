//! Finite groups acting simplicially on complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use super::{simplicial_product, ChainComplex, ComplexLimits, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupLimits, Subgroup};
use crate::perm::{self, Perm};
use crate::rational::Q;
use crate::wreath::{wreath_group, WreathGroup};

/// A complex with a subgroup of some parent group acting by vertex permutations.
///
/// The action is stored for every element of the parent group (empty for
/// elements outside the subgroup), so restricting to a centralizer shares it.
#[derive(Debug, Clone)]
pub struct EquivariantComplex {
    complex: SimplicialComplex,
    group: Subgroup,
    action: Arc<Vec<Perm>>,
}

impl EquivariantComplex {
    /// Validates that `action` is a homomorphism into the simplicial automorphisms.
    pub fn new(complex: SimplicialComplex, group: Subgroup, action: Vec<Perm>) -> Result<Self> {
        let parent = group.parent().clone();
        if action.len() != parent.order() {
            return Err(Error::InvalidAction(format!(
                "{} vertex permutations for a group of order {}",
                action.len(),
                parent.order()
            )));
        }
        let u = complex.universe();
        for &h in group.elements() {
            if action[h].len() != u || !perm::is_bijection(&action[h]) {
                return Err(Error::InvalidAction(format!("element {} does not permute 0..{u}", parent.label(h))));
            }
        }
        if !perm::is_identity(&action[parent.identity()]) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for &a in group.elements() {
            for &b in group.elements() {
                if action[parent.mul(a, b)] != perm::compose(&action[a], &action[b]) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({}, {})",
                        parent.label(a),
                        parent.label(b)
                    )));
                }
            }
        }
        let x = EquivariantComplex { complex, group, action: Arc::new(action) };
        for &h in x.group.elements() {
            if let Some(s) = x.complex.iter().find(|s| !x.complex.contains(&x.act(h, s))) {
                return Err(Error::InvalidAction(format!(
                    "element {} maps simplex {s:?} outside the complex",
                    parent.label(h)
                )));
            }
        }
        Ok(x)
    }

    pub(crate) fn new_unchecked(complex: SimplicialComplex, group: Subgroup, action: Arc<Vec<Perm>>) -> Self {
        EquivariantComplex { complex, group, action }
    }

    pub fn trivial(complex: SimplicialComplex, group: Arc<FiniteGroup>) -> Self {
        let id = perm::identity(complex.universe());
        let action = vec![id; group.order()];
        EquivariantComplex { complex, group: Subgroup::whole(group), action: Arc::new(action) }
    }

    /// The group generated by vertex permutations, acting through them.
    pub fn from_permutations(complex: SimplicialComplex, generators: &[Perm], limits: &GroupLimits) -> Result<Self> {
        let group = FiniteGroup::from_permutations(generators, complex.universe(), limits)?;
        let action = group.permutations().expect("permutation group").to_vec();
        Self::new(complex, Subgroup::whole(Arc::new(group)), action)
    }

    /// Extends the action given on some elements to the subgroup they generate;
    /// errors unless that subgroup is the whole group.
    pub fn from_partial_action(
        complex: SimplicialComplex,
        group: Arc<FiniteGroup>,
        known: &[(usize, Perm)],
    ) -> Result<Self> {
        let mut action: Vec<Option<Perm>> = vec![None; group.order()];
        action[group.identity()] = Some(perm::identity(complex.universe()));
        for (g, p) in known {
            if p.len() != complex.universe() || !perm::is_bijection(p) {
                return Err(Error::InvalidAction(format!("{p:?} is not a permutation of the vertices")));
            }
            match &action[*g] {
                Some(q) if q != p => {
                    return Err(Error::InvalidAction(format!("conflicting action for {}", group.label(*g))));
                }
                _ => action[*g] = Some(p.clone()),
            }
        }
        let mut frontier: Vec<usize> = (0..group.order()).filter(|&g| action[g].is_some()).collect();
        while let Some(a) = frontier.pop() {
            for (b, pb) in known {
                let ab = group.mul(a, *b);
                let p = perm::compose(action[a].as_ref().expect("known"), pb);
                match &action[ab] {
                    Some(q) if *q != p => {
                        return Err(Error::InvalidAction(format!(
                            "not a homomorphism at {}",
                            group.label(ab)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        action[ab] = Some(p);
                        frontier.push(ab);
                    }
                }
            }
        }
        let action: Option<Vec<Perm>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::InvalidAction("given elements do not generate the group".into()))?;
        Self::new(complex, Subgroup::whole(group), action)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn vertex_action(&self, g: usize) -> &[usize] {
        &self.action[g]
    }

    /// `g · σ`, sorted.
    pub fn act(&self, g: usize, s: &[usize]) -> Simplex {
        let a = &self.action[g];
        let mut t: Simplex = s.iter().map(|&v| a[v]).collect();
        t.sort_unstable();
        t
    }

    pub fn rank_invariant(&self) -> bool {
        let rank = self.complex.rank();
        self.group.elements().iter().all(|&g| self.complex.vertices().all(|v| rank[self.action[g][v]] == rank[v]))
    }

    /// A group element and simplex with `gσ = σ` but `g` moving a vertex of `σ`.
    pub fn regularity_violation(&self) -> Option<(usize, Simplex)> {
        for &g in self.group.elements() {
            let a = &self.action[g];
            for s in self.complex.iter() {
                if s.iter().any(|&v| a[v] != v) && self.act(g, s) == *s {
                    return Some((g, s.clone()));
                }
            }
        }
        None
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_violation().is_none()
    }

    /// The induced action on the barycentric subdivision.
    pub fn barycentric_subdivision(&self, limits: &ComplexLimits) -> Result<Self> {
        let sd = self.complex.barycentric_subdivision(limits)?;
        check_action_size(self.group.parent().order(), sd.universe(), limits)?;
        let old: Vec<&Simplex> = self.complex.iter().collect();
        let mut action = vec![Vec::new(); self.action.len()];
        let images: Vec<(usize, Perm)> = self
            .group
            .elements()
            .par_iter()
            .map(|&g| {
                let p = old.iter().map(|s| self.complex.global_index(&self.act(g, s)).expect("invariant")).collect();
                (g, p)
            })
            .collect();
        for (g, p) in images {
            action[g] = p;
        }
        Ok(EquivariantComplex { complex: sd, group: self.group.clone(), action: Arc::new(action) })
    }

    /// Subdivides at most twice until the action is regular.
    pub fn regularize(&self, limits: &ComplexLimits) -> Result<RegularEquivariantComplex> {
        if self.complex.len() > limits.max_simplices {
            return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: self.complex.len() });
        }
        let mut x = self.clone();
        for subdivisions in 0..=2 {
            if x.is_regular() {
                return Ok(RegularEquivariantComplex { inner: x, subdivisions });
            }
            if subdivisions < 2 {
                x = x.barycentric_subdivision(limits)?;
            }
        }
        Err(Error::RegularizationFailed { subdivisions: 2 })
    }

    /// The same action on an invariant subcomplex.
    pub fn with_complex(&self, sub: SimplicialComplex) -> Result<Self> {
        if sub.universe() != self.complex.universe() {
            return Err(Error::InvalidComplex("subcomplex on a different vertex set".into()));
        }
        for &g in self.group.elements() {
            if let Some(s) = sub.iter().find(|s| !sub.contains(&self.act(g, s))) {
                return Err(Error::InvalidAction(format!("subcomplex not invariant at simplex {s:?}")));
            }
        }
        Ok(EquivariantComplex { complex: sub, group: self.group.clone(), action: self.action.clone() })
    }

    /// Restricts the action to a subgroup of the same parent group.
    pub fn restrict_group(&self, sub: Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(sub.parent(), self.group.parent()) && **sub.parent() != **self.group.parent() {
            return Err(Error::NotSubgroup("different parent group".into()));
        }
        if sub.elements().iter().any(|&h| !self.group.view().contains(h)) {
            return Err(Error::NotSubgroup("not contained in the acting group".into()));
        }
        Ok(EquivariantComplex { complex: self.complex.clone(), group: sub, action: self.action.clone() })
    }
}

fn check_action_size(order: usize, universe: usize, limits: &ComplexLimits) -> Result<()> {
    let required = order.saturating_mul(universe);
    if required > limits.max_action_entries {
        return Err(Error::SizeCapExceeded { cap: limits.max_action_entries, required });
    }
    Ok(())
}

/// An equivariant complex certified regular: if `gσ = σ` then `g` fixes `σ`
/// vertex by vertex, so the isotropy group is constant on each open simplex.
#[derive(Debug, Clone)]
pub struct RegularEquivariantComplex {
    inner: EquivariantComplex,
    subdivisions: usize,
}

#[derive(Debug, Clone)]
struct DimOrbits {
    orbit_of: Vec<usize>,
    /// An element carrying each simplex to its orbit representative.
    to_rep: Vec<usize>,
    /// Representative position and stabilizer order, per orbit.
    reps: Vec<(usize, usize)>,
}

impl RegularEquivariantComplex {
    pub fn certify(x: EquivariantComplex) -> Result<Self> {
        match x.regularity_violation() {
            Some((element, simplex)) => Err(Error::NotRegular { element, simplex }),
            None => Ok(RegularEquivariantComplex { inner: x, subdivisions: 0 }),
        }
    }

    pub fn equivariant(&self) -> &EquivariantComplex {
        &self.inner
    }

    pub fn into_equivariant(self) -> EquivariantComplex {
        self.inner
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.inner.complex
    }

    pub fn group(&self) -> &Subgroup {
        &self.inner.group
    }

    /// Barycentric subdivisions applied by [`EquivariantComplex::regularize`].
    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    pub fn euler_top(&self) -> i64 {
        self.inner.complex.euler_top()
    }

    /// Simplices all of whose vertices are fixed by every element of `set`.
    pub fn fixed_subcomplex(&self, set: &[usize]) -> SimplicialComplex {
        let a = &self.inner.action;
        self.inner.complex.induced(|v| set.iter().all(|&g| a[g][v] == v))
    }

    /// Restriction to a subgroup acting on an invariant subcomplex; regularity is inherited.
    pub fn restrict(&self, group: Subgroup, sub: SimplicialComplex) -> Result<Self> {
        let x = self.inner.restrict_group(group)?.with_complex(sub)?;
        Ok(RegularEquivariantComplex { inner: x, subdivisions: self.subdivisions })
    }

    pub fn with_complex(&self, sub: SimplicialComplex) -> Result<Self> {
        Ok(RegularEquivariantComplex { inner: self.inner.with_complex(sub)?, subdivisions: self.subdivisions })
    }

    fn orbits(&self) -> Vec<DimOrbits> {
        let x = &self.inner;
        let parent = x.group.parent();
        let dims = x.complex.dim().map_or(0, |d| d + 1);
        (0..dims)
            .into_par_iter()
            .map(|d| {
                let simplices = x.complex.simplices(d);
                let mut orbit_of = vec![usize::MAX; simplices.len()];
                let mut to_rep = vec![0; simplices.len()];
                let mut reps = Vec::new();
                for i in 0..simplices.len() {
                    if orbit_of[i] != usize::MAX {
                        continue;
                    }
                    let mut stabilizer = 0;
                    for &h in x.group.elements() {
                        let j = x.complex.position(&x.act(h, &simplices[i])).expect("invariant complex");
                        if j == i {
                            stabilizer += 1;
                        }
                        if orbit_of[j] == usize::MAX {
                            orbit_of[j] = reps.len();
                            to_rep[j] = parent.inv(h);
                        }
                    }
                    reps.push((i, stabilizer));
                }
                DimOrbits { orbit_of, to_rep, reps }
            })
            .collect()
    }

    /// `Σ (−1)^{dim σ} / |G_σ|` over orbit representatives of simplices.
    pub fn euler_satake(&self) -> Q {
        let mut total = Q::zero();
        for (d, o) in self.orbits().iter().enumerate() {
            for &(_, stab) in &o.reps {
                let term = Q::new(1.into(), (stab as i64).into());
                if d % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
        total
    }

    /// The quotient as a cell complex with one cell per simplex orbit.
    pub fn orbit_complex(&self) -> OrbitComplex {
        let x = &self.inner;
        let orbits = self.orbits();
        let order = x.group.order();
        let cells: Vec<Vec<OrbitCell>> = orbits
            .iter()
            .enumerate()
            .map(|(d, o)| {
                o.reps
                    .iter()
                    .map(|&(pos, stab)| OrbitCell {
                        representative: x.complex.simplices(d)[pos].clone(),
                        orbit_size: order / stab,
                        stabilizer_order: stab,
                    })
                    .collect()
            })
            .collect();
        let boundaries = (1..cells.len())
            .map(|d| {
                cells[d]
                    .iter()
                    .map(|cell| {
                        let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
                        for i in 0..cell.representative.len() {
                            let mut f = cell.representative.clone();
                            f.remove(i);
                            let pos = x.complex.position(&f).expect("closed under faces");
                            let g = orbits[d - 1].to_rep[pos];
                            let image: Vec<usize> = f.iter().map(|&v| x.action[g][v]).collect();
                            let sign = if inversions(&image) % 2 == 0 { 1 } else { -1 };
                            let face_sign = if i % 2 == 0 { 1 } else { -1 };
                            *coeffs.entry(orbits[d - 1].orbit_of[pos]).or_insert(0) += sign * face_sign;
                        }
                        coeffs.into_iter().filter(|&(_, c)| c != 0).collect()
                    })
                    .collect()
            })
            .collect();
        let counts = cells.iter().map(Vec::len).collect();
        let mut vertex_orbit = vec![None; x.complex.universe()];
        if let Some(o) = orbits.first() {
            for (i, s) in x.complex.simplices(0).iter().enumerate() {
                vertex_orbit[s[0]] = Some(o.orbit_of[i]);
            }
        }
        OrbitComplex {
            cells,
            chain: ChainComplex::new(counts, boundaries),
            vertex_orbit,
            rank: x.rank_invariant().then(|| x.complex.rank().to_vec()),
        }
    }
}

fn inversions(v: &[usize]) -> usize {
    (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCell {
    /// Lexicographically smallest simplex of the orbit.
    pub representative: Simplex,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

/// The quotient `X/G` of a regular equivariant complex as a cell complex.
///
/// Cells are simplex orbits; the boundary of a cell is the signed sum of the
/// orbits of the faces of its representative. The quotient need not be a
/// simplicial complex (the antipodal octahedron gives a two-vertex-edge
/// projective plane), so this is the general form.
#[derive(Debug, Clone)]
pub struct OrbitComplex {
    cells: Vec<Vec<OrbitCell>>,
    chain: ChainComplex,
    vertex_orbit: Vec<Option<usize>>,
    rank: Option<Vec<usize>>,
}

impl OrbitComplex {
    pub fn cells(&self, d: usize) -> &[OrbitCell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn euler_top(&self) -> i64 {
        self.chain.euler_characteristic()
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.chain.betti_numbers()
    }

    /// The quotient as a simplicial complex on vertex orbits, when every cell
    /// has distinct vertex orbits and is determined by them.
    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        let n = self.cells(0).len();
        let mut seen = std::collections::BTreeSet::new();
        let mut gens = Vec::new();
        for cell in self.cells.iter().flatten() {
            let mut s: Vec<usize> =
                cell.representative.iter().map(|&v| self.vertex_orbit[v].expect("vertex of the complex")).collect();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) || !seen.insert(s.clone()) {
                return Err(Error::InvalidComplex("quotient is not a simplicial complex".into()));
            }
            gens.push(s);
        }
        let rank = match &self.rank {
            Some(r) => self.cells(0).iter().map(|c| r[c.representative[0]]).collect(),
            None => (0..n).collect(),
        };
        SimplicialComplex::closure(n, gens, rank, &ComplexLimits::default())
    }
}

/// Prepares a factor for products: ranks must be invariant so that the
/// product action preserves the staircase triangulation.
fn with_invariant_rank(x: &EquivariantComplex, limits: &ComplexLimits) -> Result<EquivariantComplex> {
    if x.rank_invariant() {
        x.complex.check_vertex_order()?;
        Ok(x.clone())
    } else {
        x.barycentric_subdivision(limits)
    }
}

/// `X × Y` with the product action of `G × H`, element `(g, h)` having index `g · |H| + h`
/// in terms of the positions of `g` and `h` in their subgroups.
pub fn equivariant_product(
    x: &EquivariantComplex,
    y: &EquivariantComplex,
    group_limits: &GroupLimits,
    limits: &ComplexLimits,
) -> Result<EquivariantComplex> {
    let x = with_invariant_rank(x, limits)?;
    let y = with_invariant_rank(y, limits)?;
    let complex = simplicial_product(&x.complex, &y.complex, limits)?;
    let g = x.group.to_group();
    let h = y.group.to_group();
    let p = FiniteGroup::direct_product(&g, &h, group_limits)?;
    check_action_size(p.order(), complex.universe(), limits)?;
    let uy = y.complex.universe();
    let nh = h.order();
    let action: Vec<Perm> = (0..p.order())
        .into_par_iter()
        .map(|e| {
            let ax = &x.action[x.group.elements()[e / nh]];
            let ay = &y.action[y.group.elements()[e % nh]];
            (0..complex.universe()).map(|v| ax[v / uy] * uy + ay[v % uy]).collect()
        })
        .collect();
    Ok(EquivariantComplex::new_unchecked(complex, Subgroup::whole(Arc::new(p)), Arc::new(action)))
}

/// `Xⁿ` with the action of `G ≀ Sₙ`.
#[derive(Debug, Clone)]
pub struct WreathPower {
    pub wreath: WreathGroup,
    /// The factor actually used (subdivided if its ranks were not invariant).
    pub factor: EquivariantComplex,
    pub complex: EquivariantComplex,
}

impl WreathPower {
    /// The same complex with only the base group `Gⁿ` (elements with trivial
    /// permutation part) acting.
    pub fn base_power(&self) -> EquivariantComplex {
        let q = self.wreath.structure.base().order();
        let n = self.wreath.structure.n();
        let elements: Vec<usize> = (0..q.pow(n as u32)).collect();
        let sub = Subgroup::new_unchecked(self.wreath.group.clone(), elements);
        EquivariantComplex { complex: self.complex.complex.clone(), group: sub, action: self.complex.action.clone() }
    }
}

/// The `n`-fold staircase power with `(g, s)(x)ᵢ = gᵢ · x_{s⁻¹(i)}`.
///
/// Vertex `(x₁, …, xₙ)` has index `(⋯(x₁·U + x₂)·U + ⋯)·U + xₙ` for a
/// factor universe of size `U`.
pub fn power_with_wreath_action(
    x: &EquivariantComplex,
    n: usize,
    group_limits: &GroupLimits,
    limits: &ComplexLimits,
) -> Result<WreathPower> {
    let factor = with_invariant_rank(x, limits)?;
    let base = Arc::new(factor.group.to_group());
    let wreath = wreath_group(base, n, group_limits)?;
    let u = factor.complex.universe();
    let complex = if n == 0 {
        SimplicialComplex::from_maximal(1, &[])?
    } else {
        let mut c = factor.complex.clone();
        for _ in 1..n {
            c = simplicial_product(&c, &factor.complex, limits)?;
        }
        c
    };
    let universe = complex.universe();
    check_action_size(wreath.group.order(), universe, limits)?;
    let members = factor.group.elements();
    let action: Vec<Perm> = (0..wreath.group.order())
        .into_par_iter()
        .map(|w| {
            if n == 0 {
                return vec![0];
            }
            let e = wreath.element(w);
            let sinv = perm::inverse(&e.s);
            let mut digits = vec![0usize; n];
            (0..universe)
                .map(|mut v| {
                    for i in (0..n).rev() {
                        digits[i] = v % u;
                        v /= u;
                    }
                    (0..n).fold(0, |acc, i| acc * u + factor.action[members[e.g[i]]][digits[sinv[i]]])
                })
                .collect()
        })
        .collect();
    let complex = EquivariantComplex::new_unchecked(complex, Subgroup::whole(wreath.group.clone()), Arc::new(action));
    Ok(WreathPower { wreath, factor, complex })
}
