//! Wreath products `G ≀ Sₙ = Gⁿ ⋊ Sₙ`.
//!
//! Multiplication is `(g, s)(h, t) = (g · s(h), st)` with `s(h)ᵢ = h_{s⁻¹(i)}`,
//! and `(g, s)` acts on `Mⁿ` by `(g, s)(x)ᵢ = gᵢ · x_{s⁻¹(i)}`.
//!
//! Structure-level operations (cycle decomposition, types, standard forms)
//! work on [`WreathElement`] values and never need the full group table.

mod commuting;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupLimits};
use crate::perm::{self, Perm};

pub use commuting::count_commuting_tuples;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub g: Vec<usize>,
    pub s: Perm,
}

/// One cycle of the permutation part together with its cycle product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDatum {
    /// Positions `(j₁, …, j_r)` with `j₁` the smallest and `j_{k+1} = s(j_k)`.
    pub support: Vec<usize>,
    /// `g_{j_r} ⋯ g_{j₁}`. Only its conjugacy class is convention independent.
    pub cycle_product: usize,
    pub class: usize,
}

impl CycleDatum {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// The type `m_r(c)` of a wreath element: for each conjugacy class index
/// `c` of `G` and cycle length `r`, the number of `r`-cycles whose cycle
/// product lies in `c`. Only nonzero entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeFunction {
    counts: BTreeMap<(usize, usize), usize>,
}

impl TypeFunction {
    pub fn from_counts(entries: impl IntoIterator<Item = ((usize, usize), usize)>) -> Self {
        let mut counts = BTreeMap::new();
        for ((c, r), m) in entries {
            if m > 0 {
                *counts.entry((c, r)).or_insert(0) += m;
            }
        }
        TypeFunction { counts }
    }

    /// `m_r(c)`
    pub fn get(&self, class: usize, r: usize) -> usize {
        self.counts.get(&(class, r)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `((class, r), m)` in sorted `(class, r)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&k, &m)| (k, m))
    }

    /// `Σ r · m_r(c)`
    pub fn weight(&self) -> usize {
        self.counts.iter().map(|(&(_, r), &m)| r * m).sum()
    }

    /// The underlying partition `m_r = Σ_c m_r(c)`, as multiplicities indexed by `r`.
    pub fn partition(&self) -> BTreeMap<usize, usize> {
        let mut p = BTreeMap::new();
        for (&(_, r), &m) in &self.counts {
            *p.entry(r).or_insert(0) += m;
        }
        p
    }

    pub fn to_json(&self, base: &FiniteGroup) -> Vec<TypeEntryJson> {
        self.counts
            .iter()
            .map(|(&(c, r), &m)| TypeEntryJson {
                class: base.label(base.conjugacy_classes()[c].representative).to_string(),
                r,
                m,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeEntryJson {
    pub class: String,
    pub r: usize,
    pub m: usize,
}

/// `G ≀ Sₙ` as a structure over a base group.
#[derive(Debug, Clone)]
pub struct WreathProduct {
    base: Arc<FiniteGroup>,
    n: usize,
}

impl WreathProduct {
    pub fn new(base: Arc<FiniteGroup>, n: usize) -> Self {
        WreathProduct { base, n }
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G|ⁿ · n!`
    pub fn order(&self) -> BigUint {
        BigUint::from(self.base.order()).pow(self.n as u32) * BigUint::from(perm::factorial(self.n))
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { g: vec![self.base.identity(); self.n], s: perm::identity(self.n) }
    }

    pub fn validate(&self, w: &WreathElement) -> Result<()> {
        if w.g.len() != self.n || w.s.len() != self.n || !perm::is_bijection(&w.s) {
            return Err(Error::Parse(format!("not an element of G≀S{}: {w:?}", self.n)));
        }
        if w.g.iter().any(|&x| x >= self.base.order()) {
            return Err(Error::Parse(format!("base element out of range in {w:?}")));
        }
        Ok(())
    }

    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let sinv = perm::inverse(&a.s);
        let g = (0..self.n).map(|i| self.base.mul(a.g[i], b.g[sinv[i]])).collect();
        WreathElement { g, s: perm::compose(&a.s, &b.s) }
    }

    /// `(s⁻¹(g⁻¹), s⁻¹)`
    pub fn inv(&self, a: &WreathElement) -> WreathElement {
        let g = (0..self.n).map(|i| self.base.inv(a.g[a.s[i]])).collect();
        WreathElement { g, s: perm::inverse(&a.s) }
    }

    /// `a b a⁻¹`
    pub fn conjugate(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    /// Diagonal element `((h, …, h), 1)`.
    pub fn diagonal(&self, h: usize) -> WreathElement {
        WreathElement { g: vec![h; self.n], s: perm::identity(self.n) }
    }

    /// Index of `w` in the explicit group built by [`wreath_group`].
    pub fn encode(&self, w: &WreathElement) -> usize {
        let q = self.base.order();
        let mut idx = 0;
        for &x in w.g.iter().rev() {
            idx = idx * q + x;
        }
        perm::rank(&w.s) * q.pow(self.n as u32) + idx
    }

    pub fn decode(&self, mut idx: usize) -> WreathElement {
        let q = self.base.order();
        let block = q.pow(self.n as u32);
        let s = perm::unrank(self.n, idx / block);
        idx %= block;
        let mut g = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            g.push(idx % q);
            idx /= q;
        }
        WreathElement { g, s }
    }

    pub fn label(&self, w: &WreathElement) -> String {
        let g: Vec<&str> = w.g.iter().map(|&x| self.base.label(x)).collect();
        format!("(({}),{})", g.join(","), perm::cycle_string(&w.s))
    }

    pub fn cycle_decomposition(&self, w: &WreathElement) -> Vec<CycleDatum> {
        perm::cycles(&w.s)
            .into_iter()
            .map(|support| {
                let cycle_product =
                    support.iter().fold(self.base.identity(), |acc, &j| self.base.mul(w.g[j], acc));
                CycleDatum { class: self.base.class_of(cycle_product), cycle_product, support }
            })
            .collect()
    }

    /// The commuting factors `(g_j, s_j)` of the cycle decomposition; their product is `w`.
    pub fn cycle_factors(&self, w: &WreathElement) -> Vec<WreathElement> {
        self.cycle_decomposition(w)
            .into_iter()
            .map(|c| {
                let mut f = self.identity();
                for &j in &c.support {
                    f.g[j] = w.g[j];
                    f.s[j] = w.s[j];
                }
                f
            })
            .collect()
    }

    pub fn type_of(&self, w: &WreathElement) -> TypeFunction {
        TypeFunction::from_counts(self.cycle_decomposition(w).iter().map(|c| ((c.class, c.len()), 1)))
    }

    /// Returns `(d, standard)` with `d` in `Gⁿ`, `standard` carrying the cycle
    /// product at the first position of each cycle and `1` elsewhere, and
    /// `d · standard · d⁻¹ = w`.
    pub fn standard_form_conjugator(&self, w: &WreathElement) -> (WreathElement, WreathElement) {
        let mut d = self.identity();
        let mut standard = WreathElement { g: vec![self.base.identity(); self.n], s: w.s.clone() };
        for c in self.cycle_decomposition(w) {
            let mut acc = self.base.identity();
            for &j in &c.support {
                acc = self.base.mul(w.g[j], acc);
                d.g[j] = acc;
            }
            standard.g[c.support[0]] = c.cycle_product;
        }
        (d, standard)
    }

    /// Acts on an `n`-tuple of points of a `G`-set given by `act(g, x)`.
    pub fn act(&self, w: &WreathElement, x: &[usize], act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let sinv = perm::inverse(&w.s);
        (0..self.n).map(|i| act(w.g[i], x[sinv[i]])).collect()
    }
}

/// `a_{r,c} = ((c, 1, …, 1), (1 2 … r))` in `G ≀ S_r`.
pub fn cycle_generator(wp: &WreathProduct, c: usize) -> WreathElement {
    let r = wp.n();
    let mut g = vec![wp.base().identity(); r];
    if r > 0 {
        g[0] = c;
    }
    WreathElement { g, s: (0..r).map(|i| (i + 1) % r).collect() }
}

/// `G ≀ Sₙ` as an explicit table together with its structure.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    pub structure: WreathProduct,
    pub group: Arc<FiniteGroup>,
}

impl WreathGroup {
    pub fn element(&self, idx: usize) -> WreathElement {
        self.structure.decode(idx)
    }

    pub fn index(&self, w: &WreathElement) -> usize {
        self.structure.encode(w)
    }
}

/// Builds `G ≀ Sₙ` as an explicit group of order `|G|ⁿ · n!`.
pub fn wreath_group(base: Arc<FiniteGroup>, n: usize, limits: &GroupLimits) -> Result<WreathGroup> {
    let wp = WreathProduct::new(base, n);
    let order = wp.order();
    if order > BigUint::from(limits.max_table_order) {
        let required = u128::try_from(order).unwrap_or(u128::MAX);
        return Err(Error::OrderCapExceeded { cap: limits.max_table_order as u128, required });
    }
    let order = usize::try_from(wp.order()).expect("checked against cap");
    let elems: Vec<WreathElement> = (0..order).map(|i| wp.decode(i)).collect();
    let labels = elems.iter().map(|w| wp.label(w)).collect();
    let group = FiniteGroup::from_fn(
        order,
        wp.encode(&wp.identity()),
        labels,
        |a, b| wp.encode(&wp.mul(&elems[a], &elems[b])),
        |a| wp.encode(&wp.inv(&elems[a])),
    );
    Ok(WreathGroup { structure: wp, group: Arc::new(group) })
}

/// `Π_{(c), r} (r · |C_G(c)|)^{m_r(c)} · m_r(c)!`
pub fn centralizer_order_by_formula(base: &FiniteGroup, n: usize, ty: &TypeFunction) -> Result<BigUint> {
    if ty.weight() != n {
        return Err(Error::InvalidType(format!("weighted total {} != n = {n}", ty.weight())));
    }
    let classes = base.conjugacy_classes();
    let mut out = BigUint::one();
    for ((c, r), m) in ty.entries() {
        let class = classes
            .get(c)
            .ok_or_else(|| Error::InvalidType(format!("class index {c} out of range")))?;
        let cent = base.order() / class.members.len();
        out *= BigUint::from(r * cent).pow(m as u32);
        out *= BigUint::from(perm::factorial(m));
    }
    Ok(out)
}

/// All type functions of weight `n` over `labels` class labels, in sorted order.
pub fn enumerate_types(labels: usize, n: usize) -> Vec<TypeFunction> {
    // parts are (label, r) pairs; choose multiplicities in a fixed order
    let parts: Vec<(usize, usize)> = (1..=n).flat_map(|r| (0..labels).map(move |c| (c, r))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        left: usize,
        parts: &[(usize, usize)],
        chosen: &mut Vec<((usize, usize), usize)>,
        out: &mut Vec<TypeFunction>,
    ) {
        if left == 0 {
            out.push(TypeFunction::from_counts(chosen.iter().copied()));
            return;
        }
        if i == parts.len() {
            return;
        }
        let (c, r) = parts[i];
        for m in (0..=left / r).rev() {
            if m > 0 {
                chosen.push(((c, r), m));
            }
            rec(i + 1, left - m * r, parts, chosen, out);
            if m > 0 {
                chosen.pop();
            }
        }
    }
    rec(0, n, &parts, &mut chosen, &mut out);
    out.sort();
    out
}

/// One row of the brute-force classification of `G ≀ Sₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRow {
    pub ty: TypeFunction,
    pub representative: usize,
    pub class_size: usize,
    pub centralizer_brute: usize,
    pub centralizer_formula: BigUint,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub wreath: WreathGroup,
    pub rows: Vec<TypeRow>,
    pub brute_class_count: usize,
    /// Every class has a single type and distinct classes have distinct types.
    pub bijective: bool,
    /// Brute-force centralizer order matches the formula for every element.
    pub formula_matches: bool,
}

/// Brute-force conjugacy classes of `G ≀ Sₙ`, matched against types.
pub fn classify_conjugacy_by_type(base: Arc<FiniteGroup>, n: usize, limits: &GroupLimits) -> Result<Classification> {
    use rayon::prelude::*;
    let wg = wreath_group(base.clone(), n, limits)?;
    let g = &wg.group;
    let classes = g.conjugacy_classes();
    let types: Vec<TypeFunction> =
        (0..g.order()).into_par_iter().map(|i| wg.structure.type_of(&wg.element(i))).collect();
    let mut rows = Vec::with_capacity(classes.len());
    let mut bijective = true;
    let mut formula_matches = true;
    let mut seen = std::collections::BTreeSet::new();
    for class in classes {
        let ty = types[class.representative].clone();
        if class.members.iter().any(|&m| types[m] != ty) || !seen.insert(ty.clone()) {
            bijective = false;
        }
        let centralizer_brute = g.centralizer(&[class.representative]).len();
        let centralizer_formula = centralizer_order_by_formula(&base, n, &ty)?;
        if centralizer_formula != BigUint::from(centralizer_brute) {
            formula_matches = false;
        }
        rows.push(TypeRow {
            ty,
            representative: class.representative,
            class_size: class.members.len(),
            centralizer_brute,
            centralizer_formula,
        });
    }
    rows.sort_by(|a, b| a.ty.cmp(&b.ty));
    Ok(Classification { brute_class_count: classes.len(), wreath: wg, rows, bijective, formula_matches })
}
