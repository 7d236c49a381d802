//! Finite simplicial complexes.
//!
//! Every complex lives on a vertex universe `0..universe`; only the vertices
//! that appear as 0-simplices belong to it, so subcomplexes keep the vertex
//! numbering (and any group action) of their ambient complex.
//!
//! Each vertex also carries a `rank` used to order the vertices of a simplex.
//! Products are staircase triangulations with respect to that order, so the
//! rank must be injective on every simplex taking part in a product.

mod builtin;
mod chain;
mod equivariant;

use crate::error::{Error, Result};

pub use builtin::{builtin_complex, builtin_equivariant, standard_suite, SuiteCase, SUITE_SPECS};
pub use chain::{rational_rank, ChainComplex};
pub use equivariant::{
    equivariant_product, power_with_wreath_action, EquivariantComplex, OrbitCell,
    OrbitComplex, RegularEquivariantComplex, WreathPower,
};

/// A simplex as its vertex set in increasing index order.
pub type Simplex = Vec<usize>;

/// Size limits for complex constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexLimits {
    pub max_simplices: usize,
    /// Largest `|G| · #vertices` for a materialized vertex action.
    pub max_action_entries: usize,
}

impl Default for ComplexLimits {
    fn default() -> Self {
        ComplexLimits { max_simplices: 1_000_000, max_action_entries: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    universe: usize,
    rank: Vec<usize>,
    /// `simplices[d]` holds the `d`-simplices, sorted.
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty(universe: usize) -> Self {
        SimplicialComplex { universe, rank: (0..universe).collect(), simplices: Vec::new() }
    }

    /// Closure of the given simplices; every vertex `0..vertices` is included.
    pub fn from_maximal(vertices: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let gens = maximal.iter().cloned().chain((0..vertices).map(|v| vec![v]));
        Self::closure(vertices, gens, (0..vertices).collect(), &ComplexLimits::default())
    }

    /// Downward closure of `generators` over a universe with the given ranks.
    pub fn closure(
        universe: usize,
        generators: impl IntoIterator<Item = Vec<usize>>,
        rank: Vec<usize>,
        limits: &ComplexLimits,
    ) -> Result<Self> {
        if rank.len() != universe {
            return Err(Error::InvalidComplex(format!("{} ranks for {universe} vertices", rank.len())));
        }
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        let mut stored = 0usize;
        for mut g in generators {
            g.sort_unstable();
            if g.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in {g:?}")));
            }
            if let Some(&v) = g.iter().find(|&&v| v >= universe) {
                return Err(Error::InvalidComplex(format!("vertex {v} outside 0..{universe}")));
            }
            if g.is_empty() {
                continue;
            }
            if g.len() > 24 {
                return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: usize::MAX });
            }
            let k = g.len();
            if by_dim.len() < k {
                by_dim.resize(k, Vec::new());
            }
            for mask in 1u32..(1 << k) {
                let face: Simplex = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
                by_dim[face.len() - 1].push(face);
            }
            stored += (1usize << k) - 1;
            if stored > 2 * limits.max_simplices {
                stored = dedup_all(&mut by_dim);
                if stored > limits.max_simplices {
                    return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: stored });
                }
            }
        }
        let total = dedup_all(&mut by_dim);
        if total > limits.max_simplices {
            return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: total });
        }
        Ok(SimplicialComplex { universe, rank, simplices: by_dim })
    }

    /// Replaces the vertex ranks.
    pub fn with_rank(mut self, rank: Vec<usize>) -> Result<Self> {
        if rank.len() != self.universe {
            return Err(Error::InvalidComplex(format!("{} ranks for {} vertices", rank.len(), self.universe)));
        }
        self.rank = rank;
        Ok(self)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices(0).len()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    /// All simplices, by dimension and then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Index of a sorted simplex within its dimension.
    pub fn position(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.simplices.get(d)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.position(s).is_some()
    }

    /// Index of `s` in [`SimplicialComplex::iter`] order.
    pub fn global_index(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        let offset: usize = self.simplices[..d.min(self.simplices.len())].iter().map(Vec::len).sum();
        Some(offset + self.position(s)?)
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let mut covered = vec![false; self.simplices[d].len()];
            for s in self.simplices(d + 1) {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    covered[self.position(&f).expect("closed under faces")] = true;
                }
            }
            out.extend(self.simplices[d].iter().zip(covered).filter(|(_, c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    /// `Σ (−1)^{dim σ}`
    pub fn euler_top(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    /// Closure of `generators`, which must be simplices of `self`.
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<Self> {
        for g in generators {
            let mut s = g.clone();
            s.sort_unstable();
            if !self.contains(&s) {
                return Err(Error::InvalidComplex(format!("{g:?} is not a simplex")));
            }
        }
        Self::closure(self.universe, generators.iter().cloned(), self.rank.clone(), &ComplexLimits::default())
    }

    /// The full subcomplex on the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut simplices: Vec<Vec<Simplex>> =
            self.simplices.iter().map(|l| l.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect()).collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        SimplicialComplex { universe: self.universe, rank: self.rank.clone(), simplices }
    }

    fn check_same_universe(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::InvalidComplex("complexes live on different vertex sets".into()));
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_universe(other)?;
        let n = self.simplices.len().max(other.simplices.len());
        let simplices = (0..n)
            .map(|d| {
                let mut v: Vec<Simplex> = self.simplices(d).iter().chain(other.simplices(d)).cloned().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(SimplicialComplex { universe: self.universe, rank: self.rank.clone(), simplices })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_universe(other)?;
        let mut simplices: Vec<Vec<Simplex>> = (0..self.simplices.len())
            .map(|d| self.simplices[d].iter().filter(|s| other.contains(s)).cloned().collect())
            .collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        Ok(SimplicialComplex { universe: self.universe, rank: self.rank.clone(), simplices })
    }

    /// Vertices are the simplices of `self` in [`SimplicialComplex::iter`]
    /// order, ranked by dimension; simplices are chains of faces.
    pub fn barycentric_subdivision(&self, limits: &ComplexLimits) -> Result<SimplicialComplex> {
        let universe = self.len();
        let rank: Vec<usize> = self.simplices.iter().enumerate().flat_map(|(d, l)| std::iter::repeat(d).take(l.len())).collect();
        let mut flags = Vec::new();
        for top in self.maximal_simplices() {
            let mut chain = Vec::with_capacity(top.len());
            self.full_flags(top, &mut chain, &mut flags);
            if flags.len() > limits.max_simplices {
                return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: flags.len() });
            }
        }
        Self::closure(universe, flags, rank, limits)
    }

    /// Pushes every maximal chain of faces below `s`, as new vertex indices.
    fn full_flags(&self, s: Simplex, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        chain.push(self.global_index(&s).expect("face of the complex"));
        if s.len() == 1 {
            out.push(chain.clone());
        } else {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                self.full_flags(f, chain, out);
            }
        }
        chain.pop();
    }

    /// Errors unless the rank is injective on every simplex.
    pub fn check_vertex_order(&self) -> Result<()> {
        for s in self.iter().skip(self.vertex_count()) {
            let mut r: Vec<usize> = s.iter().map(|&v| self.rank[v]).collect();
            r.sort_unstable();
            if r.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NoVertexOrder { simplex: s.clone() });
            }
        }
        Ok(())
    }

    /// Vertices of `s` in increasing rank.
    pub fn ordered(&self, s: &[usize]) -> Vec<usize> {
        let mut v = s.to_vec();
        v.sort_by_key(|&x| (self.rank[x], x));
        v
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let boundaries = (1..self.simplices.len())
            .map(|d| {
                self.simplices[d]
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                (self.position(&f).expect("closed under faces"), if i % 2 == 0 { 1 } else { -1 })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ChainComplex::new(self.f_vector(), boundaries)
    }

    /// Rational Betti numbers `b₀, …, b_dim`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.chain_complex().betti_numbers()
    }
}

fn dedup_all(by_dim: &mut [Vec<Simplex>]) -> usize {
    by_dim
        .iter_mut()
        .map(|v| {
            v.sort_unstable();
            v.dedup();
            v.len()
        })
        .sum()
}

/// Staircase triangulation of `X × Y` with respect to the vertex ranks.
///
/// Vertex `(x, y)` has index `x · |universe(Y)| + y` and rank `rank(x) + rank(y)`.
pub fn simplicial_product(
    x: &SimplicialComplex,
    y: &SimplicialComplex,
    limits: &ComplexLimits,
) -> Result<SimplicialComplex> {
    x.check_vertex_order()?;
    y.check_vertex_order()?;
    let uy = y.universe;
    let universe = x.universe * uy;
    let rank = (0..universe).map(|i| x.rank[i / uy] + y.rank[i % uy]).collect();
    let mut gens = Vec::new();
    let ym = y.maximal_simplices();
    for s in x.maximal_simplices() {
        let a = x.ordered(&s);
        for t in &ym {
            let b = y.ordered(t);
            staircases(&a, &b, uy, &mut gens);
            if gens.len() > limits.max_simplices {
                return Err(Error::SizeCapExceeded { cap: limits.max_simplices, required: gens.len() });
            }
        }
    }
    SimplicialComplex::closure(universe, gens, rank, limits)
}

/// All monotone lattice paths through `a × b`.
fn staircases(a: &[usize], b: &[usize], uy: usize, out: &mut Vec<Vec<usize>>) {
    fn walk(a: &[usize], b: &[usize], i: usize, j: usize, uy: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(a[i] * uy + b[j]);
        if i + 1 == a.len() && j + 1 == b.len() {
            out.push(path.clone());
        }
        if i + 1 < a.len() {
            walk(a, b, i + 1, j, uy, path, out);
        }
        if j + 1 < b.len() {
            walk(a, b, i, j + 1, uy, path, out);
        }
        path.pop();
    }
    walk(a, b, 0, 0, uy, &mut Vec::with_capacity(a.len() + b.len()), out);
}
