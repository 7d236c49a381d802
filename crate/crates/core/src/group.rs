//! Finite groups as dense multiplication tables, presentations of the source
//! groups Γ, and the enumeration kernels for homomorphisms Γ → G and their
//! conjugacy classes.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// Size limits for group construction and homomorphism enumeration.
///
/// Exceeding a limit is always an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupLimits {
    /// Largest group produced by closing permutation generators.
    pub max_order: u128,
    /// Largest group for which a dense multiplication table is materialized.
    pub max_table_order: usize,
    /// Largest number of candidate image tuples `|G|^k` for homomorphism enumeration.
    pub max_hom_candidates: u128,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits { max_order: 1_000_000, max_table_order: 5040, max_hom_candidates: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

/// A finite group given by its full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    labels: Vec<String>,
    all: Vec<usize>,
    permutations: Option<Vec<Perm>>,
    classes: OnceLock<ClassData>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            identity: self.identity,
            labels: self.labels.clone(),
            all: self.all.clone(),
            permutations: self.permutations.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// Associativity is checked exhaustively up to order 64 and on a fixed
    /// pseudo-random sample of triples above that.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::NoIdentity);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(Error::NotSquare { row, len: r.len(), expected: order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { row, col, value, order });
                }
                flat.push(value as u32);
            }
        }
        let mul = |a: usize, b: usize| flat[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(Error::NoInverse { element: x })?;
            inverse[x] = inv as u32;
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                Err(Error::NonAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                check(rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order))?;
            }
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::Parse(format!("{} labels for a group of order {order}", l.len())));
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order,
            table: flat,
            inverse,
            identity,
            labels,
            all: (0..order).collect(),
            permutations: None,
            classes: OnceLock::new(),
        })
    }

    /// Closes a set of permutations of `{0..degree-1}` under composition.
    ///
    /// Elements are indexed in lexicographic order of their one-line
    /// notation, so the identity is element 0. Labels are cycle notation.
    pub fn from_permutations(generators: &[Perm], degree: usize, limits: &GroupLimits) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != degree || !perm::is_bijection(g) {
                return Err(Error::NotBijection { index, degree });
            }
        }
        let id = perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = perm::compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() as u128 > limits.max_order {
                        return Err(Error::OrderCapExceeded {
                            cap: limits.max_order,
                            required: seen.len() as u128,
                        });
                    }
                    frontier.push(q);
                }
            }
        }
        let mut elems: Vec<Perm> = seen.into_iter().collect();
        elems.sort();
        Self::from_sorted_perms(elems, limits)
    }

    fn from_sorted_perms(elems: Vec<Perm>, limits: &GroupLimits) -> Result<Self> {
        let order = elems.len();
        if order > limits.max_table_order {
            return Err(Error::OrderCapExceeded { cap: limits.max_table_order as u128, required: order as u128 });
        }
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                table.push(index[&perm::compose(a, b)] as u32);
            }
        }
        let inverse = elems.iter().map(|p| index[&perm::inverse(p)] as u32).collect();
        let labels = elems.iter().map(|p| perm::cycle_string(p)).collect();
        Ok(FiniteGroup {
            order,
            table,
            inverse,
            identity: 0,
            labels,
            all: (0..order).collect(),
            permutations: Some(elems),
            classes: OnceLock::new(),
        })
    }

    /// Builds a group directly from a trusted multiplication closure.
    pub(crate) fn from_fn(
        order: usize,
        identity: usize,
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize + Sync,
        inv: impl Fn(usize) -> usize,
    ) -> Self {
        use rayon::prelude::*;
        let rows: Vec<Vec<u32>> =
            (0..order).into_par_iter().map(|a| (0..order).map(|b| mul(a, b) as u32).collect()).collect();
        let table = rows.concat();
        FiniteGroup {
            order,
            table,
            inverse: (0..order).map(|x| inv(x) as u32).collect(),
            identity,
            labels,
            all: (0..order).collect(),
            permutations: None,
            classes: OnceLock::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::from_sorted_perms(vec![vec![]], &GroupLimits::default()).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("cyclic group of order 0".into()));
        }
        if n == 1 {
            return Ok(Self::trivial());
        }
        let gen: Perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(&[gen], n, &GroupLimits::default())
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        let mut swap = perm::identity(n);
        swap.swap(0, 1);
        let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(&[swap, cycle], n, &GroupLimits::default())
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse("dihedral group needs n >= 3".into()));
        }
        let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rot, refl], n, &GroupLimits::default())
    }

    /// Parses one of the built-in names: `trivial`, `Zn` (e.g. `Z2`), `Sn`, `Dn` (order `2n`).
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "trivial" || name == "1" {
            return Ok(Self::trivial());
        }
        let parse_n = |s: &str| {
            s.trim_start_matches('/')
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("unknown group {name:?}")))
        };
        match name.chars().next() {
            Some('Z') => Self::cyclic(parse_n(&name[1..])?),
            Some('S') => Self::symmetric(parse_n(&name[1..])?),
            Some('D') => Self::dihedral(parse_n(&name[1..])?),
            _ => Err(Error::Parse(format!("unknown group {name:?}"))),
        }
    }

    /// Direct product; element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, limits: &GroupLimits) -> Result<Self> {
        let order = a.order * b.order;
        if order > limits.max_table_order {
            return Err(Error::OrderCapExceeded { cap: limits.max_table_order as u128, required: order as u128 });
        }
        let nb = b.order;
        let labels = (0..order).map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb))).collect();
        Ok(Self::from_fn(
            order,
            a.identity * nb + b.identity,
            labels,
            |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
            |x| a.inv(x / nb) * nb + b.inv(x % nb),
        ))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Permutation realizing each element, when the group was built from permutations.
    pub fn permutations(&self) -> Option<&[Perm]> {
        self.permutations.as_deref()
    }

    pub fn elements(&self) -> &[usize] {
        &self.all
    }

    pub fn view(&self) -> GroupView<'_> {
        GroupView { group: self, elements: &self.all }
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.all.iter().all(|&g| self.commute(g, x))
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let classes = self.view().conjugacy_classes();
            let mut class_of = vec![0; self.order];
            for (i, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of[m] = i;
                }
            }
            ClassData { classes, class_of }
        })
    }

    /// Conjugacy classes sorted by representative; each representative is the
    /// smallest member index.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().classes
    }

    /// Index into [`FiniteGroup::conjugacy_classes`] of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_data().class_of[x]
    }

    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        self.view().centralizer(set)
    }
}

/// A subgroup seen through its parent's table: the parent plus a sorted element list.
#[derive(Debug, Clone, Copy)]
pub struct GroupView<'a> {
    group: &'a FiniteGroup,
    elements: &'a [usize],
}

impl<'a> GroupView<'a> {
    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn elements(&self) -> &'a [usize] {
        self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let g = self.group;
        let mut done = vec![false; self.elements.len()];
        let mut out = Vec::new();
        for (i, &x) in self.elements.iter().enumerate() {
            if done[i] {
                continue;
            }
            let mut members: Vec<usize> = self.elements.iter().map(|&h| g.conjugate(h, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                done[self.position(m).expect("class member in subgroup")] = true;
            }
            out.push(ConjugacyClass { representative: x, members });
        }
        out
    }

    /// `{h ∈ H : hs = sh for all s ∈ set}`
    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        let g = self.group;
        self.elements.iter().copied().filter(|&h| set.iter().all(|&s| g.commute(h, s))).collect()
    }

    pub fn is_closed(&self) -> bool {
        let g = self.group;
        self.contains(g.identity())
            && self.elements.iter().all(|&a| {
                self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b)))
            })
    }

    /// Lexicographically smallest tuple in the simultaneous-conjugation orbit of `images`.
    pub fn canonical_tuple(&self, images: &[usize]) -> Vec<usize> {
        let g = self.group;
        let mut best = images.to_vec();
        let mut cand = vec![0; images.len()];
        for &h in self.elements {
            for (c, &x) in cand.iter_mut().zip(images) {
                *c = g.conjugate(h, x);
            }
            if cand < best {
                best.copy_from_slice(&cand);
            }
        }
        best
    }
}

/// An owned subgroup of a shared parent group.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let elements = parent.elements().to_vec();
        Subgroup { parent, elements }
    }

    /// Validates closure of the given element set.
    pub fn new(parent: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotSubgroup("element out of range".into()));
        }
        let s = Subgroup { parent, elements };
        if !s.view().is_closed() {
            return Err(Error::NotSubgroup(format!("{:?} is not closed", s.elements)));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(parent: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        Subgroup { parent, elements }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn view(&self) -> GroupView<'_> {
        GroupView { group: &self.parent, elements: &self.elements }
    }

    /// Materializes the subgroup as a standalone table; element `i` is `elements()[i]`.
    pub fn to_group(&self) -> FiniteGroup {
        let v = self.view();
        let pos = |x: usize| v.position(x).expect("closed subgroup");
        let labels = self.elements.iter().map(|&x| self.parent.label(x).to_string()).collect();
        FiniteGroup::from_fn(
            self.order(),
            pos(self.parent.identity()),
            labels,
            |a, b| pos(self.parent.mul(self.elements[a], self.elements[b])),
            |a| pos(self.parent.inv(self.elements[a])),
        )
    }
}

/// A finite presentation `⟨x₁..x_k | relators⟩`; relator letters are signed,
/// 1-based generator indices (`-i` is the inverse of `x_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Vec<i32>>,
    name: Option<String>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        for word in &relators {
            check_word(word, generators)?;
        }
        Ok(Presentation { generators, relators, name: None })
    }

    pub fn trivial() -> Self {
        Presentation { generators: 0, relators: vec![], name: Some("trivial".into()) }
    }

    pub fn free(k: usize) -> Self {
        Presentation { generators: k, relators: vec![], name: Some(format!("F_{k}")) }
    }

    /// `Zᵐ`: `m` generators with all commutators as relators.
    pub fn free_abelian(m: usize) -> Self {
        let mut relators = Vec::new();
        for i in 1..=m as i32 {
            for j in i + 1..=m as i32 {
                relators.push(vec![i, j, -i, -j]);
            }
        }
        Presentation { generators: m, relators, name: Some(format!("Z^{m}")) }
    }

    /// Parses `trivial`, `Z`, `Z^m`, `F_k`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let bad = || Error::Parse(format!("unknown presentation {spec:?}"));
        if s == "trivial" || s == "1" {
            return Ok(Self::trivial());
        }
        if s == "Z" {
            return Ok(Self::free_abelian(1));
        }
        if let Some(m) = s.strip_prefix("Z^") {
            return Ok(Self::free_abelian(m.parse().map_err(|_| bad())?));
        }
        if let Some(k) = s.strip_prefix("F_") {
            return Ok(Self::free(k.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }

    /// `Γ₁ × Γ₂`: generators of `self` first, then `other`, plus all cross commutators.
    pub fn product(&self, other: &Presentation) -> Presentation {
        let k = self.generators as i32;
        let mut relators = self.relators.clone();
        for w in &other.relators {
            relators.push(w.iter().map(|&l| if l > 0 { l + k } else { l - k }).collect());
        }
        for i in 1..=k {
            for j in 1..=other.generators as i32 {
                relators.push(vec![i, j + k, -i, -(j + k)]);
            }
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        Presentation { generators: self.generators + other.generators, relators, name }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

fn check_word(word: &[i32], generators: usize) -> Result<()> {
    for &letter in word {
        if letter == 0 || letter.unsigned_abs() as usize > generators {
            return Err(Error::InvalidWord { letter, generators });
        }
    }
    Ok(())
}

pub fn eval_word(group: &FiniteGroup, images: &[usize], word: &[i32]) -> usize {
    word.iter().fold(group.identity(), |acc, &l| {
        let x = images[l.unsigned_abs() as usize - 1];
        group.mul(acc, if l > 0 { x } else { group.inv(x) })
    })
}

/// A homomorphism from a presented group, given by the images of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn new(pres: &Presentation, group: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != pres.generators() || images.iter().any(|&x| x >= group.order()) {
            return Err(Error::Parse("image tuple does not match presentation".into()));
        }
        for (i, r) in pres.relators().iter().enumerate() {
            if eval_word(group, &images, r) != group.identity() {
                return Err(Error::RelatorViolated { relator: i });
            }
        }
        Ok(GroupHom { images })
    }

    /// The image set `{φ(x_i)}` (generates the image subgroup).
    pub fn image_set(&self) -> Vec<usize> {
        let mut s = self.images.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// A simultaneous-conjugation class of homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClass {
    /// Lexicographically smallest image tuple in the orbit.
    pub representative: GroupHom,
    pub orbit_size: usize,
    pub centralizer_order: usize,
}

fn candidate_count(order: usize, k: usize) -> u128 {
    (order as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// All homomorphisms `Γ → H` in lexicographic order of image tuples.
///
/// Backtracks over generator images; each relator is checked as soon as all
/// generators it mentions are assigned.
pub fn enumerate_homs(pres: &Presentation, target: GroupView<'_>, limits: &GroupLimits) -> Result<Vec<GroupHom>> {
    let k = pres.generators();
    let required = candidate_count(target.order(), k);
    if required > limits.max_hom_candidates {
        return Err(Error::EnumerationCapExceeded { cap: limits.max_hom_candidates, required });
    }
    let mut by_level: Vec<Vec<&[i32]>> = vec![Vec::new(); k.max(1)];
    for r in pres.relators() {
        if r.is_empty() {
            continue;
        }
        let top = r.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() - 1;
        by_level[top].push(r);
    }
    let group = target.group();
    let mut out = Vec::new();
    let mut images = vec![0usize; k];
    fn rec(
        level: usize,
        images: &mut Vec<usize>,
        target: &GroupView<'_>,
        group: &FiniteGroup,
        by_level: &[Vec<&[i32]>],
        out: &mut Vec<GroupHom>,
    ) {
        if level == images.len() {
            out.push(GroupHom { images: images.clone() });
            return;
        }
        for &x in target.elements() {
            images[level] = x;
            if by_level[level].iter().all(|w| eval_word(group, images, w) == group.identity()) {
                rec(level + 1, images, target, group, by_level, out);
            }
        }
    }
    // relators with no letters are trivially satisfied; relators on zero generators cannot exist
    rec(0, &mut images, &target, group, &by_level, &mut out);
    Ok(out)
}

/// Conjugacy classes of homomorphisms `Γ → H` under simultaneous conjugation by `H`.
///
/// Output is sorted by canonical representative; orbit sizes sum to the
/// number of homomorphisms.
pub fn hom_classes(pres: &Presentation, target: GroupView<'_>, limits: &GroupLimits) -> Result<Vec<HomClass>> {
    let homs = enumerate_homs(pres, target, limits)?;
    Ok(classes_of_homs(&homs, target))
}

pub(crate) fn classes_of_homs(homs: &[GroupHom], target: GroupView<'_>) -> Vec<HomClass> {
    let group = target.group();
    let index: HashMap<&[usize], usize> = homs.iter().enumerate().map(|(i, h)| (h.images.as_slice(), i)).collect();
    let mut done = vec![false; homs.len()];
    let mut out = Vec::new();
    let mut conj = vec![0; homs.first().map_or(0, |h| h.images.len())];
    for (i, h) in homs.iter().enumerate() {
        if done[i] {
            continue;
        }
        // homs arrive in lexicographic order, so the first unseen tuple is its orbit's minimum
        let mut orbit = 0;
        for &g in target.elements() {
            for (c, &x) in conj.iter_mut().zip(&h.images) {
                *c = group.conjugate(g, x);
            }
            let j = index[conj.as_slice()];
            if !done[j] {
                done[j] = true;
                orbit += 1;
            }
        }
        let centralizer_order = target.centralizer(&h.images).len();
        debug_assert_eq!(orbit * centralizer_order, target.order());
        out.push(HomClass { representative: h.clone(), orbit_size: orbit, centralizer_order });
    }
    out
}

/// A homomorphism `Λ → Γ` between presented groups, given by generator images as words.
#[derive(Debug, Clone)]
pub struct PresentationMap {
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<Vec<i32>>,
}

impl PresentationMap {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Vec<i32>>) -> Result<Self> {
        if images.len() != source.generators() {
            return Err(Error::Parse(format!(
                "{} generator images for a source with {} generators",
                images.len(),
                source.generators()
            )));
        }
        for w in &images {
            check_word(w, target.generators())?;
        }
        Ok(PresentationMap { source, target, images })
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = (1..=p.generators() as i32).map(|i| vec![i]).collect();
        PresentationMap { source: p.clone(), target: p.clone(), images }
    }
}

/// `φ ∘ Φ` as a homomorphism on `Φ`'s source.
pub fn compose_with(map: &PresentationMap, phi: &GroupHom, group: &FiniteGroup) -> Result<GroupHom> {
    if phi.images.len() != map.target.generators() {
        return Err(Error::Parse("homomorphism does not match the map's target".into()));
    }
    let images: Vec<usize> = map.images.iter().map(|w| eval_word(group, &phi.images, w)).collect();
    GroupHom::new(&map.source, group, images)
}
