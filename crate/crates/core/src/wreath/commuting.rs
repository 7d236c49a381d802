//! Counting `|HOM(Z^k, G ≀ Sₙ)|` without building the wreath product.
//!
//! A commuting `k`-tuple of `G ≀ Sₙ` is a commuting tuple `(s₁, …, s_k)` of
//! `Sₙ` together with base vectors satisfying the commutation constraints.
//! The constraints only couple positions in the same orbit of `⟨s₁, …, s_k⟩`,
//! so the lift count factors over orbits. Orbit counts are memoized by a
//! canonical relabeling of the restricted action.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::group::FiniteGroup;
use crate::perm::{self, Perm};

/// `|HOM(Z^k, G ≀ Sₙ)|`, the number of pairwise commuting `k`-tuples.
///
/// Simultaneous conjugation by `Sₙ` preserves lift counts, so the first
/// permutation runs over one representative per cycle type, weighted by the
/// size of its class.
pub fn count_commuting_tuples(base: &FiniteGroup, n: usize, k: usize) -> u128 {
    use rayon::prelude::*;
    if k == 0 {
        return 1;
    }
    let perms = perm::all(n);
    let mut reps: BTreeMap<Vec<usize>, (usize, u128)> = BTreeMap::new();
    for (i, p) in perms.iter().enumerate() {
        reps.entry(perm::cycle_type(p)).or_insert((i, 0)).1 += 1;
    }
    let reps: Vec<(usize, u128)> = reps.into_values().collect();
    let memo: Mutex<HashMap<Vec<Vec<usize>>, u128>> = Mutex::new(HashMap::new());
    reps.par_iter()
        .map(|&(first, weight)| {
            let mut tuple = vec![first];
            let mut total = 0u128;
            perm_tuples(&perms, k, &mut tuple, &mut |t| {
                let gens: Vec<&Perm> = t.iter().map(|&i| &perms[i]).collect();
                let mut prod = 1u128;
                for orbit in orbits(n, &gens) {
                    let key = canonical_orbit_key(&orbit, &gens);
                    let cached = memo.lock().expect("memo lock").get(&key).copied();
                    let count = match cached {
                        Some(c) => c,
                        None => {
                            let c = orbit_lifts(base, &key);
                            memo.lock().expect("memo lock").insert(key, c);
                            c
                        }
                    };
                    prod *= count;
                    if prod == 0 {
                        break;
                    }
                }
                total += prod;
            });
            total * weight
        })
        .sum()
}

/// Visits all pairwise commuting `k`-tuples of permutations by index.
fn perm_tuples(perms: &[Perm], k: usize, tuple: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if tuple.len() == k {
        visit(tuple);
        return;
    }
    for i in 0..perms.len() {
        let p = &perms[i];
        if tuple.iter().all(|&j| commute(p, &perms[j])) {
            tuple.push(i);
            perm_tuples(perms, k, tuple, visit);
            tuple.pop();
        }
    }
}

fn commute(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|i| a[b[i]] == b[a[i]])
}

fn orbits(n: usize, gens: &[&Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                if !seen[g[x]] {
                    seen[g[x]] = true;
                    orbit.push(g[x]);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

/// Lexicographically smallest relabeling of the restricted action over all
/// breadth-first labelings from each starting point.
fn canonical_orbit_key(orbit: &[usize], gens: &[&Perm]) -> Vec<Vec<usize>> {
    let r = orbit.len();
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut label = HashMap::with_capacity(r);
    for &start in orbit {
        label.clear();
        let mut order = vec![start];
        label.insert(start, 0usize);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for g in gens {
                let y = g[x];
                if !label.contains_key(&y) {
                    label.insert(y, order.len());
                    order.push(y);
                }
            }
            i += 1;
        }
        let key: Vec<Vec<usize>> =
            gens.iter().map(|g| order.iter().map(|&x| label[&g[x]]).collect()).collect();
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

/// Number of base-vector tuples lifting a transitive commuting tuple of
/// permutations of `{0..r-1}` to a commuting tuple of `G ≀ S_r`.
fn orbit_lifts(base: &FiniteGroup, perms: &[Vec<usize>]) -> u128 {
    let k = perms.len();
    let r = perms.first().map_or(0, Vec::len);
    let q = base.order();
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return (q as u128).pow(r as u32);
    }
    let pivot = (0..k).min_by_key(|&i| perm::cycles(&perms[i]).len()).expect("k >= 2");
    let p = &perms[pivot];
    let p_cycles = perm::cycles(p);
    let others: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
    let inverses: Vec<Perm> = perms.iter().map(|s| perm::inverse(s)).collect();

    // Conjugating by (d, 1) with d in Gʳ preserves lift counts and moves the
    // pivot vector to standard form: the cycle product at the first position
    // of each cycle and 1 elsewhere. Each class tuple of cycle products is hit
    // by Π |G|^{len-1} · |class| pivot vectors.
    let classes = base.conjugacy_classes();
    let spread: u128 = p_cycles.iter().map(|c| (q as u128).pow(c.len() as u32 - 1)).product();
    let mut total = 0u128;
    let mut choice = vec![0usize; p_cycles.len()];
    loop {
        let mut gp = vec![base.identity(); r];
        let mut weight = spread;
        for (cycle, &c) in p_cycles.iter().zip(&choice) {
            gp[cycle[0]] = classes[c].representative;
            weight *= classes[c].members.len() as u128;
        }
        let mut sols: Vec<Vec<Vec<usize>>> = Vec::with_capacity(others.len());
        for &j in &others {
            let s = solutions(base, &gp, &p_cycles, &inverses[j]);
            if s.is_empty() {
                break;
            }
            sols.push(s);
        }
        if sols.len() == others.len() {
            total += weight * count_compatible(base, &others, perms, &inverses, &sols);
        }
        if !advance(&mut choice, classes.len()) {
            break;
        }
    }
    total
}

/// All `x` with `(gp, p)` and `(x, t)` commuting, where `t_inv = t⁻¹`.
///
/// The constraint reads `x_i = gp_i · x_{p⁻¹(i)} · gp_{t⁻¹(i)}⁻¹`, so each
/// cycle of `p` is determined by the value at its first position.
fn solutions(base: &FiniteGroup, gp: &[usize], p_cycles: &[Vec<usize>], t_inv: &[usize]) -> Vec<Vec<usize>> {
    let r = gp.len();
    let mut per_cycle: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(p_cycles.len());
    for cycle in p_cycles {
        let mut options = Vec::new();
        for seed in 0..base.order() {
            let mut vals = Vec::with_capacity(cycle.len());
            let mut prev = seed;
            vals.push((cycle[0], seed));
            for &i in &cycle[1..] {
                prev = base.mul(base.mul(gp[i], prev), base.inv(gp[t_inv[i]]));
                vals.push((i, prev));
            }
            let j1 = cycle[0];
            let closing = base.mul(base.mul(gp[j1], prev), base.inv(gp[t_inv[j1]]));
            if closing == seed {
                options.push(vals);
            }
        }
        if options.is_empty() {
            return Vec::new();
        }
        per_cycle.push(options);
    }
    let mut out = vec![vec![0usize; r]];
    for options in per_cycle {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for partial in &out {
            for vals in &options {
                let mut x = partial.clone();
                for &(i, v) in vals {
                    x[i] = v;
                }
                next.push(x);
            }
        }
        out = next;
    }
    out
}

/// Number of choices, one from each solution list, that pairwise commute.
fn count_compatible(
    base: &FiniteGroup,
    gens: &[usize],
    perms: &[Vec<usize>],
    inverses: &[Perm],
    sols: &[Vec<Vec<usize>>],
) -> u128 {
    fn rec(
        base: &FiniteGroup,
        depth: usize,
        chosen: &mut Vec<usize>,
        gens: &[usize],
        perms: &[Vec<usize>],
        inverses: &[Perm],
        sols: &[Vec<Vec<usize>>],
    ) -> u128 {
        if depth == gens.len() {
            return 1;
        }
        let mut total = 0;
        for (idx, x) in sols[depth].iter().enumerate() {
            let ok = chosen.iter().enumerate().all(|(d, &c)| {
                commutes(base, &sols[d][c], &inverses[gens[d]], x, &inverses[gens[depth]])
            });
            if ok {
                chosen.push(idx);
                total += rec(base, depth + 1, chosen, gens, perms, inverses, sols);
                chosen.pop();
            }
        }
        total
    }
    if sols.len() == 1 {
        return sols[0].len() as u128;
    }
    rec(base, 0, &mut Vec::new(), gens, perms, inverses, sols)
}

/// Whether `(a, s)` and `(b, t)` commute, given the permutations commute.
fn commutes(base: &FiniteGroup, a: &[usize], s_inv: &[usize], b: &[usize], t_inv: &[usize]) -> bool {
    (0..a.len()).all(|i| base.mul(a[i], b[s_inv[i]]) == base.mul(b[i], a[t_inv[i]]))
}

fn advance(v: &mut [usize], q: usize) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < q {
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{enumerate_homs, GroupLimits, Presentation};
    use crate::wreath::wreath_group;

    fn brute(base: &FiniteGroup, n: usize, k: usize) -> u128 {
        let w = wreath_group(Arc::new(base.clone()), n, &GroupLimits::default()).unwrap();
        enumerate_homs(&Presentation::free_abelian(k), w.group.view(), &GroupLimits::default()).unwrap().len()
            as u128
    }

    #[test]
    fn matches_brute_force() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for (g, n) in [(&z2, 1), (&z2, 2), (&z2, 3), (&s3, 1), (&s3, 2)] {
            for k in 0..=3 {
                assert_eq!(count_commuting_tuples(g, n, k), brute(g, n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn symmetric_group_commuting_counts() {
        // trivial base: |HOM(Z², Sₙ)| = n! · p(n)
        let t = FiniteGroup::trivial();
        let p = [1u128, 1, 2, 3, 5, 7, 11];
        for n in 0..=6 {
            assert_eq!(count_commuting_tuples(&t, n, 2), perm::factorial(n) as u128 * p[n]);
        }
        assert_eq!(count_commuting_tuples(&t, 4, 0), 1);
    }
}
