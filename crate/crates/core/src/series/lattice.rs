//! Counting subgroups of finite index in `Z^m`.

use std::collections::HashSet;

/// `J_{r,m} = Σ_{j₁⋯j_m = r} j₂ j₃² ⋯ j_m^{m−1}`, with `J_{r,0} = [r = 1]`.
pub fn subgroup_count(r: usize, m: usize) -> u128 {
    fn rec(left: usize, i: usize, m: usize) -> u128 {
        if i == m {
            return u128::from(left == 1);
        }
        (1..=left)
            .filter(|j| left % j == 0)
            .map(|j| (j as u128).pow(i as u32) * rec(left / j, i + 1, m))
            .sum()
    }
    if r == 0 {
        return 0;
    }
    rec(r, 0, m)
}

/// Number of index-`r` subgroups of `Z^m`, by generating them as sets.
///
/// Such a subgroup contains `rZ^m`, so it is determined by its image in
/// `(Z/r)^m`, which has order `r^{m−1}`. Every one is generated by the rows of
/// an upper triangular integer matrix with diagonal product `r` and
/// off-diagonal entries in `0..r`; each candidate's generated subgroup is
/// built explicitly and distinct subgroups are counted.
pub fn sublattice_count_brute(r: usize, m: usize) -> u128 {
    if r == 0 {
        return 0;
    }
    if m == 0 {
        return u128::from(r == 1);
    }
    let size = r.pow(m as u32);
    let target = size / r;
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * r + x);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut diag = Vec::with_capacity(m);
    let mut diags = Vec::new();
    fn factorizations(left: usize, m: usize, diag: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if diag.len() == m {
            if left == 1 {
                out.push(diag.clone());
            }
            return;
        }
        for j in (1..=left).filter(|j| left % j == 0) {
            diag.push(j);
            factorizations(left / j, m, diag, out);
            diag.pop();
        }
    }
    factorizations(r, m, &mut diag, &mut diags);
    let off = m * (m - 1) / 2;
    for d in diags {
        let mut entries = vec![0usize; off];
        loop {
            let mut rows = vec![vec![0usize; m]; m];
            let mut k = 0;
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = d[i] % r;
                for x in row.iter_mut().skip(i + 1) {
                    *x = entries[k];
                    k += 1;
                }
            }
            let gens: Vec<usize> = rows.iter().map(|row| encode(row)).collect();
            let members = span(&gens, r, m, size);
            if members.iter().map(|w| w.count_ones() as usize).sum::<usize>() == target {
                seen.insert(members);
            }
            if !advance(&mut entries, r) {
                break;
            }
        }
    }
    seen.len() as u128
}

/// The subgroup of `(Z/r)^m` generated by `gens`, as a bitset.
fn span(gens: &[usize], r: usize, m: usize, size: usize) -> Vec<u64> {
    let add = |a: usize, b: usize| {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..m {
            out += ((a % r + b % r) % r) * place;
            a /= r;
            b /= r;
            place *= r;
        }
        out
    };
    let mut bits = vec![0u64; size.div_ceil(64)];
    let mut members = vec![0usize];
    bits[0] |= 1;
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = add(x, g);
            if bits[y / 64] & (1 << (y % 64)) == 0 {
                bits[y / 64] |= 1 << (y % 64);
                members.push(y);
            }
        }
        i += 1;
    }
    bits
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
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(subgroup_count(1, 3), 1);
        assert_eq!(subgroup_count(7, 1), 1);
        assert_eq!(subgroup_count(2, 2), 3);
        assert_eq!(subgroup_count(4, 2), 7);
        assert_eq!(subgroup_count(1, 0), 1);
        assert_eq!(subgroup_count(2, 0), 0);
        assert_eq!(sublattice_count_brute(2, 2), 3);
        assert_eq!(sublattice_count_brute(4, 2), 7);
        for m in 0..=3 {
            for r in 1..=6 {
                assert_eq!(sublattice_count_brute(r, m), subgroup_count(r, m), "r={r} m={m}");
            }
        }
    }
}
