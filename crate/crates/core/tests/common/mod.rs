//! Oracles computed from scratch, sharing nothing with the library beyond
//! reading the complex and the action.
#![allow(dead_code)]

use num_traits::{One, Zero};
use orbichar_core::complex::{EquivariantComplex, RegularEquivariantComplex};
use orbichar_core::rational::q_int;
use orbichar_core::Q;

pub fn euler(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Dense rank over ℚ.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| if row[k].is_zero() { acc } else { acc + &row[k] * &b[k][j] }))
                .collect()
        })
        .collect()
}

/// Simplices by dimension, each sorted by vertex index.
pub fn simplices(x: &EquivariantComplex) -> Vec<Vec<Vec<usize>>> {
    let c = x.complex();
    let dim = c.dim().map_or(0, |d| d + 1);
    (0..dim)
        .map(|d| {
            let mut v: Vec<Vec<usize>> = c
                .simplices(d)
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.sort();
                    s
                })
                .collect();
            v.sort();
            v
        })
        .collect()
}

/// `g` acting on oriented `d`-chains: the column of `s` has `±1` at `sort(g s)`.
fn action_matrix(x: &EquivariantComplex, g: usize, cells: &[Vec<usize>]) -> Vec<Vec<Q>> {
    let n = cells.len();
    let mut m = vec![vec![Q::zero(); n]; n];
    let perm = x.vertex_action(g);
    for (j, s) in cells.iter().enumerate() {
        let image: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
        let mut inversions = 0;
        for a in 0..image.len() {
            for b in a + 1..image.len() {
                if image[a] > image[b] {
                    inversions += 1;
                }
            }
        }
        let mut sorted = image.clone();
        sorted.sort();
        let i = cells.binary_search(&sorted).expect("the action preserves the complex");
        m[i][j] = if inversions % 2 == 0 { Q::one() } else { -Q::one() };
    }
    m
}

fn boundary_matrix(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for k in 0..s.len() {
            let mut face = s.clone();
            face.remove(k);
            let i = lower.binary_search(&face).expect("closed complex");
            m[i][j] = if k % 2 == 0 { Q::one() } else { -Q::one() };
        }
    }
    m
}

/// `dim H_d(X; ℚ)^G` from the averaged chain complex: with `P = Σ_g g`,
/// `b_d = rank P_d − rank ∂_d P_d − rank ∂_{d+1} P_{d+1}`.
pub fn invariant_betti(x: &EquivariantComplex) -> Vec<usize> {
    let cells = simplices(x);
    let averaged: Vec<Vec<Vec<Q>>> = cells
        .iter()
        .map(|c| {
            let n = c.len();
            let mut p = vec![vec![Q::zero(); n]; n];
            for &g in x.group().elements() {
                let a = action_matrix(x, g, c);
                for i in 0..n {
                    for j in 0..n {
                        if !a[i][j].is_zero() {
                            p[i][j] += &a[i][j];
                        }
                    }
                }
            }
            p
        })
        .collect();
    let ranks_p: Vec<usize> = averaged.iter().map(|p| rank(p.clone())).collect();
    let ranks_dp: Vec<usize> = (0..cells.len())
        .map(|d| if d == 0 { 0 } else { rank(matmul(&boundary_matrix(&cells[d - 1], &cells[d]), &averaged[d])) })
        .collect();
    (0..cells.len())
        .map(|d| ranks_p[d] - ranks_dp[d] - ranks_dp.get(d + 1).copied().unwrap_or(0))
        .collect()
}

/// `χ` of the subcomplex fixed pointwise by every element of `set`.
pub fn fixed_euler(x: &EquivariantComplex, set: &[usize]) -> i64 {
    let fixed: Vec<bool> =
        (0..x.complex().universe()).map(|v| set.iter().all(|&g| x.vertex_action(g)[v] == v)).collect();
    let counts: Vec<usize> = simplices(x).iter().map(|c| c.iter().filter(|s| s.iter().all(|&v| fixed[v])).count()).collect();
    euler(&counts)
}

/// `(1/|G|) Σ_{g₁..g_k pairwise commuting} χ(X^{⟨g₁..g_k⟩})`
pub fn commuting_average(x: &RegularEquivariantComplex, k: usize) -> Q {
    let eq = x.equivariant();
    let elements = x.group().elements().to_vec();
    let group = x.group().parent().clone();
    let mut total = 0i64;
    let mut tuple = Vec::new();
    fn rec(
        eq: &EquivariantComplex,
        group: &orbichar_core::FiniteGroup,
        elements: &[usize],
        k: usize,
        tuple: &mut Vec<usize>,
        total: &mut i64,
    ) {
        if tuple.len() == k {
            *total += fixed_euler(eq, tuple);
            return;
        }
        for &g in elements {
            if tuple.iter().all(|&h| group.commute(g, h)) {
                tuple.push(g);
                rec(eq, group, elements, k, tuple, total);
                tuple.pop();
            }
        }
    }
    rec(eq, &group, &elements, k, &mut tuple, &mut total);
    Q::new(total.into(), (elements.len() as i64).into())
}

pub fn q(n: i64) -> Q {
    q_int(n)
}
